//! Subprocess adapters speaking the line protocol.
//!
//! The adapter reads one sentence per line on stdin and answers each with
//! one blank-line-terminated block on stdout. A reader thread assembles
//! blocks so the caller can wait on each answer with a timeout.

use std::io::{BufRead, BufReader, Write};
use std::process::{Child, ChildStdin, Command, Stdio};
use std::sync::mpsc::{self, Receiver, RecvTimeoutError};
use std::thread;

use super::{AdapterConfig, ParserError};
use crate::corpus::{detokenize, Token};
use crate::parsegraph::{read_conll_block, ParseOutcome};

pub const PROCESS_EXITED: &str = "process exited";
pub const TIMEOUT: &str = "timeout";

fn spawn(cfg: &AdapterConfig) -> Result<Child, ParserError> {
    let (program, args) = cfg
        .command
        .split_first()
        .ok_or_else(|| ParserError::InvalidConfig(format!("{}: empty command", cfg.name)))?;
    Command::new(program)
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::null())
        .spawn()
        .map_err(|source| ParserError::Spawn {
            name: cfg.name.clone(),
            source,
        })
}

/// Sends each raw block (rows plus their newlines, blank line excluded).
fn spawn_block_reader(stdout: std::process::ChildStdout) -> Receiver<String> {
    let (tx, rx) = mpsc::channel();
    thread::spawn(move || {
        let mut reader = BufReader::new(stdout);
        let mut block = String::new();
        let mut buf = Vec::new();
        loop {
            buf.clear();
            match reader.read_until(b'\n', &mut buf) {
                Ok(0) | Err(_) => break,
                Ok(_) => {}
            }
            let line = String::from_utf8_lossy(&buf);
            let line = line.trim_end_matches(['\n', '\r']);
            if line.is_empty() {
                if !block.is_empty() && tx.send(std::mem::take(&mut block)).is_err() {
                    return;
                }
            } else {
                block.push_str(line);
                block.push('\n');
            }
        }
        if !block.is_empty() {
            let _ = tx.send(block);
        }
    });
    rx
}

fn write_line(stdin: &mut ChildStdin, line: &str) -> std::io::Result<()> {
    stdin.write_all(line.as_bytes())?;
    stdin.write_all(b"\n")?;
    stdin.flush()
}

/// Parses `sentences` with an external adapter. The result is always
/// index-aligned with the input; adapter misbehaviour turns into failed
/// outcomes. Only a failure to start the process is an error.
pub fn run_external(
    cfg: &AdapterConfig,
    sentences: &[&[Token]],
) -> Result<Vec<ParseOutcome>, ParserError> {
    cfg.validate()?;
    if sentences.is_empty() {
        return Ok(Vec::new());
    }
    let mut child = spawn(cfg)?;
    let stdout = child.stdout.take().expect("stdout is piped");
    let mut stdin = child.stdin.take().expect("stdin is piped");
    let blocks = spawn_block_reader(stdout);
    let lines: Vec<String> = sentences.iter().map(|s| detokenize(s)).collect();

    let (writer, mut stdin) = if cfg.batch {
        let lines = lines.clone();
        let w = thread::spawn(move || {
            for l in &lines {
                if write_line(&mut stdin, l).is_err() {
                    break;
                }
            }
        });
        (Some(w), None)
    } else {
        (None, Some(stdin))
    };

    let mut outcomes = Vec::with_capacity(sentences.len());
    let mut stop: Option<&'static str> = None;
    for line in &lines {
        if let Some(reason) = stop {
            outcomes.push(ParseOutcome::Failed(reason.into()));
            continue;
        }
        if let Some(stdin) = stdin.as_mut() {
            // A dead adapter may still have answers buffered; read them below.
            let _ = write_line(stdin, line);
        }
        match blocks.recv_timeout(cfg.timeout) {
            Ok(block) => outcomes.push(read_conll_block(&block, cfg.mode)),
            Err(RecvTimeoutError::Timeout) => {
                stop = Some(TIMEOUT);
                outcomes.push(ParseOutcome::Failed(TIMEOUT.into()));
            }
            Err(RecvTimeoutError::Disconnected) => {
                stop = Some(PROCESS_EXITED);
                outcomes.push(ParseOutcome::Failed(PROCESS_EXITED.into()));
            }
        }
    }

    drop(stdin);
    let _ = child.kill();
    let _ = child.wait();
    if let Some(w) = writer {
        let _ = w.join();
    }
    Ok(outcomes)
}
