//! The `misparse` command line.
//!
//! ```text
//! misparse corrupt --in clean.txt --lexicon words.txt --plan 1:255,2:94,3:94 --seed 7 --out corpus.jsonl
//! misparse parse --corpus corpus.jsonl --adapter builtin:chain --adapter 'lg=./lg-adapter.sh' --out runs/
//! misparse score --outcomes runs/ --out report.json
//! misparse report report.json --pr 'C&C:86.6,92.1'
//! ```
//!
//! Exit status is 0 on success (failed parses are data), 1 for usage or
//! configuration errors and 2 for I/O or adapter start-up errors.

mod outcomes;
mod table;

use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::time::Duration;

use clap::{Args, Parser as ClapParser, Subcommand};
use thiserror::Error;

pub use outcomes::{
    find_outcome_dirs, noisy_file, parse_corpus, score_outcome_dir, write_parsed, Manifest,
    ParsedCorpus, CLEAN_FILE, MANIFEST,
};
pub use table::{
    plot_csv, read_reports, render_comparison, report_csv, PrecisionRecall, CSV_HEADER,
};

use crate::corpus::{
    build_corpus, read_corpus, tokenize, write_corpus, write_text_exports, CorpusError, LevelPlan,
    Lexicon, Sentence,
};
use crate::parsegraph::GraphMode;
use crate::parsers::{AdapterConfig, HeadRules, Parser, ParserError, PcfgGrammar};
use crate::scoring::ScoringError;
use crate::util::write_atomic;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("{path}: {message}")]
    Io { path: PathBuf, message: String },
    #[error("{0}")]
    Spawn(String),
}

impl CliError {
    pub(crate) fn io(path: impl AsRef<Path>, e: impl std::fmt::Display) -> Self {
        CliError::Io {
            path: path.as_ref().to_path_buf(),
            message: e.to_string(),
        }
    }

    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => 1,
            CliError::Io { .. } | CliError::Spawn(_) => 2,
        }
    }
}

impl From<CorpusError> for CliError {
    fn from(e: CorpusError) -> Self {
        match e {
            CorpusError::Io { path, source } => CliError::io(path, source),
            other => CliError::Usage(other.to_string()),
        }
    }
}

impl From<ParserError> for CliError {
    fn from(e: ParserError) -> Self {
        match e {
            ParserError::Io { path, source } => CliError::io(path, source),
            e @ ParserError::Spawn { .. } => CliError::Spawn(e.to_string()),
            other => CliError::Usage(other.to_string()),
        }
    }
}

impl From<ScoringError> for CliError {
    fn from(e: ScoringError) -> Self {
        CliError::Usage(e.to_string())
    }
}

#[derive(Debug, ClapParser)]
#[command(
    name = "misparse",
    version,
    about = "Parser robustness against misspelled input"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Build a noisy test corpus from clean sentences, one per line.
    Corrupt(CorruptArgs),
    /// Run parsers over a corpus and store their outcomes.
    Parse(ParseArgs),
    /// Score stored outcomes.
    Score(ScoreArgs),
    /// Print a comparison of one or more reports.
    Report(ReportArgs),
}

#[derive(Debug, Args)]
pub struct CorruptArgs {
    #[arg(long = "in")]
    pub input: PathBuf,
    #[arg(long)]
    pub lexicon: PathBuf,
    /// Sentences per error level, e.g. 1:255,2:94,3:94
    #[arg(long, default_value = "1:255,2:94,3:94")]
    pub plan: LevelPlan,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long)]
    pub out: PathBuf,
}

#[derive(Debug, Args)]
pub struct ParseArgs {
    #[arg(long)]
    pub corpus: PathBuf,
    /// `builtin:chain`, `builtin:cyk` or `NAME=COMMAND` (split like a shell).
    #[arg(long = "adapter", required = true)]
    pub adapters: Vec<String>,
    /// Grammar for builtin:cyk.
    #[arg(long)]
    pub grammar: Option<PathBuf>,
    /// Head rules for builtin:cyk.
    #[arg(long)]
    pub heads: Option<PathBuf>,
    /// Compare the named external adapter's output as undirected links.
    #[arg(long = "undirected", value_name = "NAME")]
    pub undirected: Vec<String>,
    /// Seconds to wait for each sentence from an external adapter.
    #[arg(long, default_value_t = 60.0)]
    pub timeout: f64,
    /// Send one sentence at a time instead of streaming the whole sub-corpus.
    #[arg(long)]
    pub no_batch: bool,
    #[arg(long)]
    pub out: PathBuf,
}

#[derive(Debug, Args)]
pub struct ScoreArgs {
    /// One parser's outcome directory, or a directory of them.
    #[arg(long)]
    pub outcomes: PathBuf,
    #[arg(long)]
    pub out: PathBuf,
}

#[derive(Debug, Args)]
pub struct ReportArgs {
    #[arg(required = true)]
    pub reports: Vec<PathBuf>,
    /// Precision and recall for an F-score line, e.g. 'C&C:86.6,92.1'
    #[arg(long = "pr")]
    pub pr: Vec<PrecisionRecall>,
}

fn read_clean(path: &Path) -> Result<Vec<Sentence>, CliError> {
    let text = std::fs::read_to_string(path).map_err(|e| CliError::io(path, e))?;
    let mut out = Vec::new();
    for (i, line) in text.lines().enumerate() {
        if line.trim().is_empty() {
            continue;
        }
        let s = tokenize(line)
            .map_err(|e| CliError::Usage(format!("{}:{}: {e}", path.display(), i + 1)))?;
        out.push(s.with_id(format!("s{}", i + 1)));
    }
    if out.is_empty() {
        return Err(CliError::Usage(format!("{}: no sentences", path.display())));
    }
    Ok(out)
}

fn corpus_stem(out: &Path) -> PathBuf {
    match out.extension() {
        Some(ext) if ext == "jsonl" => out.with_extension(""),
        _ => out.to_path_buf(),
    }
}

pub fn cmd_corrupt(args: &CorruptArgs, stdout: &mut dyn Write) -> Result<(), CliError> {
    args.plan.validate()?;
    let base = read_clean(&args.input)?;
    let lexicon = Lexicon::load(&args.lexicon)?;
    let corpus = build_corpus(&base, &args.plan, args.seed, &lexicon)?;
    write_corpus(&corpus, &args.out)?;
    write_text_exports(&corpus, &corpus_stem(&args.out))?;
    let per_level: Vec<String> = corpus
        .levels()
        .iter()
        .map(|&l| format!("level {l}: {}", corpus.level(l).count()))
        .collect();
    let _ = writeln!(
        stdout,
        "{} base sentences, {} noisy sentences ({}), average base length {:.2} words",
        corpus.base.len(),
        corpus.noisy.len(),
        per_level.join(", "),
        corpus.average_base_length()
    );
    Ok(())
}

fn valid_name(name: &str) -> bool {
    !name.is_empty()
        && name != "."
        && name != ".."
        && name
            .chars()
            .all(|c| c.is_ascii_alphanumeric() || "._-+&@".contains(c))
}

fn build_parsers(args: &ParseArgs) -> Result<Vec<Parser>, CliError> {
    if !(args.timeout > 0.0 && args.timeout.is_finite()) {
        return Err(CliError::Usage(
            "--timeout must be a positive number of seconds".into(),
        ));
    }
    let mut parsers = Vec::new();
    for spec in &args.adapters {
        let parser = match spec.as_str() {
            "builtin:chain" => Parser::Chain,
            "builtin:cyk" => {
                let grammar = args
                    .grammar
                    .as_ref()
                    .ok_or_else(|| CliError::Usage("builtin:cyk needs --grammar".into()))?;
                let grammar = PcfgGrammar::load(grammar)?;
                let heads = match &args.heads {
                    Some(p) => HeadRules::load(p)?,
                    None => HeadRules::new(),
                };
                Parser::Cyk { grammar, heads }
            }
            other if other.starts_with("builtin:") => {
                return Err(CliError::Usage(format!(
                    "unknown built-in parser {other:?}"
                )));
            }
            other => {
                let (name, cmd) = other.split_once('=').ok_or_else(|| {
                    CliError::Usage(format!("adapter {other:?} is not NAME=COMMAND"))
                })?;
                let command = shlex::split(cmd).filter(|c| !c.is_empty()).ok_or_else(|| {
                    CliError::Usage(format!("adapter {name:?}: bad command {cmd:?}"))
                })?;
                let mode = if args.undirected.iter().any(|u| u == name) {
                    GraphMode::Undirected
                } else {
                    GraphMode::Directed
                };
                let mut cfg = AdapterConfig::new(name, command, mode);
                cfg.timeout = Duration::from_secs_f64(args.timeout);
                cfg.batch = !args.no_batch;
                cfg.validate()?;
                Parser::External(cfg)
            }
        };
        if !valid_name(parser.name()) {
            return Err(CliError::Usage(format!(
                "adapter name {:?} must use letters, digits or ._-+&@",
                parser.name()
            )));
        }
        if parsers.iter().any(|p: &Parser| p.name() == parser.name()) {
            return Err(CliError::Usage(format!(
                "adapter {:?} given twice",
                parser.name()
            )));
        }
        parsers.push(parser);
    }
    for u in &args.undirected {
        if !parsers
            .iter()
            .any(|p| matches!(p, Parser::External(c) if &c.name == u))
        {
            return Err(CliError::Usage(format!(
                "--undirected {u:?} names no external adapter"
            )));
        }
    }
    Ok(parsers)
}

pub fn cmd_parse(args: &ParseArgs, stdout: &mut dyn Write) -> Result<(), CliError> {
    let parsers = build_parsers(args)?;
    let corpus = read_corpus(&args.corpus)?;
    let results: Vec<Result<ParsedCorpus, CliError>> = std::thread::scope(|scope| {
        let handles: Vec<_> = parsers
            .iter()
            .map(|p| {
                let corpus = &corpus;
                scope.spawn(move || parse_corpus(corpus, p))
            })
            .collect();
        handles
            .into_iter()
            .map(|h| h.join().expect("parser thread panicked"))
            .collect()
    });
    for (parser, result) in parsers.iter().zip(results) {
        let parsed = result?;
        write_parsed(&args.out.join(parser.name()), &corpus, &parsed)?;
        let noisy: usize = parsed.noisy.values().map(Vec::len).sum();
        let _ = writeln!(
            stdout,
            "{}: {} clean, {} noisy, {} failed",
            parser.name(),
            parsed.clean.len(),
            noisy,
            parsed.failures()
        );
    }
    Ok(())
}

fn sibling(out: &Path, suffix: &str) -> PathBuf {
    let stem = out
        .file_stem()
        .map(|s| s.to_os_string())
        .unwrap_or_default();
    let mut name = stem;
    name.push(suffix);
    out.with_file_name(name)
}

pub fn cmd_score(args: &ScoreArgs, stdout: &mut dyn Write) -> Result<(), CliError> {
    let dirs = find_outcome_dirs(&args.outcomes)?;
    let reports = dirs
        .iter()
        .map(|d| score_outcome_dir(d))
        .collect::<Result<Vec<_>, _>>()?;
    let mut json = if reports.len() == 1 {
        serde_json::to_string_pretty(&reports[0])
    } else {
        serde_json::to_string_pretty(&reports)
    }
    .expect("reports serialize");
    json.push('\n');
    let put =
        |p: &Path, text: &str| write_atomic(p, text.as_bytes()).map_err(|e| CliError::io(p, e));
    put(&args.out, &json)?;
    put(&sibling(&args.out, ".csv"), &report_csv(&reports))?;
    put(
        &sibling(&args.out, ".unlabeled.plot.csv"),
        &plot_csv(&reports, false),
    )?;
    put(
        &sibling(&args.out, ".labeled.plot.csv"),
        &plot_csv(&reports, true),
    )?;
    for r in &reports {
        for note in &r.notes {
            let _ = writeln!(stdout, "{}: {note}", r.parser);
        }
    }
    let _ = write!(stdout, "{}", report_csv(&reports));
    Ok(())
}

pub fn cmd_report(args: &ReportArgs, stdout: &mut dyn Write) -> Result<(), CliError> {
    let reports = read_reports(&args.reports)?;
    let _ = write!(stdout, "{}", render_comparison(&reports, &args.pr)?);
    Ok(())
}

pub fn execute(cli: &Cli, stdout: &mut dyn Write) -> Result<(), CliError> {
    match &cli.command {
        Command::Corrupt(a) => cmd_corrupt(a, stdout),
        Command::Parse(a) => cmd_parse(a, stdout),
        Command::Score(a) => cmd_score(a, stdout),
        Command::Report(a) => cmd_report(a, stdout),
    }
}

/// Runs the command line and returns the exit status.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { 1 } else { 0 };
        }
    };
    let stdout = std::io::stdout();
    match execute(&cli, &mut stdout.lock()) {
        Ok(()) => 0,
        Err(e) => {
            eprintln!("misparse: {e}");
            e.exit_code()
        }
    }
}
