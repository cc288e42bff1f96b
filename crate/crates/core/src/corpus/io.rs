//! JSON Lines corpus files and plain-text exports.

use std::collections::HashMap;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use super::edit::Edit;
use super::token::Sentence;
use super::{CorpusError, NoisySentence, TestCorpus};
use crate::util::write_atomic;

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct Header {
    seed: u64,
    lexicon_source: String,
}

#[derive(Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase", deny_unknown_fields)]
enum Record {
    Base {
        id: String,
        tokens: Vec<String>,
    },
    Noisy {
        base_id: String,
        error_level: u8,
        tokens: Vec<String>,
        edits: Vec<Edit>,
    },
}

fn texts(tokens: &[super::Token]) -> Vec<String> {
    tokens.iter().map(|t| t.text.clone()).collect()
}

pub fn write_corpus_string(c: &TestCorpus) -> String {
    let mut out = String::new();
    let header = Header {
        seed: c.seed,
        lexicon_source: c.lexicon_source.clone(),
    };
    let mut push = |v: String| {
        out.push_str(&v);
        out.push('\n');
    };
    push(serde_json::to_string(&header).expect("header serializes"));
    for s in &c.base {
        let r = Record::Base {
            id: s.id.clone(),
            tokens: texts(&s.tokens),
        };
        push(serde_json::to_string(&r).expect("record serializes"));
    }
    for n in &c.noisy {
        let r = Record::Noisy {
            base_id: n.base_id.clone(),
            error_level: n.error_level,
            tokens: texts(&n.tokens),
            edits: n.edits.clone(),
        };
        push(serde_json::to_string(&r).expect("record serializes"));
    }
    out
}

pub fn write_corpus(c: &TestCorpus, path: impl AsRef<Path>) -> Result<(), CorpusError> {
    let path = path.as_ref();
    write_atomic(path, write_corpus_string(c).as_bytes()).map_err(|e| CorpusError::io(path, e))
}

pub fn read_corpus(path: impl AsRef<Path>) -> Result<TestCorpus, CorpusError> {
    let path = path.as_ref();
    let text = std::fs::read_to_string(path).map_err(|e| CorpusError::io(path, e))?;
    read_corpus_str(&text)
}

pub fn read_corpus_str(text: &str) -> Result<TestCorpus, CorpusError> {
    let malformed = |line: usize, message: String| CorpusError::Malformed { line, message };
    let invariant = |line: usize, invariant: String| CorpusError::Invariant { line, invariant };

    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l))
        .filter(|(_, l)| !l.trim().is_empty());
    let (hline, htext) = lines
        .next()
        .ok_or_else(|| malformed(1, "missing header record".into()))?;
    let header: Header =
        serde_json::from_str(htext).map_err(|e| malformed(hline, format!("bad header: {e}")))?;

    let mut base: Vec<Sentence> = Vec::new();
    let mut index: HashMap<String, usize> = HashMap::new();
    let mut noisy = Vec::new();
    for (line, l) in lines {
        let record: Record = serde_json::from_str(l).map_err(|e| malformed(line, e.to_string()))?;
        match record {
            Record::Base { id, tokens } => {
                if !noisy.is_empty() {
                    return Err(malformed(line, "base record after noisy records".into()));
                }
                let s = Sentence::from_tokens(id.clone(), &tokens)
                    .map_err(|e| invariant(line, e.to_string()))?;
                if index.insert(id.clone(), base.len()).is_some() {
                    return Err(invariant(line, format!("duplicate base id {id:?}")));
                }
                base.push(s);
            }
            Record::Noisy {
                base_id,
                error_level,
                tokens,
                edits,
            } => {
                let b = index.get(&base_id).map(|&i| &base[i]).ok_or_else(|| {
                    invariant(
                        line,
                        format!("base_id {base_id:?} resolves to no base sentence"),
                    )
                })?;
                let parsed = Sentence::from_tokens(base_id.clone(), &tokens)
                    .map_err(|e| invariant(line, e.to_string()))?;
                let ns = NoisySentence {
                    base_id,
                    error_level,
                    tokens: parsed.tokens,
                    edits,
                };
                ns.validate(b, None).map_err(|msg| invariant(line, msg))?;
                noisy.push(ns);
            }
        }
    }
    Ok(TestCorpus {
        base,
        noisy,
        seed: header.seed,
        lexicon_source: header.lexicon_source,
    })
}

/// Paths written by [`write_text_exports`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TextExports {
    pub clean: PathBuf,
    /// (level, clean counterparts, noisy sentences), line-aligned.
    pub levels: Vec<(u8, PathBuf, PathBuf)>,
}

/// Writes `<stem>.cs.txt` with the base sentences, and for each error level
/// `<stem>.ns<k>.txt` with the noisy sentences next to `<stem>.cs<k>.txt`
/// holding the matching clean sentence on the same line.
pub fn write_text_exports(c: &TestCorpus, stem: &Path) -> Result<TextExports, CorpusError> {
    let with_suffix = |suffix: &str| {
        let mut name = stem.as_os_str().to_owned();
        name.push(suffix);
        PathBuf::from(name)
    };
    let lines = |it: &mut dyn Iterator<Item = String>| {
        let mut s = String::new();
        for l in it {
            s.push_str(&l);
            s.push('\n');
        }
        s
    };
    let clean = with_suffix(".cs.txt");
    let body = lines(&mut c.base.iter().map(Sentence::text));
    write_atomic(&clean, body.as_bytes()).map_err(|e| CorpusError::io(&clean, e))?;

    let mut levels = Vec::new();
    for level in c.levels() {
        let cs_path = with_suffix(&format!(".cs{level}.txt"));
        let ns_path = with_suffix(&format!(".ns{level}.txt"));
        let cs = lines(&mut c.level(level).map(|n| {
            c.base_by_id(&n.base_id)
                .map(Sentence::text)
                .unwrap_or_default()
        }));
        let ns = lines(&mut c.level(level).map(NoisySentence::text));
        write_atomic(&cs_path, cs.as_bytes()).map_err(|e| CorpusError::io(&cs_path, e))?;
        write_atomic(&ns_path, ns.as_bytes()).map_err(|e| CorpusError::io(&ns_path, e))?;
        levels.push((level, cs_path, ns_path));
    }
    Ok(TextExports { clean, levels })
}
