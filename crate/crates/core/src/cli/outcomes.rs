//! On-disk parse outcomes: one directory per parser holding a manifest and
//! one wire-format file per sub-corpus.

use std::collections::BTreeMap;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use super::CliError;
use crate::corpus::{TestCorpus, Token};
use crate::parsegraph::{read_conll_block, split_blocks, GraphMode, ParseOutcome};
use crate::parsers::Parser;
use crate::scoring::{aggregate, compare_pair, score_level, RobustnessReport};
use crate::util::write_atomic;

pub const MANIFEST: &str = "manifest.json";
pub const CLEAN_FILE: &str = "cs.conll";

pub fn noisy_file(level: u8) -> String {
    format!("ns{level}.conll")
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Manifest {
    pub parser: String,
    pub mode: String,
    /// Base sentence ids, in `cs.conll` block order.
    pub cs: Vec<String>,
    /// Per level, the base id of each block in `ns{k}.conll`.
    pub levels: BTreeMap<u8, Vec<String>>,
}

/// Everything one parser produced for a corpus.
#[derive(Debug, Clone)]
pub struct ParsedCorpus {
    pub manifest: Manifest,
    pub clean: Vec<ParseOutcome>,
    pub noisy: BTreeMap<u8, Vec<ParseOutcome>>,
}

impl ParsedCorpus {
    pub fn failures(&self) -> usize {
        self.clean
            .iter()
            .chain(self.noisy.values().flatten())
            .filter(|o| o.is_failed())
            .count()
    }
}

/// Parses the clean sentences, then each noisy level.
pub fn parse_corpus(corpus: &TestCorpus, parser: &Parser) -> Result<ParsedCorpus, CliError> {
    let clean_tokens: Vec<&[Token]> = corpus.base.iter().map(|s| s.tokens.as_slice()).collect();
    let clean = parser.parse_all(&clean_tokens)?;
    let mut noisy = BTreeMap::new();
    let mut levels = BTreeMap::new();
    for level in corpus.levels() {
        let ns: Vec<_> = corpus.level(level).collect();
        let tokens: Vec<&[Token]> = ns.iter().map(|n| n.tokens.as_slice()).collect();
        noisy.insert(level, parser.parse_all(&tokens)?);
        levels.insert(level, ns.iter().map(|n| n.base_id.clone()).collect());
    }
    Ok(ParsedCorpus {
        manifest: Manifest {
            parser: parser.name().to_string(),
            mode: parser.mode().to_string(),
            cs: corpus.base.iter().map(|s| s.id.clone()).collect(),
            levels,
        },
        clean,
        noisy,
    })
}

fn render<'a>(outcomes: &[ParseOutcome], forms: impl Iterator<Item = &'a [Token]>) -> String {
    let mut out = String::new();
    for (o, toks) in outcomes.iter().zip(forms) {
        let words: Vec<&str> = toks.iter().map(|t| t.text.as_str()).collect();
        out.push_str(&o.to_conll_block(&words));
    }
    out
}

pub fn write_parsed(
    dir: &Path,
    corpus: &TestCorpus,
    parsed: &ParsedCorpus,
) -> Result<(), CliError> {
    std::fs::create_dir_all(dir).map_err(|e| CliError::io(dir, e))?;
    let mut manifest = serde_json::to_string_pretty(&parsed.manifest).expect("manifest serializes");
    manifest.push('\n');
    let put = |name: &str, text: &str| {
        let p = dir.join(name);
        write_atomic(&p, text.as_bytes()).map_err(|e| CliError::io(&p, e))
    };
    put(
        CLEAN_FILE,
        &render(
            &parsed.clean,
            corpus.base.iter().map(|s| s.tokens.as_slice()),
        ),
    )?;
    for (&level, outcomes) in &parsed.noisy {
        put(
            &noisy_file(level),
            &render(outcomes, corpus.level(level).map(|n| n.tokens.as_slice())),
        )?;
    }
    put(MANIFEST, &manifest)
}

fn read_outcomes(path: &Path, mode: GraphMode) -> Result<Vec<ParseOutcome>, CliError> {
    let text = std::fs::read_to_string(path).map_err(|e| CliError::io(path, e))?;
    Ok(split_blocks(&text)
        .iter()
        .map(|b| read_conll_block(b, mode))
        .collect())
}

/// True when `dir` looks like one parser's outcome directory.
pub fn is_outcome_dir(dir: &Path) -> bool {
    dir.join(MANIFEST).is_file()
}

/// Outcome directories under `dir`: itself, or its immediate children.
pub fn find_outcome_dirs(dir: &Path) -> Result<Vec<PathBuf>, CliError> {
    if is_outcome_dir(dir) {
        return Ok(vec![dir.to_path_buf()]);
    }
    let entries = std::fs::read_dir(dir).map_err(|e| CliError::io(dir, e))?;
    let mut dirs = Vec::new();
    for entry in entries {
        let p = entry.map_err(|e| CliError::io(dir, e))?.path();
        if is_outcome_dir(&p) {
            dirs.push(p);
        }
    }
    dirs.sort();
    if dirs.is_empty() {
        return Err(CliError::Usage(format!(
            "{}: no {MANIFEST} here or in any subdirectory",
            dir.display()
        )));
    }
    Ok(dirs)
}

/// Scores one outcome directory. Levels whose file is missing are skipped
/// and noted in the report.
pub fn score_outcome_dir(dir: &Path) -> Result<RobustnessReport, CliError> {
    let mpath = dir.join(MANIFEST);
    let text = std::fs::read_to_string(&mpath).map_err(|e| CliError::io(&mpath, e))?;
    let manifest: Manifest = serde_json::from_str(&text)
        .map_err(|e| CliError::Usage(format!("{}: {e}", mpath.display())))?;
    let mode: GraphMode = manifest
        .mode
        .parse()
        .map_err(|e| CliError::Usage(format!("{}: {e}", mpath.display())))?;

    let cs_path = dir.join(CLEAN_FILE);
    let clean = read_outcomes(&cs_path, mode)?;
    if clean.len() != manifest.cs.len() {
        return Err(CliError::Usage(format!(
            "{}: {} blocks for {} clean sentences",
            cs_path.display(),
            clean.len(),
            manifest.cs.len()
        )));
    }
    let by_id: BTreeMap<&str, &ParseOutcome> =
        manifest.cs.iter().map(String::as_str).zip(&clean).collect();

    let mut levels = Vec::new();
    let mut notes = Vec::new();
    for (&level, base_ids) in &manifest.levels {
        let path = dir.join(noisy_file(level));
        if !path.exists() {
            notes.push(format!(
                "level {level}: {} missing, level not scored",
                noisy_file(level)
            ));
            continue;
        }
        let noisy = read_outcomes(&path, mode)?;
        if noisy.len() != base_ids.len() {
            return Err(CliError::Usage(format!(
                "{}: {} blocks for {} noisy sentences",
                path.display(),
                noisy.len(),
                base_ids.len()
            )));
        }
        let mut verdicts = Vec::with_capacity(noisy.len());
        for (id, ns) in base_ids.iter().zip(&noisy) {
            let cs = by_id.get(id.as_str()).ok_or_else(|| {
                CliError::Usage(format!("{}: unknown base id {id:?}", path.display()))
            })?;
            verdicts.push(compare_pair(cs, ns, level, id));
        }
        if verdicts.is_empty() {
            notes.push(format!("level {level}: no pairs"));
            continue;
        }
        levels.push(score_level(&verdicts)?);
    }
    if levels.is_empty() {
        return Err(CliError::Usage(format!(
            "{}: no noisy level to score",
            dir.display()
        )));
    }
    let mut report = aggregate(&manifest.parser, &levels)?;
    report.notes = notes;
    report
        .check_invariants()
        .map_err(|e| CliError::Usage(format!("{}: {e}", dir.display())))?;
    Ok(report)
}
