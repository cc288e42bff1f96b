//! Noisy test corpus construction.
//!
//! A corpus pairs each clean base sentence with corrupted variants at error
//! levels 1 to 3. Every corrupted word is produced by exactly one character
//! edit (delete, keyboard-adjacent add, or adjacent swap) and is checked
//! against a [`Lexicon`] so that it is never a valid word.

mod edit;
mod io;
mod keyboard;
mod lexicon;
mod noise;
mod token;

use std::path::PathBuf;

use thiserror::Error;

pub use edit::{apply_edit, legal_edits, Edit, EditOp};
pub use io::{
    read_corpus, read_corpus_str, write_corpus, write_corpus_string, write_text_exports,
    TextExports,
};
pub use keyboard::{are_adjacent, keyboard_neighbors};
pub use lexicon::Lexicon;
pub use noise::{build_corpus, corrupt_sentence, corrupt_word, variant_rng, CorpusRng, LevelPlan};
pub use token::{detokenize, is_corruptible, tokenize, Sentence, Token, MAX_TOKENS};

#[derive(Debug, Error)]
pub enum CorpusError {
    #[error("empty sentence")]
    EmptySentence,
    #[error("sentence has {0} tokens; at most {MAX_TOKENS} are allowed")]
    SentenceTooLong(usize),
    #[error("empty token at position {0}")]
    EmptyToken(usize),
    #[error("not a letter: {0:?}")]
    NotALetter(char),
    #[error("invalid edit: {0}")]
    InvalidEdit(String),
    #[error("word uncorruptible: {0:?}")]
    Uncorruptible(String),
    #[error("not enough corruptible words in {id:?}: need {needed}, have {available}")]
    NotEnoughCorruptible {
        id: String,
        needed: usize,
        available: usize,
    },
    #[error("error level must be 1, 2 or 3 (got {0})")]
    InvalidLevel(u8),
    #[error("invalid plan: {0}")]
    InvalidPlan(String),
    #[error(
        "cannot produce {requested} distinct level-{level} variants of base sentence {base_id:?}"
    )]
    Unsatisfiable {
        base_id: String,
        level: u8,
        requested: usize,
    },
    #[error("lexicon is empty: {0}")]
    EmptyLexicon(String),
    #[error("line {line}: {message}")]
    Malformed { line: usize, message: String },
    #[error("line {line}: invariant violated: {invariant}")]
    Invariant { line: usize, invariant: String },
    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
}

impl CorpusError {
    pub(crate) fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        CorpusError::Io {
            path: path.into(),
            source,
        }
    }
}

/// A corrupted copy of a base sentence.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NoisySentence {
    pub base_id: String,
    pub error_level: u8,
    pub tokens: Vec<Token>,
    /// Sorted by `word_index`.
    pub edits: Vec<Edit>,
}

impl NoisySentence {
    pub fn text(&self) -> String {
        detokenize(&self.tokens)
    }

    /// Checks every structural invariant against the base sentence, and the
    /// non-word guarantee when a lexicon is supplied.
    pub fn validate(&self, base: &Sentence, lexicon: Option<&Lexicon>) -> Result<(), String> {
        if !(1..=3).contains(&self.error_level) {
            return Err(format!("error_level {} not in 1..=3", self.error_level));
        }
        if self.base_id != base.id {
            return Err(format!(
                "base_id {:?} does not match base {:?}",
                self.base_id, base.id
            ));
        }
        if self.edits.len() != usize::from(self.error_level) {
            return Err(format!(
                "{} edits recorded for error level {}",
                self.edits.len(),
                self.error_level
            ));
        }
        if self.tokens.len() != base.tokens.len() {
            return Err(format!(
                "noisy token count {} differs from base token count {}",
                self.tokens.len(),
                base.tokens.len()
            ));
        }
        let mut edited = vec![None; base.tokens.len()];
        for e in &self.edits {
            if e.word_index == 0 || e.word_index > base.tokens.len() {
                return Err(format!("edit word_index {} out of range", e.word_index));
            }
            if edited[e.word_index - 1].replace(e).is_some() {
                return Err(format!("duplicate edit word_index {}", e.word_index));
            }
        }
        for (i, (orig, noisy)) in base.tokens.iter().zip(&self.tokens).enumerate() {
            match edited[i] {
                None => {
                    if orig.text != noisy.text {
                        return Err(format!("uncorrupted token {} differs from base", i + 1));
                    }
                }
                Some(e) => {
                    if !orig.corruptible {
                        return Err(format!("token {} is not corruptible", i + 1));
                    }
                    let expected = apply_edit(&orig.text, e).map_err(|err| err.to_string())?;
                    if expected != noisy.text {
                        return Err(format!(
                            "token {} is {:?} but its edit yields {:?}",
                            i + 1,
                            noisy.text,
                            expected
                        ));
                    }
                    if let Some(lex) = lexicon {
                        if lex.contains(&noisy.text) {
                            return Err(format!(
                                "corrupted token {:?} is a valid word",
                                noisy.text
                            ));
                        }
                    }
                }
            }
        }
        Ok(())
    }
}

/// Clean base sentences plus their noisy variants.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TestCorpus {
    pub base: Vec<Sentence>,
    pub noisy: Vec<NoisySentence>,
    pub seed: u64,
    pub lexicon_source: String,
}

impl TestCorpus {
    pub fn base_by_id(&self, id: &str) -> Option<&Sentence> {
        self.base.iter().find(|s| s.id == id)
    }

    /// Noisy sentences of one error level, in corpus order.
    pub fn level(&self, level: u8) -> impl Iterator<Item = &NoisySentence> {
        self.noisy.iter().filter(move |n| n.error_level == level)
    }

    /// Error levels present, ascending.
    pub fn levels(&self) -> Vec<u8> {
        let mut levels: Vec<u8> = self.noisy.iter().map(|n| n.error_level).collect();
        levels.sort_unstable();
        levels.dedup();
        levels
    }

    /// Mean number of word tokens (tokens containing a letter or digit) per base sentence.
    pub fn average_base_length(&self) -> f64 {
        if self.base.is_empty() {
            return 0.0;
        }
        let words: usize = self.base.iter().map(Sentence::word_count).sum();
        words as f64 / self.base.len() as f64
    }
}
