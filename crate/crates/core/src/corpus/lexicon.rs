use std::collections::HashSet;
use std::path::Path;

use super::CorpusError;

/// Set of valid words used to reject corruptions that land on a real word.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Lexicon {
    words: HashSet<String>,
    source_path: String,
}

impl Lexicon {
    /// Reads one word per line. Blank lines and lines starting with `#` are skipped.
    pub fn load(path: impl AsRef<Path>) -> Result<Self, CorpusError> {
        let path = path.as_ref();
        let text = std::fs::read_to_string(path).map_err(|e| CorpusError::io(path, e))?;
        Self::parse(&text, path.display().to_string())
    }

    pub fn parse(text: &str, source: impl Into<String>) -> Result<Self, CorpusError> {
        let words = text
            .lines()
            .map(str::trim)
            .filter(|l| !l.is_empty() && !l.starts_with('#'));
        Self::from_words(words, source)
    }

    pub fn from_words<I, S>(words: I, source: impl Into<String>) -> Result<Self, CorpusError>
    where
        I: IntoIterator<Item = S>,
        S: AsRef<str>,
    {
        let source = source.into();
        let words: HashSet<String> = words
            .into_iter()
            .map(|w| w.as_ref().to_lowercase())
            .collect();
        if words.is_empty() {
            return Err(CorpusError::EmptyLexicon(source));
        }
        Ok(Lexicon {
            words,
            source_path: source,
        })
    }

    pub fn contains(&self, word: &str) -> bool {
        self.words.contains(&word.to_lowercase())
    }

    pub fn len(&self) -> usize {
        self.words.len()
    }

    pub fn is_empty(&self) -> bool {
        self.words.is_empty()
    }

    pub fn source(&self) -> &str {
        &self.source_path
    }
}
