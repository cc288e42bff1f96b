use super::CorpusError;

pub const MAX_TOKENS: usize = 1000;

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Token {
    /// 1-based position in the sentence.
    pub index: usize,
    pub text: String,
    pub corruptible: bool,
}

impl Token {
    pub fn new(index: usize, text: impl Into<String>) -> Self {
        let text = text.into();
        let corruptible = is_corruptible(&text);
        Token {
            index,
            text,
            corruptible,
        }
    }
}

/// A word may be corrupted when it is purely ASCII-alphabetic and at least
/// three characters long.
pub fn is_corruptible(word: &str) -> bool {
    word.len() >= 3 && word.bytes().all(|b| b.is_ascii_alphabetic())
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Sentence {
    pub id: String,
    pub tokens: Vec<Token>,
}

impl Sentence {
    /// Builds a sentence from already-split token texts.
    pub fn from_tokens<S: AsRef<str>>(
        id: impl Into<String>,
        texts: &[S],
    ) -> Result<Self, CorpusError> {
        if texts.is_empty() {
            return Err(CorpusError::EmptySentence);
        }
        if texts.len() > MAX_TOKENS {
            return Err(CorpusError::SentenceTooLong(texts.len()));
        }
        if let Some(pos) = texts.iter().position(|t| t.as_ref().is_empty()) {
            return Err(CorpusError::EmptyToken(pos + 1));
        }
        let tokens = texts
            .iter()
            .enumerate()
            .map(|(i, t)| Token::new(i + 1, t.as_ref()))
            .collect();
        Ok(Sentence {
            id: id.into(),
            tokens,
        })
    }

    pub fn with_id(mut self, id: impl Into<String>) -> Self {
        self.id = id.into();
        self
    }

    pub fn len(&self) -> usize {
        self.tokens.len()
    }

    pub fn is_empty(&self) -> bool {
        self.tokens.is_empty()
    }

    pub fn text(&self) -> String {
        detokenize(&self.tokens)
    }

    pub fn corruptible_count(&self) -> usize {
        self.tokens.iter().filter(|t| t.corruptible).count()
    }

    pub fn word_count(&self) -> usize {
        self.tokens
            .iter()
            .filter(|t| t.text.chars().any(char::is_alphanumeric))
            .count()
    }
}

/// Splits on whitespace, peeling leading and trailing punctuation off each
/// chunk as one-character tokens. The returned sentence has an empty id.
pub fn tokenize(text: &str) -> Result<Sentence, CorpusError> {
    let mut texts: Vec<String> = Vec::new();
    for chunk in text.split_whitespace() {
        let chars: Vec<char> = chunk.chars().collect();
        let is_punct = |c: &char| !c.is_alphanumeric();
        let lead = chars.iter().take_while(|c| is_punct(c)).count();
        if lead == chars.len() {
            texts.extend(chars.iter().map(char::to_string));
            continue;
        }
        let trail = chars.iter().rev().take_while(|c| is_punct(c)).count();
        texts.extend(chars[..lead].iter().map(char::to_string));
        texts.push(chars[lead..chars.len() - trail].iter().collect());
        texts.extend(chars[chars.len() - trail..].iter().map(char::to_string));
    }
    Sentence::from_tokens("", &texts)
}

pub fn detokenize(tokens: &[Token]) -> String {
    let mut out = String::new();
    for (i, t) in tokens.iter().enumerate() {
        if i > 0 {
            out.push(' ');
        }
        out.push_str(&t.text);
    }
    out
}
