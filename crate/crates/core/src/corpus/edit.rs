use serde::{Deserialize, Serialize};

use super::keyboard::{are_adjacent, keyboard_neighbors};
use super::CorpusError;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum EditOp {
    Delete,
    Add,
    Swap,
}

impl EditOp {
    pub const ALL: [EditOp; 3] = [EditOp::Delete, EditOp::Add, EditOp::Swap];
}

/// A single character edit applied to one word of a sentence.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Edit {
    /// 1-based token position.
    pub word_index: usize,
    pub op: EditOp,
    /// 0-based character position in the original word. For `Add` the new
    /// character goes immediately after this position; for `Swap` this
    /// character trades places with the next one.
    pub char_index: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub inserted_char: Option<char>,
}

impl Edit {
    pub fn delete(word_index: usize, char_index: usize) -> Self {
        Edit {
            word_index,
            op: EditOp::Delete,
            char_index,
            inserted_char: None,
        }
    }

    pub fn add(word_index: usize, char_index: usize, c: char) -> Self {
        Edit {
            word_index,
            op: EditOp::Add,
            char_index,
            inserted_char: Some(c),
        }
    }

    pub fn swap(word_index: usize, char_index: usize) -> Self {
        Edit {
            word_index,
            op: EditOp::Swap,
            char_index,
            inserted_char: None,
        }
    }
}

fn invalid(msg: impl Into<String>) -> CorpusError {
    CorpusError::InvalidEdit(msg.into())
}

pub fn apply_edit(word: &str, e: &Edit) -> Result<String, CorpusError> {
    let mut chars: Vec<char> = word.chars().collect();
    let len = chars.len();
    let i = e.char_index;
    match e.op {
        EditOp::Delete => {
            if e.inserted_char.is_some() {
                return Err(invalid("delete carries an inserted character"));
            }
            if i >= len {
                return Err(invalid(format!("delete position {i} outside {word:?}")));
            }
            if len < 3 {
                return Err(invalid(format!(
                    "deleting from {word:?} leaves fewer than 2 characters"
                )));
            }
            chars.remove(i);
        }
        EditOp::Add => {
            let c = e
                .inserted_char
                .ok_or_else(|| invalid("add without an inserted character"))?;
            if i >= len {
                return Err(invalid(format!("add position {i} outside {word:?}")));
            }
            if !c.is_ascii_alphabetic() || !are_adjacent(chars[i], c) {
                return Err(invalid(format!(
                    "{c:?} is not keyboard-adjacent to {:?}",
                    chars[i]
                )));
            }
            chars.insert(i + 1, c);
        }
        EditOp::Swap => {
            if e.inserted_char.is_some() {
                return Err(invalid("swap carries an inserted character"));
            }
            if i + 1 >= len {
                return Err(invalid(format!("swap position {i} outside {word:?}")));
            }
            if chars[i] == chars[i + 1] {
                return Err(invalid(format!(
                    "swapping identical characters in {word:?}"
                )));
            }
            chars.swap(i, i + 1);
        }
    }
    Ok(chars.into_iter().collect())
}

/// Every legal edit of `word` for one operation, in canonical order.
///
/// Inserted letters take the case of the character they follow.
pub fn legal_edits(word: &str, op: EditOp, word_index: usize) -> Vec<Edit> {
    let chars: Vec<char> = word.chars().collect();
    let len = chars.len();
    match op {
        EditOp::Delete if len >= 3 => (0..len).map(|i| Edit::delete(word_index, i)).collect(),
        EditOp::Delete => Vec::new(),
        EditOp::Add => chars
            .iter()
            .enumerate()
            .flat_map(|(i, &c)| {
                keyboard_neighbors(c)
                    .unwrap_or_default()
                    .into_iter()
                    .map(move |n| {
                        let n = if c.is_ascii_uppercase() {
                            n.to_ascii_uppercase()
                        } else {
                            n
                        };
                        Edit::add(word_index, i, n)
                    })
            })
            .collect(),
        EditOp::Swap => (0..len.saturating_sub(1))
            .filter(|&i| chars[i] != chars[i + 1])
            .map(|i| Edit::swap(word_index, i))
            .collect(),
    }
}
