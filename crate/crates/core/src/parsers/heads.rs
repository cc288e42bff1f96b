//! Constituency to dependency conversion by head-child selection.

use std::collections::HashMap;
use std::path::Path;

use super::cyk::{DerivationNode, DerivationTree};
use super::ParserError;
use crate::parsegraph::{GraphMode, ParseGraph};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum HeadSide {
    Leftmost,
    Rightmost,
}

/// Which child heads each nonterminal. Unlisted symbols head leftmost.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct HeadRules {
    rules: HashMap<String, HeadSide>,
}

impl HeadRules {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn with(mut self, symbol: &str, side: HeadSide) -> Self {
        self.rules.insert(symbol.to_string(), side);
        self
    }

    pub fn load(path: impl AsRef<Path>) -> Result<Self, ParserError> {
        let path = path.as_ref();
        let text = std::fs::read_to_string(path).map_err(|e| ParserError::io(path, e))?;
        text.parse()
    }

    pub fn side(&self, symbol: &str) -> HeadSide {
        self.rules
            .get(symbol)
            .copied()
            .unwrap_or(HeadSide::Leftmost)
    }
}

impl std::str::FromStr for HeadRules {
    type Err = ParserError;

    /// Lines of `NONTERM leftmost|rightmost`; `#` starts a comment line.
    fn from_str(text: &str) -> Result<Self, Self::Err> {
        let mut rules = HashMap::new();
        for (i, raw) in text.lines().enumerate() {
            let l = raw.trim();
            if l.is_empty() || l.starts_with('#') {
                continue;
            }
            let bad = |message: String| ParserError::HeadRules {
                line: i + 1,
                message,
            };
            let parts: Vec<&str> = l.split_whitespace().collect();
            let [symbol, side] = parts.as_slice() else {
                return Err(bad(format!(
                    "expected `NONTERM leftmost|rightmost`, got {l:?}"
                )));
            };
            let side = match *side {
                "leftmost" => HeadSide::Leftmost,
                "rightmost" => HeadSide::Rightmost,
                other => return Err(bad(format!("unknown head side {other:?}"))),
            };
            if rules.insert(symbol.to_string(), side).is_some() {
                return Err(bad(format!("{symbol} listed twice")));
            }
        }
        Ok(HeadRules { rules })
    }
}

/// Converts a derivation into a directed dependency tree.
///
/// Each binary node's non-head child attaches its lexical head to the head
/// child's lexical head, labeled with the non-head child's symbol. The
/// sentence's lexical head attaches to the root with label `root`.
pub fn tree_to_dependencies(tree: &DerivationTree, heads: &HeadRules) -> ParseGraph {
    let n = tree.root.words().len();
    let mut g = ParseGraph::new(n, GraphMode::Directed);
    let mut next = 1;
    let head = attach(&tree.root, heads, &mut g, &mut next);
    g.add_root(head, "root")
        .expect("lexical head of the whole tree has no other head");
    g
}

fn attach(node: &DerivationNode, heads: &HeadRules, g: &mut ParseGraph, next: &mut usize) -> usize {
    match node {
        DerivationNode::Leaf { .. } => {
            let i = *next;
            *next += 1;
            i
        }
        DerivationNode::Branch {
            symbol,
            left,
            right,
        } => {
            let hl = attach(left, heads, g, next);
            let hr = attach(right, heads, g, next);
            let (head, dependent, label) = match heads.side(symbol) {
                HeadSide::Leftmost => (hl, hr, right.symbol()),
                HeadSide::Rightmost => (hr, hl, left.symbol()),
            };
            g.add_edge(head, dependent, label)
                .expect("each constituent head attaches exactly once");
            head
        }
    }
}
