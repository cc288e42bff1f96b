//! Exhaustive derivation enumeration, used as an oracle for the chart parser.
//!
//! Works in plain probability space straight from the rule list and shares
//! no code with the CYK chart.

use super::cyk::{DerivationNode, DerivationTree};
use super::grammar::PcfgGrammar;
use super::ParserError;

pub const MAX_ENUMERATION_LENGTH: usize = 8;

fn leaf_options(g: &PcfgGrammar, word: &str) -> Vec<(usize, f64)> {
    for candidate in [word.to_string(), word.to_lowercase()] {
        let hits: Vec<(usize, f64)> = g
            .lexical_rules()
            .iter()
            .filter(|r| r.word == candidate)
            .map(|r| (r.lhs, r.prob))
            .collect();
        if !hits.is_empty() {
            return hits;
        }
    }
    g.unknown_preterminals()
        .iter()
        .map(|&s| (s, g.unknown_prob()))
        .collect()
}

fn derivations(
    g: &PcfgGrammar,
    leaves: &[Vec<(usize, f64)>],
    words: &[&str],
    sym: usize,
    i: usize,
    j: usize,
) -> Vec<(DerivationNode, f64)> {
    if j == i + 1 {
        return leaves[i]
            .iter()
            .filter(|&&(s, _)| s == sym)
            .map(|&(_, p)| {
                (
                    DerivationNode::Leaf {
                        symbol: g.symbol(sym).to_string(),
                        word: words[i].to_string(),
                    },
                    p,
                )
            })
            .collect();
    }
    let mut out = Vec::new();
    for k in i + 1..j {
        for rule in g.binary_rules().iter().filter(|r| r.lhs == sym) {
            let lefts = derivations(g, leaves, words, rule.left, i, k);
            if lefts.is_empty() {
                continue;
            }
            let rights = derivations(g, leaves, words, rule.right, k, j);
            for (l, pl) in &lefts {
                for (r, pr) in &rights {
                    out.push((
                        DerivationNode::Branch {
                            symbol: g.symbol(sym).to_string(),
                            left: Box::new(l.clone()),
                            right: Box::new(r.clone()),
                        },
                        rule.prob * pl * pr,
                    ));
                }
            }
        }
    }
    out
}

/// Every derivation of the start symbol over `words`, with its probability.
pub fn enumerate_parses<S: AsRef<str>>(
    g: &PcfgGrammar,
    words: &[S],
) -> Result<Vec<(DerivationTree, f64)>, ParserError> {
    if words.len() > MAX_ENUMERATION_LENGTH {
        return Err(ParserError::TooLong {
            len: words.len(),
            max: MAX_ENUMERATION_LENGTH,
        });
    }
    if words.is_empty() {
        return Ok(Vec::new());
    }
    let words: Vec<&str> = words.iter().map(AsRef::as_ref).collect();
    let leaves: Vec<Vec<(usize, f64)>> = words.iter().map(|w| leaf_options(g, w)).collect();
    Ok(derivations(g, &leaves, &words, g.start(), 0, words.len())
        .into_iter()
        .map(|(root, p)| {
            (
                DerivationTree {
                    root,
                    log_prob: p.ln(),
                },
                p,
            )
        })
        .collect())
}
