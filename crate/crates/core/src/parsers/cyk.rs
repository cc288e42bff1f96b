//! Viterbi CYK chart parsing.
//!
//! Chart cells hold the best log-probability with which each symbol derives
//! a span, filled bottom-up by span length. Candidates are visited split
//! point first, then rule in (lhs, left, right) order, and a candidate only
//! replaces the incumbent when strictly better, so ties resolve to the
//! smallest split point and then the smallest rule.

use std::fmt;

use super::grammar::PcfgGrammar;

#[derive(Debug, Clone, PartialEq)]
pub enum DerivationNode {
    Leaf {
        symbol: String,
        word: String,
    },
    Branch {
        symbol: String,
        left: Box<DerivationNode>,
        right: Box<DerivationNode>,
    },
}

impl DerivationNode {
    pub fn symbol(&self) -> &str {
        match self {
            DerivationNode::Leaf { symbol, .. } | DerivationNode::Branch { symbol, .. } => symbol,
        }
    }

    pub fn words(&self) -> Vec<&str> {
        let mut out = Vec::new();
        self.collect_words(&mut out);
        out
    }

    fn collect_words<'a>(&'a self, out: &mut Vec<&'a str>) {
        match self {
            DerivationNode::Leaf { word, .. } => out.push(word),
            DerivationNode::Branch { left, right, .. } => {
                left.collect_words(out);
                right.collect_words(out);
            }
        }
    }

    /// Log-probability of this derivation under `g`, recomputed rule by rule.
    pub fn log_prob_under(&self, g: &PcfgGrammar) -> Option<f64> {
        match self {
            DerivationNode::Leaf { symbol, word } => {
                let id = g.symbol_id(symbol)?;
                g.word_options(word)
                    .into_iter()
                    .find(|&(s, _)| s == id)
                    .map(|(_, p)| p.ln())
            }
            DerivationNode::Branch {
                symbol,
                left,
                right,
            } => {
                let (lhs, l, r) = (
                    g.symbol_id(symbol)?,
                    g.symbol_id(left.symbol())?,
                    g.symbol_id(right.symbol())?,
                );
                let rule = g
                    .binary_rules()
                    .iter()
                    .find(|b| b.lhs == lhs && b.left == l && b.right == r)?;
                Some(rule.prob.ln() + left.log_prob_under(g)? + right.log_prob_under(g)?)
            }
        }
    }
}

impl fmt::Display for DerivationNode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            DerivationNode::Leaf { symbol, word } => write!(f, "({symbol} {word})"),
            DerivationNode::Branch {
                symbol,
                left,
                right,
            } => write!(f, "({symbol} {left} {right})"),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct DerivationTree {
    pub root: DerivationNode,
    pub log_prob: f64,
}

impl DerivationTree {
    pub fn probability(&self) -> f64 {
        self.log_prob.exp()
    }
}

impl fmt::Display for DerivationTree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.root.fmt(f)
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
enum Back {
    Empty,
    Leaf,
    Split { k: usize, left: usize, right: usize },
}

/// Filled Viterbi chart for one sentence.
#[derive(Debug, Clone)]
pub struct Chart {
    n: usize,
    n_symbols: usize,
    score: Vec<f64>,
    back: Vec<Back>,
}

impl Chart {
    fn idx(&self, i: usize, j: usize, sym: usize) -> usize {
        debug_assert!(i < j && j <= self.n);
        (i * (self.n + 1) + j) * self.n_symbols + sym
    }

    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    /// Best log-probability of `sym` deriving words `i..j`, or -inf.
    pub fn log_prob(&self, i: usize, j: usize, sym: usize) -> f64 {
        self.score[self.idx(i, j, sym)]
    }

    pub fn symbols(&self) -> usize {
        self.n_symbols
    }
}

pub fn cyk_chart<S: AsRef<str>>(g: &PcfgGrammar, words: &[S]) -> Chart {
    let n = words.len();
    let n_symbols = g.symbols().len();
    let size = (n + 1) * (n + 1) * n_symbols;
    let mut chart = Chart {
        n,
        n_symbols,
        score: vec![f64::NEG_INFINITY; size],
        back: vec![Back::Empty; size],
    };
    if n == 0 {
        return chart;
    }
    let log_rules: Vec<f64> = g.binary_rules().iter().map(|r| r.prob.ln()).collect();

    for (i, w) in words.iter().enumerate() {
        for (sym, p) in g.word_options(w.as_ref()) {
            let at = chart.idx(i, i + 1, sym);
            let lp = p.ln();
            if lp > chart.score[at] {
                chart.score[at] = lp;
                chart.back[at] = Back::Leaf;
            }
        }
    }

    for span in 2..=n {
        for i in 0..=n - span {
            let j = i + span;
            for k in i + 1..j {
                for (rule, &lr) in g.binary_rules().iter().zip(&log_rules) {
                    let l = chart.score[chart.idx(i, k, rule.left)];
                    if l == f64::NEG_INFINITY {
                        continue;
                    }
                    let r = chart.score[chart.idx(k, j, rule.right)];
                    if r == f64::NEG_INFINITY {
                        continue;
                    }
                    let cand = lr + l + r;
                    let at = chart.idx(i, j, rule.lhs);
                    if cand > chart.score[at] {
                        chart.score[at] = cand;
                        chart.back[at] = Back::Split {
                            k,
                            left: rule.left,
                            right: rule.right,
                        };
                    }
                }
            }
        }
    }
    chart
}

fn rebuild<S: AsRef<str>>(
    g: &PcfgGrammar,
    chart: &Chart,
    words: &[S],
    i: usize,
    j: usize,
    sym: usize,
) -> DerivationNode {
    match chart.back[chart.idx(i, j, sym)] {
        Back::Leaf => DerivationNode::Leaf {
            symbol: g.symbol(sym).to_string(),
            word: words[i].as_ref().to_string(),
        },
        Back::Split { k, left, right } => DerivationNode::Branch {
            symbol: g.symbol(sym).to_string(),
            left: Box::new(rebuild(g, chart, words, i, k, left)),
            right: Box::new(rebuild(g, chart, words, k, j, right)),
        },
        Back::Empty => unreachable!("back-pointer into an empty chart cell"),
    }
}

/// The most probable derivation of the start symbol over `words`, or `None`
/// when the start symbol does not cover the sentence.
pub fn cyk_parse<S: AsRef<str>>(g: &PcfgGrammar, words: &[S]) -> Option<DerivationTree> {
    let chart = cyk_chart(g, words);
    if chart.is_empty() {
        return None;
    }
    let n = chart.len();
    let log_prob = chart.log_prob(0, n, g.start());
    if log_prob == f64::NEG_INFINITY {
        return None;
    }
    Some(DerivationTree {
        root: rebuild(g, &chart, words, 0, n, g.start()),
        log_prob,
    })
}
