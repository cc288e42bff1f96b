//! PCFG in Chomsky normal form.
//!
//! File format, one item per line:
//!
//! ```text
//! # comment
//! %start S
//! %unknown NN JJ :1e-6
//! S  -> NP VP : 1.0
//! NN -> 'dog' : 0.5
//! ```

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::path::Path;

use super::ParserError;

/// Maximum deviation of a left-hand side's rule probabilities from 1.
pub const NORMALIZATION_TOLERANCE: f64 = 1e-6;

#[derive(Debug, Clone, PartialEq)]
pub struct BinaryRule {
    pub lhs: usize,
    pub left: usize,
    pub right: usize,
    pub prob: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct LexicalRule {
    pub lhs: usize,
    pub word: String,
    pub prob: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct PcfgGrammar {
    /// Sorted by name, so index order is lexicographic order.
    symbols: Vec<String>,
    start: usize,
    /// Sorted by (lhs, left, right).
    binary: Vec<BinaryRule>,
    lexical: Vec<LexicalRule>,
    unknown_preterminals: Vec<usize>,
    unknown_prob: f64,
}

enum RawRhs {
    Binary(String, String),
    Word(String),
}

struct RawRule {
    line: usize,
    lhs: String,
    rhs: RawRhs,
    prob: f64,
}

fn syntax(line: usize, message: impl Into<String>) -> ParserError {
    ParserError::Grammar {
        line,
        message: message.into(),
    }
}

fn parse_prob(line: usize, s: &str) -> Result<f64, ParserError> {
    let p: f64 = s
        .trim()
        .parse()
        .map_err(|_| syntax(line, format!("bad probability {:?}", s.trim())))?;
    if !(p > 0.0 && p <= 1.0) {
        return Err(syntax(line, format!("probability {p} outside (0, 1]")));
    }
    Ok(p)
}

fn unquote(s: &str) -> Option<&str> {
    let inner = s
        .strip_prefix('\'')
        .and_then(|r| r.strip_suffix('\''))
        .or_else(|| s.strip_prefix('"').and_then(|r| r.strip_suffix('"')))?;
    (!inner.is_empty()).then_some(inner)
}

fn is_symbol(s: &str) -> bool {
    !s.is_empty() && !s.starts_with(['\'', '"', '%', '#']) && !s.contains(':')
}

impl PcfgGrammar {
    pub fn load(path: impl AsRef<Path>) -> Result<Self, ParserError> {
        let path = path.as_ref();
        let text = std::fs::read_to_string(path).map_err(|e| ParserError::io(path, e))?;
        text.parse()
    }

    /// Builds a grammar from rule lists. `lexical` entries are (lhs, word, p).
    pub fn new(
        start: &str,
        binary: &[(&str, &str, &str, f64)],
        lexical: &[(&str, &str, f64)],
        unknown: &[&str],
        unknown_prob: f64,
    ) -> Result<Self, ParserError> {
        let mut rules = Vec::new();
        for (i, &(lhs, l, r, p)) in binary.iter().enumerate() {
            rules.push(RawRule {
                line: i + 1,
                lhs: lhs.into(),
                rhs: RawRhs::Binary(l.into(), r.into()),
                prob: p,
            });
        }
        for (i, &(lhs, w, p)) in lexical.iter().enumerate() {
            rules.push(RawRule {
                line: binary.len() + i + 1,
                lhs: lhs.into(),
                rhs: RawRhs::Word(w.into()),
                prob: p,
            });
        }
        let unknown = if unknown.is_empty() {
            None
        } else {
            Some((
                unknown.iter().map(|s| s.to_string()).collect(),
                unknown_prob,
            ))
        };
        Self::assemble(Some(start.to_string()), rules, unknown)
    }

    fn assemble(
        start: Option<String>,
        rules: Vec<RawRule>,
        unknown: Option<(Vec<String>, f64)>,
    ) -> Result<Self, ParserError> {
        if rules.is_empty() {
            return Err(syntax(0, "grammar has no rules"));
        }
        for r in &rules {
            if !(r.prob > 0.0 && r.prob <= 1.0) {
                return Err(syntax(
                    r.line,
                    format!("probability {} outside (0, 1]", r.prob),
                ));
            }
        }
        let start = start.unwrap_or_else(|| rules[0].lhs.clone());

        let mut names: BTreeSet<&str> = BTreeSet::new();
        for r in &rules {
            names.insert(&r.lhs);
            if let RawRhs::Binary(a, b) = &r.rhs {
                names.insert(a);
                names.insert(b);
            }
        }
        let symbols: Vec<String> = names.iter().map(|s| s.to_string()).collect();
        let id: HashMap<&str, usize> = symbols
            .iter()
            .enumerate()
            .map(|(i, s)| (s.as_str(), i))
            .collect();

        let start_id = *id
            .get(start.as_str())
            .ok_or_else(|| ParserError::MissingStart(start.clone()))?;
        if !rules.iter().any(|r| r.lhs == start) {
            return Err(ParserError::MissingStart(start));
        }

        let mut sums: BTreeMap<&str, f64> = BTreeMap::new();
        let mut seen_binary = BTreeSet::new();
        let mut seen_lexical = BTreeSet::new();
        let mut binary = Vec::new();
        let mut lexical = Vec::new();
        for r in &rules {
            *sums.entry(&r.lhs).or_default() += r.prob;
            let lhs = id[r.lhs.as_str()];
            match &r.rhs {
                RawRhs::Binary(a, b) => {
                    let (left, right) = (id[a.as_str()], id[b.as_str()]);
                    if !seen_binary.insert((lhs, left, right)) {
                        return Err(syntax(
                            r.line,
                            format!("duplicate rule {} -> {a} {b}", r.lhs),
                        ));
                    }
                    binary.push(BinaryRule {
                        lhs,
                        left,
                        right,
                        prob: r.prob,
                    });
                }
                RawRhs::Word(w) => {
                    if !seen_lexical.insert((lhs, w.clone())) {
                        return Err(syntax(r.line, format!("duplicate rule {} -> '{w}'", r.lhs)));
                    }
                    lexical.push(LexicalRule {
                        lhs,
                        word: w.clone(),
                        prob: r.prob,
                    });
                }
            }
        }
        for (lhs, sum) in sums {
            if (sum - 1.0).abs() > NORMALIZATION_TOLERANCE {
                return Err(ParserError::Unnormalized {
                    lhs: lhs.to_string(),
                    sum,
                });
            }
        }
        binary.sort_by_key(|r| (r.lhs, r.left, r.right));

        let (unknown_preterminals, unknown_prob) = match unknown {
            None => (Vec::new(), 1.0),
            Some((names, p)) => {
                if !(p > 0.0 && p <= 1.0) {
                    return Err(syntax(
                        0,
                        format!("unknown-word probability {p} outside (0, 1]"),
                    ));
                }
                let mut ids = Vec::new();
                for n in names {
                    let i = *id.get(n.as_str()).ok_or(ParserError::UnknownSymbol(n))?;
                    if !ids.contains(&i) {
                        ids.push(i);
                    }
                }
                ids.sort_unstable();
                (ids, p)
            }
        };

        Ok(PcfgGrammar {
            symbols,
            start: start_id,
            binary,
            lexical,
            unknown_preterminals,
            unknown_prob,
        })
    }

    pub fn symbols(&self) -> &[String] {
        &self.symbols
    }

    pub fn symbol(&self, id: usize) -> &str {
        &self.symbols[id]
    }

    pub fn symbol_id(&self, name: &str) -> Option<usize> {
        self.symbols.binary_search_by(|s| s.as_str().cmp(name)).ok()
    }

    pub fn start(&self) -> usize {
        self.start
    }

    pub fn binary_rules(&self) -> &[BinaryRule] {
        &self.binary
    }

    pub fn lexical_rules(&self) -> &[LexicalRule] {
        &self.lexical
    }

    pub fn unknown_preterminals(&self) -> &[usize] {
        &self.unknown_preterminals
    }

    pub fn unknown_prob(&self) -> f64 {
        self.unknown_prob
    }

    pub fn rule_count(&self) -> usize {
        self.binary.len() + self.lexical.len()
    }

    /// Smallest probability any single derivation step can contribute.
    pub fn min_step_prob(&self) -> f64 {
        let rules = self
            .binary
            .iter()
            .map(|r| r.prob)
            .chain(self.lexical.iter().map(|r| r.prob));
        let unknown = (!self.unknown_preterminals.is_empty()).then_some(self.unknown_prob);
        rules.chain(unknown).fold(1.0, f64::min)
    }

    /// Preterminal options for one word: the lexical rules for the word as
    /// written, else for its lowercase form, else the unknown-word symbols.
    pub fn word_options(&self, word: &str) -> Vec<(usize, f64)> {
        let exact: Vec<(usize, f64)> = self
            .lexical
            .iter()
            .filter(|r| r.word == word)
            .map(|r| (r.lhs, r.prob))
            .collect();
        if !exact.is_empty() {
            return exact;
        }
        let lower = word.to_lowercase();
        let folded: Vec<(usize, f64)> = self
            .lexical
            .iter()
            .filter(|r| r.word == lower)
            .map(|r| (r.lhs, r.prob))
            .collect();
        if !folded.is_empty() {
            return folded;
        }
        self.unknown_preterminals
            .iter()
            .map(|&s| (s, self.unknown_prob))
            .collect()
    }
}

impl std::str::FromStr for PcfgGrammar {
    type Err = ParserError;

    fn from_str(text: &str) -> Result<Self, Self::Err> {
        let mut start = None;
        let mut unknown = None;
        let mut rules = Vec::new();
        for (i, raw) in text.lines().enumerate() {
            let line = i + 1;
            let l = raw.trim();
            if l.is_empty() || l.starts_with('#') {
                continue;
            }
            if let Some(rest) = l.strip_prefix("%start") {
                let s = rest.trim();
                if !is_symbol(s) || s.contains(char::is_whitespace) {
                    return Err(syntax(line, format!("bad start symbol {s:?}")));
                }
                start = Some(s.to_string());
                continue;
            }
            if let Some(rest) = l.strip_prefix("%unknown") {
                let (syms, p) = rest
                    .rsplit_once(':')
                    .ok_or_else(|| syntax(line, "expected %unknown SYM... :p"))?;
                let syms: Vec<String> = syms.split_whitespace().map(String::from).collect();
                if syms.is_empty() || !syms.iter().all(|s| is_symbol(s)) {
                    return Err(syntax(line, "expected %unknown SYM... :p"));
                }
                unknown = Some((syms, parse_prob(line, p)?));
                continue;
            }
            if l.starts_with('%') {
                return Err(syntax(line, format!("unknown directive {l:?}")));
            }
            let (lhs, rest) = l
                .split_once("->")
                .ok_or_else(|| syntax(line, "expected LHS -> RHS : p"))?;
            let (rhs, p) = rest
                .rsplit_once(':')
                .ok_or_else(|| syntax(line, "missing ': probability'"))?;
            let lhs = lhs.trim();
            if !is_symbol(lhs) || lhs.contains(char::is_whitespace) {
                return Err(syntax(line, format!("bad left-hand side {lhs:?}")));
            }
            let parts: Vec<&str> = rhs.split_whitespace().collect();
            let rhs = match parts.as_slice() {
                [w] if unquote(w).is_some() => RawRhs::Word(unquote(w).unwrap_or_default().into()),
                [a, b] if is_symbol(a) && is_symbol(b) => {
                    RawRhs::Binary(a.to_string(), b.to_string())
                }
                _ => {
                    return Err(ParserError::NotCnf {
                        line,
                        rule: l.to_string(),
                    })
                }
            };
            rules.push(RawRule {
                line,
                lhs: lhs.to_string(),
                rhs,
                prob: parse_prob(line, p)?,
            });
        }
        Self::assemble(start, rules, unknown)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const G1: &str = "S -> A B : 1.0\nA -> 'a' : 1.0\nB -> 'b' : 1.0\n";

    #[test]
    fn loads_minimal_grammar() {
        let g: PcfgGrammar = G1.parse().unwrap();
        assert_eq!(g.symbols(), ["A", "B", "S"]);
        assert_eq!(g.symbol(g.start()), "S");
        assert_eq!(g.binary_rules().len(), 1);
        assert_eq!(g.lexical_rules().len(), 2);
        assert!(g.unknown_preterminals().is_empty());
        assert_eq!(g.word_options("a"), vec![(g.symbol_id("A").unwrap(), 1.0)]);
        assert!(g.word_options("c").is_empty());
    }

    #[test]
    fn directives_and_comments() {
        let text = "# toy\n%start S\n%unknown A B :1e-6\n\nX -> 'x' : 1\n".to_string() + G1;
        let g: PcfgGrammar = text.parse().unwrap();
        assert_eq!(g.symbol(g.start()), "S");
        assert_eq!(g.unknown_prob(), 1e-6);
        assert_eq!(g.unknown_preterminals().len(), 2);
        let opts = g.word_options("zzz");
        assert_eq!(opts.len(), 2);
        assert!(opts.iter().all(|&(_, p)| p == 1e-6));
        assert_eq!(g.min_step_prob(), 1e-6);
    }

    #[test]
    fn default_start_is_first_lhs() {
        let g: PcfgGrammar = "T -> 'x' : 1.0\n".parse().unwrap();
        assert_eq!(g.symbol(g.start()), "T");
    }

    #[test]
    fn lowercase_fallback() {
        let g: PcfgGrammar = "D -> 'the' : 1.0\n".parse().unwrap();
        assert_eq!(g.word_options("The").len(), 1);
        assert_eq!(g.word_options("THE").len(), 1);
    }

    #[test]
    fn rejects_unnormalized_lhs() {
        let text = "S -> A B : 0.9\nA -> 'a' : 1.0\nB -> 'b' : 1.0\n";
        match text.parse::<PcfgGrammar>() {
            Err(ParserError::Unnormalized { lhs, sum }) => {
                assert_eq!(lhs, "S");
                assert!((sum - 0.9).abs() < 1e-12);
            }
            other => panic!("{other:?}"),
        }
        // within tolerance
        let text = "S -> A B : 0.9999999\nA -> 'a' : 1.0\nB -> 'b' : 1.0\n";
        assert!(text.parse::<PcfgGrammar>().is_ok());
    }

    #[test]
    fn rejects_non_cnf() {
        let text = "S -> A B : 0.5\nS -> A B C : 0.5\n";
        assert!(matches!(
            text.parse::<PcfgGrammar>(),
            Err(ParserError::NotCnf { line: 2, .. })
        ));
        for bad in [
            "S -> A : 1.0",
            "S -> 'a' B : 1.0",
            "S -> 'a' 'b' : 1.0",
            "S -> : 1.0",
        ] {
            assert!(
                matches!(
                    bad.parse::<PcfgGrammar>(),
                    Err(ParserError::NotCnf { line: 1, .. })
                ),
                "{bad}"
            );
        }
    }

    #[test]
    fn rejects_bad_lines() {
        for (bad, line) in [
            ("S -> A B", 1),
            ("S A B : 1", 1),
            ("S -> 'a' : 1.5", 1),
            ("S -> 'a' : 0", 1),
            ("S -> 'a' : x", 1),
            ("S -> 'a' : 1.0\n%bogus", 2),
            ("S -> 'a' : 0.5\nS -> 'a' : 0.5", 2),
        ] {
            match bad.parse::<PcfgGrammar>() {
                Err(ParserError::Grammar { line: l, .. }) => assert_eq!(l, line, "{bad}"),
                other => panic!("{bad}: {other:?}"),
            }
        }
        assert!(matches!(
            "%start Z\nS -> 'a' : 1".parse::<PcfgGrammar>(),
            Err(ParserError::MissingStart(_))
        ));
        assert!(matches!(
            "%unknown Q :0.1\nS -> 'a' : 1".parse::<PcfgGrammar>(),
            Err(ParserError::UnknownSymbol(_))
        ));
    }

    #[test]
    fn terminal_may_contain_colon() {
        let g: PcfgGrammar = "P -> ':' : 1.0\n".parse().unwrap();
        assert_eq!(g.lexical_rules()[0].word, ":");
    }

    #[test]
    fn builder_matches_text_form() {
        let built = PcfgGrammar::new(
            "S",
            &[("S", "A", "B", 1.0)],
            &[("A", "a", 1.0), ("B", "b", 1.0)],
            &[],
            1.0,
        )
        .unwrap();
        assert_eq!(built, G1.parse::<PcfgGrammar>().unwrap());
    }
}
