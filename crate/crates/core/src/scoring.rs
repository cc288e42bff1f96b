//! Robustness measures over clean/noisy parse pairs.
//!
//! A pair is accepted when neither parse failed and the two analyses match.
//! Inclusive scores divide by every pair, exclusive scores by the pairs
//! without failures. Overall scores are pair-weighted from raw counts.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::parsegraph::{labeled_equal, structure_equal, ParseOutcome};

#[derive(Debug, Error, PartialEq)]
pub enum ScoringError {
    #[error("no verdicts to score")]
    Empty,
    #[error("verdicts mix error levels {0} and {1}")]
    MixedLevels(u8, u8),
    #[error("level {0} appears more than once")]
    DuplicateLevel(u8),
    #[error("invalid counts: {0}")]
    InvalidCounts(String),
    #[error("undefined degradation: level-1 score is {0}")]
    UndefinedDegradation(f64),
    #[error("undefined F-score: precision + recall is 0")]
    UndefinedFscore,
    #[error("score invariant violated: {0}")]
    Invariant(String),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PairVerdict {
    pub base_id: String,
    pub error_level: u8,
    pub cs_failed: bool,
    pub ns_failed: bool,
    pub structural_match: bool,
    pub labeled_match: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub reason: Option<String>,
}

impl PairVerdict {
    pub fn failed(&self) -> bool {
        self.cs_failed || self.ns_failed
    }
}

pub fn compare_pair(cs: &ParseOutcome, ns: &ParseOutcome, level: u8, base_id: &str) -> PairVerdict {
    let mut v = PairVerdict {
        base_id: base_id.to_string(),
        error_level: level,
        cs_failed: cs.is_failed(),
        ns_failed: ns.is_failed(),
        structural_match: false,
        labeled_match: false,
        reason: None,
    };
    if let (Some(a), Some(b)) = (cs.graph(), ns.graph()) {
        match (structure_equal(a, b), labeled_equal(a, b)) {
            (Ok(s), Ok(l)) => {
                v.structural_match = s;
                v.labeled_match = l;
            }
            (Err(e), _) | (_, Err(e)) => v.reason = Some(e.to_string()),
        }
    }
    v
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LevelScore {
    pub level: u8,
    pub n_pairs: usize,
    pub n_failures: usize,
    pub unlabeled_accepted: usize,
    pub labeled_accepted: usize,
    pub unlabeled_incl: f64,
    pub labeled_incl: f64,
    pub unlabeled_excl: f64,
    pub labeled_excl: f64,
}

fn percent(num: usize, den: usize) -> f64 {
    if den == 0 {
        0.0
    } else {
        100.0 * num as f64 / den as f64
    }
}

impl LevelScore {
    pub fn from_counts(
        level: u8,
        n_pairs: usize,
        n_failures: usize,
        unlabeled_accepted: usize,
        labeled_accepted: usize,
    ) -> Result<Self, ScoringError> {
        if n_pairs == 0 {
            return Err(ScoringError::Empty);
        }
        if n_failures > n_pairs
            || unlabeled_accepted > n_pairs - n_failures
            || labeled_accepted > unlabeled_accepted
        {
            return Err(ScoringError::InvalidCounts(format!(
                "level {level}: pairs {n_pairs}, failures {n_failures}, \
                 unlabeled {unlabeled_accepted}, labeled {labeled_accepted}"
            )));
        }
        let ok = n_pairs - n_failures;
        Ok(LevelScore {
            level,
            n_pairs,
            n_failures,
            unlabeled_accepted,
            labeled_accepted,
            unlabeled_incl: percent(unlabeled_accepted, n_pairs),
            labeled_incl: percent(labeled_accepted, n_pairs),
            unlabeled_excl: percent(unlabeled_accepted, ok),
            labeled_excl: percent(labeled_accepted, ok),
        })
    }

    pub fn check_invariants(&self) -> Result<(), ScoringError> {
        let bad = |m: String| {
            Err(ScoringError::Invariant(format!(
                "level {}: {m}",
                self.level
            )))
        };
        if !(0.0..=100.0).contains(&self.unlabeled_incl)
            || !(0.0..=100.0).contains(&self.unlabeled_excl)
        {
            return bad("score outside 0..100".into());
        }
        if self.labeled_incl > self.unlabeled_incl || self.labeled_excl > self.unlabeled_excl {
            return bad("labeled score above unlabeled".into());
        }
        if self.labeled_incl < 0.0 || self.labeled_excl < 0.0 {
            return bad("negative score".into());
        }
        let ok = (self.n_pairs - self.n_failures) as f64 / self.n_pairs as f64;
        for (incl, excl) in [
            (self.unlabeled_incl, self.unlabeled_excl),
            (self.labeled_incl, self.labeled_excl),
        ] {
            if (incl - excl * ok).abs() > 1e-9 {
                return bad(format!("inclusive {incl} != exclusive {excl} x {ok}"));
            }
        }
        Ok(())
    }
}

pub fn score_level(verdicts: &[PairVerdict]) -> Result<LevelScore, ScoringError> {
    let first = verdicts.first().ok_or(ScoringError::Empty)?;
    let level = first.error_level;
    let (mut failures, mut unlabeled, mut labeled) = (0, 0, 0);
    for v in verdicts {
        if v.error_level != level {
            return Err(ScoringError::MixedLevels(level, v.error_level));
        }
        if v.failed() {
            failures += 1;
        } else {
            unlabeled += usize::from(v.structural_match);
            labeled += usize::from(v.labeled_match);
        }
    }
    LevelScore::from_counts(level, verdicts.len(), failures, unlabeled, labeled)
}

pub fn rescore_inclusive(
    excl_score: f64,
    n_pairs: usize,
    n_failures: usize,
) -> Result<f64, ScoringError> {
    if n_pairs == 0 || n_failures > n_pairs {
        return Err(ScoringError::InvalidCounts(format!(
            "pairs {n_pairs}, failures {n_failures}"
        )));
    }
    Ok(excl_score * (n_pairs - n_failures) as f64 / n_pairs as f64)
}

pub fn degradation(level1_score: f64, level3_score: f64) -> Result<f64, ScoringError> {
    if level1_score <= 0.0 {
        return Err(ScoringError::UndefinedDegradation(level1_score));
    }
    Ok(100.0 * (1.0 - level3_score / level1_score))
}

pub fn fscore(precision: f64, recall: f64) -> Result<f64, ScoringError> {
    if precision + recall <= 0.0 {
        return Err(ScoringError::UndefinedFscore);
    }
    Ok(2.0 * precision * recall / (precision + recall))
}

/// Rounds half away from zero to two decimals, for presentation only.
pub fn round2(x: f64) -> f64 {
    (x * 100.0).round() / 100.0
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Overall {
    pub unlabeled: f64,
    pub labeled: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Degradation {
    pub unlabeled: Option<f64>,
    pub labeled: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RobustnessReport {
    pub parser: String,
    pub levels: Vec<LevelScore>,
    pub overall: Overall,
    /// From level 1 to level 3; `None` when either level is missing or the
    /// level-1 score is 0.
    pub degradation: Degradation,
    /// Drops between every ordered pair of available levels, keyed "a-b".
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub supplementary_degradation: BTreeMap<String, Degradation>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub notes: Vec<String>,
}

impl RobustnessReport {
    pub fn level(&self, level: u8) -> Option<&LevelScore> {
        self.levels.iter().find(|l| l.level == level)
    }

    pub fn check_invariants(&self) -> Result<(), ScoringError> {
        for l in &self.levels {
            l.check_invariants()?;
        }
        if self.overall.labeled > self.overall.unlabeled {
            return Err(ScoringError::Invariant(
                "overall labeled above unlabeled".into(),
            ));
        }
        let pairs: usize = self.levels.iter().map(|l| l.n_pairs).sum();
        let acc: usize = self.levels.iter().map(|l| l.unlabeled_accepted).sum();
        if (self.overall.unlabeled - percent(acc, pairs)).abs() > 1e-9 {
            return Err(ScoringError::Invariant(
                "overall is not pair-weighted".into(),
            ));
        }
        Ok(())
    }
}

fn degradation_between(a: Option<&LevelScore>, b: Option<&LevelScore>) -> Degradation {
    match (a, b) {
        (Some(a), Some(b)) => Degradation {
            unlabeled: degradation(a.unlabeled_incl, b.unlabeled_incl).ok(),
            labeled: degradation(a.labeled_incl, b.labeled_incl).ok(),
        },
        _ => Degradation {
            unlabeled: None,
            labeled: None,
        },
    }
}

/// Combines per-level scores into a report. Levels are sorted; overall
/// scores are Σ accepted / Σ pairs over all levels.
pub fn aggregate(parser: &str, levels: &[LevelScore]) -> Result<RobustnessReport, ScoringError> {
    if levels.is_empty() {
        return Err(ScoringError::Empty);
    }
    let mut levels = levels.to_vec();
    levels.sort_by_key(|l| l.level);
    for w in levels.windows(2) {
        if w[0].level == w[1].level {
            return Err(ScoringError::DuplicateLevel(w[0].level));
        }
    }
    let pairs: usize = levels.iter().map(|l| l.n_pairs).sum();
    let unlabeled: usize = levels.iter().map(|l| l.unlabeled_accepted).sum();
    let labeled: usize = levels.iter().map(|l| l.labeled_accepted).sum();
    let get = |k: u8| levels.iter().find(|l| l.level == k);
    let mut supplementary = BTreeMap::new();
    for a in &levels {
        for b in levels.iter().filter(|b| b.level > a.level) {
            if (a.level, b.level) != (1, 3) {
                supplementary.insert(
                    format!("{}-{}", a.level, b.level),
                    degradation_between(Some(a), Some(b)),
                );
            }
        }
    }
    let report = RobustnessReport {
        parser: parser.to_string(),
        overall: Overall {
            unlabeled: percent(unlabeled, pairs),
            labeled: percent(labeled, pairs),
        },
        degradation: degradation_between(get(1), get(3)),
        supplementary_degradation: supplementary,
        levels,
        notes: Vec::new(),
    };
    Ok(report)
}

/// Scores verdicts of any mix of levels.
pub fn score_verdicts(
    parser: &str,
    verdicts: &[PairVerdict],
) -> Result<RobustnessReport, ScoringError> {
    let mut by_level: BTreeMap<u8, Vec<PairVerdict>> = BTreeMap::new();
    for v in verdicts {
        by_level.entry(v.error_level).or_default().push(v.clone());
    }
    let levels = by_level
        .values()
        .map(|vs| score_level(vs))
        .collect::<Result<Vec<_>, _>>()?;
    aggregate(parser, &levels)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parsegraph::{GraphMode, ParseGraph};

    fn graph(labels: &[&str]) -> ParseGraph {
        let mut g = ParseGraph::new(labels.len(), GraphMode::Directed);
        g.add_root(1, labels[0]).unwrap();
        for (i, l) in labels.iter().enumerate().skip(1) {
            g.add_edge(i, i + 1, *l).unwrap();
        }
        g
    }

    fn verdicts(
        level: u8,
        n: usize,
        failures: usize,
        unlabeled: usize,
        labeled: usize,
    ) -> Vec<PairVerdict> {
        (0..n)
            .map(|i| PairVerdict {
                base_id: format!("s{i}"),
                error_level: level,
                cs_failed: i < failures,
                ns_failed: false,
                structural_match: i >= failures && i < failures + unlabeled,
                labeled_match: i >= failures && i < failures + labeled,
                reason: None,
            })
            .collect()
    }

    #[test]
    fn compare_pair_examples() {
        let g = ParseOutcome::Parsed(graph(&["root", "a", "b"]));
        let v = compare_pair(&g, &g, 1, "s1");
        assert!(v.structural_match && v.labeled_match);

        let f = ParseOutcome::Failed("no parse".into());
        let v = compare_pair(&g, &f, 1, "s1");
        assert!(!v.structural_match && !v.labeled_match && v.ns_failed);

        let g2 = ParseOutcome::Parsed(graph(&["root", "a", "c"]));
        let v = compare_pair(&g, &g2, 1, "s1");
        assert!(v.structural_match && !v.labeled_match);

        let short = ParseOutcome::Parsed(graph(&["root", "a"]));
        let v = compare_pair(&g, &short, 2, "s1");
        assert!(!v.structural_match && !v.labeled_match && !v.failed());
        assert!(v.reason.unwrap().starts_with("incomparable"));
    }

    #[test]
    fn footnote_level_scores() {
        let s = score_level(&verdicts(1, 255, 23, 186, 155)).unwrap();
        assert_eq!(round2(s.unlabeled_incl), 72.94);
        assert_eq!(round2(s.unlabeled_excl), 80.17);
        assert_eq!(round2(s.labeled_incl), 60.78);
        assert_eq!(round2(s.labeled_excl), 66.81);
        s.check_invariants().unwrap();

        let all = score_level(&verdicts(2, 10, 0, 10, 10)).unwrap();
        assert_eq!((all.unlabeled_incl, all.unlabeled_excl), (100.0, 100.0));
        assert_eq!(score_level(&[]), Err(ScoringError::Empty));
    }

    #[test]
    fn all_failed_level_is_zero() {
        let s = score_level(&verdicts(3, 4, 4, 0, 0)).unwrap();
        assert_eq!((s.unlabeled_incl, s.unlabeled_excl), (0.0, 0.0));
        s.check_invariants().unwrap();
    }

    #[test]
    fn mixed_levels_rejected() {
        let mut vs = verdicts(1, 3, 0, 3, 3);
        vs[2].error_level = 2;
        assert_eq!(score_level(&vs), Err(ScoringError::MixedLevels(1, 2)));
    }

    #[test]
    fn rescore_examples() {
        assert!((rescore_inclusive(80.17, 255, 23).unwrap() - 72.94).abs() < 0.01);
        assert!((rescore_inclusive(66.81, 255, 23).unwrap() - 60.78).abs() < 0.01);
        assert_eq!(rescore_inclusive(42.5, 17, 0).unwrap(), 42.5);
        assert!(rescore_inclusive(50.0, 0, 0).is_err());
        assert!(rescore_inclusive(50.0, 3, 4).is_err());
    }

    #[test]
    fn aggregate_is_pair_weighted() {
        let levels = [
            LevelScore::from_counts(1, 255, 0, 186, 155).unwrap(),
            LevelScore::from_counts(2, 94, 0, 59, 32).unwrap(),
            LevelScore::from_counts(3, 94, 0, 38, 14).unwrap(),
        ];
        let r = aggregate("C&C", &levels).unwrap();
        assert_eq!(round2(r.overall.unlabeled), 63.88);
        assert_eq!(round2(r.overall.labeled), 45.37);
        r.check_invariants().unwrap();

        let one = aggregate("x", &[LevelScore::from_counts(1, 5, 0, 5, 5).unwrap()]).unwrap();
        assert_eq!(one.overall.unlabeled, 100.0);
        assert_eq!(one.degradation.unlabeled, None);

        assert_eq!(
            aggregate("x", &[levels[0].clone(), levels[0].clone()]),
            Err(ScoringError::DuplicateLevel(1))
        );
    }

    #[test]
    fn degradation_examples() {
        assert!((degradation(72.94, 40.43).unwrap() - 44.6).abs() < 0.1);
        assert!((degradation(40.39, 8.51).unwrap() - 78.9).abs() < 0.1);
        assert!((degradation(29.41, 1.06).unwrap() - 96.4).abs() < 0.1);
        assert_eq!(degradation(37.0, 37.0).unwrap(), 0.0);
        assert_eq!(degradation(37.0, 0.0).unwrap(), 100.0);
        assert!(matches!(
            degradation(0.0, 0.0),
            Err(ScoringError::UndefinedDegradation(_))
        ));
    }

    #[test]
    fn fscore_examples() {
        assert!((fscore(86.6, 92.1).unwrap() - 89.3).abs() < 0.05);
        assert!((fscore(54.6, 43.7).unwrap() - 48.5).abs() < 0.05);
        assert!((fscore(61.2, 61.2).unwrap() - 61.2).abs() < 1e-12);
        assert_eq!(fscore(0.0, 0.0), Err(ScoringError::UndefinedFscore));
    }

    #[test]
    fn report_json_shape() {
        let r = score_verdicts("chain", &verdicts(1, 4, 0, 4, 4)).unwrap();
        let v = serde_json::to_value(&r).unwrap();
        for key in ["parser", "levels", "overall", "degradation"] {
            assert!(v.get(key).is_some(), "{key}");
        }
        assert!(v["degradation"]["unlabeled"].is_null());
        let back: RobustnessReport = serde_json::from_value(v).unwrap();
        assert_eq!(back, r);
    }
}
