use misparse::corpus::{build_corpus, LevelPlan, Lexicon, Sentence};
use misparse::parsegraph::{GraphMode, ParseGraph, ParseOutcome};
use misparse::scoring::{
    aggregate, compare_pair, degradation, rescore_inclusive, score_level, score_verdicts,
    PairVerdict,
};
use proptest::prelude::*;

/// (level, cs_failed, ns_failed, structural, labeled) with the verdict
/// invariants enforced.
fn verdict() -> impl Strategy<Value = PairVerdict> {
    (
        1u8..=3,
        any::<bool>(),
        any::<bool>(),
        any::<bool>(),
        any::<bool>(),
    )
        .prop_map(|(level, cs, ns, structural, labeled)| {
            let ok = !(cs || ns);
            PairVerdict {
                base_id: "b".into(),
                error_level: level,
                cs_failed: cs,
                ns_failed: ns,
                structural_match: ok && structural,
                labeled_match: ok && structural && labeled,
                reason: None,
            }
        })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(500))]

    #[test]
    fn labeled_never_exceeds_unlabeled(vs in prop::collection::vec(verdict(), 1..80)) {
        let r = score_verdicts("p", &vs).unwrap();
        prop_assert!(r.overall.labeled <= r.overall.unlabeled);
        for l in &r.levels {
            prop_assert!(l.labeled_incl <= l.unlabeled_incl);
            prop_assert!(l.labeled_excl <= l.unlabeled_excl);
            prop_assert!((0.0..=100.0).contains(&l.unlabeled_excl));
        }
        r.check_invariants().unwrap();
    }

    #[test]
    fn inclusive_is_rescored_exclusive(vs in prop::collection::vec(verdict(), 1..80)) {
        for l in score_verdicts("p", &vs).unwrap().levels {
            let u = rescore_inclusive(l.unlabeled_excl, l.n_pairs, l.n_failures).unwrap();
            let b = rescore_inclusive(l.labeled_excl, l.n_pairs, l.n_failures).unwrap();
            prop_assert!((u - l.unlabeled_incl).abs() < 1e-9);
            prop_assert!((b - l.labeled_incl).abs() < 1e-9);
        }
    }

    #[test]
    fn order_and_partition_invariant(
        vs in prop::collection::vec(verdict(), 1..80),
        seed in any::<u64>(),
    ) {
        let mut shuffled = vs.clone();
        // Deterministic Fisher-Yates driven by the seed.
        let mut x = seed | 1;
        for i in (1..shuffled.len()).rev() {
            x ^= x << 13;
            x ^= x >> 7;
            x ^= x << 17;
            shuffled.swap(i, (x % (i as u64 + 1)) as usize);
        }
        let r = score_verdicts("p", &vs).unwrap();
        prop_assert_eq!(&score_verdicts("p", &shuffled).unwrap(), &r);

        let levels: Vec<_> = [1u8, 2, 3]
            .iter()
            .filter_map(|k| {
                let sub: Vec<_> = vs.iter().filter(|v| v.error_level == *k).cloned().collect();
                (!sub.is_empty()).then(|| score_level(&sub).unwrap())
            })
            .collect();
        prop_assert_eq!(&aggregate("p", &levels).unwrap(), &r);
        let accepted = vs.iter().filter(|v| v.labeled_match).count();
        prop_assert!((r.overall.labeled - 100.0 * accepted as f64 / vs.len() as f64).abs() < 1e-9);
    }

    #[test]
    fn failing_a_matching_pair_never_helps(
        vs in prop::collection::vec(verdict(), 1..80),
        pick in any::<prop::sample::Index>(),
    ) {
        let matching: Vec<usize> = (0..vs.len()).filter(|&i| vs[i].labeled_match).collect();
        prop_assume!(!matching.is_empty());
        let i = matching[pick.index(matching.len())];
        let before = score_verdicts("p", &vs).unwrap();
        let mut injected = vs.clone();
        injected[i].cs_failed = true;
        injected[i].structural_match = false;
        injected[i].labeled_match = false;
        let after = score_verdicts("p", &injected).unwrap();
        prop_assert!(after.overall.unlabeled <= before.overall.unlabeled);
        prop_assert!(after.overall.labeled <= before.overall.labeled);
        for (a, b) in after.levels.iter().zip(&before.levels) {
            prop_assert!(a.unlabeled_incl <= b.unlabeled_incl);
            prop_assert!(a.labeled_incl <= b.labeled_incl);
            prop_assert!(a.unlabeled_excl <= b.unlabeled_excl + 1e-12);
            prop_assert!(a.labeled_excl <= b.labeled_excl + 1e-12);
        }
    }

    #[test]
    fn degradation_identities(s in 0.01f64..100.0) {
        prop_assert_eq!(degradation(s, s).unwrap(), 0.0);
        prop_assert_eq!(degradation(s, 0.0).unwrap(), 100.0);
    }

    #[test]
    fn self_comparison_scores_full_marks(n in 1usize..30, level in 1u8..=3) {
        let mut g = ParseGraph::new(n, GraphMode::Undirected);
        for i in 1..n {
            g.add_edge(i, i + 1, format!("l{}", i % 3)).unwrap();
        }
        let o = ParseOutcome::Parsed(g);
        let vs: Vec<_> = (0..5).map(|_| compare_pair(&o, &o, level, "b")).collect();
        let l = score_level(&vs).unwrap();
        prop_assert_eq!((l.unlabeled_incl, l.labeled_incl), (100.0, 100.0));
    }
}

#[test]
fn self_comparison_through_a_corpus() {
    // A zero-edit "noisy" copy parsed by a deterministic parser matches itself.
    let lex = Lexicon::from_words(["cat"], "test").unwrap();
    let base = vec![Sentence::from_tokens("s1", &["the", "quick", "brown", "fox", "."]).unwrap()];
    let corpus = build_corpus(&base, &"1:5".parse::<LevelPlan>().unwrap(), 3, &lex).unwrap();
    let parse = |n: usize| ParseOutcome::Parsed(misparse::parsers::chain_parse(&vec![(); n]));
    let vs: Vec<_> = corpus
        .noisy
        .iter()
        .map(|ns| compare_pair(&parse(base[0].len()), &parse(ns.tokens.len()), 1, "s1"))
        .collect();
    let l = score_level(&vs).unwrap();
    assert_eq!((l.unlabeled_incl, l.labeled_incl), (100.0, 100.0));
}
