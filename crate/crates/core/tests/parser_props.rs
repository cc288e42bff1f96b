use std::path::Path;

use misparse::corpus::tokenize;
use misparse::parsegraph::{labeled_equal, ParseOutcome};
use misparse::parsers::{
    chain_parse, cyk_chart, cyk_outcome, cyk_parse, enumerate_parses, tree_to_dependencies,
    HeadRules, HeadSide, PcfgGrammar,
};
use proptest::prelude::*;

const NT: [&str; 3] = ["S", "A", "B"];
const T: [&str; 3] = ["a", "b", "c"];

/// Grammar over S, A, B with rule weights from `w`; a zero weight drops
/// the rule. Every nonterminal keeps at least its lexical rule for "a".
fn grammar_from(w: &[u8], unknown: &[bool]) -> PcfgGrammar {
    let mut binary = Vec::new();
    let mut lexical = Vec::new();
    let mut k = 0;
    for lhs in NT {
        for l in NT {
            for r in NT {
                if w[k] > 0 && binary.len() < 9 {
                    binary.push((lhs, l, r, w[k] as f64));
                }
                k += 1;
            }
        }
        lexical.push((lhs, "a", 1.0 + w[k] as f64));
        if w[k + 1] > 2 {
            lexical.push((lhs, T[1 + (w[k + 1] as usize % 2)], w[k + 1] as f64));
        }
        k += 2;
    }
    for lhs in NT {
        let total: f64 = binary
            .iter()
            .filter(|b| b.0 == lhs)
            .map(|b| b.3)
            .sum::<f64>()
            + lexical
                .iter()
                .filter(|x| x.0 == lhs)
                .map(|x| x.2)
                .sum::<f64>();
        binary
            .iter_mut()
            .filter(|b| b.0 == lhs)
            .for_each(|b| b.3 /= total);
        lexical
            .iter_mut()
            .filter(|x| x.0 == lhs)
            .for_each(|x| x.2 /= total);
    }
    let unk: Vec<&str> = NT
        .iter()
        .zip(unknown)
        .filter(|(_, u)| **u)
        .map(|(n, _)| *n)
        .collect();
    PcfgGrammar::new("S", &binary, &lexical, &unk, 0.01).unwrap()
}

fn grammar_strategy() -> impl Strategy<Value = PcfgGrammar> {
    (
        prop::collection::vec(0u8..5, 3 * 11),
        prop::collection::vec(any::<bool>(), 3),
    )
        .prop_map(|(w, u)| grammar_from(&w, &u))
}

fn sentence_strategy() -> impl Strategy<Value = Vec<&'static str>> {
    prop::collection::vec(prop::sample::select(T.to_vec()), 1..=6)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(300))]

    #[test]
    fn viterbi_matches_enumeration(g in grammar_strategy(), s in sentence_strategy()) {
        let all = enumerate_parses(&g, &s).unwrap();
        match cyk_parse(&g, &s) {
            None => prop_assert!(all.is_empty()),
            Some(t) => {
                let best = all.iter().map(|(_, p)| p.ln()).fold(f64::NEG_INFINITY, f64::max);
                prop_assert!((t.log_prob - best).abs() < 1e-12);
                let recomputed = t.root.log_prob_under(&g).unwrap();
                prop_assert!((recomputed - t.log_prob).abs() < 1e-12);
                prop_assert_eq!(t.root.words(), s.clone());
            }
        }
    }

    #[test]
    fn chart_cells_are_bounded(g in grammar_strategy(), s in sentence_strategy()) {
        let chart = cyk_chart(&g, &s);
        let floor = g.min_step_prob().ln();
        let n = s.len();
        for span in 1..=n {
            for i in 0..=n - span {
                for sym in 0..chart.symbols() {
                    let lp = chart.log_prob(i, i + span, sym);
                    prop_assert!(lp <= 0.0);
                    if lp > f64::NEG_INFINITY {
                        prop_assert!(lp >= floor * (2 * span - 1) as f64 - 1e-9);
                    }
                }
            }
        }
    }

    #[test]
    fn dependencies_form_a_tree(
        g in grammar_strategy(),
        s in sentence_strategy(),
        sides in prop::collection::vec(any::<bool>(), 3),
    ) {
        let mut heads = HeadRules::new();
        for (sym, right) in NT.iter().zip(&sides) {
            heads = heads.with(sym, if *right { HeadSide::Rightmost } else { HeadSide::Leftmost });
        }
        if let Some(t) = cyk_parse(&g, &s) {
            let dep = tree_to_dependencies(&t, &heads);
            let n = s.len();
            let arcs = dep.arcs();
            prop_assert_eq!(arcs.len(), n);
            prop_assert_eq!(arcs.iter().filter(|a| a.0 == 0).count(), 1);
            let mut head = vec![usize::MAX; n + 1];
            for (h, d, _) in &arcs {
                prop_assert_eq!(head[*d], usize::MAX);
                head[*d] = *h;
            }
            for start in 1..=n {
                let (mut at, mut steps) = (start, 0);
                while at != 0 {
                    at = head[at];
                    steps += 1;
                    prop_assert!(steps <= n, "cycle through token {}", start);
                }
            }
        }
    }

    #[test]
    fn chain_depends_only_on_length(
        a in prop::collection::vec("[a-z]{1,8}", 1..20),
        b in prop::collection::vec("[a-z]{1,8}", 1..20),
    ) {
        // Graphs over different token counts are incomparable.
        match labeled_equal(&chain_parse(&a), &chain_parse(&b)) {
            Ok(eq) => prop_assert!(eq && a.len() == b.len()),
            Err(_) => prop_assert_ne!(a.len(), b.len()),
        }
    }
}

#[test]
fn demo_grammar_covers_the_clean_sentences() {
    let root = Path::new(env!("CARGO_MANIFEST_DIR")).join("../../data");
    let g = PcfgGrammar::load(root.join("grammar/demo.pcfg")).unwrap();
    let h = HeadRules::load(root.join("grammar/demo.heads")).unwrap();
    let text = std::fs::read_to_string(root.join("clean_sentences.txt")).unwrap();
    for line in text.lines().filter(|l| !l.trim().is_empty()) {
        let s = tokenize(line).unwrap();
        let words: Vec<&str> = s.tokens.iter().map(|t| t.text.as_str()).collect();
        match cyk_outcome(&g, &h, &words) {
            ParseOutcome::Parsed(dep) => assert_eq!(dep.arcs().len(), words.len()),
            ParseOutcome::Failed(r) => panic!("{line}: {r}"),
        }
    }
}
