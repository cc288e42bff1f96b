//! Structure-blind baseline: every token hangs off its left neighbour.

use crate::parsegraph::{GraphMode, ParseGraph};

pub const CHAIN_LABEL: &str = "chain";

/// Chain dependency graph over the tokens. Depends only on their count.
pub fn chain_parse<T>(tokens: &[T]) -> ParseGraph {
    let n_tokens = tokens.len();
    let mut g = ParseGraph::new(n_tokens, GraphMode::Directed);
    if n_tokens == 0 {
        return g;
    }
    g.add_root(1, CHAIN_LABEL).expect("token 1 exists");
    for i in 2..=n_tokens {
        g.add_edge(i - 1, i, CHAIN_LABEL)
            .expect("each token gets one head");
    }
    g
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parsegraph::labeled_equal;

    #[test]
    fn three_tokens() {
        assert_eq!(
            chain_parse(&["a", "b", "c"]).arcs(),
            vec![(0, 1, "chain"), (1, 2, "chain"), (2, 3, "chain")]
        );
    }

    #[test]
    fn one_token() {
        assert_eq!(chain_parse(&["x"]).arcs(), vec![(0, 1, "chain")]);
    }

    #[test]
    fn equal_lengths_compare_equal() {
        let clean = ["the", "dog", "barks"];
        let noisy = ["teh", "dgo", "brks"];
        assert!(labeled_equal(&chain_parse(&clean), &chain_parse(&noisy)).unwrap());
    }
}
