//! Parser output as labeled head/dependent graphs.
//!
//! Directed graphs hold (head, dependent) edges plus the root attachments
//! (head index 0). Undirected graphs hold links with endpoints stored as
//! `(min, max)`, which is how link-grammar style linkages are compared.
//!
//! The wire format read here is one row per line,
//! `index<TAB>form<TAB>head<TAB>label`, terminated by a blank line. A block
//! whose single row is `#FAIL <reason>` is a parse failure.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum GraphMode {
    Directed,
    Undirected,
}

impl std::str::FromStr for GraphMode {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "directed" => Ok(GraphMode::Directed),
            "undirected" => Ok(GraphMode::Undirected),
            other => Err(format!("unknown graph mode {other:?}")),
        }
    }
}

impl std::fmt::Display for GraphMode {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            GraphMode::Directed => "directed",
            GraphMode::Undirected => "undirected",
        })
    }
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum GraphError {
    #[error("edge endpoint {index} outside 1..={n_tokens}")]
    OutOfRange { index: usize, n_tokens: usize },
    #[error("self-loop on token {0}")]
    SelfLoop(usize),
    #[error("empty label")]
    EmptyLabel,
    #[error("token {0} already has a head")]
    SecondHead(usize),
    #[error("root attachments exist only in directed graphs")]
    RootInUndirected,
    #[error("incomparable graphs: {0}")]
    Incomparable(String),
}

/// For directed graphs `a` is the head and `b` the dependent.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LabeledEdge {
    pub a: usize,
    pub b: usize,
    pub label: String,
}

impl LabeledEdge {
    pub fn new(a: usize, b: usize, label: impl Into<String>) -> Self {
        LabeledEdge {
            a,
            b,
            label: label.into(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParseGraph {
    n_tokens: usize,
    mode: GraphMode,
    edges: BTreeSet<LabeledEdge>,
    /// Directed only: dependents attached to the artificial root, with labels.
    roots: BTreeMap<usize, String>,
}

impl ParseGraph {
    pub fn new(n_tokens: usize, mode: GraphMode) -> Self {
        ParseGraph {
            n_tokens,
            mode,
            edges: BTreeSet::new(),
            roots: BTreeMap::new(),
        }
    }

    pub fn from_edges<I>(n_tokens: usize, mode: GraphMode, edges: I) -> Result<Self, GraphError>
    where
        I: IntoIterator<Item = LabeledEdge>,
    {
        let mut g = ParseGraph::new(n_tokens, mode);
        for e in edges {
            g.add_edge(e.a, e.b, e.label)?;
        }
        Ok(g)
    }

    pub fn n_tokens(&self) -> usize {
        self.n_tokens
    }

    pub fn mode(&self) -> GraphMode {
        self.mode
    }

    pub fn edges(&self) -> &BTreeSet<LabeledEdge> {
        &self.edges
    }

    pub fn roots(&self) -> &BTreeMap<usize, String> {
        &self.roots
    }

    /// The root dependent when exactly one token attaches to the root.
    pub fn root_index(&self) -> Option<usize> {
        match self.roots.len() {
            1 => self.roots.keys().next().copied(),
            _ => None,
        }
    }

    fn check_index(&self, index: usize) -> Result<(), GraphError> {
        if index == 0 || index > self.n_tokens {
            return Err(GraphError::OutOfRange {
                index,
                n_tokens: self.n_tokens,
            });
        }
        Ok(())
    }

    fn has_head(&self, dependent: usize) -> bool {
        self.roots.contains_key(&dependent) || self.edges.iter().any(|e| e.b == dependent)
    }

    pub fn add_edge(
        &mut self,
        a: usize,
        b: usize,
        label: impl Into<String>,
    ) -> Result<(), GraphError> {
        let label = label.into();
        self.check_index(a)?;
        self.check_index(b)?;
        if a == b {
            return Err(GraphError::SelfLoop(a));
        }
        if label.is_empty() {
            return Err(GraphError::EmptyLabel);
        }
        let edge = match self.mode {
            GraphMode::Directed => {
                if self.has_head(b) {
                    return Err(GraphError::SecondHead(b));
                }
                LabeledEdge { a, b, label }
            }
            GraphMode::Undirected => LabeledEdge {
                a: a.min(b),
                b: a.max(b),
                label,
            },
        };
        self.edges.insert(edge);
        Ok(())
    }

    pub fn add_root(
        &mut self,
        dependent: usize,
        label: impl Into<String>,
    ) -> Result<(), GraphError> {
        let label = label.into();
        if self.mode == GraphMode::Undirected {
            return Err(GraphError::RootInUndirected);
        }
        self.check_index(dependent)?;
        if label.is_empty() {
            return Err(GraphError::EmptyLabel);
        }
        if self.has_head(dependent) {
            return Err(GraphError::SecondHead(dependent));
        }
        self.roots.insert(dependent, label);
        Ok(())
    }

    /// Rewrites undirected edges into `(min, max)` form. Directed graphs are
    /// returned unchanged.
    pub fn canonicalized(&self) -> ParseGraph {
        let mut g = self.clone();
        if g.mode == GraphMode::Undirected {
            g.edges = self
                .edges
                .iter()
                .map(|e| LabeledEdge::new(e.a.min(e.b), e.a.max(e.b), e.label.clone()))
                .collect();
        }
        g
    }

    /// Endpoint pairs with labels dropped: `(head, dependent)` when directed,
    /// `(min, max)` when undirected. Root attachments are not included.
    pub fn unlabeled_edges(&self) -> BTreeSet<(usize, usize)> {
        self.edges.iter().map(|e| (e.a, e.b)).collect()
    }

    /// All arcs including root attachments as `(0, dependent, label)`.
    pub fn arcs(&self) -> Vec<(usize, usize, &str)> {
        let mut arcs: Vec<(usize, usize, &str)> = self
            .roots
            .iter()
            .map(|(&d, l)| (0, d, l.as_str()))
            .chain(self.edges.iter().map(|e| (e.a, e.b, e.label.as_str())))
            .collect();
        arcs.sort();
        arcs
    }

    /// Serializes to the adapter wire format, one block terminated by a
    /// blank line. `forms` supplies the word column; missing forms print `_`.
    pub fn to_conll_block<S: AsRef<str>>(&self, forms: &[S]) -> String {
        let form = |i: usize| forms.get(i - 1).map(AsRef::as_ref).unwrap_or("_");
        let mut out = String::new();
        match self.mode {
            GraphMode::Directed => {
                let mut heads: BTreeMap<usize, (usize, &str)> = BTreeMap::new();
                for (d, l) in &self.roots {
                    heads.insert(*d, (0, l));
                }
                for e in &self.edges {
                    heads.insert(e.b, (e.a, &e.label));
                }
                for i in 1..=self.n_tokens {
                    let (h, l) = heads.get(&i).copied().unwrap_or((0, "_"));
                    if heads.contains_key(&i) {
                        let _ = writeln!(out, "{i}\t{}\t{h}\t{l}", form(i));
                    } else {
                        let _ = writeln!(out, "{i}\t{}\t_\t_", form(i));
                    }
                }
            }
            GraphMode::Undirected => {
                let linked: BTreeSet<usize> = self.edges.iter().map(|e| e.a).collect();
                let mut rows: Vec<(usize, usize, &str)> = self
                    .edges
                    .iter()
                    .map(|e| (e.a, e.b, e.label.as_str()))
                    .collect();
                rows.extend(
                    (1..=self.n_tokens)
                        .filter(|i| !linked.contains(i))
                        .map(|i| (i, 0, "_")),
                );
                rows.sort();
                for (a, b, l) in rows {
                    let _ = writeln!(out, "{a}\t{}\t{b}\t{l}", form(a));
                }
            }
        }
        out.push('\n');
        out
    }
}

fn check_comparable(g1: &ParseGraph, g2: &ParseGraph) -> Result<(), GraphError> {
    if g1.mode != g2.mode {
        return Err(GraphError::Incomparable(format!(
            "{} vs {} graph",
            g1.mode, g2.mode
        )));
    }
    if g1.n_tokens != g2.n_tokens {
        return Err(GraphError::Incomparable(format!(
            "{} vs {} tokens",
            g1.n_tokens, g2.n_tokens
        )));
    }
    Ok(())
}

/// Same endpoints everywhere, labels ignored. A changed root counts as a
/// structural change.
pub fn structure_equal(g1: &ParseGraph, g2: &ParseGraph) -> Result<bool, GraphError> {
    check_comparable(g1, g2)?;
    Ok(g1.unlabeled_edges() == g2.unlabeled_edges() && g1.roots.keys().eq(g2.roots.keys()))
}

/// Same endpoints and same labels everywhere.
pub fn labeled_equal(g1: &ParseGraph, g2: &ParseGraph) -> Result<bool, GraphError> {
    check_comparable(g1, g2)?;
    Ok(g1.edges == g2.edges && g1.roots == g2.roots)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ParseOutcome {
    Parsed(ParseGraph),
    Failed(String),
}

impl ParseOutcome {
    pub fn graph(&self) -> Option<&ParseGraph> {
        match self {
            ParseOutcome::Parsed(g) => Some(g),
            ParseOutcome::Failed(_) => None,
        }
    }

    pub fn failure_reason(&self) -> Option<&str> {
        match self {
            ParseOutcome::Parsed(_) => None,
            ParseOutcome::Failed(r) => Some(r),
        }
    }

    pub fn is_failed(&self) -> bool {
        matches!(self, ParseOutcome::Failed(_))
    }

    pub fn to_conll_block<S: AsRef<str>>(&self, forms: &[S]) -> String {
        match self {
            ParseOutcome::Parsed(g) => g.to_conll_block(forms),
            ParseOutcome::Failed(reason) => {
                let reason = reason.replace(['\n', '\r'], " ");
                format!("#FAIL {reason}\n\n")
            }
        }
    }
}

pub const MALFORMED: &str = "malformed output";

fn parse_index(field: &str) -> Option<usize> {
    if field.is_empty() || !field.bytes().all(|b| b.is_ascii_digit()) {
        return None;
    }
    field.parse().ok()
}

/// Reads one block of adapter output. Never fails: anything unreadable
/// becomes a failed outcome.
pub fn read_conll_block(text: &str, mode: GraphMode) -> ParseOutcome {
    let rows: Vec<&str> = text
        .lines()
        .map(|l| l.strip_suffix('\r').unwrap_or(l))
        .filter(|l| !l.is_empty())
        .collect();
    let Some(first) = rows.first() else {
        return ParseOutcome::Failed("empty output".into());
    };
    if let Some(rest) = first.strip_prefix("#FAIL") {
        if rows.len() > 1 || !(rest.is_empty() || rest.starts_with([' ', '\t'])) {
            return ParseOutcome::Failed(MALFORMED.into());
        }
        let reason = rest.trim();
        let reason = if reason.is_empty() {
            "unspecified"
        } else {
            reason
        };
        return ParseOutcome::Failed(reason.into());
    }
    match mode {
        GraphMode::Directed => read_directed(&rows),
        GraphMode::Undirected => read_undirected(&rows),
    }
    .map(ParseOutcome::Parsed)
    .unwrap_or_else(|| ParseOutcome::Failed(MALFORMED.into()))
}

/// Like [`read_conll_block`] for raw bytes; invalid UTF-8 is malformed output.
pub fn read_conll_bytes(bytes: &[u8], mode: GraphMode) -> ParseOutcome {
    match std::str::from_utf8(bytes) {
        Ok(text) => read_conll_block(text, mode),
        Err(_) => ParseOutcome::Failed(MALFORMED.into()),
    }
}

fn split_row(row: &str) -> Option<[&str; 4]> {
    let mut it = row.split('\t');
    let fields = [it.next()?, it.next()?, it.next()?, it.next()?];
    if it.next().is_some() {
        return None;
    }
    Some(fields)
}

fn read_directed(rows: &[&str]) -> Option<ParseGraph> {
    let n = rows.len();
    let mut g = ParseGraph::new(n, GraphMode::Directed);
    for (i, row) in rows.iter().enumerate() {
        let [index, _form, head, label] = split_row(row)?;
        if parse_index(index)? != i + 1 {
            return None;
        }
        if head == "_" {
            continue;
        }
        let head = parse_index(head)?;
        let dependent = i + 1;
        if head == 0 {
            g.add_root(dependent, label).ok()?;
        } else {
            g.add_edge(head, dependent, label).ok()?;
        }
    }
    Some(g)
}

fn read_undirected(rows: &[&str]) -> Option<ParseGraph> {
    let mut links = Vec::with_capacity(rows.len());
    let mut n = 0;
    for row in rows {
        let [index, _form, other, label] = split_row(row)?;
        let a = parse_index(index)?;
        if a == 0 {
            return None;
        }
        n = n.max(a);
        if other == "_" || other == "0" {
            continue;
        }
        let b = parse_index(other)?;
        n = n.max(b);
        links.push(LabeledEdge::new(a, b, label));
    }
    ParseGraph::from_edges(n, GraphMode::Undirected, links).ok()
}

/// Splits a stream of blocks on blank lines. A trailing block without its
/// terminating blank line is still returned.
pub fn split_blocks(text: &str) -> Vec<String> {
    let mut blocks = Vec::new();
    let mut current = String::new();
    for line in text.lines() {
        let line = line.strip_suffix('\r').unwrap_or(line);
        if line.is_empty() {
            if !current.is_empty() {
                blocks.push(std::mem::take(&mut current));
            }
        } else {
            current.push_str(line);
            current.push('\n');
        }
    }
    if !current.is_empty() {
        blocks.push(current);
    }
    blocks
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn directed(n: usize, edges: &[(usize, usize, &str)]) -> ParseGraph {
        let mut g = ParseGraph::new(n, GraphMode::Directed);
        for &(h, d, l) in edges {
            if h == 0 {
                g.add_root(d, l).unwrap();
            } else {
                g.add_edge(h, d, l).unwrap();
            }
        }
        g
    }

    #[test]
    fn unlabeled_view_drops_labels_and_root() {
        let g = directed(2, &[(2, 1, "det"), (0, 2, "root")]);
        assert_eq!(g.unlabeled_edges(), BTreeSet::from([(2, 1)]));
        assert_eq!(g.root_index(), Some(2));
        assert!(ParseGraph::new(3, GraphMode::Directed)
            .unlabeled_edges()
            .is_empty());
    }

    #[test]
    fn undirected_pairs_are_unordered() {
        let g = ParseGraph::from_edges(
            3,
            GraphMode::Undirected,
            [LabeledEdge::new(1, 3, "Ss"), LabeledEdge::new(3, 1, "Ss")],
        )
        .unwrap();
        assert_eq!(g.unlabeled_edges(), BTreeSet::from([(1, 3)]));
        assert_eq!(g.edges().len(), 1);
        assert_eq!(g.canonicalized(), g);
        assert_eq!(g.canonicalized().canonicalized(), g.canonicalized());
    }

    #[test]
    fn invariants_enforced() {
        let mut g = ParseGraph::new(3, GraphMode::Directed);
        assert_eq!(g.add_edge(1, 1, "x"), Err(GraphError::SelfLoop(1)));
        assert!(matches!(
            g.add_edge(0, 1, "x"),
            Err(GraphError::OutOfRange { .. })
        ));
        assert!(matches!(
            g.add_edge(1, 4, "x"),
            Err(GraphError::OutOfRange { .. })
        ));
        assert_eq!(g.add_edge(1, 2, ""), Err(GraphError::EmptyLabel));
        g.add_edge(1, 2, "x").unwrap();
        assert_eq!(g.add_edge(3, 2, "y"), Err(GraphError::SecondHead(2)));
        assert_eq!(g.add_root(2, "root"), Err(GraphError::SecondHead(2)));
        let mut u = ParseGraph::new(3, GraphMode::Undirected);
        assert_eq!(u.add_root(1, "r"), Err(GraphError::RootInUndirected));
    }

    #[test]
    fn equality_examples() {
        let g = directed(3, &[(0, 2, "root"), (2, 1, "ncsubj"), (2, 3, "dobj")]);
        assert!(structure_equal(&g, &g).unwrap());
        assert!(labeled_equal(&g, &g).unwrap());

        let relabeled = directed(3, &[(0, 2, "root"), (2, 1, "dobj"), (2, 3, "dobj")]);
        assert!(structure_equal(&g, &relabeled).unwrap());
        assert!(!labeled_equal(&g, &relabeled).unwrap());

        let fewer = directed(3, &[(0, 2, "root"), (2, 1, "ncsubj")]);
        assert!(!structure_equal(&g, &fewer).unwrap());
        assert!(!labeled_equal(&g, &fewer).unwrap());

        let reroot = directed(3, &[(0, 1, "root"), (1, 2, "x"), (2, 3, "dobj")]);
        assert!(!structure_equal(&g, &reroot).unwrap());

        let root_label = directed(3, &[(0, 2, "top"), (2, 1, "ncsubj"), (2, 3, "dobj")]);
        assert!(structure_equal(&g, &root_label).unwrap());
        assert!(!labeled_equal(&g, &root_label).unwrap());
    }

    #[test]
    fn incomparable_graphs() {
        let a = directed(3, &[]);
        let b = directed(4, &[]);
        let u = ParseGraph::new(3, GraphMode::Undirected);
        assert!(matches!(
            structure_equal(&a, &b),
            Err(GraphError::Incomparable(_))
        ));
        assert!(matches!(
            labeled_equal(&a, &u),
            Err(GraphError::Incomparable(_))
        ));
        assert!(structure_equal(&a, &u)
            .unwrap_err()
            .to_string()
            .starts_with("incomparable graphs"));
    }

    #[test]
    fn reads_directed_block() {
        let out = read_conll_block("1\tThe\t2\tdet\n2\tdog\t0\troot\n", GraphMode::Directed);
        let g = out.graph().unwrap();
        assert_eq!(g.n_tokens(), 2);
        assert_eq!(g.root_index(), Some(2));
        assert_eq!(g.arcs(), vec![(0, 2, "root"), (2, 1, "det")]);
    }

    #[test]
    fn reads_failures() {
        assert_eq!(
            read_conll_block("#FAIL timeout\n", GraphMode::Directed),
            ParseOutcome::Failed("timeout".into())
        );
        assert_eq!(
            read_conll_block("#FAIL\n", GraphMode::Directed),
            ParseOutcome::Failed("unspecified".into())
        );
        assert_eq!(
            read_conll_block("", GraphMode::Directed),
            ParseOutcome::Failed("empty output".into())
        );
        for bad in [
            "1\tThe\tx\tdet\n",
            "1\tThe\t2\n",
            "1\tThe\t2\tdet\textra\n",
            "2\tThe\t0\troot\n",
            "1\tThe\t1\tdet\n",
            "1\tThe\t3\tdet\n2\tdog\t0\troot\n",
            "1\tThe\t0\troot\n#FAIL x\n",
            "#FAILED\n",
            "1\tA\t2\tx\n2\tB\t1\ty\n1\tA\t2\tx\n",
        ] {
            assert_eq!(
                read_conll_block(bad, GraphMode::Directed),
                ParseOutcome::Failed(MALFORMED.into()),
                "{bad:?}"
            );
        }
        assert_eq!(
            read_conll_bytes(b"1\t\xff\t0\troot\n", GraphMode::Directed),
            ParseOutcome::Failed(MALFORMED.into())
        );
    }

    #[test]
    fn reads_undirected_block() {
        let text = "1\tthe\t2\tD\n2\tcat\t3\tSs\n3\tran\t0\t_\n";
        let g = read_conll_block(text, GraphMode::Undirected);
        let g = g.graph().unwrap();
        assert_eq!(g.n_tokens(), 3);
        assert_eq!(g.unlabeled_edges(), BTreeSet::from([(1, 2), (2, 3)]));
        let swapped = read_conll_block("2\tcat\t1\tD\n3\tran\t2\tSs\n", GraphMode::Undirected);
        assert!(labeled_equal(g, swapped.graph().unwrap()).unwrap());
    }

    #[test]
    fn wire_round_trip() {
        let g = directed(3, &[(0, 2, "root"), (2, 1, "ncsubj"), (2, 3, "dobj")]);
        let block = g.to_conll_block(&["cats", "eat", "fish"]);
        assert_eq!(
            block,
            "1\tcats\t2\tncsubj\n2\teat\t0\troot\n3\tfish\t2\tdobj\n\n"
        );
        assert_eq!(
            read_conll_block(&block, GraphMode::Directed),
            ParseOutcome::Parsed(g)
        );

        let u = ParseGraph::from_edges(
            4,
            GraphMode::Undirected,
            [
                LabeledEdge::new(1, 3, "Ss"),
                LabeledEdge::new(1, 2, "D"),
                LabeledEdge::new(1, 3, "X"),
            ],
        )
        .unwrap();
        let block = u.to_conll_block::<&str>(&[]);
        assert_eq!(
            read_conll_block(&block, GraphMode::Undirected),
            ParseOutcome::Parsed(u)
        );

        let f = ParseOutcome::Failed("no parse".into());
        assert_eq!(f.to_conll_block::<&str>(&[]), "#FAIL no parse\n\n");
    }

    #[test]
    fn splits_block_stream() {
        let text = "1\ta\t0\troot\n\n#FAIL x\n\n1\tb\t0\troot\n";
        let blocks = split_blocks(text);
        assert_eq!(
            blocks,
            vec!["1\ta\t0\troot\n", "#FAIL x\n", "1\tb\t0\troot\n"]
        );
    }

    fn arb_graph(mode: GraphMode, n: usize) -> impl Strategy<Value = ParseGraph> {
        let labels = prop::sample::select(vec!["a", "b"]);
        prop::collection::vec((1..=n, 1..=n, labels), 0..6).prop_map(move |raw| {
            let mut g = ParseGraph::new(n, mode);
            for (a, b, l) in raw {
                let _ = g.add_edge(a, b, l);
            }
            if mode == GraphMode::Directed {
                for d in 1..=n {
                    if g.add_root(d, "root").is_ok() {
                        break;
                    }
                }
            }
            g
        })
    }

    fn arb_triple() -> impl Strategy<Value = (ParseGraph, ParseGraph, ParseGraph)> {
        prop_oneof![Just(GraphMode::Directed), Just(GraphMode::Undirected)]
            .prop_flat_map(|m| (arb_graph(m, 3), arb_graph(m, 3), arb_graph(m, 3)))
    }

    proptest! {
        #[test]
        fn labeled_implies_structural((g1, g2, _) in arb_triple()) {
            if labeled_equal(&g1, &g2).unwrap() {
                prop_assert!(structure_equal(&g1, &g2).unwrap());
            }
        }

        #[test]
        fn equivalence_relations((g1, g2, g3) in arb_triple()) {
            for eq in [structure_equal, labeled_equal] {
                prop_assert!(eq(&g1, &g1).unwrap());
                prop_assert_eq!(eq(&g1, &g2).unwrap(), eq(&g2, &g1).unwrap());
                if eq(&g1, &g2).unwrap() && eq(&g2, &g3).unwrap() {
                    prop_assert!(eq(&g1, &g3).unwrap());
                }
            }
        }

        #[test]
        fn canonicalization_idempotent((g, _, _) in arb_triple()) {
            prop_assert_eq!(g.canonicalized().canonicalized(), g.canonicalized());
        }

        #[test]
        fn reader_total_on_arbitrary_text(s in "\\PC*", directed in any::<bool>()) {
            let mode = if directed { GraphMode::Directed } else { GraphMode::Undirected };
            let _ = read_conll_block(&s, mode);
        }

        #[test]
        fn reader_total_on_arbitrary_bytes(b in prop::collection::vec(any::<u8>(), 0..64)) {
            let _ = read_conll_bytes(&b, GraphMode::Directed);
            let _ = read_conll_bytes(&b, GraphMode::Undirected);
        }

        #[test]
        fn reader_total_on_row_like_text(
            rows in prop::collection::vec(("[0-9_x]{0,2}", "[a-z]{0,3}", "[0-9_]{0,2}", "[a-z_]{0,2}"), 0..6),
            directed in any::<bool>(),
        ) {
            let text: String = rows.iter().map(|(a, b, c, d)| format!("{a}\t{b}\t{c}\t{d}\n")).collect();
            let mode = if directed { GraphMode::Directed } else { GraphMode::Undirected };
            let _ = read_conll_block(&text, mode);
        }

        #[test]
        fn wire_format_round_trips((g, _, _) in arb_triple()) {
            let block = g.to_conll_block::<&str>(&[]);
            let back = read_conll_block(&block, g.mode());
            prop_assert_eq!(back, ParseOutcome::Parsed(g));
        }
    }
}
