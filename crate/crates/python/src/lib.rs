//! Python bindings for the `misparse` robustness toolkit.

use pyo3::exceptions::{PyIOError, PyValueError};
use pyo3::prelude::*;

use misparse::corpus::{self, CorpusError, LevelPlan, Sentence};
use misparse::parsegraph::{self, GraphMode, ParseOutcome};
use misparse::parsers::{self, HeadRules, ParserError, PcfgGrammar};
use misparse::scoring::{self, LevelScore, ScoringError};

fn corpus_err(e: CorpusError) -> PyErr {
    match e {
        CorpusError::Io { .. } => PyIOError::new_err(e.to_string()),
        other => PyValueError::new_err(other.to_string()),
    }
}

fn parser_err(e: ParserError) -> PyErr {
    match e {
        ParserError::Io { .. } | ParserError::Spawn { .. } => PyIOError::new_err(e.to_string()),
        other => PyValueError::new_err(other.to_string()),
    }
}

fn scoring_err(e: ScoringError) -> PyErr {
    PyValueError::new_err(e.to_string())
}

fn json_to_py<'py>(py: Python<'py>, value: &impl serde::Serialize) -> PyResult<Bound<'py, PyAny>> {
    let text = serde_json::to_string(value).map_err(|e| PyValueError::new_err(e.to_string()))?;
    py.import("json")?.call_method1("loads", (text,))
}

fn mode(name: &str) -> PyResult<GraphMode> {
    name.parse().map_err(PyValueError::new_err)
}

/// Keys adjacent to a letter on a QWERTY keyboard, sorted.
#[pyfunction]
fn keyboard_neighbors(c: char) -> PyResult<Vec<char>> {
    corpus::keyboard_neighbors(c).map_err(corpus_err)
}

/// Splits a sentence into word and punctuation tokens.
#[pyfunction]
fn tokenize(text: &str) -> PyResult<Vec<String>> {
    let s = corpus::tokenize(text).map_err(corpus_err)?;
    Ok(s.tokens.into_iter().map(|t| t.text).collect())
}

/// Set of valid words; corrupted words never belong to it.
#[pyclass(frozen)]
struct Lexicon {
    inner: corpus::Lexicon,
}

#[pymethods]
impl Lexicon {
    #[new]
    fn new(words: Vec<String>) -> PyResult<Self> {
        let inner = corpus::Lexicon::from_words(words, "<python>").map_err(corpus_err)?;
        Ok(Lexicon { inner })
    }

    #[staticmethod]
    fn load(path: &str) -> PyResult<Self> {
        let inner = corpus::Lexicon::load(path).map_err(corpus_err)?;
        Ok(Lexicon { inner })
    }

    fn __contains__(&self, word: &str) -> bool {
        self.inner.contains(word)
    }

    fn __len__(&self) -> usize {
        self.inner.len()
    }
}

/// Applies one random non-word edit to `word`; returns the new word and the edit.
#[pyfunction]
fn corrupt_word<'py>(
    py: Python<'py>,
    word: &str,
    lexicon: &Lexicon,
    seed: u64,
) -> PyResult<(String, Bound<'py, PyAny>)> {
    let mut rng = corpus::variant_rng(seed, word, 1, 0);
    let (noisy, edit) = corpus::corrupt_word(word, &lexicon.inner, &mut rng).map_err(corpus_err)?;
    Ok((noisy, json_to_py(py, &edit)?))
}

/// Builds a noisy corpus and returns its JSONL serialization.
#[pyfunction]
fn build_corpus(
    sentences: Vec<String>,
    plan: &str,
    seed: u64,
    lexicon: &Lexicon,
) -> PyResult<String> {
    let plan: LevelPlan = plan.parse().map_err(corpus_err)?;
    let base = sentences
        .iter()
        .enumerate()
        .map(|(i, s)| Ok(corpus::tokenize(s)?.with_id(format!("s{}", i + 1))))
        .collect::<Result<Vec<Sentence>, CorpusError>>()
        .map_err(corpus_err)?;
    let c = corpus::build_corpus(&base, &plan, seed, &lexicon.inner).map_err(corpus_err)?;
    Ok(corpus::write_corpus_string(&c))
}

/// Chain baseline over `n` tokens as a wire-format block.
#[pyfunction]
fn chain_parse(n: usize) -> String {
    let forms: Vec<String> = (1..=n).map(|i| format!("w{i}")).collect();
    parsers::chain_parse(&forms).to_conll_block(&forms)
}

/// Compares two wire-format blocks; returns (structural, labeled).
#[pyfunction]
#[pyo3(signature = (cs, ns, mode_name = "directed"))]
fn compare(cs: &str, ns: &str, mode_name: &str) -> PyResult<(bool, bool)> {
    let m = mode(mode_name)?;
    let v = scoring::compare_pair(
        &parsegraph::read_conll_block(cs, m),
        &parsegraph::read_conll_block(ns, m),
        1,
        "",
    );
    match v.reason {
        Some(r) => Err(PyValueError::new_err(r)),
        None => Ok((v.structural_match, v.labeled_match)),
    }
}

/// Probabilistic context-free grammar in Chomsky normal form.
#[pyclass(frozen)]
struct Grammar {
    inner: PcfgGrammar,
}

#[pymethods]
impl Grammar {
    #[new]
    fn new(text: &str) -> PyResult<Self> {
        Ok(Grammar {
            inner: text.parse().map_err(parser_err)?,
        })
    }

    #[staticmethod]
    fn load(path: &str) -> PyResult<Self> {
        Ok(Grammar {
            inner: PcfgGrammar::load(path).map_err(parser_err)?,
        })
    }

    /// Most probable derivation as (bracketed tree, probability), or None.
    fn parse(&self, words: Vec<String>) -> Option<(String, f64)> {
        parsers::cyk_parse(&self.inner, &words).map(|t| (t.to_string(), t.probability()))
    }

    /// Every derivation with its probability (at most 8 words).
    fn enumerate(&self, words: Vec<String>) -> PyResult<Vec<(String, f64)>> {
        let all = parsers::enumerate_parses(&self.inner, &words).map_err(parser_err)?;
        Ok(all.into_iter().map(|(t, p)| (t.to_string(), p)).collect())
    }

    /// Viterbi parse converted to a dependency block using head rules text.
    #[pyo3(signature = (words, heads = ""))]
    fn dependencies(&self, words: Vec<String>, heads: &str) -> PyResult<String> {
        let h: HeadRules = heads.parse().map_err(parser_err)?;
        let outcome: ParseOutcome = parsers::cyk_outcome(&self.inner, &h, &words);
        Ok(outcome.to_conll_block(&words))
    }
}

#[pyfunction]
fn rescore_inclusive(excl_score: f64, n_pairs: usize, n_failures: usize) -> PyResult<f64> {
    scoring::rescore_inclusive(excl_score, n_pairs, n_failures).map_err(scoring_err)
}

#[pyfunction]
fn degradation(level1_score: f64, level3_score: f64) -> PyResult<f64> {
    scoring::degradation(level1_score, level3_score).map_err(scoring_err)
}

#[pyfunction]
fn fscore(precision: f64, recall: f64) -> PyResult<f64> {
    scoring::fscore(precision, recall).map_err(scoring_err)
}

/// Report from per-level counts: (level, pairs, failures, unlabeled, labeled).
#[pyfunction]
fn score_counts<'py>(
    py: Python<'py>,
    parser: &str,
    levels: Vec<(u8, usize, usize, usize, usize)>,
) -> PyResult<Bound<'py, PyAny>> {
    let levels = levels
        .into_iter()
        .map(|(k, n, f, u, l)| LevelScore::from_counts(k, n, f, u, l))
        .collect::<Result<Vec<_>, _>>()
        .map_err(scoring_err)?;
    json_to_py(
        py,
        &scoring::aggregate(parser, &levels).map_err(scoring_err)?,
    )
}

/// Runs the command line with `args` (without the program name).
#[pyfunction]
fn run_cli(args: Vec<String>) -> i32 {
    misparse::cli::run(std::iter::once("misparse".to_string()).chain(args))
}

#[pymodule]
#[pyo3(name = "misparse")]
fn misparse_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<Lexicon>()?;
    m.add_class::<Grammar>()?;
    m.add_function(wrap_pyfunction!(keyboard_neighbors, m)?)?;
    m.add_function(wrap_pyfunction!(tokenize, m)?)?;
    m.add_function(wrap_pyfunction!(corrupt_word, m)?)?;
    m.add_function(wrap_pyfunction!(build_corpus, m)?)?;
    m.add_function(wrap_pyfunction!(chain_parse, m)?)?;
    m.add_function(wrap_pyfunction!(compare, m)?)?;
    m.add_function(wrap_pyfunction!(rescore_inclusive, m)?)?;
    m.add_function(wrap_pyfunction!(degradation, m)?)?;
    m.add_function(wrap_pyfunction!(fscore, m)?)?;
    m.add_function(wrap_pyfunction!(score_counts, m)?)?;
    m.add_function(wrap_pyfunction!(run_cli, m)?)?;
    Ok(())
}
