//! Parsers run over token sequences: external programs behind a line
//! protocol, a linear-chain baseline, and a PCFG Viterbi parser whose trees
//! are converted to dependencies by head rules.

mod chain;
mod cyk;
mod enumerate;
mod external;
mod grammar;
mod heads;

use std::path::PathBuf;
use std::time::Duration;

use thiserror::Error;

pub use chain::{chain_parse, CHAIN_LABEL};
pub use cyk::{cyk_chart, cyk_parse, Chart, DerivationNode, DerivationTree};
pub use enumerate::{enumerate_parses, MAX_ENUMERATION_LENGTH};
pub use external::{run_external, PROCESS_EXITED, TIMEOUT};
pub use grammar::{BinaryRule, LexicalRule, PcfgGrammar, NORMALIZATION_TOLERANCE};
pub use heads::{tree_to_dependencies, HeadRules, HeadSide};

use crate::corpus::Token;
use crate::parsegraph::{GraphMode, ParseOutcome};

pub const NO_PARSE: &str = "no parse";
pub const DEFAULT_TIMEOUT: Duration = Duration::from_secs(60);

#[derive(Debug, Error)]
pub enum ParserError {
    #[error("grammar line {line}: {message}")]
    Grammar { line: usize, message: String },
    #[error("grammar line {line}: not in Chomsky normal form: {rule}")]
    NotCnf { line: usize, rule: String },
    #[error("rules for {lhs} sum to {sum}, not 1")]
    Unnormalized { lhs: String, sum: f64 },
    #[error("start symbol {0:?} is missing or has no rules")]
    MissingStart(String),
    #[error("symbol {0:?} has no rules")]
    UnknownSymbol(String),
    #[error("head rules line {line}: {message}")]
    HeadRules { line: usize, message: String },
    #[error("sentence of {len} words exceeds the enumeration limit of {max}")]
    TooLong { len: usize, max: usize },
    #[error("invalid adapter config: {0}")]
    InvalidConfig(String),
    #[error("cannot start adapter {name:?}: {source}")]
    Spawn {
        name: String,
        #[source]
        source: std::io::Error,
    },
    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
}

impl ParserError {
    pub(crate) fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        ParserError::Io {
            path: path.into(),
            source,
        }
    }
}

/// An external parser reached through the line protocol.
#[derive(Debug, Clone, PartialEq)]
pub struct AdapterConfig {
    pub name: String,
    /// Program and arguments, run as given.
    pub command: Vec<String>,
    pub mode: GraphMode,
    pub timeout: Duration,
    /// Stream all sentences up front instead of one per answer.
    pub batch: bool,
}

impl AdapterConfig {
    pub fn new(name: impl Into<String>, command: Vec<String>, mode: GraphMode) -> Self {
        AdapterConfig {
            name: name.into(),
            command,
            mode,
            timeout: DEFAULT_TIMEOUT,
            batch: true,
        }
    }

    pub fn validate(&self) -> Result<(), ParserError> {
        if self.name.is_empty() {
            return Err(ParserError::InvalidConfig("adapter name is empty".into()));
        }
        if self.command.is_empty() || self.command[0].is_empty() {
            return Err(ParserError::InvalidConfig(format!(
                "{}: command is empty",
                self.name
            )));
        }
        if self.timeout.is_zero() {
            return Err(ParserError::InvalidConfig(format!(
                "{}: timeout must be positive",
                self.name
            )));
        }
        Ok(())
    }
}

/// Viterbi parse converted to dependencies, or `failed("no parse")`.
pub fn cyk_outcome<S: AsRef<str>>(g: &PcfgGrammar, heads: &HeadRules, words: &[S]) -> ParseOutcome {
    match cyk_parse(g, words) {
        Some(tree) => ParseOutcome::Parsed(tree_to_dependencies(&tree, heads)),
        None => ParseOutcome::Failed(NO_PARSE.into()),
    }
}

/// Any parser the harness can drive.
#[derive(Debug, Clone)]
pub enum Parser {
    Chain,
    Cyk {
        grammar: PcfgGrammar,
        heads: HeadRules,
    },
    External(AdapterConfig),
}

impl Parser {
    pub fn name(&self) -> &str {
        match self {
            Parser::Chain => "chain",
            Parser::Cyk { .. } => "cyk",
            Parser::External(cfg) => &cfg.name,
        }
    }

    pub fn mode(&self) -> GraphMode {
        match self {
            Parser::Chain | Parser::Cyk { .. } => GraphMode::Directed,
            Parser::External(cfg) => cfg.mode,
        }
    }

    /// One outcome per sentence, index-aligned.
    pub fn parse_all(&self, sentences: &[&[Token]]) -> Result<Vec<ParseOutcome>, ParserError> {
        match self {
            Parser::Chain => Ok(sentences
                .iter()
                .map(|s| ParseOutcome::Parsed(chain_parse(s)))
                .collect()),
            Parser::Cyk { grammar, heads } => Ok(sentences
                .iter()
                .map(|s| {
                    let words: Vec<&str> = s.iter().map(|t| t.text.as_str()).collect();
                    cyk_outcome(grammar, heads, &words)
                })
                .collect()),
            Parser::External(cfg) => run_external(cfg, sentences),
        }
    }
}
