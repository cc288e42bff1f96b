//! Parser robustness evaluation against misspelled input.
//!
//! The crate builds noisy corpora from clean sentences ([`corpus`]), runs
//! parsers over clean/noisy pairs ([`parsers`]), compares their analyses
//! ([`parsegraph`]) and turns the comparisons into unlabeled and labeled
//! robustness scores ([`scoring`]). The [`cli`] module ties the stages
//! together behind the `misparse` binary.

pub mod cli;
pub mod corpus;
pub mod parsegraph;
pub mod parsers;
pub mod scoring;
pub mod util;
