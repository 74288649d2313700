use thiserror::Error;

/// Errors produced by the evaluation, threshold and verification layers.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("{what}: argument {value} outside the domain {expected}")]
    Domain {
        what: &'static str,
        value: f64,
        expected: &'static str,
    },

    #[error("{what}: series did not converge within {terms} terms")]
    NonConvergence { what: &'static str, terms: usize },

    #[error("{0} diverges")]
    Divergent(String),

    #[error("degenerate parameters a = {a}, b = {b}: {what}")]
    Degenerate { a: f64, b: f64, what: &'static str },

    #[error("no evaluation route for 2F1({a}, {b}; {c}; {x})")]
    NoRoute { a: f64, b: f64, c: f64, x: f64 },

    #[error("precondition failed: {0}")]
    Precondition(String),

    #[error("finite-difference step {step:e} at x = {x} is below the usable floor")]
    StepUnderflow { x: f64, step: f64 },

    #[error("numerical breakdown: {0}")]
    Breakdown(String),

    #[error("config: {0}")]
    Config(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn domain(what: &'static str, value: f64, expected: &'static str) -> Error {
    Error::Domain {
        what,
        value,
        expected,
    }
}
