//! Error type shared by every module of the crate.

use thiserror::Error;

/// Errors produced by the analysis and simulation routines.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// An argument violates a documented domain invariant. The message names
    /// the violated invariant and the offending value.
    #[error("domain error: {0}")]
    Domain(String),

    /// A bounded search (e.g. over give-up thresholds) ended with its optimum
    /// still sitting on the search cap after the cap was widened once, so the
    /// reported optimum cannot be trusted.
    #[error("search bound exceeded: {0}")]
    SearchBound(String),

    /// Two algebraically equivalent evaluation routes disagreed by more than
    /// their combined numerical error budget, indicating a defect rather than
    /// ordinary rounding.
    #[error("computational integrity failure: {0}")]
    Integrity(String),

    /// An inversion target cannot be met for the given parameters (e.g. the
    /// success probability underflows to zero, so no finite value makes the
    /// attack profitable).
    #[error("unsatisfiable query: {0}")]
    Unsatisfiable(String),
}

impl Error {
    pub(crate) fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }
}

/// Convenience alias used throughout the crate.
pub type Result<T> = std::result::Result<T, Error>;
