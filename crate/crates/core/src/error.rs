use thiserror::Error;

/// Errors raised by the numerical routines.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("domain error in {op}: {msg}")]
    Domain { op: &'static str, msg: String },

    #[error("degenerate configuration: {0}")]
    Degenerate(String),

    #[error("no start converged ({starts} starts, max_iter = {max_iter})")]
    NoConvergence { starts: usize, max_iter: usize },

    #[error("quadrature did not reach tolerance: {0}")]
    Quadrature(String),

    #[error("consistency check failed: {0}")]
    Consistency(String),

    #[error("inequality violated: {0}")]
    Violation(String),

    #[error("no solution: {0}")]
    NoSolution(String),

    #[error("search failure: {0}")]
    SearchFailure(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn domain(op: &'static str, msg: impl Into<String>) -> Error {
    Error::Domain {
        op,
        msg: msg.into(),
    }
}
