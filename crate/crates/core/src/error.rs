use thiserror::Error;

/// Errors raised by rate evaluation, the solvers and the experiment harness.
#[derive(Debug, Error)]
pub enum Error {
    /// Inconsistent dimensions or an out-of-range parameter.
    #[error("invalid argument: {0}")]
    Argument(String),
    /// Input outside the mathematical domain of an operation
    /// (non-Hermitian, indefinite or singular matrices).
    #[error("domain error: {0}")]
    Domain(String),
    /// An iterative routine failed to converge or produced non-finite values.
    #[error("numerical failure: {0}")]
    Numeric(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Csv(#[from] csv::Error),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn argument(msg: impl Into<String>) -> Error {
    Error::Argument(msg.into())
}

pub(crate) fn domain(msg: impl Into<String>) -> Error {
    Error::Domain(msg.into())
}

pub(crate) fn numeric(msg: impl Into<String>) -> Error {
    Error::Numeric(msg.into())
}
