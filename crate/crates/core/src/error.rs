use thiserror::Error;

/// Failure modes shared by every module in the crate.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    /// Argument outside the mathematical domain of an operation.
    #[error("domain error: {0}")]
    Domain(String),
    /// Size, index or band outside the supported range.
    #[error("range error: {0}")]
    Range(String),
    /// Step too small to be resolved in double precision.
    #[error("precision error: {0}")]
    Precision(String),
    /// Input carries no information (zero variance, constant signal).
    #[error("degenerate input: {0}")]
    Degenerate(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn domain<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::Domain(msg.into()))
}

pub(crate) fn range<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::Range(msg.into()))
}
