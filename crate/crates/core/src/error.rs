use thiserror::Error;

/// Errors raised by the library.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// An operation was called outside of its domain (zero entry, bad
    /// dimension, overlapping subsets, ...).
    #[error("domain error: {0}")]
    Domain(String),
    /// A postcondition that the construction guarantees did not hold.
    #[error("internal error: {0}")]
    Internal(String),
    /// A mathematical property that the caller asserted turned out false.
    #[error("property violation: {0}")]
    Property(String),
    /// Malformed textual or JSON input.
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn domain<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::Domain(msg.into()))
}
