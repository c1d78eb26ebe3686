use thiserror::Error;

/// Errors raised by the library.
///
/// `Usage` covers malformed input, `Resource` covers explicit budget
/// refusals, `Precondition` rejects inputs a check does not apply to, and
/// `Invariant` means an internal consistency check failed.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("usage error: {0}")]
    Usage(String),
    #[error("resource limit: {0}")]
    Resource(String),
    #[error("internal invariant violated: {0}")]
    Invariant(String),
    #[error("precondition failed: {0}")]
    Precondition(String),
    #[error("relation is not chain-decomposable: vertices {0} and {1} are related both ways")]
    NotChainDecomposable(usize, usize),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

pub(crate) fn usage<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::Usage(msg.into()))
}
