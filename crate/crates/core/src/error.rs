use thiserror::Error;

/// Errors raised by the library.
///
/// `Input` covers malformed or unsupported problems, `Query` covers
/// well-formed requests that have no answer (a point on a wall, a run on a
/// Calabi-Yau problem), and `Internal` flags a violated invariant.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("{0}")]
    Input(String),
    #[error("{0}")]
    Query(String),
    #[error("internal error: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;
