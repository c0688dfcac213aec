use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("invalid cube: {0}")]
    InvalidCube(String),

    #[error("invalid adjacency: {0}")]
    InvalidAdjacency(String),

    #[error("region too small: {0}")]
    RegionTooSmall(String),

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("not a digital manifold: {0}")]
    NotAManifold(String),

    #[error("internal inconsistency: {0}")]
    Inconsistent(String),

    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("invalid generator parameters: {0}")]
    Generator(String),

    #[error("{path}: {source}")]
    File { path: String, source: std::io::Error },

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}
