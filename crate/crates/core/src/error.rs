use std::path::PathBuf;

use thiserror::Error;

#[derive(Debug, Error)]
pub enum PwtError {
    #[error("invalid instance: {0}")]
    InvalidInstance(String),
    #[error("operation requires a two-city instance (found {legs} travel legs)")]
    NotTwoCity { legs: usize },
    #[error("operation requires a favourably correlated two-city instance")]
    NotCorrelated,
    #[error("solution is infeasible (weight {weight} exceeds capacity {capacity})")]
    Infeasible { weight: u64, capacity: u64 },
    #[error("solution has {found} bits, instance has {expected} items")]
    LengthMismatch { expected: usize, found: usize },
    #[error("exhaustive enumeration over {n} items exceeds the limit of {limit}")]
    TooLarge { n: usize, limit: usize },
    #[error("item index {index} out of range for {n} items")]
    ItemIndex { index: usize, n: usize },
    #[error("invalid configuration: {0}")]
    InvalidConfig(String),
    #[error("empty input: {0}")]
    EmptyInput(&'static str),
    #[error("i/o error on {path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
    #[error("json: {0}")]
    Json(#[from] serde_json::Error),
    #[error("csv: {0}")]
    Csv(#[from] csv::Error),
}

pub type Result<T, E = PwtError> = std::result::Result<T, E>;

impl PwtError {
    pub(crate) fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        PwtError::Io {
            path: path.into(),
            source,
        }
    }
}
