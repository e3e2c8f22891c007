use std::path::PathBuf;

use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    /// Malformed input: unparsable partitions, conditions outside the box or
    /// with the wrong total weight, bad dimensions.
    #[error("invalid input: {0}")]
    InvalidInput(String),

    /// A well-formed problem that the operation cannot use: degree zero,
    /// asymmetric conditions where symmetry is required, codimensions that
    /// do not add up on LG.
    #[error("invalid problem: {0}")]
    InvalidProblem(String),

    #[error("no usable chart: {0}")]
    Chart(String),

    #[error("{path}:{line}: {msg}")]
    Parse { path: PathBuf, line: usize, msg: String },

    #[error("io error on {path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    #[error(transparent)]
    Json(#[from] serde_json::Error),

    #[error(transparent)]
    Csv(#[from] csv::Error),
}

impl Error {
    pub(crate) fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        Error::Io { path: path.into(), source }
    }
}
