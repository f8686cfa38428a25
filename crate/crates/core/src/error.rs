use std::path::PathBuf;

use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("io error on {path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    #[error("invalid date {input:?}: bad {field}")]
    Date { input: String, field: &'static str },

    #[error("embedding file {path}: {message} at byte offset {offset}")]
    EmbeddingFormat {
        path: PathBuf,
        offset: u64,
        message: String,
    },

    #[error("dimension mismatch: expected {expected}, got {actual}")]
    DimensionMismatch { expected: usize, actual: usize },

    #[error("vector for {id:?} is not unit norm (norm {norm})")]
    NotUnitNorm { id: String, norm: f32 },

    #[error("empty text")]
    EmptyText,

    #[error("missing embedding for id {0:?}")]
    MissingEmbedding(String),

    #[error("span [{start}, {end}) out of bounds for {len} tokens")]
    SpanOutOfBounds { start: usize, end: usize, len: usize },

    #[error("degenerate labels: {0}")]
    DegenerateLabels(&'static str),

    #[error("partition universes differ; symmetric difference: {0:?}")]
    UniverseMismatch(Vec<String>),

    #[error("invalid partition: {0}")]
    InvalidPartition(String),

    #[error("invalid configuration: {0}")]
    Config(String),

    #[error("empty input: {0}")]
    EmptyInput(&'static str),

    #[error("csv error in {path}: {source}")]
    Csv {
        path: PathBuf,
        #[source]
        source: csv::Error,
    },

    #[error("json error: {0}")]
    Json(#[from] serde_json::Error),
}

impl Error {
    pub(crate) fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        Error::Io {
            path: path.into(),
            source,
        }
    }

    pub(crate) fn csv(path: impl Into<PathBuf>, source: csv::Error) -> Self {
        Error::Csv {
            path: path.into(),
            source,
        }
    }
}
