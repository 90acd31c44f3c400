use std::io;

use thiserror::Error;

/// Errors produced by ingestion, training, detection and the tooling around them.
#[derive(Debug, Error)]
pub enum PrecogError {
    #[error("series is empty")]
    EmptySeries,

    #[error("timestamps must be strictly increasing (violated at index {index})")]
    NonMonotonicTimestamps { index: usize },

    #[error("timestamps and values differ in length ({timestamps} vs {values})")]
    LengthMismatch { timestamps: usize, values: usize },

    #[error("value {value} at index {index} is outside the accepted range [0, 100]")]
    ValueOutOfRange { index: usize, value: f64 },

    #[error("series has {len} points, at least {min} required")]
    SeriesTooShort { len: usize, min: usize },

    #[error("segment has {len} points, at least {min} required")]
    SegmentTooShort { len: usize, min: usize },

    #[error("unsupported model schema version {found} (expected {expected})")]
    SchemaMismatch { found: u32, expected: u32 },

    #[error("model was trained with {field} = {model}, detection configured with {config}")]
    ConfigMismatch {
        field: &'static str,
        model: String,
        config: String,
    },

    #[error("invalid configuration: {0}")]
    InvalidConfig(String),

    #[error("invalid generator parameters: {0}")]
    InvalidParams(String),

    #[error("invalid benchmark sizes: {0}")]
    InvalidSizes(String),

    #[error("no results to score")]
    EmptyInput,

    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error(transparent)]
    Io(#[from] io::Error),

    #[error("malformed JSON: {0}")]
    Json(#[from] serde_json::Error),
}

pub type Result<T, E = PrecogError> = std::result::Result<T, E>;
