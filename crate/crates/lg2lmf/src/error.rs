use std::path::PathBuf;

use thiserror::Error;

/// Errors raised anywhere in the conversion pipeline.
#[derive(Debug, Error)]
pub enum Error {
    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    #[error("table {class_id}: {message}")]
    Table { class_id: String, message: String },

    #[error("table {class_id}, row {row}, column {column}: {message}")]
    Cell {
        class_id: String,
        row: usize,
        column: String,
        message: String,
    },

    #[error("table of classes: {0}")]
    Matrix(String),

    #[error("catalog: {0}")]
    Catalog(String),

    #[error("class {class_id} not present in the table of classes")]
    ClassNotInMatrix { class_id: String },

    #[error("mnemonic {input:?}: {message}")]
    Mnemonic { input: String, message: String },

    #[error("unknown redistribution label %{0}")]
    UnknownRedistribution(String),

    #[error("construction {construction}: control references slot {slot}, not licensed")]
    ControlSlot { construction: String, slot: usize },

    #[error("entry {entry_id}: mwe trigger {feature:?} names undeclared pattern {pattern:?}")]
    UndeclaredMwePattern {
        entry_id: String,
        feature: String,
        pattern: String,
    },

    #[error(
        "interning inconsistency: two frames share id {mnemonic:?} but differ in content \
         (first from {first}, second from {second})"
    )]
    InternMismatch {
        mnemonic: String,
        first: String,
        second: String,
    },

    #[error("xml parse error at {line}:{column}: {message}")]
    Xml {
        line: usize,
        column: usize,
        message: String,
    },

    #[error("{path}: {message}")]
    Document { path: String, message: String },

    #[error("{0}")]
    Usage(String),
}

impl Error {
    pub fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        Error::Io {
            path: path.into(),
            source,
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
