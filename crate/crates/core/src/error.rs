use std::path::PathBuf;

use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    #[error("{path}:{line}: {message}")]
    Parse {
        path: PathBuf,
        line: usize,
        message: String,
    },

    #[error("no methods extracted")]
    NoMethods,

    #[error("corpus is empty")]
    EmptyCorpus,

    #[error("duplicate method id `{0}`")]
    DuplicateMethod(String),

    #[error("duplicate bug id `{0}`")]
    DuplicateBug(String),

    #[error("empty query for bug `{0}`")]
    EmptyQuery(String),

    #[error("invalid bug report `{id}`: {reason}")]
    InvalidBug { id: String, reason: String },

    #[error("invalid gold set entry `{id}`: {reason}")]
    InvalidGold { id: String, reason: String },

    #[error("bug ids missing from the gold set: {}", .0.join(", "))]
    UnknownBugs(Vec<String>),

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("unknown preset `{0}`")]
    UnknownPreset(String),

    #[error("unsupported index format: {0}")]
    IndexFormat(String),

    #[error("config {path}: {message}")]
    Config { path: PathBuf, message: String },
}

impl Error {
    pub(crate) fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        Error::Io {
            path: path.into(),
            source,
        }
    }

    pub(crate) fn parse(path: impl Into<PathBuf>, line: usize, message: impl Into<String>) -> Self {
        Error::Parse {
            path: path.into(),
            line,
            message: message.into(),
        }
    }

    pub(crate) fn param(message: impl Into<String>) -> Self {
        Error::InvalidParameter(message.into())
    }
}
