use std::path::PathBuf;

use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("cannot read {path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    /// The sigma index needs at least two occurrences of a word.
    #[error("word {word:?} occurs {count} time(s); at least 2 are required")]
    InsufficientOccurrences { word: String, count: usize },

    #[error("invalid occurrence index for {word:?}: {reason}")]
    InvalidOccurrences { word: String, reason: String },

    #[error("training set has no positive (minority) records")]
    NoMinoritySamples,

    #[error("degenerate training set: {0}")]
    DegenerateTrainingSet(String),

    #[error("model format error: {0}")]
    ModelFormat(String),

    #[error("invalid configuration: {0}")]
    InvalidConfig(String),

    #[error("parse error at line {line}: {message}")]
    Parse { line: usize, message: String },
}

impl Error {
    pub(crate) fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        Error::Io {
            path: path.into(),
            source,
        }
    }

    /// True for errors caused by the input data rather than by a bug or by
    /// invalid configuration.
    pub fn is_data_error(&self) -> bool {
        matches!(
            self,
            Error::Io { .. }
                | Error::InsufficientOccurrences { .. }
                | Error::InvalidOccurrences { .. }
                | Error::NoMinoritySamples
                | Error::DegenerateTrainingSet(_)
                | Error::ModelFormat(_)
                | Error::Parse { .. }
        )
    }
}
