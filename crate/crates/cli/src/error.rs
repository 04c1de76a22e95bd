use std::fmt;
use std::path::Path;

/// Process exit status of a failed run.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ExitKind {
    Usage = 1,
    Data = 2,
    Internal = 3,
}

#[derive(Debug, thiserror::Error)]
#[error("{message}")]
pub struct CliError {
    pub kind: ExitKind,
    pub message: String,
}

impl CliError {
    pub fn usage(message: impl fmt::Display) -> Self {
        Self {
            kind: ExitKind::Usage,
            message: message.to_string(),
        }
    }

    pub fn data(message: impl fmt::Display) -> Self {
        Self {
            kind: ExitKind::Data,
            message: message.to_string(),
        }
    }

    pub fn write(path: &Path, e: std::io::Error) -> Self {
        Self::data(format!("cannot write {}: {e}", path.display()))
    }
}

impl From<keygraph::Error> for CliError {
    fn from(e: keygraph::Error) -> Self {
        let kind = if e.is_data_error() {
            ExitKind::Data
        } else {
            ExitKind::Usage
        };
        Self {
            kind,
            message: e.to_string(),
        }
    }
}
