use std::io;

use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("dimension mismatch: expected length {expected}, got {actual}")]
    Dimension { expected: usize, actual: usize },

    #[error("problem size must be at least 1")]
    EmptyDimension,

    #[error("invalid parameter `{name}`: {reason}")]
    Parameter { name: &'static str, reason: String },

    #[error("landscape not supported here: {0}")]
    UnsupportedLandscape(String),

    #[error("enumeration bound exceeded: {0}")]
    EnumerationBound(String),

    #[error("config error in `{field}`: {reason}")]
    Config { field: String, reason: String },

    #[error("analysis error: {0}")]
    Analysis(String),

    #[error("I/O error: {0}")]
    Io(#[from] io::Error),

    #[error("CSV error: {0}")]
    Csv(#[from] csv::Error),

    #[error("JSON error: {0}")]
    Json(#[from] serde_json::Error),
}

impl Error {
    pub(crate) fn parameter(name: &'static str, reason: impl Into<String>) -> Self {
        Error::Parameter {
            name,
            reason: reason.into(),
        }
    }

    pub(crate) fn config(field: impl Into<String>, reason: impl Into<String>) -> Self {
        Error::Config {
            field: field.into(),
            reason: reason.into(),
        }
    }

    /// Process exit code for the command-line front end:
    /// 1 for configuration problems, 2 for analysis failures, 3 for I/O.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Analysis(_) | Error::EnumerationBound(_) => 2,
            Error::Io(_) | Error::Csv(_) | Error::Json(_) => 3,
            _ => 1,
        }
    }
}
