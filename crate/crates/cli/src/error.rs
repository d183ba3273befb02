use std::io;
use std::path::PathBuf;

use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),

    #[error(transparent)]
    Domain(#[from] korselt::Error),

    #[error("{failures} verification failure(s)")]
    VerificationFailed { failures: usize },

    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: io::Error,
    },

    #[error("{path}:{line}: corrupt cache record: {message}")]
    CorruptCache {
        path: PathBuf,
        line: usize,
        message: String,
    },

    #[error("output error: {0}")]
    Output(#[from] io::Error),
}

impl CliError {
    /// 0 success, 1 usage or I/O, 2 domain error, 3 verification failures.
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Domain(korselt::Error::Parse(_)) => 1,
            CliError::Domain(_) => 2,
            CliError::VerificationFailed { .. } => 3,
            CliError::Usage(_)
            | CliError::Io { .. }
            | CliError::CorruptCache { .. }
            | CliError::Output(_) => 1,
        }
    }

    pub fn io(path: impl Into<PathBuf>, source: io::Error) -> Self {
        CliError::Io {
            path: path.into(),
            source,
        }
    }
}

impl From<csv::Error> for CliError {
    fn from(err: csv::Error) -> Self {
        CliError::Output(io::Error::other(err))
    }
}

impl From<serde_json::Error> for CliError {
    fn from(err: serde_json::Error) -> Self {
        CliError::Output(io::Error::other(err))
    }
}
