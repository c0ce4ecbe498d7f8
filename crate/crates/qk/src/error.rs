use std::path::PathBuf;

use crate::edgelist::ParseError;

/// Process exit statuses. Everything above 2 is an error.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
#[repr(u8)]
pub enum ExitCode {
    Ok = 0,
    PropertyFails = 1,
    Counterexample = 2,
    Usage = 64,
    BadInput = 65,
    Internal = 70,
    Io = 74,
}

impl ExitCode {
    pub fn code(self) -> u8 {
        self as u8
    }
}

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("{path}: {source}")]
    Io { path: PathBuf, source: std::io::Error },
    #[error("{path}: {source}")]
    Parse { path: PathBuf, source: ParseError },
    #[error(transparent)]
    Core(#[from] qk_core::Error),
    #[error("cannot serialize report: {0}")]
    Json(#[from] serde_json::Error),
}

impl CliError {
    pub fn exit_code(&self) -> ExitCode {
        match self {
            CliError::Usage(_) => ExitCode::Usage,
            CliError::Io { .. } => ExitCode::Io,
            CliError::Parse { .. } => ExitCode::BadInput,
            CliError::Core(qk_core::Error::InvalidParameter(_)) => ExitCode::Usage,
            CliError::Core(_) => ExitCode::BadInput,
            CliError::Json(_) => ExitCode::Internal,
        }
    }
}
