use std::fmt;
use std::process::ExitCode;

use thiserror::Error;

/// Failure of a command, carrying its stable exit code.
#[derive(Debug, Error)]
pub enum CliError {
    /// Bad flags or infeasible parameters (exit 2).
    #[error("{0}")]
    Usage(String),
    /// Unreadable, unwritable or malformed files (exit 3).
    #[error("{0}")]
    Io(String),
    /// At least one gated verification case failed (exit 1).
    #[error("verification failed: {0} gated case(s) did not pass")]
    Verification(usize),
}

impl CliError {
    /// Exit status: 1 verification failure, 2 usage, 3 I/O.
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Verification(_) => 1,
            CliError::Usage(_) => 2,
            CliError::Io(_) => 3,
        }
    }

    pub(crate) fn usage(e: impl fmt::Display) -> Self {
        CliError::Usage(e.to_string())
    }

    pub(crate) fn io(context: impl fmt::Display, e: impl fmt::Display) -> Self {
        CliError::Io(format!("{context}: {e}"))
    }
}

impl From<&CliError> for ExitCode {
    fn from(e: &CliError) -> Self {
        ExitCode::from(e.exit_code())
    }
}
