use std::path::PathBuf;

use thiserror::Error;
use unionpid_core::PidError;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Argument(String),
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        source: std::io::Error,
    },
    #[error(transparent)]
    Pid(#[from] PidError),
}

pub type Result<T> = std::result::Result<T, CliError>;

impl CliError {
    pub fn arg(msg: impl Into<String>) -> Self {
        CliError::Argument(msg.into())
    }

    /// Process exit status: 3 for solver failures, 2 for everything the
    /// caller can fix.
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Pid(e) if e.is_solver_failure() => 3,
            _ => 2,
        }
    }
}
