use std::io;
use std::path::PathBuf;

use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("{0}")]
    Budget(String),
    #[error("engines disagree: {0}")]
    EngineMismatch(String),
    #[error("cache file {path}: {reason}")]
    Cache { path: PathBuf, reason: String },
    #[error("{path}: {source}")]
    Io { path: PathBuf, source: io::Error },
    #[error(transparent)]
    Core(origami_core::Error),
}

impl CliError {
    /// 1 for a failed comparison, 2 for bad invocations, 3 for exhausted
    /// budgets and other resource problems.
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Usage(_) => 2,
            CliError::EngineMismatch(_) => 1,
            CliError::Budget(_) | CliError::Cache { .. } | CliError::Io { .. } => 3,
            CliError::Core(e) => match e {
                origami_core::Error::RankTooSmall(_)
                | origami_core::Error::KindMismatch(_)
                | origami_core::Error::IndexOutOfRange { .. }
                | origami_core::Error::Parse(_)
                | origami_core::Error::WrongFamily { .. } => 2,
                _ => 3,
            },
        }
    }
}

impl From<origami_core::Error> for CliError {
    fn from(e: origami_core::Error) -> Self {
        match e {
            origami_core::Error::MemoryBudgetExceeded(_)
            | origami_core::Error::StepBudgetExceeded(_) => CliError::Budget(e.to_string()),
            other => CliError::Core(other),
        }
    }
}

pub type CliResult<T> = Result<T, CliError>;
