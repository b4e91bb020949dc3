use thiserror::Error;

use crate::parse::ParseError;

#[derive(Debug, Error)]
pub enum CliError {
    #[error(transparent)]
    Parse(#[from] ParseError),
    #[error(transparent)]
    Core(#[from] qmoyal_core::Error),
    #[error("{0}")]
    Usage(String),
}

impl CliError {
    /// Process exit code: every error is a usage-level failure.
    pub fn exit_code(&self) -> i32 {
        1
    }
}
