use std::io;
use std::path::PathBuf;

use thiserror::Error;

/// Failures surfaced by the command line, each with its exit code.
#[derive(Debug, Error)]
pub enum CliError {
    #[error("{}: {source}", path.display())]
    Io {
        path: PathBuf,
        #[source]
        source: io::Error,
    },
    #[error("parse error: {0}")]
    Parse(String),
    #[error("usage: {0}")]
    Usage(String),
    #[error("{0}")]
    Contract(#[from] cartfact_core::Error),
    #[error("verification failed: {0}")]
    Verification(String),
}

impl CliError {
    /// 1 for I/O, parse and usage problems, 2 for inputs that break an
    /// algorithm's contract, 3 when a result fails verification.
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Io { .. } | CliError::Parse(_) | CliError::Usage(_) => 1,
            CliError::Contract(cartfact_core::Error::VerificationFailed) => 3,
            CliError::Contract(_) => 2,
            CliError::Verification(_) => 3,
        }
    }
}
