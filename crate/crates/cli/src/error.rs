use patrace_core::oracle::SimError;
use patrace_core::{SolverError, ValidationError};
use thiserror::Error;

/// Every way a command can fail, mapped onto the documented exit codes:
/// 2 for unreadable or malformed input, 3 for a well-formed file that
/// describes an invalid system, 4 for solver degeneracies, 5 when no
/// simulation trial finishes.
#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Parse(String),
    #[error("{0}")]
    Validation(#[from] ValidationError),
    #[error("{0}")]
    Solver(#[from] SolverError),
    #[error("AllTrialsTruncated: no trial finished within {max_steps} steps")]
    Truncated { max_steps: u64 },
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Parse(_) => 2,
            CliError::Validation(_) => 3,
            CliError::Solver(_) => 4,
            CliError::Truncated { .. } => 5,
        }
    }
}

impl From<SimError> for CliError {
    fn from(e: SimError) -> CliError {
        match e {
            SimError::InvalidConfig(msg) => CliError::Parse(msg),
            SimError::AllTrialsTruncated { max_steps } => CliError::Truncated { max_steps },
        }
    }
}
