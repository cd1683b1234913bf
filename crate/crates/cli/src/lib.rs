//! Library side of the `higgs-betti` command: the `A_{g,r}` cache, output
//! records and formats, and the subcommands themselves.

pub mod cache;
pub mod commands;
pub mod format;
pub mod record;

use higgs_betti_core::mellit::MellitError;
use higgs_betti_core::specialization::SpecializationError;

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("invalid input: {0}")]
    Invalid(String),
    #[error("verification failed: {0} check(s) failed")]
    VerifyFailed(usize),
    #[error("internal error: {0}")]
    Internal(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Invalid(_) => 2,
            CliError::VerifyFailed(_) => 3,
            CliError::Internal(_) => 4,
        }
    }
}

impl From<SpecializationError> for CliError {
    fn from(e: SpecializationError) -> Self {
        match e {
            SpecializationError::InvalidTopology(_)
            | SpecializationError::NonCoprime { .. }
            | SpecializationError::UnsupportedRank { .. } => CliError::Invalid(e.to_string()),
            SpecializationError::Mellit(m) => m.into(),
            other => CliError::Internal(other.to_string()),
        }
    }
}

impl From<MellitError> for CliError {
    fn from(e: MellitError) -> Self {
        match e {
            MellitError::InvalidGenus(_) | MellitError::InvalidRank => CliError::Invalid(e.to_string()),
            other => CliError::Internal(other.to_string()),
        }
    }
}
