use raman_nc::ModelError;
use raman_nc_fock::OracleError;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Model(#[from] ModelError),
    #[error(transparent)]
    Oracle(#[from] OracleError),
    #[error("{path}: {source}")]
    Io { path: String, source: std::io::Error },
}

impl CliError {
    /// 2 usage, 3 domain or precondition, 4 I/O.
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => 2,
            CliError::Model(ModelError::Unknown { .. } | ModelError::Parse(_)) => 2,
            CliError::Oracle(OracleError::Model(ModelError::Unknown { .. } | ModelError::Parse(_))) => 2,
            CliError::Model(_) | CliError::Oracle(_) => 3,
            CliError::Io { .. } => 4,
        }
    }
}

pub type Result<T> = std::result::Result<T, CliError>;
