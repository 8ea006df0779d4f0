use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum ModelError {
    #[error("domain error: {0}")]
    Domain(String),
    #[error("unsupported regime: {0}")]
    Regime(String),
    #[error("unknown identifier `{name}`; valid: {valid}")]
    Unknown { name: String, valid: String },
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, ModelError>;

pub(crate) fn domain<T>(msg: impl Into<String>) -> Result<T> {
    Err(ModelError::Domain(msg.into()))
}
