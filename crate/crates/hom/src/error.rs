use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("config error: {0}")]
    Config(String),
    #[error("numerical error: {0}")]
    Numeric(String),
    #[error("io error: {0}")]
    Io(#[from] std::io::Error),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Config(_) => 2,
            CliError::Numeric(_) => 3,
            CliError::Io(_) => 1,
        }
    }
}

pub type Result<T> = std::result::Result<T, CliError>;

/// Attaches the config field to a validation failure.
pub fn invalid(field: &str, err: impl std::fmt::Display) -> CliError {
    CliError::Config(format!("{field}: {err}"))
}

/// Wraps a failure during evaluation.
pub fn numeric(context: &str, err: hom_core::Error) -> CliError {
    CliError::Numeric(format!("{context}: {err}"))
}
