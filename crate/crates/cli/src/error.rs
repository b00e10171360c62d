use thiserror::Error;

/// Exit code 2 for usage and configuration problems, 1 for property
/// violations found by a run.
#[derive(Debug, Error)]
pub enum CliError {
    #[error("config: {0}")]
    Config(String),
    #[error("usage: {0}")]
    Usage(String),
    #[error(transparent)]
    Core(#[from] conetop::Error),
    #[error("io: {0}")]
    Io(#[from] std::io::Error),
    #[error("{0} check(s) failed")]
    Violations(usize),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Violations(_) => 1,
            _ => 2,
        }
    }
}

pub type CliResult<T> = std::result::Result<T, CliError>;
