use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("cannot read {path}: {message}")]
    Io { path: String, message: String },
    #[error("parse error in {path} at line {line}: {message}")]
    Parse { path: String, line: usize, message: String },
    #[error("unresolved reference to {kind} {name:?}")]
    UnresolvedReference { kind: &'static str, name: String },
    #[error("invalid {record}: {message}")]
    Validation { record: String, message: String },
    #[error("usage: {0}")]
    Usage(String),
    #[error(transparent)]
    Core(#[from] enriched::Error),
}

impl CliError {
    pub fn validation(record: impl Into<String>, message: impl ToString) -> Self {
        CliError::Validation {
            record: record.into(),
            message: message.to_string(),
        }
    }

    pub fn unresolved(kind: &'static str, name: &str) -> Self {
        CliError::UnresolvedReference {
            kind,
            name: name.to_string(),
        }
    }

    /// `3` for exhausted budgets, `2` for everything else.
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Core(enriched::Error::BudgetExceeded { .. }) => 3,
            _ => 2,
        }
    }
}

pub type CliResult<T> = std::result::Result<T, CliError>;
