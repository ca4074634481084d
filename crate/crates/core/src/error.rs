use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    /// Invalid user-supplied configuration; `field` names the offending input.
    #[error("configuration error in `{field}`: {message}")]
    Config { field: String, message: String },

    #[error("estimation error: {0}")]
    Estimation(String),

    /// The traffic model cannot provide what the operation needs
    /// (e.g. exact joint enumeration).
    #[error("capability error: {0}")]
    Capability(String),

    #[error("domain error: {0}")]
    Domain(String),

    #[error("logic error: {0}")]
    Logic(String),

    #[error("parse error at line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl Error {
    pub fn config(field: impl Into<String>, message: impl Into<String>) -> Self {
        Error::Config {
            field: field.into(),
            message: message.into(),
        }
    }

    /// Process exit code used by the command line tool.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Config { .. } | Error::Parse { .. } | Error::Domain(_) => 2,
            _ => 3,
        }
    }
}
