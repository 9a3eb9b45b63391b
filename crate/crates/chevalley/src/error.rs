use std::fmt;
use std::io;

/// Errors of the command-line layer. `Usage` and `Format` map to exit code
/// 2, everything else to 1.
#[derive(Debug)]
pub enum CliError {
    Usage(String),
    Format(String),
    Io(io::Error),
    Core(chevalley_core::Error),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) | CliError::Format(_) | CliError::Io(_) => 2,
            CliError::Core(_) => 1,
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Usage(m) => write!(f, "usage: {m}"),
            CliError::Format(m) => write!(f, "bad input: {m}"),
            CliError::Io(e) => write!(f, "io: {e}"),
            CliError::Core(e) => write!(f, "{e}"),
        }
    }
}

impl std::error::Error for CliError {
    fn source(&self) -> Option<&(dyn std::error::Error + 'static)> {
        match self {
            CliError::Io(e) => Some(e),
            CliError::Core(e) => Some(e),
            _ => None,
        }
    }
}

impl From<io::Error> for CliError {
    fn from(e: io::Error) -> Self {
        CliError::Io(e)
    }
}

impl From<serde_json::Error> for CliError {
    fn from(e: serde_json::Error) -> Self {
        CliError::Format(e.to_string())
    }
}

impl From<chevalley_core::Error> for CliError {
    fn from(e: chevalley_core::Error) -> Self {
        CliError::Core(e)
    }
}

pub type Result<T> = std::result::Result<T, CliError>;
