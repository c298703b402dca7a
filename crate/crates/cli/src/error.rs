use std::fmt;
use std::path::PathBuf;

use wilton_core::Error as CoreError;

/// Everything that can stop a command.
#[derive(Debug)]
pub enum CliError {
    /// Bad flags or arguments.
    Usage(String),
    /// A numerical routine refused or failed.
    Core(CoreError),
    Io {
        path: PathBuf,
        source: std::io::Error,
    },
    /// Malformed input file; `line` is 1-based.
    Parse { line: u64, message: String },
}

impl CliError {
    /// 2 for usage and domain problems, 3 for resource and convergence failures.
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Usage(_) | CliError::Parse { .. } => 2,
            CliError::Io { .. } => 3,
            CliError::Core(e) => match e {
                CoreError::Resource { .. }
                | CoreError::NonConvergence { .. }
                | CoreError::Singularity { .. } => 3,
                _ => 2,
            },
        }
    }

    pub(crate) fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        CliError::Io {
            path: path.into(),
            source,
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Usage(msg) => write!(f, "usage error: {msg}"),
            CliError::Core(e) => write!(f, "{e}"),
            CliError::Io { path, source } => write!(f, "{}: {source}", path.display()),
            CliError::Parse { line, message } => write!(f, "parse error at line {line}: {message}"),
        }
    }
}

impl std::error::Error for CliError {}

impl From<CoreError> for CliError {
    fn from(e: CoreError) -> Self {
        CliError::Core(e)
    }
}
