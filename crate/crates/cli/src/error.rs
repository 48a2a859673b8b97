use thiserror::Error;

pub type CliResult<T> = std::result::Result<T, CliError>;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),

    #[error("config {path}: {msg}")]
    Config { path: String, msg: String },

    #[error(transparent)]
    Solver(#[from] pdm_core::Error),

    #[error("{path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },

    #[error("{0}")]
    NoClosedForm(String),

    #[error("{0}")]
    Mismatch(String),

    #[error("{0}")]
    Incomplete(String),
}

impl CliError {
    pub fn code(&self) -> &'static str {
        match self {
            CliError::Usage(_) => "E_USAGE",
            CliError::Config { .. } => "E_CONFIG",
            CliError::Solver(e) => e.code(),
            CliError::Io { .. } => "E_IO",
            CliError::NoClosedForm(_) => "E_NO_CLOSED_FORM",
            CliError::Mismatch(_) => "E_MISMATCH",
            CliError::Incomplete(_) => "E_INCOMPLETE",
        }
    }

    /// 1 usage, 2 solver or I/O failure, 3 reproduction mismatch.
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) | CliError::Config { .. } => 1,
            CliError::Solver(_)
            | CliError::Io { .. }
            | CliError::NoClosedForm(_)
            | CliError::Incomplete(_) => 2,
            CliError::Mismatch(_) => 3,
        }
    }

    /// `error[CODE]: message` on one line.
    pub fn render(&self) -> String {
        let msg = self.to_string().replace('\n', " ");
        format!("error[{}]: {}", self.code(), msg.trim())
    }
}

pub(crate) fn io_error(path: &std::path::Path, source: std::io::Error) -> CliError {
    CliError::Io {
        path: path.display().to_string(),
        source,
    }
}
