use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),

    #[error("n = {n} exceeds the ceiling {max} for {what} (set PARTHOM_MAX_N to override)")]
    Ceiling { n: usize, max: usize, what: &'static str },

    #[error("I/O error on {path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },

    #[error(transparent)]
    Core(#[from] parthom_core::Error),
}

impl CliError {
    /// Process exit status: 1 when the library detected an internal
    /// inconsistency, 2 for usage, resource and I/O problems.
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Core(parthom_core::Error::Consistency(_)) => 1,
            _ => 2,
        }
    }
}

pub type CliResult<T> = Result<T, CliError>;
