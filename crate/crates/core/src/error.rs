use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("ground set size {requested} exceeds the configured maximum {max} (set PARTHOM_MAX_N to override)")]
    ResourceLimit { requested: usize, max: usize },

    #[error("invalid block: {0}")]
    InvalidBlock(String),

    #[error("invalid partial partition: {0}")]
    InvalidFace(String),

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("internal consistency failure: {0}")]
    Consistency(String),
}

pub type Result<T> = std::result::Result<T, Error>;
