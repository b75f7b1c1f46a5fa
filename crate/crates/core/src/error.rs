use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("invalid partition: {0}")]
    InvalidPartition(String),

    #[error("invalid multi-rectangular shape: {0}")]
    InvalidShape(String),

    #[error("size mismatch: {0}")]
    SizeMismatch(String),

    #[error("indeterminate sets differ: {left:?} vs {right:?}")]
    VariableMismatch { left: Vec<String>, right: Vec<String> },

    #[error("unknown indeterminate `{0}`")]
    UnknownVariable(String),

    #[error("series error: {0}")]
    Series(String),

    #[error("linear system is rank deficient: {0}")]
    RankDeficient(String),

    #[error("singular determinant: {0}")]
    Singular(String),

    #[error("budget exceeded: {0}")]
    Budget(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("consistency check failed: {0}")]
    Consistency(String),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}

pub type Result<T> = std::result::Result<T, Error>;
