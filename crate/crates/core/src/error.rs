use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("undefined modularity: graph has no edges")]
    UndefinedModularity,
    #[error("oracle limit: {what} supports n <= {limit}, got n = {n}")]
    OracleLimit {
        what: &'static str,
        limit: usize,
        n: usize,
    },
    #[error("graph is not regular")]
    NotRegular,
    #[error("graph is disconnected")]
    Disconnected,
    #[error("graph contains a cycle")]
    NotAForest,
    #[error("graph is not simple")]
    NotSimple,
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("partition covers {got} vertices, graph has {expected}")]
    PartitionMismatch { expected: usize, got: usize },
    #[error(
        "power iteration did not converge after {iterations} iterations (residual {residual:.3e})"
    )]
    NoConvergence { iterations: usize, residual: f64 },
    #[error("rejection sampling gave up after {0} attempts")]
    RetryLimit(usize),
    #[error("missing creation-order metadata: {0}")]
    MissingOrientation(String),
    #[error("insufficient range: {0}")]
    InsufficientRange(String),
    #[error("no sign change found: {0}")]
    NoRoot(String),
    #[error("parse error on line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn invalid(msg: impl Into<String>) -> Error {
    Error::InvalidParameter(msg.into())
}
