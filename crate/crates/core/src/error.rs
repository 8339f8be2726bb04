use thiserror::Error;

/// Error type shared by every module of the crate.
#[derive(Debug, Error)]
pub enum DunklError {
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("reflection group closure exceeded the cap of {cap} elements")]
    GroupTooLarge { cap: usize },
    #[error("unsupported root system: {0}")]
    UnsupportedSystem(String),
    #[error("requested precision not met: {0}")]
    PrecisionFailure(String),
    #[error("invalid grid: {0}")]
    InvalidGrid(String),
    #[error("truncation error: {0}")]
    TruncationError(String),
    #[error("out of range: {0}")]
    RangeError(String),
    #[error("smoothness violation: {0}")]
    SmoothnessViolation(String),
    #[error("approximation failure: {0}")]
    ApproximationFailure(String),
}

pub type Result<T> = std::result::Result<T, DunklError>;

impl DunklError {
    pub fn invalid(msg: impl Into<String>) -> Self {
        DunklError::InvalidArgument(msg.into())
    }
}
