use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    /// The measure kind cannot be evaluated on the given input shape or parameter range.
    #[error("unsupported measure: {0}")]
    UnsupportedMeasure(String),

    #[error("unsupported configuration: {0}")]
    UnsupportedConfiguration(String),
}

impl Error {
    pub(crate) fn invalid(msg: impl Into<String>) -> Self {
        Error::InvalidArgument(msg.into())
    }

    pub(crate) fn unsupported(msg: impl Into<String>) -> Self {
        Error::UnsupportedMeasure(msg.into())
    }
}
