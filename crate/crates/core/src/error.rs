use thiserror::Error;

/// Errors shared by every module of the crate.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("syntax error at offset {position}: {message}")]
    Syntax { position: usize, message: String },
    #[error("unknown letter `{0}`")]
    UnknownLetter(String),
    #[error("alphabet mismatch")]
    AlphabetMismatch,
    #[error("empty alphabet")]
    EmptyAlphabet,
    #[error("invalid input: {0}")]
    Invalid(String),
    #[error("position {position} out of range for a word of length {len}")]
    PositionOutOfRange { position: usize, len: usize },
    #[error("base unsupported: {0}")]
    UnsupportedBase(String),
    #[error("resource limit exceeded: {0}")]
    Resource(String),
    #[error("exactness required: {0}")]
    ExactnessRequired(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

impl Error {
    pub(crate) fn invalid(msg: impl Into<String>) -> Self {
        Error::Invalid(msg.into())
    }

    pub(crate) fn resource(msg: impl Into<String>) -> Self {
        Error::Resource(msg.into())
    }
}
