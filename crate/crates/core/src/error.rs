use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    /// Malformed textual input; `pos` is a byte offset when known.
    #[error("parse error at {pos}: {msg}")]
    Parse { pos: usize, msg: String },

    /// Well-formed input that violates a structural contract.
    #[error("invalid input: {0}")]
    Invalid(String),

    /// A computation exceeded the configured cost budget.
    #[error("computation refused: {0}")]
    Refused(String),

    /// Exact arithmetic could not be carried out (overflow, non-invertible element).
    #[error("arithmetic error: {0}")]
    Arithmetic(String),
}

impl Error {
    pub fn parse(pos: usize, msg: impl Into<String>) -> Self {
        Error::Parse {
            pos,
            msg: msg.into(),
        }
    }

    pub fn invalid(msg: impl Into<String>) -> Self {
        Error::Invalid(msg.into())
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
