use thiserror::Error;

/// Errors produced by the algebra kernel.
///
/// Variants split into two families: caller mistakes or violated
/// hypotheses (reported with exit code 2 by the CLI) and internal
/// inconsistencies (exit code 1).
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("operands live in different rings")]
    RingMismatch,
    #[error("exponent overflow")]
    ExponentOverflow,
    #[error("exponent vectors of different length ({0} vs {1})")]
    LengthMismatch(usize, usize),
    #[error("{0} is not a monomial ideal")]
    NonMonomial(String),
    #[error("{0} must be a proper ideal")]
    UnitIdeal(String),
    #[error("invalid ring: {0}")]
    InvalidRing(String),
    #[error("unknown variable `{0}`")]
    UnknownVariable(String),
    #[error("box of {0} multidegrees exceeds the supported size")]
    BoxTooLarge(usize),
    #[error("hypothesis violated ({tag}): {message}")]
    Precondition { tag: &'static str, message: String },
    #[error("parse error at line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("internal error: {0}")]
    Internal(String),
}

impl Error {
    pub fn precondition(tag: &'static str, message: impl Into<String>) -> Self {
        Error::Precondition {
            tag,
            message: message.into(),
        }
    }

    /// True for errors that indicate a bug rather than bad input.
    pub fn is_internal(&self) -> bool {
        matches!(self, Error::Internal(_))
    }
}

pub type Result<T> = std::result::Result<T, Error>;
