use thiserror::Error;

use crate::exploration::Rejection;

/// Errors raised by context construction, parsing, the closure algorithms
/// and the exploration drivers.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("parse error{}: {message}", line.map(|l| format!(" at line {l}")).unwrap_or_default())]
    Parse {
        line: Option<usize>,
        message: String,
    },

    #[error("precondition violated: {0}")]
    PreconditionViolation(String),

    /// An answer failed validation; the question stays pending.
    #[error("answer rejected: {0}")]
    Rejected(Rejection),

    /// A counterexample contradicts an implication already asserted to hold.
    #[error("inconsistent answer: {0}")]
    Inconsistent(Rejection),

    #[error("transcript divergence: {0}")]
    TranscriptDivergence(String),

    #[error("no pending question")]
    NoPendingQuestion,
}

impl Error {
    pub(crate) fn invalid(msg: impl Into<String>) -> Self {
        Error::InvalidArgument(msg.into())
    }

    pub(crate) fn parse(line: Option<usize>, message: impl Into<String>) -> Self {
        Error::Parse {
            line,
            message: message.into(),
        }
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
