use thiserror::Error;

use crate::semiring::{ExtInt, SemiringId};

pub type Result<T> = std::result::Result<T, Error>;

/// Failure classes shared by every module. The CLI maps them onto exit codes
/// through [`Error::exit_code`].
#[derive(Debug, Error)]
pub enum Error {
    #[error("value {value} is outside the carrier of {semiring}")]
    Domain { semiring: SemiringId, value: ExtInt },

    #[error("arithmetic overflow in {0}")]
    Overflow(&'static str),

    #[error("variable universe mismatch: {left} vs {right}")]
    UniverseMismatch { left: usize, right: usize },

    #[error("polynomial explosion{}: more than {cap} monomials (estimate {estimate})",
        .gate.map(|g| format!(" at gate {g}")).unwrap_or_default())]
    Explosion {
        gate: Option<usize>,
        cap: usize,
        estimate: u128,
    },

    #[error("work cap exceeded: {0}")]
    Cap(String),

    #[error("out of range: {0}")]
    Range(String),

    #[error("precondition failed: {0}")]
    Precondition(String),

    #[error("invalid circuit: {}", .0.join("; "))]
    InvalidCircuit(Vec<String>),

    #[error("malformed input: {0}")]
    Input(String),

    #[error(transparent)]
    Json(#[from] serde_json::Error),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error("internal invariant violated: {0}")]
    Internal(String),
}

impl Error {
    pub fn precondition(msg: impl Into<String>) -> Self {
        Error::Precondition(msg.into())
    }

    pub fn range(msg: impl Into<String>) -> Self {
        Error::Range(msg.into())
    }

    /// 2 usage/input, 3 range or cap, 4 failed mathematical precondition,
    /// 5 internal invariant violation.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Input(_) | Error::Json(_) | Error::Io(_) => 2,
            Error::Range(_)
            | Error::Cap(_)
            | Error::Explosion { .. }
            | Error::Overflow(_)
            | Error::Domain { .. }
            | Error::UniverseMismatch { .. } => 3,
            Error::Precondition(_) | Error::InvalidCircuit(_) => 4,
            Error::Internal(_) => 5,
        }
    }
}
