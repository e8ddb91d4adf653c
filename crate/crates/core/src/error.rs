use thiserror::Error;

/// Errors raised across the toolkit.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    Dimension { expected: usize, found: usize },

    #[error("parse error: {0}")]
    Parse(String),

    #[error("unsupported gate: {0}")]
    UnsupportedGate(String),

    #[error("size limit exceeded: {what} (limit {limit}, requested {requested})")]
    SizeLimit {
        what: &'static str,
        limit: usize,
        requested: usize,
    },

    #[error("unknown code `{0}`")]
    UnknownCode(String),

    #[error("invalid code: {0}")]
    InvalidCode(String),

    #[error("invalid layout: {0}")]
    InvalidLayout(String),

    #[error("gadget synthesis failed: {0}")]
    Synthesis(String),

    #[error("construction refused: {0}")]
    Refused(String),

    #[error("verification failed: {0}")]
    Verification(String),

    #[error("search space of {estimate} exceeds budget {budget}")]
    Budget { estimate: u64, budget: u64 },

    #[error("internal consistency error: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    /// Process exit code for command-line use: 1 for failed checks and
    /// refusals, 2 for usage and input errors, 3 for budget refusals.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Budget { .. } => 3,
            Error::Refused(_) | Error::Verification(_) | Error::Synthesis(_) | Error::Internal(_) => 1,
            _ => 2,
        }
    }
}
