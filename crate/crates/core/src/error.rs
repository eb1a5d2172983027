use thiserror::Error;

/// Errors surfaced by the library. The CLI maps each variant to an exit code.
#[derive(Debug, Error)]
pub enum Error {
    /// An argument lies outside the mathematical domain of an operation.
    #[error("domain error: {0}")]
    Domain(String),

    /// Input structures are inconsistent (mismatched lengths, equivalent characters, ...).
    #[error("validation error: {0}")]
    Validation(String),

    /// The requested work exceeds a hard budget and was refused.
    #[error("budget exceeded: {0}")]
    Budget(String),

    /// A deterministic search ran out of candidates.
    #[error("search failed: {0}")]
    SearchFailed(String),

    /// The requested data was not retained by an earlier step.
    #[error("state error: {0}")]
    State(String),

    #[error("usage error: {0}")]
    Usage(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Csv(#[from] csv::Error),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn domain<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::Domain(msg.into()))
}

impl Error {
    /// Process exit status: 1 for computational failures, 2 for usage, 3 for budget refusals.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Usage(_) => 2,
            Error::Budget(_) => 3,
            _ => 1,
        }
    }
}
