use thiserror::Error;

/// Errors raised by the library and mapped onto CLI exit codes.
#[derive(Debug, Error)]
pub enum Error {
    /// An input outside the domain of the requested operation.
    #[error("domain error: {0}")]
    Domain(String),

    /// A computed result violated an identity that must hold exactly.
    #[error("invariant violated: {0}")]
    Invariant(String),

    /// Two points coincide, so a singular kernel cannot be evaluated.
    #[error("coincident points at indices {0} and {1}")]
    DuplicatePoints(usize, usize),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

impl Error {
    pub(crate) fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }

    /// Process exit status for this error: 2 for bad input, 3 for a failed
    /// internal check, 1 for everything else.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Domain(_) | Error::DuplicatePoints(..) => 2,
            Error::Invariant(_) => 3,
            Error::Io(_) | Error::Json(_) => 1,
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
