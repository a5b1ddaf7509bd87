use std::fmt;

/// Error type shared by every fallible operation in the crate.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Error {
    /// A request exceeded a configured resource bound.
    Capacity {
        what: &'static str,
        requested: u64,
        max: u64,
    },
    /// An intermediate value does not fit in 64 bits.
    Overflow { what: &'static str },
    /// A documented precondition does not hold for the given input.
    Precondition(String),
    /// An internal consistency check failed. This signals a defect in the
    /// implementation, not bad input.
    Defect(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::Capacity {
                what,
                requested,
                max,
            } => write!(f, "{what} {requested} exceeds configured maximum {max}"),
            Error::Overflow { what } => write!(f, "{what} overflows 64-bit arithmetic"),
            Error::Precondition(msg) => write!(f, "precondition violated: {msg}"),
            Error::Defect(msg) => write!(f, "internal defect: {msg}"),
        }
    }
}

impl std::error::Error for Error {}

impl Error {
    /// Process exit code for the CLI: 2 for bad input, 3 for resource limits.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Precondition(_) => 2,
            Error::Capacity { .. } | Error::Overflow { .. } | Error::Defect(_) => 3,
        }
    }

    pub(crate) fn precondition(msg: impl Into<String>) -> Error {
        Error::Precondition(msg.into())
    }
}
