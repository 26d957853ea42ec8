//! Crate-wide error type and exit-code mapping.

use std::fmt;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Error {
    /// Malformed form block (reduced-fraction or parity violation, bad exponent).
    InvalidBlock(String),
    /// Domain errors: bad input, parse failures, violated preconditions.
    Domain(String),
    /// Operation not supported for the given object (e.g. indefinite lattice).
    Unsupported(String),
    /// A configured enumeration bound was exceeded; never silently truncated.
    BoundExceeded { what: String, bound: u64 },
    /// An internal invariant failed; indicates a bug or a contradiction.
    Inconsistency(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::InvalidBlock(s) => write!(f, "invalid block: {s}"),
            Error::Domain(s) => write!(f, "{s}"),
            Error::Unsupported(s) => write!(f, "unsupported: {s}"),
            Error::BoundExceeded { what, bound } => {
                write!(f, "enumeration bound exceeded: {what} (limit {bound})")
            }
            Error::Inconsistency(s) => write!(f, "internal inconsistency: {s}"),
        }
    }
}

impl std::error::Error for Error {}

impl Error {
    /// Process exit code for the CLI: 1 domain, 2 bound, 3 inconsistency.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::BoundExceeded { .. } => 2,
            Error::Inconsistency(_) => 3,
            _ => 1,
        }
    }
}
