//! Error type shared across the crate.

use std::fmt;

/// Crate-wide result alias.
pub type Result<T> = std::result::Result<T, Error>;

/// Everything that can go wrong while validating, enumerating, solving,
/// generating, or parsing.
#[derive(Debug)]
pub enum Error {
    /// An instance element was zero (elements must be positive integers).
    NonPositiveElement { index: usize },
    /// The instance total does not leave enough headroom for 64-bit sum
    /// arithmetic (including alias substitution).
    OverflowRisk { total: u128 },
    /// More elements than the index-mask width supports.
    TooManyElements { n: usize, max: usize },
    /// Two masks (or a mask and an instance) disagree on width.
    WidthMismatch { left: usize, right: usize },
    /// Metrics were requested for zero distinct sums.
    ZeroU,
    /// The brute-force oracle refuses sets beyond its hard cap.
    TooLarge { n: usize, max: usize },
    /// A solve was requested on an instance without a target.
    MissingTarget,
    /// A solution report did not reconstruct to the target; internal bug.
    InconsistentReport { expected: u64, actual: u64 },
    /// A generator spec had invalid parameters.
    InvalidSpec(String),
    /// A file or record could not be parsed.
    Parse(String),
    /// Underlying I/O failure.
    Io(std::io::Error),
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::NonPositiveElement { index } => {
                write!(f, "element at index {index} is not a positive integer")
            }
            Error::OverflowRisk { total } => {
                write!(f, "instance total {total} risks 64-bit overflow")
            }
            Error::TooManyElements { n, max } => {
                write!(f, "instance has {n} elements, maximum supported is {max}")
            }
            Error::WidthMismatch { left, right } => {
                write!(f, "mask width mismatch: {left} vs {right}")
            }
            Error::ZeroU => write!(f, "metrics require at least one distinct sum"),
            Error::TooLarge { n, max } => {
                write!(f, "oracle limited to {max} elements, got {n}")
            }
            Error::MissingTarget => write!(f, "instance has no target"),
            Error::InconsistentReport { expected, actual } => {
                write!(
                    f,
                    "solution report reconstructed to {actual}, expected {expected}"
                )
            }
            Error::InvalidSpec(msg) => write!(f, "invalid generator spec: {msg}"),
            Error::Parse(msg) => write!(f, "parse error: {msg}"),
            Error::Io(err) => write!(f, "io error: {err}"),
        }
    }
}

impl std::error::Error for Error {
    fn source(&self) -> Option<&(dyn std::error::Error + 'static)> {
        match self {
            Error::Io(err) => Some(err),
            _ => None,
        }
    }
}

impl From<std::io::Error> for Error {
    fn from(err: std::io::Error) -> Self {
        Error::Io(err)
    }
}
