use core::fmt;

/// Errors raised by the kernels in this crate.
#[derive(Debug, Clone, PartialEq)]
pub enum Error {
    /// A vector had no entries.
    EmptyVector,
    /// An entry was zero, negative, or not finite.
    NonPositiveEntry {
        /// Zero-based position of the offending entry.
        index: usize,
        /// The rejected value.
        value: f64,
    },
    /// The two vectors are not ordered component-wise (or differ in length).
    NotComparable,
    /// Two objects that must share a dimension do not.
    DimensionMismatch {
        /// Required length.
        expected: usize,
        /// Length that was supplied.
        found: usize,
    },
    /// Sign-pattern enumeration was requested beyond the configured cap.
    EnumerationCap {
        /// Requested dimension.
        d: usize,
        /// Largest dimension allowed.
        cap: usize,
    },
    /// The 1-D maximizer failed its stationarity check.
    NotStationary {
        /// Location returned by the line search.
        gamma: f64,
        /// Centered finite-difference derivative at `gamma`.
        derivative: f64,
    },
    /// Any other rejected scalar argument.
    InvalidArgument(&'static str),
}

/// Convenience alias.
pub type Result<T> = core::result::Result<T, Error>;

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::EmptyVector => f.write_str("vector must have at least one entry"),
            Error::NonPositiveEntry { index, value } => {
                write!(f, "entry {index} is not a finite positive number: {value}")
            }
            Error::NotComparable => f.write_str("vectors are not ordered component-wise"),
            Error::DimensionMismatch { expected, found } => {
                write!(f, "dimension mismatch: expected {expected}, found {found}")
            }
            Error::EnumerationCap { d, cap } => {
                write!(f, "dimension {d} exceeds the sign-pattern enumeration cap {cap}")
            }
            Error::NotStationary { gamma, derivative } => write!(
                f,
                "line search did not reach a stationary point (gamma = {gamma}, g' = {derivative})"
            ),
            Error::InvalidArgument(what) => write!(f, "invalid argument: {what}"),
        }
    }
}

impl core::error::Error for Error {}
