//! Error type shared by all modules.

use core::fmt;

pub type Result<T> = core::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Error {
    /// Table bound must be at least 1.
    ZeroBound,
    /// Requested table bound exceeds the configured memory ceiling.
    BoundTooLarge { requested: u64, ceiling: u64 },
    /// Query argument outside the built table range.
    OutOfRange { n: u64, n_max: u64 },
    /// Radix bases must be at least 2.
    InvalidBase { base: u64 },
    /// Brute-force enumeration is capped; the request is above the cap.
    AboveOracleCeiling { n: u64, ceiling: u64 },
    /// The argument must be an odd prime.
    NotOddPrime { p: u64 },
    /// Two independent computation routes disagreed; indicates a bug.
    CrossCheck { what: &'static str },
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::ZeroBound => write!(f, "table bound must be at least 1"),
            Error::BoundTooLarge { requested, ceiling } => {
                write!(f, "table bound {requested} exceeds ceiling {ceiling}")
            }
            Error::OutOfRange { n, n_max } => {
                write!(f, "argument {n} outside table range 1..={n_max}")
            }
            Error::InvalidBase { base } => write!(f, "radix base {base} must be at least 2"),
            Error::AboveOracleCeiling { n, ceiling } => {
                write!(f, "enumeration bound {n} above oracle ceiling {ceiling}")
            }
            Error::NotOddPrime { p } => write!(f, "{p} is not an odd prime"),
            Error::CrossCheck { what } => {
                write!(f, "cross-check failure in {what}: independent routes disagree")
            }
        }
    }
}

impl core::error::Error for Error {}
