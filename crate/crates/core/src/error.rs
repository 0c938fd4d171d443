use alloc::string::String;
use core::fmt;

/// Failure modes shared by every module of the crate.
#[derive(Clone, Debug, PartialEq)]
pub enum Error {
    /// An argument is malformed: index out of range, size mismatch, bad threshold.
    Argument(String),
    /// An input violates a documented precondition (e.g. a non-normalized state).
    Contract(String),
    /// A dense representation would exceed the configured size bound.
    Resource(String),
    /// Input lies outside the domain where the computation is meaningful.
    Domain(String),
    /// Requested feature is outside what this crate synthesizes (e.g. Walsh order >= 3).
    Unsupported(String),
    /// Numerical integrity was lost (NaN gradients, norm drift).
    Numeric(String),
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::Argument(m) => write!(f, "invalid argument: {m}"),
            Error::Contract(m) => write!(f, "contract violation: {m}"),
            Error::Resource(m) => write!(f, "resource limit: {m}"),
            Error::Domain(m) => write!(f, "domain error: {m}"),
            Error::Unsupported(m) => write!(f, "unsupported: {m}"),
            Error::Numeric(m) => write!(f, "numeric integrity: {m}"),
        }
    }
}

impl core::error::Error for Error {}

pub type Result<T> = core::result::Result<T, Error>;

macro_rules! bail {
    ($kind:ident, $($arg:tt)*) => {
        return Err($crate::error::Error::$kind(alloc::format!($($arg)*)))
    };
}
pub(crate) use bail;
