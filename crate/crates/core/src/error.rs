use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("dimension mismatch: {0}")]
    Dimension(String),
    #[error("degenerate input: {0}")]
    DegenerateInput(String),
    #[error("no dual space for exponent {0}")]
    UnsupportedDual(String),
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("internal error: {0}")]
    Internal(String),
}

impl Error {
    /// Short machine-readable tag, used in structured error reports.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::InvalidParameter(_) => "invalid-parameter",
            Error::Dimension(_) => "dimension-error",
            Error::DegenerateInput(_) => "degenerate-input",
            Error::UnsupportedDual(_) => "unsupported-dual",
            Error::Unsupported(_) => "unsupported",
            Error::Internal(_) => "internal-error",
        }
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

// negated on purpose: a NaN operand fails the check
macro_rules! ensure {
    ($cond:expr, $variant:ident, $($arg:tt)+) => {
        #[allow(clippy::neg_cmp_op_on_partial_ord)]
        if !$cond {
            return Err($crate::error::Error::$variant(format!($($arg)+)));
        }
    };
}
pub(crate) use ensure;
