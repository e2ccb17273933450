use thiserror::Error;

/// Errors raised across the library. The CLI maps the input-shaped variants
/// to exit code 2 and the precondition failures to exit code 3.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("parse error at position {pos}: {msg}")]
    Parse { pos: usize, msg: String },
    #[error("unknown variable `{0}`")]
    UnknownVariable(String),
    #[error("invalid input: {0}")]
    InvalidInput(String),
    #[error("domain error: {0}")]
    Domain(String),
    #[error("normal-form strategy unavailable: {0}")]
    Strategy(String),
    #[error("the algebra has no finite basis over the coefficient ring: {0}")]
    InfiniteBasis(String),
    #[error("not a complex: {0}")]
    Complex(String),
    #[error("not a derivation: jacobian applied to it is nonzero in relation {0}")]
    NotADerivation(usize),
    #[error("zero divisor: {0}")]
    ZeroDivisor(String),
    #[error("relations do not form a regular sequence: {0}")]
    NotRegular(String),
    #[error("size limit exceeded: {0}")]
    Size(String),
}

impl Error {
    /// Stable machine-readable tag for the variant.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::Parse { .. } => "ParseError",
            Error::UnknownVariable(_) => "UnknownVariable",
            Error::InvalidInput(_) => "InvalidInput",
            Error::Domain(_) => "DomainError",
            Error::Strategy(_) => "StrategyError",
            Error::InfiniteBasis(_) => "InfiniteBasis",
            Error::Complex(_) => "ComplexError",
            Error::NotADerivation(_) => "NotADerivation",
            Error::ZeroDivisor(_) => "ZeroDivisor",
            Error::NotRegular(_) => "NotRegular",
            Error::Size(_) => "SizeError",
        }
    }

    /// True for errors caused by malformed input rather than mathematical preconditions.
    pub fn is_input_error(&self) -> bool {
        matches!(
            self,
            Error::Parse { .. } | Error::UnknownVariable(_) | Error::InvalidInput(_)
        )
    }
}

pub type Result<T> = std::result::Result<T, Error>;
