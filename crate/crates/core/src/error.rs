use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// Precondition violated by the caller (wrong shapes, degrees, variables).
    #[error("usage error: {0}")]
    Usage(String),

    #[error("series is not invertible (zero constant term)")]
    NotInvertible,

    #[error("operation undefined on the zero polynomial")]
    ZeroPolynomial,

    #[error("polynomials are not coprime (resultant vanishes)")]
    NotCoprime,

    #[error("unsupported weight ({a},{b}): the x-weight must be positive")]
    UnsupportedWeight { a: u32, b: u32 },

    #[error("initial form of f does not equal G*H")]
    BadInitialForm,

    #[error("series is not regular in Y")]
    NotYRegular,

    #[error("gcd of n and the support is {gcd}, not 1")]
    NotPrimitive { gcd: u32 },

    #[error("truncation {got} is too small, at least {needed} required")]
    InsufficientTruncation { needed: u32, got: u32 },

    #[error("precision exhausted: {0}")]
    InsufficientPrecision(String),

    #[error("polynomial is not U_{n}-invariant")]
    NotInvariant { n: u32 },

    #[error("no solution within budget (W-degree {max_w_degree}, denominator degree {max_den_degree}, truncation {truncation})")]
    ExhaustedBudget {
        max_w_degree: u32,
        max_den_degree: u32,
        truncation: u32,
    },

    #[error("parse error at {line}:{column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },
}

impl Error {
    pub(crate) fn usage(msg: impl Into<String>) -> Self {
        Error::Usage(msg.into())
    }

    /// Stable machine-readable identifier, used by the CLI.
    pub fn code(&self) -> &'static str {
        match self {
            Error::Usage(_) => "usage",
            Error::NotInvertible => "not_invertible",
            Error::ZeroPolynomial => "zero_polynomial",
            Error::NotCoprime => "not_coprime",
            Error::UnsupportedWeight { .. } => "unsupported_weight",
            Error::BadInitialForm => "bad_initial_form",
            Error::NotYRegular => "not_y_regular",
            Error::NotPrimitive { .. } => "not_primitive",
            Error::InsufficientTruncation { .. } => "insufficient_truncation",
            Error::InsufficientPrecision(_) => "insufficient_precision",
            Error::NotInvariant { .. } => "not_invariant",
            Error::ExhaustedBudget { .. } => "exhausted_budget",
            Error::Parse { .. } => "parse",
        }
    }
}
