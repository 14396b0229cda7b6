use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("nonzero constant term")]
    NonzeroConstantTerm,

    #[error("constant term ≠ 1")]
    ConstantTermNotOne,

    #[error("series has zero constant term and cannot be inverted")]
    NotInvertible,

    #[error("enumeration guard exceeded: {what} = {value} (limit {limit})")]
    GuardExceeded {
        what: &'static str,
        value: u64,
        limit: u64,
    },

    #[error("unsimplifiable component")]
    UnsimplifiableComponent,

    #[error("degree/genus out of range: {0}")]
    DegreeGenusOutOfRange(String),

    #[error("zero element has no leading asymptotic")]
    ZeroElement,

    #[error("element has no exponential growth (constant series)")]
    NoGrowth,

    #[error("recursion depth guard exceeded while evaluating {0}")]
    RecursionDepth(String),

    #[error("fit failed up to window {window}: {reason}")]
    FitFailed { window: usize, reason: String, index: Option<usize> },

    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("parse error: {0}")]
    Parse(String),
}

impl Error {
    /// Stable machine-readable code, used by the CLI error objects.
    pub fn code(&self) -> &'static str {
        match self {
            Error::NonzeroConstantTerm | Error::ConstantTermNotOne | Error::NotInvertible => {
                "series_precondition"
            }
            Error::GuardExceeded { .. } => "guard_exceeded",
            Error::UnsimplifiableComponent => "unsimplifiable_component",
            Error::DegreeGenusOutOfRange(_) => "degree_genus_out_of_range",
            Error::ZeroElement | Error::NoGrowth => "no_asymptotic",
            Error::RecursionDepth(_) => "recursion_depth",
            Error::FitFailed { .. } => "fit_failure",
            Error::InvalidInput(_) => "invalid_input",
            Error::Parse(_) => "parse_error",
        }
    }
}
