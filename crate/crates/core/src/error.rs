use thiserror::Error;

/// Reasons a rational literal can be rejected.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseRationalError {
    #[error("value must be strictly positive: {0:?}")]
    NonPositive(String),
    #[error("zero denominator: {0:?}")]
    ZeroDenominator(String),
    #[error("malformed rational: {0:?}")]
    Malformed(String),
}

#[derive(Debug, Error)]
pub enum Error {
    #[error(transparent)]
    Parse(#[from] ParseRationalError),

    #[error("line {line}: {source}")]
    SetFile {
        line: usize,
        #[source]
        source: ParseRationalError,
    },

    #[error("a set needs at least one element")]
    EmptySet,

    #[error("pair cap exceeded: {pairs} pairs requested, cap is {cap}")]
    PairCapExceeded { pairs: u128, cap: u64 },

    #[error("budget exceeded: {what} needs {needed}, budget is {budget}")]
    BudgetExceeded {
        what: &'static str,
        needed: u128,
        budget: u128,
    },

    #[error("index {index} out of range 1..={len}")]
    IndexOutOfRange { index: usize, len: usize },

    #[error("invalid specification: {0}")]
    InvalidSpec(String),

    /// A proved inequality failed on a concrete input. Always a bug.
    #[error("invariant violated: {0}")]
    InvariantViolation(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl Error {
    /// True for the resource-limit family (pair cap, evaluation or memory budget).
    pub fn is_limit(&self) -> bool {
        matches!(
            self,
            Error::PairCapExceeded { .. } | Error::BudgetExceeded { .. }
        )
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
