use thiserror::Error;

/// Errors raised by series arithmetic and the algorithms built on it.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("variable count mismatch: {left} vs {right}")]
    VariableCountMismatch { left: usize, right: usize },

    #[error("variable index {index} out of range 1..={nvars}")]
    InvalidVariable { index: usize, nvars: usize },

    #[error("exponent vector has length {found}, expected {expected}")]
    ExponentLength { expected: usize, found: usize },

    #[error("series is not a unit (zero constant term)")]
    NonUnit,

    #[error("composition arity mismatch: expected {expected} series, got {found}")]
    ArityMismatch { expected: usize, found: usize },

    #[error("substituted series {index} has a nonzero constant term")]
    NonzeroConstantSubstitution { index: usize },

    #[error("series is flat in x{var} up to degree {trunc}")]
    Flat { var: usize, trunc: u32 },

    #[error("series has an odd exponent of x{var}")]
    NotEven { var: usize },

    #[error("series has a term not divisible by x{var}")]
    NotDivisible { var: usize },

    #[error("series depends on x{var}")]
    DependsOnVariable { var: usize },

    #[error("implicit equation has a nonzero constant term")]
    ImplicitConstantTerm,

    #[error("implicit equation has vanishing derivative in x{var} at the origin")]
    ImplicitVanishingDerivative { var: usize },

    #[error("decomposition hypothesis violated: {0}")]
    LemmaHypothesis(String),

    #[error("truncation degree {trunc} too small, need at least {needed}")]
    TruncationTooSmall { trunc: u32, needed: u32 },

    #[error("internal invariant breached: {0}")]
    InvariantBreach(String),
}

impl Error {
    /// True for errors that indicate a bug rather than bad input.
    pub fn is_internal(&self) -> bool {
        matches!(self, Error::InvariantBreach(_))
    }
}

pub type Result<T> = std::result::Result<T, Error>;
