use thiserror::Error;

/// Errors raised by constructors, parsers and the module machinery.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("lattice rank mismatch: expected {expected}, got {got}")]
    RankMismatch { expected: usize, got: usize },

    #[error("invalid lattice configuration: {0}")]
    InvalidConfig(String),

    #[error("negative exponent in polynomial-only variable t{var}")]
    CutoffViolation { var: usize },

    #[error("variable index {var} out of range for {nvars} variables")]
    VariableOutOfRange { var: usize, nvars: usize },

    #[error("non-integral pairing ({alpha}, λ) = {value}")]
    NonIntegralPairing { alpha: String, value: String },

    #[error("invalid omega spec: {0}")]
    InvalidOmegaSpec(String),

    #[error("vector is not a weight vector for the c-directions: {0}")]
    MixedSector(String),

    #[error("schema error at `{field}`: {reason}")]
    Schema { field: String, reason: String },

    #[error("unknown suite `{0}`")]
    UnknownSuite(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub(crate) fn schema(field: impl Into<String>, reason: impl Into<String>) -> Self {
        Error::Schema { field: field.into(), reason: reason.into() }
    }
}
