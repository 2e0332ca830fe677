use thiserror::Error;

/// Broad classes of failure; the CLI maps each to its own exit status.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ErrorClass {
    /// The input does not match the expected schema or shape.
    Input,
    /// Well-formed input that is mathematically unacceptable.
    Math,
    /// An internal invariant failed.
    Internal,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("malformed input: {0}")]
    Malformed(String),
    #[error("enumeration guard: n = {n} exceeds the limit {limit}")]
    GuardExceeded { n: usize, limit: usize },
    #[error("all coordinates vanish")]
    ZeroVector,
    #[error("matrix has rank below {k}")]
    RankDeficient { k: usize },
    #[error("coordinates have mixed signs: {0}")]
    MixedSigns(String),
    #[error("the recovered filling violates the Le-property at box {0}")]
    NotLeDiagram(String),
    #[error("point is not in the requested cell: {0}")]
    NotInCell(String),
    #[error("subset {0} is not a base of the cell")]
    NotInMatroid(String),
    #[error("vanishing denominator coordinate P_{0}")]
    ZeroDenominator(String),
    #[error("internal invariant failed: {0}")]
    Internal(String),
}

impl Error {
    pub fn class(&self) -> ErrorClass {
        match self {
            Error::Malformed(_) | Error::GuardExceeded { .. } => ErrorClass::Input,
            Error::Internal(_) => ErrorClass::Internal,
            _ => ErrorClass::Math,
        }
    }

    /// Short machine-readable tag.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::Malformed(_) => "malformed",
            Error::GuardExceeded { .. } => "guard_exceeded",
            Error::ZeroVector => "zero_vector",
            Error::RankDeficient { .. } => "rank_deficient",
            Error::MixedSigns(_) => "mixed_signs",
            Error::NotLeDiagram(_) => "not_le_diagram",
            Error::NotInCell(_) => "not_in_cell",
            Error::NotInMatroid(_) => "not_in_matroid",
            Error::ZeroDenominator(_) => "zero_denominator",
            Error::Internal(_) => "internal",
        }
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
