use thiserror::Error;

/// Errors raised by the library.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("point chart does not match the function system ({0})")]
    ChartMismatch(String),
    #[error("point outside the declared domain: {0}")]
    DomainViolation(String),
    #[error("function system has no derivatives")]
    NotDifferentiable,
    #[error("empty function system")]
    EmptySystem,
    #[error("duplicate exponent {0:?}")]
    DuplicateExponent(Vec<u32>),
    #[error("sequence is not in the cone generated by the ground set")]
    NonMember,
    #[error("ground set has {size} points, limit is {limit}")]
    GroundSetTooLarge { size: usize, limit: usize },
    #[error("ground set spans a space of dimension {rank}, need {needed}")]
    InsufficientSpan { rank: usize, needed: usize },
    #[error("no function in the span is strictly positive on the ground set")]
    UnpointedCone,
    #[error("grid of {size} points exceeds the budget of {budget}")]
    BudgetExceeded { size: u64, budget: u64 },
    #[error("parse error: {0}")]
    Parse(String),
    #[error("invalid input: {0}")]
    InvalidInput(String),
}

impl Error {
    /// Short machine-readable tag.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::ChartMismatch(_) => "chart_mismatch",
            Error::DomainViolation(_) => "domain_violation",
            Error::NotDifferentiable => "not_differentiable",
            Error::EmptySystem => "empty_system",
            Error::DuplicateExponent(_) => "duplicate_exponent",
            Error::NonMember => "non_member",
            Error::GroundSetTooLarge { .. } => "ground_set_too_large",
            Error::InsufficientSpan { .. } => "insufficient_span",
            Error::UnpointedCone => "unpointed_cone",
            Error::BudgetExceeded { .. } => "budget_exceeded",
            Error::Parse(_) => "parse",
            Error::InvalidInput(_) => "invalid_input",
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
