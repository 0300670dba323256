use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseError {
    #[error("malformed rational literal {0:?}")]
    Rational(String),
    #[error("zero denominator in {0:?}")]
    ZeroDenominator(String),
    #[error("a state needs at least 2 entries, got {0}")]
    OrderTooSmall(usize),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OrbitError {
    #[error("scale factor must be positive, got {0}")]
    NonPositiveScale(String),
    #[error("states have different orders ({0} vs {1})")]
    OrderMismatch(usize, usize),
    #[error("neither orbit closed and no shift found within {0} steps")]
    Undecided(u64),
}

/// Failure of a case-graph operation.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CaseError {
    #[error("precondition violated: {0}")]
    PreconditionViolated(String),
    #[error("tuple does not satisfy the inequalities of {0}")]
    LabelMismatch(String),
    #[error("{0}")]
    Degenerate(String),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SynthesisError {
    #[error("{0} is not a period of the order-4 recurrence")]
    NotAPeriod(u64),
    #[error("precondition violated: {0}")]
    PreconditionViolated(String),
    #[error("degenerate parameters: {0}")]
    Degenerate(String),
}
