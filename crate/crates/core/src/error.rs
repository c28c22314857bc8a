use thiserror::Error;

/// Errors raised by field construction, polynomial analysis and experiments.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("modulus is reducible over F_{0}")]
    ReducibleModulus(u64),
    #[error("invalid modulus: {0}")]
    InvalidModulus(String),
    #[error("invalid extension degree {0}")]
    InvalidDegree(u32),
    #[error("division by zero")]
    DivisionByZero,
    #[error("{d} does not divide the group order {order}")]
    NotADivisor { d: u64, order: u64 },
    #[error("field of size {q} exceeds the limit {limit} for this operation")]
    FieldTooLarge { q: u64, limit: u64 },
    #[error("polynomial has no terms")]
    EmptyInput,
    #[error("term with exponent {0} has a zero coefficient")]
    ZeroCoefficient(i64),
    #[error("all terms cancel: the polynomial is zero on F_q^*")]
    ZeroFunction,
    #[error("operation needs at least 2 terms, got {0}")]
    TooFewTerms(usize),
    #[error("beta is not in the subgroup of order {0}")]
    BetaNotInSubgroup(u64),
    #[error("search range {0} is empty")]
    EmptyRange(u64),
    #[error("precondition violated: {0}")]
    PreconditionViolated(String),
    #[error("invalid term count t = {t} for p = {p}")]
    InvalidT { p: u64, t: usize },
    #[error("estimated work {estimate} exceeds budget {budget}")]
    BudgetExceeded { estimate: u128, budget: u128 },
    #[error("sample count must be at least 1")]
    InvalidSampleCount,
    #[error("parse error: {0}")]
    Parse(String),
    #[error("internal invariant violated: {0}")]
    InvariantViolation(String),
}

pub type Result<T> = std::result::Result<T, Error>;
