use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("degree mismatch: {left} vs {right}")]
    DegreeMismatch { left: usize, right: usize },

    #[error("value {value} is out of range 1..={bound}")]
    OutOfRange { value: usize, bound: usize },

    #[error("not a permutation: {0}")]
    NotPermutation(String),

    #[error("point {0} appears more than once in cycle notation")]
    RepeatedPoint(usize),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("line {line}: {message}")]
    Syntax { line: usize, message: String },

    #[error("generator list is empty")]
    EmptyGenerators,

    #[error("degree {degree} exceeds the supported limit of {limit}")]
    DegreeTooLarge { degree: usize, limit: usize },

    #[error("invalid parameters: {0}")]
    InvalidParameters(String),

    #[error("letter {letter} is out of range 1..={sigma}")]
    LetterOutOfRange { letter: usize, sigma: usize },

    #[error("machine is not trim ({unreachable} unreachable states); trim it first")]
    NotTrim { unreachable: usize },

    #[error(
        "no split l + m = {0} with 1 < l < m and gcd(l, m) = 1; the bound is undefined for this n"
    )]
    UndefinedBound(usize),

    #[error("search space of about {estimate} triples exceeds the budget of {budget}")]
    BudgetExceeded { estimate: u128, budget: u128 },

    #[error("closure exceeds the element limit of {0}")]
    ClosureLimit(usize),

    #[error("generator validation failed: {0}")]
    ValidationFailed(String),

    #[error("complexity methods disagree: {0}")]
    MethodDisagreement(String),
}
