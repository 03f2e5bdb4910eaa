use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid field descriptor: {0}")]
    InvalidField(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("no primitive {n}-th root of unity exists in {field}")]
    NoRootOfUnity { n: u64, field: String },

    #[error("q-binomial index out of range: l = {l} > n = {n}")]
    BinomialRange { n: u64, l: u64 },

    #[error("both polynomials are zero")]
    ZeroGcd,

    #[error("cannot factor the zero polynomial")]
    FactorZero,

    #[error("incomplete factorization over {field}: residual factor {residual} is not certified irreducible")]
    IncompleteFactorization { field: String, residual: String },

    #[error("dimension mismatch: {0}")]
    Shape(String),

    #[error("group mismatch: {0}")]
    GroupMismatch(String),

    #[error("invalid character: {0}")]
    InvalidCharacter(String),

    #[error("invalid cocycle: {0}")]
    InvalidCocycle(String),

    #[error("invalid quotient: {0}")]
    InvalidQuotient(String),

    #[error("presentation error: {0}")]
    Presentation(String),

    #[error("elements belong to different presentations")]
    MixedPresentations,

    #[error("invalid module: {0}")]
    InvalidModule(String),

    #[error("unsupported: {0}")]
    Unsupported(String),

    #[error("oracle budget exceeded: {needed} vectors > budget {budget}")]
    BudgetExceeded { needed: u128, budget: u128 },

    #[error("internal error: {0}")]
    Internal(String),
}
