use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("k-adic base must be at least 2, got {0}")]
    InvalidBase(String),
    #[error("{value} is not an element of {ring}")]
    NotInRing { value: String, ring: String },
    #[error("free algebra alphabets differ: [{left}] vs [{right}]")]
    AlphabetMismatch { left: String, right: String },
    #[error("operands belong to different families")]
    FamilyMismatch,
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("normalization exceeded the step budget of {budget} reductions")]
    BudgetExhausted { budget: usize },
    #[error("syntax error at line {line}, column {column} (offset {offset}): {message}")]
    Syntax {
        offset: usize,
        line: usize,
        column: usize,
        message: String,
    },
    #[error("unknown literal: {0}")]
    UnknownLiteral(String),
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("invalid specification: {0}")]
    Schema(String),
    #[error("module morphism is not well defined: {0}")]
    IllDefined(String),
    #[error("central pair condition fails: {0}")]
    NotCentral(String),
    #[error("supplied inverse fails the inverse check: {0}")]
    NotInverse(String),
}
