use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("scale mismatch: {0} and {1} are not compatible (neither divides the other)")]
    ScaleMismatch(u32, u32),
    #[error("scale error: {0}")]
    Scale(String),
    #[error("series is not invertible: {0}")]
    NotInvertible(String),
    #[error("insufficient order: requested {requested}, available {available}")]
    InsufficientOrder { requested: i64, available: i64 },
    #[error("non-terminating product: {0}")]
    Nontermination(String),
    #[error("divergent series specification: {0}")]
    Divergent(String),
    #[error("pole: {0}")]
    Pole(String),
    #[error("insufficient terms: {needed} needed to clear the window, {given} given")]
    InsufficientTerms { needed: usize, given: usize },
    #[error("budget exceeded: {0}")]
    BudgetExceeded(String),
    #[error("unknown name `{0}`")]
    UnknownName(String),
    #[error("duplicate identity id `{0}`")]
    DuplicateId(String),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("parse error: {0}")]
    Parse(String),
}
