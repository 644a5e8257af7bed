use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("syntax error at position {pos}: {msg}")]
    Syntax { pos: usize, msg: String },

    #[error("unknown variable `{name}` at position {pos}")]
    UnknownVariable { name: String, pos: usize },

    #[error("negative exponent on coordinate `{name}` at position {pos}")]
    NegativeCoordinateExponent { name: String, pos: usize },

    #[error("polynomials live over different variable spaces")]
    VarSpaceMismatch,

    #[error("invalid variable space: {0}")]
    InvalidVarSpace(String),

    #[error("coordinate index {index} out of range for n = {n}")]
    IndexOutOfRange { index: usize, n: usize },

    #[error("indices must be distinct, got {0:?}")]
    RepeatedIndices(Vec<usize>),

    #[error("parameter `{0}` occurs with a negative exponent and cannot be set to zero")]
    DivisionByZero(String),

    #[error("value for parameter `{0}` is not an invertible monomial")]
    NotInvertible(String),

    #[error("no value assigned to parameter `{0}`")]
    MissingAssignment(String),

    #[error("expected {expected} Casimir polynomials, got {got}")]
    CasimirCount { expected: usize, got: usize },

    #[error("operation requires n = {expected}, got n = {got}")]
    Dimension { expected: usize, got: usize },

    #[error("parameter spaces differ: {0:?} vs {1:?}")]
    ParamSpaceMismatch(Vec<String>, Vec<String>),

    #[error("unknown catalog entry `{0}`")]
    UnknownCatalogEntry(String),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("malformed input: {0}")]
    Input(String),
}

pub type Result<T> = std::result::Result<T, Error>;
