use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid field: {0}")]
    Field(String),
    #[error("unknown square class {0:?}")]
    ClassTag(String),
    #[error("square classes belong to different fields")]
    FieldMismatch,
    #[error("omega is undefined when E = F")]
    SplitExtension,
    #[error("no space with invariants {0}")]
    NoSuchSpace(String),
    #[error("invalid invariants: {0}")]
    Invariants(String),
    #[error("p1 = {p1} is illegal for {family}")]
    IllegalP1 { family: String, p1: usize },
    #[error("orbit with p1 = {0} is not admissible")]
    Inadmissible(usize),
    #[error("alphabet: {0}")]
    Alphabet(String),
    #[error("parameter: {0}")]
    Parameter(String),
    #[error("epsilon table: {0}")]
    Epsilon(String),
    #[error("type mismatch: {0}")]
    TypeMismatch(String),
    #[error("dimension mismatch: {0}")]
    Dimension(String),
    #[error("ell = {0} is not legal here")]
    IllegalEll(usize),
    #[error("input: {0}")]
    Input(String),
}

pub type Result<T> = std::result::Result<T, Error>;
