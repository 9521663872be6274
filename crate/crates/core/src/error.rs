use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("ambient dimension mismatch: {0} vs {1}")]
    DimensionMismatch(usize, usize),

    #[error("form degree mismatch: {0} vs {1}")]
    DegreeMismatch(usize, usize),

    #[error("form degree {0} exceeds ambient dimension {1}")]
    DegreeOverflow(usize, usize),

    #[error("operation is undefined on 0-forms")]
    ZeroFormInput,

    #[error("polynomial is not a monic quadric in x{0}")]
    NotMonicQuadric(usize),

    #[error("index out of range: {0}")]
    OutOfRange(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("membership check failed: {0}")]
    Membership(String),

    #[error("identity check failed: {0}")]
    IdentityFailure(String),

    #[error("wrong subspace label: expected {expected}, found {found}")]
    WrongLabel { expected: String, found: String },

    #[error("integration failed: {0}")]
    Integration(String),

    #[error("empty trial space: {0}")]
    EmptyTrialSpace(String),

    #[error("eigensolver failure: {0}")]
    Eigensolver(String),

    #[error("invalid input: {0}")]
    InvalidInput(String),
}

pub type Result<T> = std::result::Result<T, Error>;
