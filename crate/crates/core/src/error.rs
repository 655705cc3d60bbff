use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum ForgeError {
    #[error("cyclotomic order mismatch: {0} vs {1}")]
    OrderMismatch(u32, u32),
    #[error("division by zero")]
    DivisionByZero,
    #[error("parse error: {0}")]
    Parse(String),
    #[error("invalid group: {0}")]
    InvalidGroup(String),
    #[error("group enumeration exceeded the cap of {0} elements")]
    GroupTooLarge(usize),
    #[error("context mismatch: {0}")]
    ContextMismatch(String),
    #[error("{0} is not in the centralizer")]
    NotInCentralizer(String),
    #[error("matrix does not act by a scalar on the coroot of reflection {0}")]
    NotEigen(usize),
    #[error("singular matrix: {0}")]
    Singular(String),
    #[error("shape mismatch: {0}")]
    Shape(String),
    #[error("invalid input: {0}")]
    Invalid(String),
}

pub type Result<T> = std::result::Result<T, ForgeError>;
