use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,

    #[error("unbound units: {}", .0.join(", "))]
    UnboundUnits(Vec<String>),

    #[error("parse error at offset {pos}: {msg}")]
    Parse { pos: usize, msg: String },

    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("not a section: F·S ≠ I")]
    NotASection,

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("invalid presentation: {0}")]
    InvalidPresentation(String),

    #[error("presentation is not unital: {0}")]
    NonUnital(String),

    #[error("budget exceeded: degree {degree} term has {dim} basis words (budget {budget})")]
    BudgetExceeded { degree: usize, dim: u128, budget: usize },

    #[error("unsupported: {0}")]
    Unsupported(String),

    #[error("contract violated: {0}")]
    Contract(String),

    #[error("{0}")]
    Format(String),
}

impl Error {
    pub fn parse(pos: usize, msg: impl Into<String>) -> Self {
        Error::Parse { pos, msg: msg.into() }
    }
}
