use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AlgebraError {
    #[error("ring mismatch: [{left}] vs [{right}]")]
    RingMismatch { left: String, right: String },
    #[error("variable index {index} out of range for a ring with {nvars} variables")]
    VariableOutOfRange { index: usize, nvars: usize },
    #[error("invalid variable name `{0}`")]
    InvalidVariableName(String),
    #[error("duplicate variable name `{0}`")]
    DuplicateVariable(String),
    #[error("expected {expected} values, got {got}")]
    ArityMismatch { expected: usize, got: usize },
    #[error("quotient has infinite dimension")]
    InfiniteColength,
    #[error("saturation did not stabilize within {0} ideal quotients")]
    SaturationDiverged(usize),
    #[error("resource budget exceeded: {0}")]
    BudgetExceeded(String),
    #[error("order `{0}` is not valid here: {1}")]
    UnsupportedOrder(String, &'static str),
    #[error("polynomial division is not exact")]
    InexactDivision,
    #[error("the zero ideal has no quotient of finite dimension")]
    ZeroIdeal,
}

pub type Result<T> = std::result::Result<T, AlgebraError>;
