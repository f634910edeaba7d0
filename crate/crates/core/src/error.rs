use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("syntax error at position {pos}: {msg}")]
    Syntax { pos: usize, msg: String },

    #[error("invalid ring: {0}")]
    Semantic(String),

    #[error("ring order {order} exceeds the cardinality cap {cap}")]
    OrderCap { order: u128, cap: usize },

    #[error("graph on {vertices} vertices exceeds the vertex cap {cap}")]
    GraphCap { vertices: usize, cap: usize },

    #[error("element index {index} out of range for a ring of order {order}")]
    IndexOutOfRange { index: usize, order: usize },

    #[error("operation requires {0}")]
    WrongRingKind(&'static str),

    #[error("not a two-sided ideal: {0}")]
    NotIdeal(String),

    #[error("ring of order {order} is too large for a brute-force radical and has no structured description")]
    RadicalTooLarge { order: usize },

    #[error("seed is not an independent set")]
    NotIndependent,

    #[error("complex is not pure")]
    NotPure,

    #[error("enumeration budget exhausted")]
    BudgetExhausted,

    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}
