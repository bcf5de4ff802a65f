use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid field specification: {0}")]
    InvalidField(String),

    #[error("polynomial is not irreducible: {0}")]
    NotIrreducible(String),

    #[error("polynomial is not monic")]
    NotMonic,

    #[error("coefficient {value} is not an element of a field of order {order}")]
    CoefficientOutOfRange { value: u64, order: u32 },

    #[error("division by zero")]
    DivisionByZero,

    #[error("element is not a unit modulo the prime")]
    NotAUnit,

    #[error("element is not a one-unit")]
    NotAOneUnit,

    #[error("zero input where a nonzero value is required")]
    ZeroInput,

    #[error("insufficient exponent digits: precision {requested} needs p^m >= {requested}, have p^m = {available}")]
    InsufficientDigits { requested: u64, available: u64 },

    #[error("precision {requested} exceeds the operand precision {available}")]
    PrecisionExceeded { requested: u32, available: u32 },

    #[error("character index {index} out of range 0..={max}")]
    CharacterOutOfRange { index: u64, max: u64 },

    #[error("level mismatch: {left} vs {right}")]
    LevelMismatch { left: u32, right: u32 },

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("X-degree guard failed at level {level}, character {index}: coefficient of X^{degree} is nonzero (window {window_start}..={cutoff})")]
    DegreeWindow {
        level: u32,
        index: u32,
        degree: usize,
        window_start: usize,
        cutoff: usize,
    },

    #[error("division by (1 - X) left a nonzero remainder at level {level}, character {index}")]
    DivisionRemainder { level: u32, index: u32 },

    #[error("unresolved: {0}")]
    Unresolved(String),

    #[error("computation exceeds supported size: {0}")]
    TooLarge(String),
}

impl Error {
    /// Guard failures signal that a heuristic bound was too small; they are
    /// kept apart from ordinary precondition errors.
    pub fn is_guard_failure(&self) -> bool {
        matches!(self, Error::DegreeWindow { .. } | Error::DivisionRemainder { .. })
    }
}
