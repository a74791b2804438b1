use thiserror::Error;

use crate::construct::ConstructionTrace;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, Error)]
pub enum Error {
    #[error("{0} is not a prime power")]
    NotPrimePower(u64),
    #[error("field order {0} exceeds the supported maximum of 256")]
    CapExceeded(u64),
    #[error("division by zero")]
    DivisionByZero,
    #[error("element {value} out of range for GF({q})")]
    OutOfRange { value: u64, q: u16 },
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("vectors belong to different fields (GF({left}) vs GF({right}))")]
    FieldMismatch { left: u16, right: u16 },
    #[error("generator matrix has rank {rank}, expected full rank {k}")]
    NotFullRank { rank: usize, k: usize },
    #[error("enumeration of {size} vectors exceeds the cap of {cap}")]
    EnumerationCapExceeded { size: u128, cap: u64 },
    #[error("arithmetic overflow: {0}")]
    Overflow(String),
    #[error("translate vector lies inside the code")]
    XInCode,
    #[error("translate has only {count} distinct coset weights, {needed} required")]
    TranslateNotFull { count: u64, needed: u64 },
    #[error("coset weights are already all distinct; nothing to refine")]
    NoCollision,
    #[error("code is the whole space; no vector lies outside it")]
    NoVectorOutsideCode,
    #[error("s = {s} outside the admissible range 1..={max}")]
    SOutOfRange { s: u64, max: u64 },
    #[error("length bound violated at dimension {k}: length {achieved} > bound {bound}")]
    BoundViolated {
        k: usize,
        achieved: u64,
        bound: String,
    },
    #[error("inconsistent construction trace: {0}")]
    BadTrace(String),
    #[error("postcondition failed: {0}")]
    Postcondition(String),
    #[error("parse error on line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("{source}")]
    Incomplete {
        source: Box<Error>,
        trace: Box<ConstructionTrace>,
    },
}

impl Error {
    /// Strips any partial-trace wrapper.
    pub fn root(&self) -> &Error {
        match self {
            Error::Incomplete { source, .. } => source.root(),
            e => e,
        }
    }

    pub fn partial_trace(&self) -> Option<&ConstructionTrace> {
        match self {
            Error::Incomplete { trace, .. } => Some(trace),
            _ => None,
        }
    }
}
