use thiserror::Error;

use crate::superalgebra::Parity;

/// Errors raised by the algebraic engine and the problem-file front end.
#[derive(Debug, Error)]
pub enum Error {
    #[error("unknown generator `{0}`")]
    UnknownGenerator(String),

    #[error("syntax error at byte {position}: expected {expected}, found {found}")]
    Syntax {
        position: usize,
        expected: String,
        found: String,
    },

    #[error("poisson bracket called on an element containing ghost generators")]
    GhostInBracket,

    #[error("no structure functions within z-degree bound {bound}")]
    StructureNotFound { bound: u32 },

    #[error("element is not in the constraint ideal within z-degree bound {bound}")]
    NotInIdeal { bound: u32 },

    #[error("obstruction at {context} is not expressible within z-degree bound {bound}")]
    ObstructionNotInIdeal { context: String, bound: u32 },

    #[error("constraints are not first class: {0} nonzero defect(s)")]
    NotFirstClass(usize),

    #[error("charge series did not truncate by order {max_order}")]
    OrderExceeded {
        max_order: usize,
        partial: Box<crate::brst::BrstCharge>,
    },

    #[error("expansion order {requested} outside the available range {min}..={max}")]
    OrderOutOfRange { requested: i64, min: i64, max: i64 },

    #[error("anticommutator needs two odd derivations, got {0:?} and {1:?}")]
    ParityMismatch(Parity, Parity),

    #[error("S({0}) has a term outside the multi-ghost span")]
    NotInMultiGhostSpan(String),

    #[error("image of generator {0} is not in the span of generator products")]
    NotInProductSpan(String),

    #[error("structure constants violate the Jacobi identity at ({0}, {1}, {2})")]
    JacobiFailure(usize, usize, usize),

    #[error("representation does not respect the bracket: d^2 {0} != 0")]
    NotARepresentation(String),

    #[error("invalid input: {0}")]
    Invalid(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
