//! Explicit birational maps of P¹×P¹ and their verification against lattice
//! data.

pub mod bideg;
pub mod builtins;
pub mod certify;
pub mod plane;
pub mod point;
pub mod poly;
pub mod solver;

use thiserror::Error;

pub use bideg::{BidegMap, Curve};
pub use point::{Params, ProjPoint, QuadricPoint};
pub use poly::Poly;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum BirError {
    #[error("the zero vector is not a projective point")]
    ZeroPoint,
    #[error("coordinates live in different quadratic fields")]
    FieldMismatch,
    #[error("invalid parameters: {0}")]
    InvalidParameters(String),
    #[error("malformed map: {0}")]
    Malformed(String),
    #[error("evaluation at a base point {0}")]
    BasePointEvaluation(String),
    #[error("degenerate curve: {0}")]
    DegenerateCurve(String),
    #[error("the constraint system has no invertible solution")]
    NoSolution,
    #[error("the constraint system does not determine the map")]
    UnderdeterminedSystem,
}
