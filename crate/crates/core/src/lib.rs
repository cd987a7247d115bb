//! Exact verification and classification engine for automorphism groups of
//! real rational del Pezzo surfaces of degree 4.

// Index loops mirror the matrix formulas they implement.
#![allow(clippy::needless_range_loop)]

pub mod birmaps;
pub mod classifier;
pub mod fixtures;
pub mod linalg;
pub mod numfield;
pub mod picard;
pub mod realforms;
pub mod verify;
pub mod weyl;
