//! Exact-arithmetic laboratory for deciding when the exterior square of a
//! 4-dimensional representation stays irreducible.
//!
//! Everything runs over exact cyclotomic scalars; there is no floating point
//! in the core (the numerical shadow in [`cyclotomic`] exists only as a
//! cross-check oracle).

pub mod catalog;
pub mod chars;
pub mod criteria;
pub mod cyclotomic;
pub mod error;
pub mod groups;
pub mod json;
pub mod matrix;
pub mod reps;
pub mod satake;
pub mod weyl;

pub use cyclotomic::CycNum;
pub use error::{Error, Result};
pub use matrix::{Matrix, RepMatrix};
