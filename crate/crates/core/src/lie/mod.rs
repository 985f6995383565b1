//! Lie algebras over prime fields by structure constants.

mod algebra;
mod bitmatrix;
mod checks;
pub mod field;
mod format;
mod matrix;

pub(crate) use algebra::{kernel, Subspace};
pub use algebra::{AxiomReport, JacobiFailure, LieAlgebra, LieElement};
pub use bitmatrix::BitMatrix;
pub use checks::odd_char_redundancy_check;
pub use format::{parse_lie, to_source};
pub use matrix::EndoMatrix;
