//! Computations with power-conjugate groups, Engel and sandwich conditions,
//! and small Lie algebras over prime fields.

pub mod catalog;
pub mod cli;
pub mod constructions;
pub mod engel;
pub mod error;
pub mod expr;
pub mod lie;
pub mod order;
pub mod pc;
pub mod report;
pub mod sampling;
pub mod subgroup;

pub use error::{Error, Result};
pub use order::Order;
