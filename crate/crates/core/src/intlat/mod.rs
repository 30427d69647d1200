//! Exact integer matrices and integer lattices.

mod lattice;
mod matrix;
pub mod text;

pub use lattice::{decimal, nominal_density, rational_string, CodeParams, HnfReducer, Lattice, Period};
pub use matrix::IntMatrix;
