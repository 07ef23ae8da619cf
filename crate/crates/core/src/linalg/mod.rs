//! Exact linear algebra over GF(2^k).

mod matrix;
mod subspace;
pub mod vector;

pub use matrix::Matrix;
pub use subspace::{nullspace, Subspace};
