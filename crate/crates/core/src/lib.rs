//! Restricted Lie algebras in characteristic 2 over GF(2^k): tori, root
//! space decompositions, ideal constructions for toral rank 3, and a
//! brute-force simplicity oracle.

pub mod algebra;
pub mod error;
pub mod field;
pub mod io;
pub mod fixtures;
pub mod linalg;
pub mod packed;
pub mod restricted;
pub mod rootspace;
pub mod suite;
pub mod theorems;
pub mod tori;

pub use algebra::LieAlgebra;
pub use error::{Error, Result};
pub use field::{Fe, Field};
pub use linalg::{Matrix, Subspace};
pub use restricted::TwoMap;

#[cfg(doctest)]
mod book {
    #[doc = include_str!("../../../book/src/introduction.md")]
    mod introduction {}
    #[doc = include_str!("../../../book/src/fields.md")]
    mod fields {}
    #[doc = include_str!("../../../book/src/algebras.md")]
    mod algebras {}
    #[doc = include_str!("../../../book/src/tori.md")]
    mod tori {}
    #[doc = include_str!("../../../book/src/ideals.md")]
    mod ideals {}
    #[doc = include_str!("../../../book/src/files-and-cli.md")]
    mod files_and_cli {}
    #[doc = include_str!("../../../README.md")]
    mod readme {}
}
