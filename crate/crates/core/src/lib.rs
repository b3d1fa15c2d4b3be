//! Exact computations with finite-dimensional Leibniz algebras given by
//! structure constants: series and radicals, derivations, the catalog of
//! solvable algebras with null-filiform nilradical, and a canonicalizing
//! classifier for that catalog.

mod echelon;
mod matrix_lie;

pub mod algebra;
pub mod catalog;
pub mod derivations;
pub mod error;
pub mod fingerprint;
pub mod fuzz;
pub mod matrix;
pub mod nilradical;
pub mod rational;
pub mod recognition;
pub mod scramble;
pub mod series;
pub mod subspace;

pub use algebra::{AlgebraTable, Violation};
pub use error::{Error, Result};
pub use matrix::Matrix;
pub use rational::Rational;
pub use subspace::Subspace;
