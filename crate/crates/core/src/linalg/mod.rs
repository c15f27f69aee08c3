//! Exact linear algebra: dense matrices, canonical subspaces and Plücker
//! coordinates.

mod matrix;
mod pluecker;
mod subspace;

pub use matrix::{rref, Matrix};
pub use pluecker::{combinations, from_pluecker, pluecker, Pluecker};
pub use subspace::Subspace;
