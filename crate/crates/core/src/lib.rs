//! Coset posets of isotropic subspaces and abelian subgroups, with exact
//! integer homology of their order complexes.

pub mod error;
pub mod formulas;
pub mod fplinalg;
pub mod groups;
pub mod homology;
pub mod posets;
pub mod symgeom;

pub use error::{Error, Result};

/// Sparse integer matrices with machine-word entries.
pub type IntMatrix = homology::SparseMatrix<i64>;
/// Sparse integer matrices with arbitrary-precision entries.
pub type BigIntMatrix = homology::SparseMatrix<num_bigint::BigInt>;
