//! Exact linear algebra over prime fields: field arithmetic, dense matrices
//! with Gauss-Jordan elimination, and canonical subspace representations.

mod field;
mod mat;
mod subspace;

pub use field::{FieldSpec, MAX_FIELD_ORDER};
pub use mat::{column_basis, kernel_basis, rank, rref, solve, Mat};
pub use subspace::{all_subspaces, Subspace};
