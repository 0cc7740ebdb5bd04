//! Exact dense linear algebra over the rationals and prime fields.

mod elim;
mod field;
mod matrix;
mod subspace;

pub use elim::Execution;
pub use field::{Field, Scalar, MAX_PRIME};
pub use matrix::{pair_index, Matrix};
pub use subspace::{image_basis, kernel_basis, subspace_leq, Subspace};
