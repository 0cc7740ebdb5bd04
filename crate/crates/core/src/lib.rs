//! Finite-dimensional coalgebras, comodules and cotensor products over exact
//! fields, together with decision procedures for monomorphisms of coalgebras.
//!
//! Everything is carried by structure constants. A coalgebra of dimension `n`
//! stores its comultiplication as an `n² x n` matrix (the map `C -> C ⊗ C`
//! under [`linalg::pair_index`]) and its counit as a `1 x n` matrix; every
//! axiom is a finite matrix identity.

pub mod coalgebra;
pub mod constructions;
pub mod cotensor;
pub mod criteria;
pub mod error;
pub mod linalg;
pub mod parallel;

pub use coalgebra::{
    Bicomodule, Coalgebra, CoalgebraMorphism, LeftComodule, RightComodule, ValidationReport,
};
pub use error::{Error, Result};
pub use linalg::{Field, Matrix, Scalar, Subspace};
