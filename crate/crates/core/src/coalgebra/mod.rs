//! Coalgebras, coalgebra maps and (bi)comodules as structure-constant data,
//! with validators that report every violated axiom cell.

#[allow(clippy::module_inception)]
mod coalgebra;
mod comodule;
mod morphism;
mod report;

pub use coalgebra::{format_tensor, format_vector, Coalgebra};
pub(crate) use coalgebra::check_labels;
pub use comodule::{
    kernel_bicomodule, regular_comodules, Bicomodule, KernelBicomodule, LeftComodule, RightComodule,
};
pub(crate) use comodule::{coords_left_factor, coords_right_factor, default_labels};
pub use morphism::CoalgebraMorphism;
pub use report::{Law, ValidationReport, Violation};
