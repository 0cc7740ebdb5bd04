//! Builders that feed the criteria: standard coalgebras, sums, quotients by
//! coideals, trivial coextensions, dual algebras, and seeded generators.

mod builders;
mod coextension;
mod dual;
mod quotient;
mod random;

pub use builders::{
    change_of_basis, comatrix, comodule_change_of_basis, comodule_direct_sum, counit_morphism, direct_sum,
    direct_sum_with_inclusions, fold, grouplike, grouplike_n,
};
pub use coextension::{beta_map, trivial_coextension, BetaMap, CoextensionResult};
pub use dual::{
    algebra_epi_check, diagonal_algebra, dual_algebra, dual_morphism, matrix_algebra, matrix_subalgebra, Algebra,
    AlgebraMorphism, EpiCheck,
};
pub use quotient::{is_coideal, quotient, CoidealCheck, Quotient};
pub use random::{
    bicomodule_direct_sum, fuzz_batch, generated_subcomodule, grouplike_indices, grouplike_pair_bicomodule,
    random_bicomodule, random_morphism, random_morphism_described, random_morphism_with_steps,
    random_right_comodule, FuzzRecord, GeneratedMorphism,
};
