#![allow(dead_code)]

use std::sync::Arc;

use comono_core::constructions::{comatrix, counit_morphism, grouplike, quotient};
use comono_core::{CoalgebraMorphism, Field, Scalar, Subspace};

pub const Q: Field = Field::Rationals;

pub fn q(v: i64) -> Scalar {
    Q.from_i64(v)
}

pub fn unit(n: usize, i: usize) -> Vec<Scalar> {
    let mut v = vec![Q.zero(); n];
    v[i] = Q.one();
    v
}

/// The projection of the 2x2 comatrix coalgebra onto its quotient by `c21`.
pub fn comatrix_quotient_projection() -> CoalgebraMorphism {
    comatrix_quotient_projection_in(Q)
}

pub fn comatrix_quotient_projection_in(field: Field) -> CoalgebraMorphism {
    let m2 = Arc::new(comatrix(field, 2).unwrap());
    let mut v = vec![field.zero(); 4];
    v[2] = field.one();
    let i = Subspace::span(field, 4, &[v]).unwrap();
    quotient(&m2, &i).unwrap().projection
}

/// `ε: k{g,h} -> k`.
pub fn grouplike_counit() -> CoalgebraMorphism {
    let g = Arc::new(grouplike(Q, &["g", "h"]).unwrap());
    counit_morphism(&g).unwrap()
}
