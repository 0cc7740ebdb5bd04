mod common;

use std::sync::Arc;

use common::{grouplike_counit, comatrix_quotient_projection, q, Q};
use comono_core::coalgebra::{kernel_bicomodule, regular_comodules};
use comono_core::constructions::{comatrix, grouplike};
use comono_core::cotensor::self_cotensor_bicomodule;
use comono_core::criteria::{
    criterion_cotensor_identity, criterion_delta_surjective, criterion_h0_equal, criterion_kernel_cotensor,
    evaluate, h0, is_monomorphism, kernel_cotensor_dim, t_functional, unit_iso_check, CheckOptions,
};
use comono_core::{Bicomodule, CoalgebraMorphism, Matrix};

fn identity_m2() -> CoalgebraMorphism {
    CoalgebraMorphism::identity(Arc::new(comatrix(Q, 2).unwrap()))
}

#[test]
fn cotensor_identity_examples() {
    assert!(criterion_cotensor_identity(&identity_m2()).unwrap().holds);
    let pi = criterion_cotensor_identity(&comatrix_quotient_projection()).unwrap();
    assert!(pi.holds);
    assert_eq!(pi.cotensor_dim, 4);
    let eps = criterion_cotensor_identity(&grouplike_counit()).unwrap();
    assert!(!eps.holds);
    let w = eps.witness.unwrap();
    assert_eq!(w.expanded, "g⊗h");
    assert_eq!(w.counit_left, "h");
    assert_eq!(w.counit_right, "g");
}

#[test]
fn delta_surjective_examples() {
    assert!(criterion_delta_surjective(&identity_m2()).unwrap());
    assert!(criterion_delta_surjective(&comatrix_quotient_projection()).unwrap());
    assert!(!criterion_delta_surjective(&grouplike_counit()).unwrap());
}

#[test]
fn kernel_cotensor_examples() {
    assert!(criterion_kernel_cotensor(&identity_m2()).unwrap());
    assert_eq!(kernel_cotensor_dim(&comatrix_quotient_projection()).unwrap(), 0);
    assert!(criterion_kernel_cotensor(&comatrix_quotient_projection()).unwrap());
    // C ⊗ span{g − h} over the ground field
    assert_eq!(kernel_cotensor_dim(&grouplike_counit()).unwrap(), 2);
}

#[test]
fn h0_of_regular_bicomodules() {
    let m2 = Arc::new(comatrix(Q, 2).unwrap());
    let h = h0(&regular_comodules(&m2).2).unwrap();
    assert_eq!(h.dim(), 1);
    assert_eq!(h.subspace.basis_vector(0), &[q(1), q(0), q(0), q(1)]);

    let g = Arc::new(grouplike(Q, &["g", "h"]).unwrap());
    assert_eq!(h0(&regular_comodules(&g).2).unwrap().dim(), 2);

    let zero = Bicomodule::new(g.clone(), g, vec![], Matrix::zeros(Q, 0, 0), Matrix::zeros(Q, 0, 0)).unwrap();
    assert_eq!(h0(&zero).unwrap().dim(), 0);
}

#[test]
fn h0_needs_matching_coalgebras() {
    let pi = comatrix_quotient_projection();
    let mixed = regular_comodules(pi.source()).2.corestrict(&CoalgebraMorphism::identity(pi.source().clone()), &pi);
    assert!(h0(&mixed.unwrap()).is_err());
}

#[test]
fn h0_equality_examples() {
    let id = identity_m2();
    let (_, _, regular) = regular_comodules(id.source());
    assert!(criterion_h0_equal(&id, &regular).unwrap().equal);

    let pi = comatrix_quotient_projection();
    let x = self_cotensor_bicomodule(&pi).unwrap();
    let cmp = criterion_h0_equal(&pi, x.bicomodule().unwrap()).unwrap();
    assert!(cmp.equal);

    let eps = grouplike_counit();
    let x = self_cotensor_bicomodule(&eps).unwrap();
    let cmp = criterion_h0_equal(&eps, x.bicomodule().unwrap()).unwrap();
    assert!(!cmp.equal);
    assert_eq!(cmp.over_target.dim(), 4);
    assert_eq!(cmp.over_source.dim(), 2);
}

#[test]
fn kernel_bicomodule_h0_on_comatrix_quotient() {
    let pi = comatrix_quotient_projection();
    let k = kernel_bicomodule(&pi).unwrap();
    // Ker φ lives over D; both sides are computed over D there
    assert_eq!(h0(&k.bicomodule).unwrap().dim(), 0);
}

#[test]
fn t_functional_examples() {
    let t = t_functional(&identity_m2()).unwrap();
    assert!(t.in_h0_source && t.in_h0_target);
    let t = t_functional(&comatrix_quotient_projection()).unwrap();
    assert!(t.in_h0_source && t.in_h0_target);
    let t = t_functional(&grouplike_counit()).unwrap();
    assert!(t.in_h0_target);
    assert!(!t.in_h0_source);
    assert_eq!(t.values, vec![q(1); 4]);
}

#[test]
fn unit_iso_examples() {
    let id = identity_m2();
    assert!(unit_iso_check(&id, &regular_comodules(id.source()).0).unwrap());
    let pi = comatrix_quotient_projection();
    assert!(unit_iso_check(&pi, &regular_comodules(pi.source()).0).unwrap());
    let eps = grouplike_counit();
    assert!(!unit_iso_check(&eps, &regular_comodules(eps.source()).0).unwrap());
}

#[test]
fn verdict_examples() {
    let v = is_monomorphism(&identity_m2()).unwrap();
    assert!(v.is_mono && v.injective);

    let v = is_monomorphism(&comatrix_quotient_projection()).unwrap();
    assert!(v.is_mono);
    assert!(!v.injective);
    assert_eq!(v.kernel_dim, 1);
    assert_eq!(v.delta_surjective, Some(true));
    assert_eq!(v.kernel_cotensor(), Some(true));
    assert!(v.h0_self_cotensor.unwrap().equal);

    let v = is_monomorphism(&grouplike_counit()).unwrap();
    assert!(!v.is_mono);
    assert!(!v.disagreement);
    assert_eq!(v.cotensor_identity.witness.unwrap().expanded, "g⊗h");
}

#[test]
fn skipping_cross_checks() {
    let opts = CheckOptions {
        cross_check: false,
        h0: false,
        ..CheckOptions::default()
    };
    let v = evaluate(&comatrix_quotient_projection(), opts).unwrap();
    assert!(v.is_mono);
    assert_eq!(v.delta_surjective, None);
    assert_eq!(v.kernel_cotensor_dim, None);
    assert!(v.h0_self_cotensor.is_none());
}

#[test]
fn invalid_morphisms_are_rejected() {
    let m2 = Arc::new(comatrix(Q, 2).unwrap());
    let f = CoalgebraMorphism::new(m2.clone(), m2, Matrix::zeros(Q, 4, 4)).unwrap();
    assert!(is_monomorphism(&f).is_err());
}

#[test]
fn denominators_divisible_by_p_are_flagged() {
    use comono_core::constructions::change_of_basis;
    use comono_core::criteria::compare_fields;
    let m2 = Arc::new(comatrix(Q, 2).unwrap());
    let p = Matrix::from_i64(Q, 4, 4, &[7, 0, 0, 0, 0, 1, 0, 0, 0, 0, 1, 0, 0, 0, 0, 1]).unwrap();
    let mut inv = Matrix::identity(Q, 4).entries().to_vec();
    inv[0] = Q.parse_scalar("1/7").unwrap();
    let inv = Matrix::new(Q, 4, 4, inv).unwrap();
    let labels = ["a", "b", "c", "d"].map(String::from).to_vec();
    let iso = change_of_basis(&m2, &inv, &p, labels).unwrap();
    assert!(iso.validate().is_valid());
    let at7 = compare_fields(&iso, 7).unwrap();
    assert!(!at7.integral);
    assert!(at7.characteristic_sensitive);
    assert!(at7.modular.is_none());
    let at101 = compare_fields(&iso, 101).unwrap();
    assert!(!at101.characteristic_sensitive);
    assert!(at101.verdicts_agree);
}

