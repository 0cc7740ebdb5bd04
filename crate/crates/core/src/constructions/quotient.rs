use std::sync::Arc;

use crate::coalgebra::{format_vector, Coalgebra, CoalgebraMorphism};
use crate::error::{Error, Result};
use crate::linalg::{Field, Matrix, Scalar, Subspace};

/// Outcome of [`is_coideal`]. The index lists refer to the canonical basis
/// of the candidate subspace.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CoidealCheck {
    pub is_coideal: bool,
    /// Basis vectors with `ε(u) ≠ 0`.
    pub counit_violations: Vec<usize>,
    /// Basis vectors with `Δ(u) ∉ I⊗C + C⊗I`.
    pub delta_violations: Vec<usize>,
    /// Human-readable certificate, empty when `is_coideal`.
    pub certificate: Vec<String>,
}

/// `I⊗C + C⊗I` inside `C⊗C`.
fn coideal_envelope(ideal: &Subspace, n: usize) -> Result<Subspace> {
    let field = ideal.field();
    let mut rows = Vec::with_capacity(2 * ideal.dim() * n);
    for u in ideal.basis_vectors() {
        for j in 0..n {
            let mut left = vec![field.zero(); n * n];
            let mut right = vec![field.zero(); n * n];
            for (a, c) in u.iter().enumerate() {
                if !c.is_zero() {
                    left[a * n + j] = c.clone();
                    right[j * n + a] = c.clone();
                }
            }
            rows.push(left);
            rows.push(right);
        }
    }
    Subspace::span(field, n * n, &rows)
}

/// Checks `ε(I) = 0` and `Δ(I) ⊆ I⊗C + C⊗I`.
pub fn is_coideal(c: &Coalgebra, ideal: &Subspace) -> Result<CoidealCheck> {
    let n = c.dim();
    if ideal.ambient_dim() != n {
        return Err(Error::Dimension {
            context: "coideal ambient dimension",
            expected: n,
            found: ideal.ambient_dim(),
        });
    }
    if ideal.field() != c.field() {
        return Err(Error::FieldMismatch {
            expected: c.field(),
            found: ideal.field(),
        });
    }
    let envelope = coideal_envelope(ideal, n)?;
    let counit = c.counit_vector();
    let mut check = CoidealCheck {
        is_coideal: true,
        counit_violations: vec![],
        delta_violations: vec![],
        certificate: vec![],
    };
    for (s, u) in ideal.basis_vectors().enumerate() {
        let eps = dot(&counit, u);
        if !eps.is_zero() {
            check.counit_violations.push(s);
            check
                .certificate
                .push(format!("ε({}) = {eps}", format_vector(c.labels(), u)));
        }
        let du = c.delta().apply(u)?;
        if !envelope.contains(&du) {
            check.delta_violations.push(s);
            check.certificate.push(format!(
                "Δ({}) is not in I⊗C + C⊗I",
                format_vector(c.labels(), u)
            ));
        }
    }
    check.is_coideal = check.certificate.is_empty();
    Ok(check)
}

fn dot(a: &[Scalar], b: &[Scalar]) -> Scalar {
    let field = a.first().map_or(Field::Rationals, Scalar::field);
    a.iter()
        .zip(b)
        .fold(field.zero(), |acc, (x, y)| &acc + &(x * y))
}

/// `C/I` and the projection `π: C -> C/I`.
#[derive(Clone, Debug)]
pub struct Quotient {
    pub coalgebra: Arc<Coalgebra>,
    pub projection: CoalgebraMorphism,
    /// Basis indices of `C` whose images form the basis of `C/I`.
    pub kept: Vec<usize>,
}

/// Quotient by a coideal. The basis of `C/I` is the image of the standard
/// basis vectors at the non-pivot columns of `I`'s canonical basis, and the
/// quotient keeps their labels.
pub fn quotient(c: &Arc<Coalgebra>, ideal: &Subspace) -> Result<Quotient> {
    let check = is_coideal(c, ideal)?;
    if !check.is_coideal {
        return Err(Error::NotACoideal(check.certificate.join("; ")));
    }
    let field = c.field();
    let n = c.dim();
    let mut is_pivot = vec![false; n];
    for &p in ideal.pivots() {
        is_pivot[p] = true;
    }
    let kept: Vec<usize> = (0..n).filter(|&i| !is_pivot[i]).collect();
    let d = kept.len();
    let mut position = vec![usize::MAX; n];
    for (q, &i) in kept.iter().enumerate() {
        position[i] = q;
    }
    // e_p = u_p - Σ_{q kept} u_p[q] e_q for the basis vector u_p with pivot p
    let mut proj = Matrix::zeros(field, d, n);
    for (q, &i) in kept.iter().enumerate() {
        proj.set(q, i, field.one());
    }
    for (s, &p) in ideal.pivots().iter().enumerate() {
        let u = ideal.basis_vector(s);
        for (q, &i) in kept.iter().enumerate() {
            if !u[i].is_zero() {
                proj.set(q, p, -&u[i]);
            }
        }
    }
    let mut section = Matrix::zeros(field, n, d);
    for (q, &i) in kept.iter().enumerate() {
        section.set(i, q, field.one());
    }
    let delta = Matrix::kron_matmul(&proj, &proj, c.delta())?.matmul(&section)?;
    let counit = c.counit().matmul(&section)?;
    let labels = kept.iter().map(|&i| c.labels()[i].clone()).collect();
    let target = Arc::new(Coalgebra::new(format!("{}/I", c.name()), labels, delta, counit)?);
    let projection = CoalgebraMorphism::new(c.clone(), target.clone(), proj)?;
    Ok(Quotient {
        coalgebra: target,
        projection,
        kept,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::{comatrix, grouplike};

    const Q: Field = Field::Rationals;

    fn unit(n: usize, i: usize) -> Vec<Scalar> {
        let mut v = vec![Q.zero(); n];
        v[i] = Q.one();
        v
    }

    #[test]
    fn zero_is_a_coideal() {
        let m2 = Arc::new(comatrix(Q, 2).unwrap());
        assert!(is_coideal(&m2, &Subspace::zero(Q, 4)).unwrap().is_coideal);
        let q = quotient(&m2, &Subspace::zero(Q, 4)).unwrap();
        assert_eq!(*q.coalgebra, *m2);
        assert!(q.projection.matrix().is_identity());
    }

    #[test]
    fn c21_spans_a_coideal() {
        let m2 = comatrix(Q, 2).unwrap();
        let i = Subspace::span(Q, 4, &[unit(4, 2)]).unwrap();
        assert!(is_coideal(&m2, &i).unwrap().is_coideal);
    }

    #[test]
    fn c11_is_not_a_coideal() {
        let m2 = comatrix(Q, 2).unwrap();
        let i = Subspace::span(Q, 4, &[unit(4, 0)]).unwrap();
        let check = is_coideal(&m2, &i).unwrap();
        assert!(!check.is_coideal);
        assert_eq!(check.counit_violations, vec![0]);
        assert!(check.certificate[0].contains("ε(c11) = 1"));
    }

    #[test]
    fn ambient_mismatch_is_an_error() {
        let m2 = comatrix(Q, 2).unwrap();
        assert!(is_coideal(&m2, &Subspace::zero(Q, 3)).is_err());
    }

    #[test]
    fn upper_triangular_quotient() {
        let m2 = Arc::new(comatrix(Q, 2).unwrap());
        let i = Subspace::span(Q, 4, &[unit(4, 2)]).unwrap();
        let q = quotient(&m2, &i).unwrap();
        let d = &q.coalgebra;
        assert_eq!(d.labels(), &["c11", "c12", "c22"]);
        // Δ(d11) = d11⊗d11, Δ(d12) = d11⊗d12 + d12⊗d22, Δ(d22) = d22⊗d22
        let terms = |k: usize| -> Vec<(usize, usize, String)> {
            let mut out = vec![];
            for a in 0..3 {
                for b in 0..3 {
                    let v = d.mu(k, a, b);
                    if !v.is_zero() {
                        out.push((a, b, v.to_string()));
                    }
                }
            }
            out
        };
        assert_eq!(terms(0), vec![(0, 0, "1".into())]);
        assert_eq!(terms(1), vec![(0, 1, "1".into()), (1, 2, "1".into())]);
        assert_eq!(terms(2), vec![(2, 2, "1".into())]);
        assert!(d.validate().is_valid());
        assert!(q.projection.validate().is_valid());
        assert_eq!(q.projection.kernel(), i);
    }

    #[test]
    fn grouplike_augmentation_is_rejected() {
        let g = Arc::new(grouplike(Q, &["g", "h"]).unwrap());
        let i = Subspace::span(Q, 2, &[unit(2, 0)]).unwrap();
        assert!(matches!(quotient(&g, &i), Err(Error::NotACoideal(_))));
        let diff = Subspace::span(Q, 2, &[vec![Q.one(), -Q.one()]]).unwrap();
        let q = quotient(&g, &diff).unwrap();
        assert_eq!(q.coalgebra.dim(), 1);
        assert!(q.projection.validate().is_valid());
    }
}
