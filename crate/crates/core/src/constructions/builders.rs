use std::collections::HashSet;
use std::sync::Arc;

use crate::coalgebra::{Coalgebra, CoalgebraMorphism, RightComodule};
use crate::error::{Error, Result};
use crate::linalg::{pair_index, Field, Matrix};

/// The comatrix coalgebra `Mⁿ(k)`: basis `c_ij`, `Δ(c_ij) = Σ_k c_ik⊗c_kj`,
/// `ε(c_ij) = δ_ij`. Labels are one-based (`c11`, `c12`, ...).
pub fn comatrix(field: Field, n: usize) -> Result<Coalgebra> {
    if n == 0 {
        return Err(Error::InvalidArgument("comatrix coalgebra needs n >= 1".into()));
    }
    let idx = |i: usize, j: usize| i * n + j;
    let dim = n * n;
    let labels = (0..n)
        .flat_map(|i| {
            (0..n).map(move |j| {
                if n < 10 {
                    format!("c{}{}", i + 1, j + 1)
                } else {
                    format!("c{}_{}", i + 1, j + 1)
                }
            })
        })
        .collect();
    let mut terms = Vec::with_capacity(n * n * n);
    for i in 0..n {
        for j in 0..n {
            for k in 0..n {
                terms.push((idx(i, j), idx(i, k), idx(k, j), field.one()));
            }
        }
    }
    let counit = (0..dim)
        .map(|a| if a / n == a % n { field.one() } else { field.zero() })
        .collect();
    Coalgebra::from_terms(format!("M{n}"), field, labels, &terms, counit)
}

/// The grouplike coalgebra on the given labels: `Δ(g) = g⊗g`, `ε(g) = 1`.
pub fn grouplike(field: Field, labels: &[&str]) -> Result<Coalgebra> {
    if labels.is_empty() {
        return Err(Error::InvalidArgument("grouplike coalgebra needs at least one label".into()));
    }
    let labels: Vec<String> = labels.iter().map(|s| s.to_string()).collect();
    let terms: Vec<_> = (0..labels.len()).map(|k| (k, k, k, field.one())).collect();
    let counit = vec![field.one(); labels.len()];
    Coalgebra::from_terms(format!("G{}", labels.len()), field, labels, &terms, counit)
}

/// `grouplike` with labels `g0, g1, ...`.
pub fn grouplike_n(field: Field, n: usize) -> Result<Coalgebra> {
    let labels: Vec<String> = (0..n).map(|i| format!("g{i}")).collect();
    let refs: Vec<&str> = labels.iter().map(String::as_str).collect();
    grouplike(field, &refs)
}

/// Makes the two label lists disjoint by suffixing `_1` / `_2` on collisions.
pub(crate) fn disjoint_labels(a: &[String], b: &[String]) -> (Vec<String>, Vec<String>) {
    let sa: HashSet<&String> = a.iter().collect();
    if !b.iter().any(|l| sa.contains(l)) {
        return (a.to_vec(), b.to_vec());
    }
    (
        a.iter().map(|l| format!("{l}_1")).collect(),
        b.iter().map(|l| format!("{l}_2")).collect(),
    )
}

/// `C1 ⊕ C2` with block comultiplication and concatenated counit.
pub fn direct_sum(c1: &Coalgebra, c2: &Coalgebra) -> Result<Coalgebra> {
    if c1.field() != c2.field() {
        return Err(Error::FieldMismatch {
            expected: c1.field(),
            found: c2.field(),
        });
    }
    let field = c1.field();
    let (n1, n2) = (c1.dim(), c2.dim());
    let n = n1 + n2;
    let (l1, l2) = disjoint_labels(c1.labels(), c2.labels());
    let labels: Vec<String> = l1.into_iter().chain(l2).collect();
    let mut delta = Matrix::zeros(field, n * n, n);
    for (c, off, d) in [(c1, 0, n1), (c2, n1, n2)] {
        for k in 0..d {
            for i in 0..d {
                for j in 0..d {
                    let v = c.mu(k, i, j);
                    if !v.is_zero() {
                        delta.set(pair_index(off + i, off + j, n), off + k, v.clone());
                    }
                }
            }
        }
    }
    let mut counit = c1.counit_vector();
    counit.extend(c2.counit_vector());
    Coalgebra::new(
        format!("{}+{}", c1.name(), c2.name()),
        labels,
        delta,
        Matrix::new(field, 1, n, counit)?,
    )
}

/// `C1 ⊕ C2` together with both summand inclusions.
pub fn direct_sum_with_inclusions(
    c1: &Arc<Coalgebra>,
    c2: &Arc<Coalgebra>,
) -> Result<(Arc<Coalgebra>, CoalgebraMorphism, CoalgebraMorphism)> {
    let sum = Arc::new(direct_sum(c1, c2)?);
    let field = c1.field();
    let (n1, n2) = (c1.dim(), c2.dim());
    let mut i1 = Matrix::zeros(field, n1 + n2, n1);
    for k in 0..n1 {
        i1.set(k, k, field.one());
    }
    let mut i2 = Matrix::zeros(field, n1 + n2, n2);
    for k in 0..n2 {
        i2.set(n1 + k, k, field.one());
    }
    let inc1 = CoalgebraMorphism::new(c1.clone(), sum.clone(), i1)?;
    let inc2 = CoalgebraMorphism::new(c2.clone(), sum.clone(), i2)?;
    Ok((sum, inc1, inc2))
}

/// The codiagonal `C ⊕ C -> C`.
pub fn fold(c: &Arc<Coalgebra>) -> Result<CoalgebraMorphism> {
    let sum = Arc::new(direct_sum(c, c)?);
    let id = c.identity_matrix();
    CoalgebraMorphism::new(sum, c.clone(), id.hstack(&id)?)
}

/// The counit `C -> k`, with `k` the one-dimensional grouplike coalgebra.
pub fn counit_morphism(c: &Arc<Coalgebra>) -> Result<CoalgebraMorphism> {
    let k = Arc::new(grouplike(c.field(), &["1"])?.with_name("k"));
    CoalgebraMorphism::new(c.clone(), k, c.counit().clone())
}

/// Transports `C` along an invertible matrix `P`: the new coalgebra has
/// `Δ' = (P⊗P)ΔP⁻¹`, `ε' = εP⁻¹`, and `P` becomes an isomorphism `C -> C'`.
pub fn change_of_basis(
    c: &Arc<Coalgebra>,
    p: &Matrix,
    p_inv: &Matrix,
    labels: Vec<String>,
) -> Result<CoalgebraMorphism> {
    if !p.matmul(p_inv)?.is_identity() {
        return Err(Error::InvalidArgument("change of basis matrix and inverse disagree".into()));
    }
    let delta = Matrix::kron_matmul(p, p, c.delta())?.matmul(p_inv)?;
    let counit = c.counit().matmul(p_inv)?;
    let target = Arc::new(Coalgebra::new(format!("{}'", c.name()), labels, delta, counit)?);
    CoalgebraMorphism::new(c.clone(), target, p.clone())
}

/// `M ⊕ N` for right comodules over the same coalgebra.
pub fn comodule_direct_sum(m: &RightComodule, n: &RightComodule) -> Result<RightComodule> {
    if **m.over() != **n.over() {
        return Err(Error::CoalgebraMismatch("direct sum of comodules over different coalgebras".into()));
    }
    let c = m.over().dim();
    let (a, b) = (m.dim(), n.dim());
    let d = a + b;
    let field = m.field();
    let mut rho = Matrix::zeros(field, d * c, d);
    for (src, off, dim) in [(m, 0, a), (n, a, b)] {
        for col in 0..dim {
            for row in 0..dim * c {
                let v = src.coaction().get(row, col);
                if !v.is_zero() {
                    let (t, i) = (row / c, row % c);
                    rho.set(pair_index(off + t, i, c), off + col, v.clone());
                }
            }
        }
    }
    let (l1, l2) = disjoint_labels(m.labels(), n.labels());
    RightComodule::new(m.over().clone(), l1.into_iter().chain(l2).collect(), rho)
}

/// Transports a right comodule along an invertible `P`: `ρ' = (P⊗I)ρP⁻¹`.
pub fn comodule_change_of_basis(m: &RightComodule, p: &Matrix, p_inv: &Matrix) -> Result<RightComodule> {
    let rho = Matrix::kron_matmul(p, &m.over().identity_matrix(), m.coaction())?.matmul(p_inv)?;
    RightComodule::new(m.over().clone(), m.labels().to_vec(), rho)
}

#[cfg(test)]
mod tests {
    use super::*;

    const Q: Field = Field::Rationals;

    #[test]
    fn comatrix_one_is_grouplike() {
        let m1 = comatrix(Q, 1).unwrap();
        assert_eq!(m1.dim(), 1);
        assert!(m1.mu(0, 0, 0).is_one());
        assert!(m1.counit().get(0, 0).is_one());
        assert!(comatrix(Q, 0).is_err());
    }

    #[test]
    fn comatrix_two_constants() {
        let m2 = comatrix(Q, 2).unwrap();
        assert_eq!(m2.labels(), &["c11", "c12", "c21", "c22"]);
        // Δ(c11) = c11⊗c11 + c12⊗c21
        let mut nonzero = vec![];
        for i in 0..4 {
            for j in 0..4 {
                if !m2.mu(0, i, j).is_zero() {
                    nonzero.push((i, j));
                }
            }
        }
        assert_eq!(nonzero, vec![(0, 0), (1, 2)]);
        assert!(m2.counit().get(0, 1).is_zero());
        let report = m2.validate();
        assert!(report.is_valid(), "{report}");
    }

    #[test]
    fn grouplike_examples() {
        let k = grouplike(Q, &["g"]).unwrap();
        assert!(k.validate().is_valid());
        assert!(grouplike(Q, &["g", "h", "x", "y"]).unwrap().validate().is_valid());
        assert!(grouplike(Q, &["g", "g"]).is_err());
        assert!(grouplike(Q, &[]).is_err());
    }

    #[test]
    fn direct_sum_examples() {
        let k = grouplike(Q, &["g"]).unwrap();
        let kk = direct_sum(&k, &k).unwrap();
        assert_eq!(kk, grouplike(Q, &["g_1", "g_2"]).unwrap());
        let m2k = direct_sum(&comatrix(Q, 2).unwrap(), &k).unwrap();
        assert_eq!(m2k.dim(), 5);
        assert!(m2k.validate().is_valid());
        let f7 = grouplike(Field::Prime(7), &["g"]).unwrap();
        assert!(direct_sum(&k, &f7).is_err());
    }

    #[test]
    fn structural_maps_are_coalgebra_maps() {
        let m2 = Arc::new(comatrix(Q, 2).unwrap());
        assert!(fold(&m2).unwrap().validate().is_valid());
        assert!(counit_morphism(&m2).unwrap().validate().is_valid());
        let g = Arc::new(grouplike(Q, &["g"]).unwrap());
        let (_, i1, i2) = direct_sum_with_inclusions(&m2, &g).unwrap();
        assert!(i1.validate().is_valid());
        assert!(i2.validate().is_valid());
    }
}
