use std::collections::HashSet;
use std::ops::Range;
use std::sync::Arc;

use crate::coalgebra::{Bicomodule, Coalgebra, CoalgebraMorphism, ValidationReport};
use crate::error::{Error, Result};
use crate::linalg::{pair_index, Matrix, Scalar};

/// The trivial coextension `C ⋊ N` on `C ⊕ N` with its projection onto `C`.
#[derive(Clone, Debug)]
pub struct CoextensionResult {
    pub coalgebra: Arc<Coalgebra>,
    /// `π_C(c, n) = c`.
    pub projection: CoalgebraMorphism,
    /// Basis indices coming from `C`.
    pub from_coalgebra: Range<usize>,
    /// Basis indices coming from `N`.
    pub from_bicomodule: Range<usize>,
    pub bicomodule: Bicomodule,
}

/// Builds `C ⋊ N` for a `(C, C)`-bicomodule `N`:
///
/// `Δ(c, 0) = (c₁, 0)⊗(c₂, 0)`,
/// `Δ(0, n) = (n₋₁, 0)⊗(0, n₀) + (0, n₍₀₎)⊗(n₍₁₎, 0)`, `ε(c, n) = ε(c)`.
pub fn trivial_coextension(c: &Arc<Coalgebra>, n: &Bicomodule) -> Result<CoextensionResult> {
    if **n.left_over() != **c || **n.right_over() != **c {
        return Err(Error::InvalidArgument(format!(
            "coextension of {} needs a ({0}, {0})-bicomodule",
            c.name()
        )));
    }
    let field = c.field();
    let (cd, m) = (c.dim(), n.dim());
    let t = cd + m;
    let mut delta = Matrix::zeros(field, t * t, t);
    for k in 0..cd {
        for i in 0..cd {
            for j in 0..cd {
                let v = c.mu(k, i, j);
                if !v.is_zero() {
                    delta.set(pair_index(i, j, t), k, v.clone());
                }
            }
        }
    }
    let (lam, rho) = (n.left_coaction(), n.right_coaction());
    for b in 0..m {
        for i in 0..cd {
            for s in 0..m {
                let l = lam.get(pair_index(i, s, m), b);
                if !l.is_zero() {
                    delta.add_at(pair_index(i, cd + s, t), cd + b, l);
                }
                let r = rho.get(pair_index(s, i, cd), b);
                if !r.is_zero() {
                    delta.add_at(pair_index(cd + s, i, t), cd + b, r);
                }
            }
        }
    }
    let mut counit = c.counit_vector();
    counit.extend(std::iter::repeat_n(field.zero(), m));
    let mut taken: HashSet<String> = c.labels().iter().cloned().collect();
    let mut labels = c.labels().to_vec();
    for l in n.labels() {
        let mut l = l.clone();
        while taken.contains(&l) {
            l.push('\'');
        }
        taken.insert(l.clone());
        labels.push(l);
    }
    let coalgebra = Arc::new(Coalgebra::new(
        format!("{}⋊N", c.name()),
        labels,
        delta,
        Matrix::new(field, 1, t, counit)?,
    )?);
    let projection = CoalgebraMorphism::new(
        coalgebra.clone(),
        c.clone(),
        c.identity_matrix().hstack(&Matrix::zeros(field, cd, m))?,
    )?;
    Ok(CoextensionResult {
        coalgebra,
        projection,
        from_coalgebra: 0..cd,
        from_bicomodule: cd..t,
        bicomodule: n.clone(),
    })
}

/// `β(c, n) = c − n₋₁γ(n₀) + γ(n₍₀₎)n₍₁₎` with its morphism report.
#[derive(Clone, Debug)]
pub struct BetaMap {
    pub morphism: CoalgebraMorphism,
    pub report: ValidationReport,
}

/// Builds `β: C ⋊ N -> C` for a functional `γ` on `N` (given in the dual
/// basis). Validity is reported rather than assumed.
pub fn beta_map(coext: &CoextensionResult, gamma: &[Scalar]) -> Result<BetaMap> {
    let n = &coext.bicomodule;
    let c = coext.projection.target();
    let field = c.field();
    if gamma.len() != n.dim() {
        return Err(Error::Dimension {
            context: "functional on the bicomodule",
            expected: n.dim(),
            found: gamma.len(),
        });
    }
    let g = Matrix::new(field, 1, n.dim(), gamma.to_vec())?;
    let id = c.identity_matrix();
    let left_term = Matrix::kron_matmul(&id, &g, n.left_coaction())?;
    let right_term = Matrix::kron_matmul(&g, &id, n.right_coaction())?;
    let correction = right_term.sub(&left_term)?;
    let morphism = CoalgebraMorphism::new(coext.coalgebra.clone(), c.clone(), id.hstack(&correction)?)?;
    let report = morphism.validate();
    Ok(BetaMap { morphism, report })
}
