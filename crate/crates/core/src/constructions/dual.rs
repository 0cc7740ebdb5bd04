//! Finite-dimensional duality: the convolution algebra `C*` and the
//! ring-epimorphism test `B⊗_A B ≅ B`, used as an independent oracle for
//! monomorphisms of coalgebras.

use std::sync::Arc;

use crate::coalgebra::{check_labels, CoalgebraMorphism, Coalgebra, Law, ValidationReport};
use crate::coalgebra::Violation;
use crate::error::{Error, Result};
use crate::linalg::{image_basis, kernel_basis, Field, Matrix};

/// Associative unital algebra: `mult` is the `n x n²` matrix of
/// `A⊗A -> A`, `unit` the `n x 1` matrix of `k -> A`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Algebra {
    name: String,
    labels: Vec<String>,
    mult: Matrix,
    unit: Matrix,
}

impl Algebra {
    pub fn new(name: impl Into<String>, labels: Vec<String>, mult: Matrix, unit: Matrix) -> Result<Algebra> {
        check_labels(&labels)?;
        let n = labels.len();
        if mult.shape() != (n, n * n) || unit.shape() != (n, 1) {
            return Err(Error::Shape(format!("algebra of dimension {n} has malformed constants")));
        }
        if mult.field() != unit.field() {
            return Err(Error::FieldMismatch {
                expected: mult.field(),
                found: unit.field(),
            });
        }
        Ok(Algebra {
            name: name.into(),
            labels,
            mult,
            unit,
        })
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn dim(&self) -> usize {
        self.labels.len()
    }

    pub fn field(&self) -> Field {
        self.mult.field()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn mult(&self) -> &Matrix {
        &self.mult
    }

    pub fn unit(&self) -> &Matrix {
        &self.unit
    }

    /// Associativity and both unit laws.
    pub fn validate(&self) -> ValidationReport {
        let n = self.dim();
        let id = Matrix::identity(self.field(), n);
        let mut report = ValidationReport::default();
        let assoc = |a: &Matrix, b: &Matrix| -> Matrix {
            self.mult
                .matmul(&a.kron(b).expect("same field"))
                .expect("shapes fixed")
        };
        let lhs = assoc(&self.mult, &id);
        let rhs = assoc(&id, &self.mult);
        report.compare(Law::Associativity, &lhs, &rhs, |k, c| {
            vec![k, c / (n * n), (c / n) % n, c % n]
        });
        report.compare(Law::Unit, &assoc(&self.unit, &id), &id, |k, j| vec![k, j]);
        report.compare(Law::Unit, &assoc(&id, &self.unit), &id, |k, j| vec![k, j]);
        report
    }
}

/// `C*` with the convolution product `(f·g)(c) = f(c₁)g(c₂)` and unit `ε`,
/// in the dual basis: the multiplication constants are those of `Δ`
/// transposed.
pub fn dual_algebra(c: &Coalgebra) -> Algebra {
    Algebra {
        name: format!("{}*", c.name()),
        labels: c.labels().iter().map(|l| format!("{l}*")).collect(),
        mult: c.delta().transpose(),
        unit: c.counit().transpose(),
    }
}

/// Unital algebra map `A -> B`, matrix `dim B x dim A`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AlgebraMorphism {
    pub source: Arc<Algebra>,
    pub target: Arc<Algebra>,
    pub matrix: Matrix,
}

impl AlgebraMorphism {
    pub fn new(source: Arc<Algebra>, target: Arc<Algebra>, matrix: Matrix) -> Result<AlgebraMorphism> {
        if matrix.shape() != (target.dim(), source.dim()) {
            return Err(Error::Shape("algebra map has the wrong shape".into()));
        }
        Ok(AlgebraMorphism {
            source,
            target,
            matrix,
        })
    }

    /// `f m_A = m_B (f⊗f)` and `f u_A = u_B`.
    pub fn validate(&self) -> ValidationReport {
        let f = &self.matrix;
        let b = self.target.dim();
        let a = self.source.dim();
        let mut report = ValidationReport::default();
        let lhs = f.matmul(self.source.mult()).expect("shapes fixed");
        let rhs = self
            .target
            .mult()
            .matmul(&f.kron(f).expect("same field"))
            .expect("shapes fixed");
        report.compare(Law::Multiplicativity, &lhs, &rhs, |k, c| vec![k, c / a, c % a]);
        let unit = f.matmul(self.source.unit()).expect("shapes fixed");
        report.compare(Law::UnitPreservation, &unit, self.target.unit(), |k, _| vec![k]);
        debug_assert!(report.violations.iter().all(|v: &Violation| v.cell[0] < b));
        report
    }
}

/// `φ* : D* -> C*` for a coalgebra map `φ: C -> D`.
pub fn dual_morphism(phi: &CoalgebraMorphism) -> AlgebraMorphism {
    AlgebraMorphism {
        source: Arc::new(dual_algebra(phi.target())),
        target: Arc::new(dual_algebra(phi.source())),
        matrix: phi.matrix().transpose(),
    }
}

/// Result of the epimorphism test for `f: A -> B`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EpiCheck {
    pub is_epi: bool,
    /// `dim B⊗_A B`
    pub tensor_dim: usize,
    pub target_dim: usize,
}

/// `f` is an epimorphism of rings iff multiplication `B⊗_A B -> B` is
/// bijective. `B⊗_A B` is computed as `B⊗B` modulo the span of
/// `b f(a)⊗b' − b⊗f(a) b'`; multiplication is always onto (unit), so
/// bijectivity is a dimension count, cross-checked by confirming the
/// relations lie in the kernel of multiplication.
pub fn algebra_epi_check(f: &AlgebraMorphism) -> Result<EpiCheck> {
    let report = f.validate();
    if !report.is_valid() {
        return Err(Error::InvalidArgument(format!(
            "not a unital algebra map: {}",
            report.violations[0]
        )));
    }
    let b = &f.target;
    let field = b.field();
    let nb = b.dim();
    let id = Matrix::identity(field, nb);
    let mut relations: Option<Matrix> = None;
    for a in 0..f.source.dim() {
        let fa = Matrix::from_columns(field, nb, &[f.matrix.column(a)])?;
        // right and left multiplication by f(a)
        let right_mul = b.mult().matmul(&id.kron(&fa)?)?;
        let left_mul = b.mult().matmul(&fa.kron(&id)?)?;
        let rel = right_mul.kron(&id)?.sub(&id.kron(&left_mul)?)?;
        relations = Some(match relations {
            None => rel,
            Some(acc) => acc.hstack(&rel)?,
        });
    }
    let span = match relations {
        Some(r) => image_basis(&r),
        None => crate::linalg::Subspace::zero(field, nb * nb),
    };
    let mult_kernel = kernel_basis(b.mult());
    if !span.is_subspace_of(&mult_kernel)? {
        return Err(Error::InternalConsistency(
            "balancing relations are not killed by multiplication".into(),
        ));
    }
    let tensor_dim = nb * nb - span.dim();
    Ok(EpiCheck {
        is_epi: tensor_dim == nb,
        tensor_dim,
        target_dim: nb,
    })
}

/// The `n x n` matrix algebra with basis `e_ij` and `e_ij e_kl = δ_jk e_il`.
pub fn matrix_algebra(field: Field, n: usize) -> Result<Algebra> {
    let dim = n * n;
    let mut mult = Matrix::zeros(field, dim, dim * dim);
    for i in 0..n {
        for j in 0..n {
            for l in 0..n {
                mult.set(i * n + l, (i * n + j) * dim + (j * n + l), field.one());
            }
        }
    }
    let mut unit = Matrix::zeros(field, dim, 1);
    for i in 0..n {
        unit.set(i * n + i, 0, field.one());
    }
    let labels = (0..n)
        .flat_map(|i| (0..n).map(move |j| format!("e{}{}", i + 1, j + 1)))
        .collect();
    Algebra::new(format!("Mat{n}"), labels, mult, unit)
}

/// The subalgebra of `Mat_n` spanned by the given matrix units, with its
/// inclusion. Closure under multiplication is not checked here; the
/// inclusion's validator will catch a non-subalgebra.
pub fn matrix_subalgebra(
    full: &Arc<Algebra>,
    n: usize,
    units: &[(usize, usize)],
) -> Result<AlgebraMorphism> {
    let field = full.field();
    let dim = n * n;
    let incl_cols: Vec<usize> = units.iter().map(|&(i, j)| i * n + j).collect();
    let mut incl = Matrix::zeros(field, dim, units.len());
    for (s, &c) in incl_cols.iter().enumerate() {
        incl.set(c, s, field.one());
    }
    let r = units.len();
    let mut mult = Matrix::zeros(field, r, r * r);
    for (x, &cx) in incl_cols.iter().enumerate() {
        for (y, &cy) in incl_cols.iter().enumerate() {
            for (z, &cz) in incl_cols.iter().enumerate() {
                let v = full.mult().get(cz, cx * dim + cy);
                if !v.is_zero() {
                    mult.set(z, x * r + y, v.clone());
                }
            }
        }
    }
    let mut unit = Matrix::zeros(field, r, 1);
    for (s, &(i, j)) in units.iter().enumerate() {
        if i == j {
            unit.set(s, 0, field.one());
        }
    }
    let labels = units.iter().map(|&(i, j)| format!("e{}{}", i + 1, j + 1)).collect();
    let sub = Arc::new(Algebra::new("sub", labels, mult, unit)?);
    AlgebraMorphism::new(sub, full.clone(), incl)
}

/// `k^n` with pointwise multiplication.
pub fn diagonal_algebra(field: Field, n: usize) -> Result<Algebra> {
    let mut mult = Matrix::zeros(field, n, n * n);
    for i in 0..n {
        mult.set(i, i * n + i, field.one());
    }
    let unit = Matrix::new(field, n, 1, vec![field.one(); n])?;
    Algebra::new(format!("k^{n}"), (0..n).map(|i| format!("p{i}")).collect(), mult, unit)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::{comatrix, grouplike};
    use crate::linalg::pair_index;

    const Q: Field = Field::Rationals;

    #[test]
    fn dual_of_grouplike_is_diagonal() {
        let d = dual_algebra(&grouplike(Q, &["g", "h"]).unwrap());
        let diag = diagonal_algebra(Q, 2).unwrap();
        assert_eq!(d.mult(), diag.mult());
        assert_eq!(d.unit(), diag.unit());
        assert!(d.validate().is_valid());
    }

    #[test]
    fn dual_of_ground_field() {
        let d = dual_algebra(&grouplike(Q, &["g"]).unwrap());
        assert_eq!(d.dim(), 1);
        assert!(d.mult().get(0, 0).is_one());
        assert!(d.unit().get(0, 0).is_one());
    }

    #[test]
    fn dual_of_comatrix_is_matrix_algebra() {
        let d = dual_algebra(&comatrix(Q, 2).unwrap());
        assert!(d.validate().is_valid());
        // e11·e12 = e12 in the dual basis: Δ(c12) ∋ c11⊗c12
        assert!(d.mult().get(1, pair_index(0, 1, 4)).is_one());
        assert_eq!(d.mult(), matrix_algebra(Q, 2).unwrap().mult());
    }

    #[test]
    fn identity_is_epi() {
        let b = Arc::new(matrix_algebra(Q, 2).unwrap());
        let id = AlgebraMorphism::new(b.clone(), b.clone(), Matrix::identity(Q, 4)).unwrap();
        let e = algebra_epi_check(&id).unwrap();
        assert!(e.is_epi);
        assert_eq!(e.tensor_dim, 4);
    }

    #[test]
    fn upper_triangular_into_full_matrices_is_epi() {
        let b = Arc::new(matrix_algebra(Q, 2).unwrap());
        let f = matrix_subalgebra(&b, 2, &[(0, 0), (0, 1), (1, 1)]).unwrap();
        assert!(f.validate().is_valid());
        let e = algebra_epi_check(&f).unwrap();
        assert!(e.is_epi);
        assert_eq!(e.tensor_dim, 4);
    }

    #[test]
    fn scalars_into_diagonal_is_not_epi() {
        let k = Arc::new(diagonal_algebra(Q, 1).unwrap());
        let kk = Arc::new(diagonal_algebra(Q, 2).unwrap());
        let f = AlgebraMorphism::new(k, kk, Matrix::from_i64(Q, 2, 1, &[1, 1]).unwrap()).unwrap();
        let e = algebra_epi_check(&f).unwrap();
        assert!(!e.is_epi);
        assert_eq!(e.tensor_dim, 4);
    }

    #[test]
    fn non_morphism_is_rejected() {
        let k = Arc::new(diagonal_algebra(Q, 1).unwrap());
        let kk = Arc::new(diagonal_algebra(Q, 2).unwrap());
        let f = AlgebraMorphism::new(k, kk, Matrix::from_i64(Q, 2, 1, &[1, 0]).unwrap()).unwrap();
        assert!(algebra_epi_check(&f).is_err());
    }
}
