use std::sync::Arc;

use crate::coalgebra::report::{unflatten, Law, ValidationReport};
use crate::coalgebra::{check_labels, Coalgebra, CoalgebraMorphism};
use crate::error::{Error, Result};
use crate::linalg::{pair_index, Field, Matrix, Scalar, Subspace};

/// Right comodule `ρ: M -> M⊗C`, stored as a `(m·n) x m` matrix: the
/// coefficient of `m_b⊗e_i` in `ρ(m_a)` is at row `pair_index(b, i, n)`,
/// column `a`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RightComodule {
    over: Arc<Coalgebra>,
    labels: Vec<String>,
    coaction: Matrix,
}

/// Left comodule `λ: N -> C⊗N`, stored as a `(n·m) x m` matrix with rows
/// indexed by `pair_index(i, b, m)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LeftComodule {
    over: Arc<Coalgebra>,
    labels: Vec<String>,
    coaction: Matrix,
}

/// A `(C, D)`-bicomodule: left `C`-coaction and right `D`-coaction on the
/// same space.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Bicomodule {
    left_over: Arc<Coalgebra>,
    right_over: Arc<Coalgebra>,
    labels: Vec<String>,
    left: Matrix,
    right: Matrix,
}

fn check_coaction(over: &Coalgebra, labels: &[String], coaction: &Matrix, what: &str) -> Result<()> {
    check_labels(labels)?;
    let m = labels.len();
    if coaction.field() != over.field() {
        return Err(Error::FieldMismatch {
            expected: over.field(),
            found: coaction.field(),
        });
    }
    if coaction.shape() != (m * over.dim(), m) {
        return Err(Error::Shape(format!(
            "{what} coaction over {} must be {}x{m}, got {}x{}",
            over.name(),
            m * over.dim(),
            coaction.rows(),
            coaction.cols()
        )));
    }
    Ok(())
}

pub(crate) fn default_labels(prefix: &str, n: usize) -> Vec<String> {
    (0..n).map(|i| format!("{prefix}{i}")).collect()
}

impl RightComodule {
    pub fn new(over: Arc<Coalgebra>, labels: Vec<String>, coaction: Matrix) -> Result<RightComodule> {
        check_coaction(&over, &labels, &coaction, "right")?;
        Ok(RightComodule {
            over,
            labels,
            coaction,
        })
    }

    pub fn over(&self) -> &Arc<Coalgebra> {
        &self.over
    }

    pub fn dim(&self) -> usize {
        self.labels.len()
    }

    pub fn field(&self) -> Field {
        self.coaction.field()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn coaction(&self) -> &Matrix {
        &self.coaction
    }

    /// `(ρ⊗I)ρ = (I⊗Δ)ρ` and `(I⊗ε)ρ = I`.
    pub fn validate(&self) -> ValidationReport {
        let (m, n) = (self.dim(), self.over.dim());
        let f = self.field();
        let rho = &self.coaction;
        let mut report = ValidationReport::default();
        let lhs = Matrix::kron_matmul(rho, &self.over.identity_matrix(), rho);
        let rhs = Matrix::kron_matmul(&Matrix::identity(f, m), self.over.delta(), rho);
        report.compare(
            Law::CoactionCoassociativity,
            &lhs.expect("shapes fixed"),
            &rhs.expect("shapes fixed"),
            |r, a| {
                let mut cell = unflatten(r, &[m, n, n]);
                cell.push(a);
                cell
            },
        );
        let counit = Matrix::kron_matmul(&Matrix::identity(f, m), self.over.counit(), rho)
            .expect("shapes fixed");
        report.compare(Law::CoactionCounit, &counit, &Matrix::identity(f, m), |b, a| vec![a, b]);
        report
    }

    /// Corestriction along `φ`: coaction `(I⊗F)ρ`.
    pub fn corestrict(&self, phi: &CoalgebraMorphism) -> Result<RightComodule> {
        if **phi.source() != *self.over {
            return Err(Error::CoalgebraMismatch(format!(
                "comodule over {} corestricted along a map from {}",
                self.over.name(),
                phi.source().name()
            )));
        }
        let coaction =
            Matrix::kron_matmul(&Matrix::identity(self.field(), self.dim()), phi.matrix(), &self.coaction)?;
        RightComodule::new(phi.target().clone(), self.labels.clone(), coaction)
    }

    /// Checks that a linear map `M -> other` intertwines the coactions.
    pub fn is_map_to(&self, other: &RightComodule, f: &Matrix) -> Result<bool> {
        if *self.over != *other.over {
            return Err(Error::CoalgebraMismatch("comodule map between different coalgebras".into()));
        }
        if f.shape() != (other.dim(), self.dim()) {
            return Err(Error::Shape("comodule map has the wrong shape".into()));
        }
        let lhs = other.coaction.matmul(f)?;
        let rhs = Matrix::kron_matmul(f, &self.over.identity_matrix(), &self.coaction)?;
        Ok(lhs == rhs)
    }

    pub fn to_field(&self, field: Field, over: Arc<Coalgebra>) -> Result<RightComodule> {
        RightComodule::new(over, self.labels.clone(), self.coaction.to_field(field)?)
    }
}

impl LeftComodule {
    pub fn new(over: Arc<Coalgebra>, labels: Vec<String>, coaction: Matrix) -> Result<LeftComodule> {
        check_coaction(&over, &labels, &coaction, "left")?;
        Ok(LeftComodule {
            over,
            labels,
            coaction,
        })
    }

    pub fn over(&self) -> &Arc<Coalgebra> {
        &self.over
    }

    pub fn dim(&self) -> usize {
        self.labels.len()
    }

    pub fn field(&self) -> Field {
        self.coaction.field()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn coaction(&self) -> &Matrix {
        &self.coaction
    }

    /// `(I⊗λ)λ = (Δ⊗I)λ` and `(ε⊗I)λ = I`.
    pub fn validate(&self) -> ValidationReport {
        let (m, n) = (self.dim(), self.over.dim());
        let f = self.field();
        let lam = &self.coaction;
        let mut report = ValidationReport::default();
        let lhs = Matrix::kron_matmul(&self.over.identity_matrix(), lam, lam);
        let rhs = Matrix::kron_matmul(self.over.delta(), &Matrix::identity(f, m), lam);
        report.compare(
            Law::CoactionCoassociativity,
            &lhs.expect("shapes fixed"),
            &rhs.expect("shapes fixed"),
            |r, a| {
                let mut cell = unflatten(r, &[n, n, m]);
                cell.push(a);
                cell
            },
        );
        let counit = Matrix::kron_matmul(self.over.counit(), &Matrix::identity(f, m), lam)
            .expect("shapes fixed");
        report.compare(Law::CoactionCounit, &counit, &Matrix::identity(f, m), |b, a| vec![a, b]);
        report
    }

    /// Corestriction along `φ`: coaction `(F⊗I)λ`.
    pub fn corestrict(&self, phi: &CoalgebraMorphism) -> Result<LeftComodule> {
        if **phi.source() != *self.over {
            return Err(Error::CoalgebraMismatch(format!(
                "comodule over {} corestricted along a map from {}",
                self.over.name(),
                phi.source().name()
            )));
        }
        let coaction =
            Matrix::kron_matmul(phi.matrix(), &Matrix::identity(self.field(), self.dim()), &self.coaction)?;
        LeftComodule::new(phi.target().clone(), self.labels.clone(), coaction)
    }

    pub fn is_map_to(&self, other: &LeftComodule, f: &Matrix) -> Result<bool> {
        if *self.over != *other.over {
            return Err(Error::CoalgebraMismatch("comodule map between different coalgebras".into()));
        }
        if f.shape() != (other.dim(), self.dim()) {
            return Err(Error::Shape("comodule map has the wrong shape".into()));
        }
        let lhs = other.coaction.matmul(f)?;
        let rhs = Matrix::kron_matmul(&self.over.identity_matrix(), f, &self.coaction)?;
        Ok(lhs == rhs)
    }
}

impl Bicomodule {
    pub fn new(
        left_over: Arc<Coalgebra>,
        right_over: Arc<Coalgebra>,
        labels: Vec<String>,
        left: Matrix,
        right: Matrix,
    ) -> Result<Bicomodule> {
        check_coaction(&left_over, &labels, &left, "left")?;
        check_coaction(&right_over, &labels, &right, "right")?;
        Ok(Bicomodule {
            left_over,
            right_over,
            labels,
            left,
            right,
        })
    }

    pub fn left_over(&self) -> &Arc<Coalgebra> {
        &self.left_over
    }

    pub fn right_over(&self) -> &Arc<Coalgebra> {
        &self.right_over
    }

    pub fn dim(&self) -> usize {
        self.labels.len()
    }

    pub fn field(&self) -> Field {
        self.left.field()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn left_coaction(&self) -> &Matrix {
        &self.left
    }

    pub fn right_coaction(&self) -> &Matrix {
        &self.right
    }

    pub fn left_comodule(&self) -> LeftComodule {
        LeftComodule {
            over: self.left_over.clone(),
            labels: self.labels.clone(),
            coaction: self.left.clone(),
        }
    }

    pub fn right_comodule(&self) -> RightComodule {
        RightComodule {
            over: self.right_over.clone(),
            labels: self.labels.clone(),
            coaction: self.right.clone(),
        }
    }

    /// Both comodule axiom sets plus `(I⊗ρ)λ = (λ⊗I)ρ`.
    pub fn validate(&self) -> ValidationReport {
        let mut report = self.left_comodule().validate();
        report.merge(self.right_comodule().validate());
        let (c, m, d) = (self.left_over.dim(), self.dim(), self.right_over.dim());
        let lhs = Matrix::kron_matmul(&self.left_over.identity_matrix(), &self.right, &self.left);
        let rhs = Matrix::kron_matmul(&self.left, &self.right_over.identity_matrix(), &self.right);
        report.compare(
            Law::BicomoduleCompatibility,
            &lhs.expect("shapes fixed"),
            &rhs.expect("shapes fixed"),
            |r, a| {
                let mut cell = unflatten(r, &[c, m, d]);
                cell.push(a);
                cell
            },
        );
        report
    }

    /// Corestricts the left coaction along `left` and the right one along `right`.
    pub fn corestrict(
        &self,
        left: &CoalgebraMorphism,
        right: &CoalgebraMorphism,
    ) -> Result<Bicomodule> {
        let l = self.left_comodule().corestrict(left)?;
        let r = self.right_comodule().corestrict(right)?;
        Bicomodule::new(l.over, r.over, self.labels.clone(), l.coaction, r.coaction)
    }

    /// Corestricts both sides along the same map.
    pub fn corestrict_both(&self, phi: &CoalgebraMorphism) -> Result<Bicomodule> {
        self.corestrict(phi, phi)
    }
}

/// `C` as a right, left and two-sided comodule over itself, all via `Δ`.
pub fn regular_comodules(c: &Arc<Coalgebra>) -> (RightComodule, LeftComodule, Bicomodule) {
    let labels = c.labels().to_vec();
    let right = RightComodule {
        over: c.clone(),
        labels: labels.clone(),
        coaction: c.delta().clone(),
    };
    let left = LeftComodule {
        over: c.clone(),
        labels: labels.clone(),
        coaction: c.delta().clone(),
    };
    let bi = Bicomodule {
        left_over: c.clone(),
        right_over: c.clone(),
        labels,
        left: c.delta().clone(),
        right: c.delta().clone(),
    };
    (right, left, bi)
}

/// Coordinates of `w ∈ V⊗W` with respect to `S⊗W`, where `S ⊆ V` is given in
/// canonical form. Output indexed by `pair_index(s, j, dim W)`.
pub(crate) fn coords_left_factor(w: &[Scalar], sub: &Subspace, right_dim: usize) -> Option<Vec<Scalar>> {
    let v_dim = sub.ambient_dim();
    let mut out = vec![sub.field().zero(); sub.dim() * right_dim];
    for j in 0..right_dim {
        let slice: Vec<Scalar> = (0..v_dim).map(|a| w[pair_index(a, j, right_dim)].clone()).collect();
        for (s, c) in sub.coordinates(&slice)?.into_iter().enumerate() {
            out[pair_index(s, j, right_dim)] = c;
        }
    }
    Some(out)
}

/// Coordinates of `w ∈ V⊗W` with respect to `V⊗S`, `S ⊆ W`. Output indexed
/// by `pair_index(i, s, dim S)`.
pub(crate) fn coords_right_factor(w: &[Scalar], left_dim: usize, sub: &Subspace) -> Option<Vec<Scalar>> {
    let w_dim = sub.ambient_dim();
    let mut out = Vec::with_capacity(left_dim * sub.dim());
    for i in 0..left_dim {
        out.extend(sub.coordinates(&w[i * w_dim..(i + 1) * w_dim])?);
    }
    Some(out)
}

/// `Ker φ` as a `(D, D)`-bicomodule, with its inclusion into `C`.
#[derive(Clone, Debug)]
pub struct KernelBicomodule {
    pub bicomodule: Bicomodule,
    /// `dim C x dim Ker φ`, columns are the canonical kernel basis.
    pub inclusion: Matrix,
    pub kernel: Subspace,
}

/// Puts a `(D, D)`-bicomodule structure on `Ker φ` using `(φ⊗I)Δ` on the
/// left and `(I⊗φ)Δ` on the right, both re-expressed in the kernel basis.
/// The images are certified to land in `D⊗Ker φ` and `Ker φ⊗D`.
pub fn kernel_bicomodule(phi: &CoalgebraMorphism) -> Result<KernelBicomodule> {
    let c = phi.source();
    let d = phi.target();
    let field = phi.field();
    let kernel = phi.kernel();
    let r = kernel.dim();
    let id_c = c.identity_matrix();
    let left_map = Matrix::kron_matmul(phi.matrix(), &id_c, c.delta())?;
    let right_map = Matrix::kron_matmul(&id_c, phi.matrix(), c.delta())?;
    let mut left_cols = Vec::with_capacity(r);
    let mut right_cols = Vec::with_capacity(r);
    for (s, x) in kernel.basis_vectors().enumerate() {
        let l = left_map.apply(x)?;
        left_cols.push(coords_right_factor(&l, d.dim(), &kernel).ok_or_else(|| {
            Error::InternalConsistency(format!("(φ⊗I)Δ of kernel vector {s} leaves D⊗Ker φ"))
        })?);
        let rr = right_map.apply(x)?;
        right_cols.push(coords_left_factor(&rr, &kernel, d.dim()).ok_or_else(|| {
            Error::InternalConsistency(format!("(I⊗φ)Δ of kernel vector {s} leaves Ker φ⊗D"))
        })?);
    }
    let labels = kernel
        .basis_vectors()
        .enumerate()
        .map(|(s, v)| unit_label(c.labels(), v).unwrap_or_else(|| format!("k{s}")))
        .collect();
    let bicomodule = Bicomodule::new(
        d.clone(),
        d.clone(),
        labels,
        Matrix::from_columns(field, d.dim() * r, &left_cols)?,
        Matrix::from_columns(field, r * d.dim(), &right_cols)?,
    )?;
    Ok(KernelBicomodule {
        bicomodule,
        inclusion: kernel.inclusion(),
        kernel,
    })
}

/// The label of a standard basis vector, if `v` is one.
fn unit_label(labels: &[String], v: &[Scalar]) -> Option<String> {
    let mut nz = v.iter().enumerate().filter(|(_, s)| !s.is_zero());
    match (nz.next(), nz.next()) {
        (Some((i, s)), None) if s.is_one() => Some(labels[i].clone()),
        _ => None,
    }
}
