//! Cotensor products `M □_D N` as kernels inside `M⊗N`, the induced
//! `(C, C)`-bicomodule on `C □_D C`, and the unit `η_M` and map `ν_M` of the
//! corestriction / coinduction adjunction.

use std::sync::Arc;

use crate::coalgebra::{
    coords_left_factor, coords_right_factor, default_labels, format_tensor, regular_comodules,
    Bicomodule, Coalgebra, CoalgebraMorphism, LeftComodule, RightComodule,
};
use crate::error::{Error, Result};
use crate::linalg::{kernel_basis, Matrix, Scalar, Subspace};

/// `M □_D N ⊆ M⊗N`, flattened by `pair_index(a, b, dim N)`.
#[derive(Clone, Debug)]
pub struct CotensorSpace {
    left: RightComodule,
    right: LeftComodule,
    subspace: Subspace,
    bicomodule: Option<Bicomodule>,
}

impl CotensorSpace {
    pub fn left_factor(&self) -> &RightComodule {
        &self.left
    }

    pub fn right_factor(&self) -> &LeftComodule {
        &self.right
    }

    pub fn subspace(&self) -> &Subspace {
        &self.subspace
    }

    pub fn dim(&self) -> usize {
        self.subspace.dim()
    }

    pub fn ambient_dim(&self) -> usize {
        self.subspace.ambient_dim()
    }

    /// The induced bicomodule, present for [`self_cotensor_bicomodule`].
    pub fn bicomodule(&self) -> Option<&Bicomodule> {
        self.bicomodule.as_ref()
    }

    /// `ρ_M⊗I − I⊗λ_N : M⊗N -> M⊗D⊗N`.
    pub fn defining_map(&self) -> Result<Matrix> {
        defining_map(&self.left, &self.right)
    }

    /// Re-checks that every basis vector satisfies the defining relation.
    pub fn certify(&self) -> Result<bool> {
        let a = self.defining_map()?;
        for v in self.subspace.basis_vectors() {
            if !a.apply(v)?.iter().all(Scalar::is_zero) {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Basis vectors written as `Σ c · m⊗n` with basis labels.
    pub fn format_basis(&self) -> Vec<String> {
        self.subspace
            .basis_vectors()
            .map(|v| self.format_vector(v))
            .collect()
    }

    pub fn format_vector(&self, v: &[Scalar]) -> String {
        format_tensor(self.left.labels(), self.right.labels(), v)
    }

    /// Expands cotensor coordinates into a vector of `M⊗N`.
    pub fn expand(&self, coords: &[Scalar]) -> Result<Vec<Scalar>> {
        self.subspace.inclusion().apply(coords)
    }
}

fn defining_map(m: &RightComodule, n: &LeftComodule) -> Result<Matrix> {
    let f = m.field();
    let lhs = m.coaction().kron(&Matrix::identity(f, n.dim()))?;
    let rhs = Matrix::identity(f, m.dim()).kron(n.coaction())?;
    lhs.sub(&rhs)
}

/// `M □_D N` for a right and a left comodule over the same coalgebra.
pub fn cotensor(m: &RightComodule, n: &LeftComodule) -> Result<CotensorSpace> {
    if **m.over() != **n.over() {
        return Err(Error::CoalgebraMismatch(format!(
            "cotensor of comodules over {} and {}",
            m.over().name(),
            n.over().name()
        )));
    }
    let subspace = kernel_basis(&defining_map(m, n)?);
    Ok(CotensorSpace {
        left: m.clone(),
        right: n.clone(),
        subspace,
        bicomodule: None,
    })
}

/// `f □ g` restricted to `source`, in the canonical bases of `source` and
/// `target`. `f` and `g` must be comodule maps into the target's factors.
pub fn cotensor_map(
    f: &Matrix,
    g: &Matrix,
    source: &CotensorSpace,
    target: &CotensorSpace,
) -> Result<Matrix> {
    if !source.left.is_map_to(&target.left, f)? {
        return Err(Error::NotAComoduleMap("left factor map does not intertwine coactions".into()));
    }
    if !source.right.is_map_to(&target.right, g)? {
        return Err(Error::NotAComoduleMap("right factor map does not intertwine coactions".into()));
    }
    let fg = f.kron(g)?;
    let mut cols = Vec::with_capacity(source.dim());
    for (s, v) in source.subspace.basis_vectors().enumerate() {
        let image = fg.apply(v)?;
        cols.push(target.subspace.coordinates(&image).ok_or_else(|| {
            Error::InternalConsistency(format!("image of cotensor basis vector {s} escapes the target"))
        })?);
    }
    Matrix::from_columns(f.field(), target.dim(), &cols)
}

/// `C □_D C` for `φ: C -> D` (both factors corestricted from the regular
/// comodule), together with its `(C, C)`-bicomodule structure
/// `ψˡ = Δ⊗I` and `ψʳ = I⊗Δ` solved in the cotensor basis.
pub fn self_cotensor_bicomodule(phi: &CoalgebraMorphism) -> Result<CotensorSpace> {
    let c = phi.source();
    let (right, left, _) = regular_comodules(c);
    let mut space = cotensor(&right.corestrict(phi)?, &left.corestrict(phi)?)?;
    let n = c.dim();
    let id = c.identity_matrix();
    let psi_l = c.delta().kron(&id)?;
    let psi_r = id.kron(c.delta())?;
    let x = &space.subspace;
    let mut left_cols = Vec::with_capacity(x.dim());
    let mut right_cols = Vec::with_capacity(x.dim());
    for (s, v) in x.basis_vectors().enumerate() {
        left_cols.push(coords_right_factor(&psi_l.apply(v)?, n, x).ok_or_else(|| {
            Error::InternalConsistency(format!("ψˡ of cotensor basis vector {s} leaves C⊗(C□C)"))
        })?);
        right_cols.push(coords_left_factor(&psi_r.apply(v)?, x, n).ok_or_else(|| {
            Error::InternalConsistency(format!("ψʳ of cotensor basis vector {s} leaves (C□C)⊗C"))
        })?);
    }
    let field = phi.field();
    let bi = Bicomodule::new(
        c.clone(),
        c.clone(),
        default_labels("x", x.dim()),
        Matrix::from_columns(field, n * x.dim(), &left_cols)?,
        Matrix::from_columns(field, x.dim() * n, &right_cols)?,
    )?;
    space.bicomodule = Some(bi);
    Ok(space)
}

/// The unit `η_M = ρ_M : M -> M □_D C` and `ν_M : M □_D C -> M`,
/// `ν_M(Σ m⊗c) = Σ m ε(c)`, in the canonical cotensor basis.
#[derive(Clone, Debug)]
pub struct AdjunctionMaps {
    pub cotensor: CotensorSpace,
    /// `dim(M □_D C) x dim M`
    pub eta: Matrix,
    /// `dim M x dim(M □_D C)`
    pub nu: Matrix,
}

impl AdjunctionMaps {
    /// `ν_M ∘ η_M`, the identity for every `M` by the counit law.
    pub fn nu_after_eta(&self) -> Result<Matrix> {
        self.nu.matmul(&self.eta)
    }

    /// `η_M ∘ ν_M` on the cotensor.
    pub fn eta_after_nu(&self) -> Result<Matrix> {
        self.eta.matmul(&self.nu)
    }

    pub fn eta_is_bijective(&self) -> bool {
        self.eta.rows() == self.eta.cols() && self.eta.rank() == self.eta.cols()
    }

    /// `M □_D C` as a right `C`-comodule via `I⊗Δ`.
    pub fn cotensor_comodule(&self, c: &Arc<Coalgebra>) -> Result<RightComodule> {
        let x = &self.cotensor.subspace;
        let m = self.cotensor.left.dim();
        let map = Matrix::identity(c.field(), m).kron(c.delta())?;
        let mut cols = Vec::with_capacity(x.dim());
        for (s, v) in x.basis_vectors().enumerate() {
            cols.push(coords_left_factor(&map.apply(v)?, x, c.dim()).ok_or_else(|| {
                Error::InternalConsistency(format!("(I⊗Δ) of cotensor vector {s} leaves (M□C)⊗C"))
            })?);
        }
        RightComodule::new(
            c.clone(),
            default_labels("x", x.dim()),
            Matrix::from_columns(c.field(), x.dim() * c.dim(), &cols)?,
        )
    }

    /// Whether `ν_M` is a map of right `C`-comodules.
    pub fn nu_is_comodule_map(&self, m: &RightComodule) -> Result<bool> {
        self.cotensor_comodule(m.over())?.is_map_to(m, &self.nu)
    }
}

/// Computes `M □_D C` for `M` corestricted along `φ`, with `η_M` (certified
/// to land in the cotensor) and `ν_M`.
pub fn adjunction_maps(m: &RightComodule, phi: &CoalgebraMorphism) -> Result<AdjunctionMaps> {
    let c = phi.source();
    let (_, c_left, _) = regular_comodules(c);
    let cotensor = cotensor(&m.corestrict(phi)?, &c_left.corestrict(phi)?)?;
    let x = &cotensor.subspace;
    let rho = m.coaction();
    let mut cols = Vec::with_capacity(m.dim());
    for a in 0..m.dim() {
        let image = rho.column(a);
        cols.push(x.coordinates(&image).ok_or_else(|| {
            Error::InternalConsistency(format!("η_M(m_{a}) is not in M □_D C"))
        })?);
    }
    let eta = Matrix::from_columns(phi.field(), x.dim(), &cols)?;
    let nu = Matrix::identity(phi.field(), m.dim())
        .kron(c.counit())?
        .matmul(&x.inclusion())?;
    Ok(AdjunctionMaps { cotensor, eta, nu })
}

pub fn unit_map(m: &RightComodule, phi: &CoalgebraMorphism) -> Result<Matrix> {
    Ok(adjunction_maps(m, phi)?.eta)
}

pub fn nu_map(m: &RightComodule, phi: &CoalgebraMorphism) -> Result<Matrix> {
    Ok(adjunction_maps(m, phi)?.nu)
}

/// `C □_D Ker φ □_D C`, the `(C, C)`-bicomodule coinduced from the
/// `(D, D)`-bicomodule `Ker φ`. It vanishes exactly when `C □_D Ker φ` does.
pub fn kernel_coinduced_bicomodule(phi: &CoalgebraMorphism) -> Result<Bicomodule> {
    let c = phi.source();
    let field = phi.field();
    let (n, d) = (c.dim(), phi.target().dim());
    let zero = || {
        Bicomodule::new(c.clone(), c.clone(), vec![], Matrix::zeros(field, 0, 0), Matrix::zeros(field, 0, 0))
    };
    let kernel = crate::coalgebra::kernel_bicomodule(phi)?.bicomodule;
    let k = kernel.dim();
    if k == 0 {
        return zero();
    }
    let (c_right, c_left, _) = regular_comodules(c);
    let (c_right, c_left) = (c_right.corestrict(phi)?, c_left.corestrict(phi)?);

    // X = C □_D Ker φ inside C⊗K: left C via Δ⊗I, right D via I⊗ρ_K
    let x = cotensor(&c_right, &kernel.left_comodule())?;
    if x.dim() == 0 {
        return zero();
    }
    let xs = &x.subspace;
    let right_map = Matrix::identity(field, n).kron(kernel.right_coaction())?;
    let left_map = c.delta().kron(&Matrix::identity(field, k))?;
    let mut x_right = Vec::with_capacity(xs.dim());
    let mut x_left = Vec::with_capacity(xs.dim());
    for v in xs.basis_vectors() {
        x_right.push(coords_left_factor(&right_map.apply(v)?, xs, d).ok_or_else(|| {
            Error::InternalConsistency("right D-coaction leaves C □_D Ker φ".into())
        })?);
        x_left.push(coords_right_factor(&left_map.apply(v)?, n, xs).ok_or_else(|| {
            Error::InternalConsistency("left C-coaction leaves C □_D Ker φ".into())
        })?);
    }
    let xd = xs.dim();
    let x_as_right = RightComodule::new(
        phi.target().clone(),
        default_labels("y", xd),
        Matrix::from_columns(field, xd * d, &x_right)?,
    )?;
    let x_left = Matrix::from_columns(field, n * xd, &x_left)?;

    // Y = X □_D C inside X⊗C: left C via λ_X⊗I, right C via I⊗Δ
    let y = cotensor(&x_as_right, &c_left)?;
    let ys = &y.subspace;
    let left_map = x_left.kron(&c.identity_matrix())?;
    let right_map = Matrix::identity(field, xd).kron(c.delta())?;
    let mut left_cols = Vec::with_capacity(ys.dim());
    let mut right_cols = Vec::with_capacity(ys.dim());
    for v in ys.basis_vectors() {
        left_cols.push(coords_right_factor(&left_map.apply(v)?, n, ys).ok_or_else(|| {
            Error::InternalConsistency("left C-coaction leaves C □_D Ker φ □_D C".into())
        })?);
        right_cols.push(coords_left_factor(&right_map.apply(v)?, ys, n).ok_or_else(|| {
            Error::InternalConsistency("right C-coaction leaves C □_D Ker φ □_D C".into())
        })?);
    }
    Bicomodule::new(
        c.clone(),
        c.clone(),
        default_labels("z", ys.dim()),
        Matrix::from_columns(field, n * ys.dim(), &left_cols)?,
        Matrix::from_columns(field, ys.dim() * n, &right_cols)?,
    )
}
