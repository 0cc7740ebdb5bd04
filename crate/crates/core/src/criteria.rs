//! Decision procedures for monomorphisms of coalgebras.
//!
//! For a coalgebra map `φ: C -> D` the following are equivalent, and each is
//! implemented independently so they can police one another:
//!
//! * (3) `C □_D Ker φ = 0`;
//! * (4) `Δ_C : C -> C □_D C` is surjective, i.e. `dim C □_D C = dim C`;
//! * (5) the unit `η_M` is an isomorphism (checked per comodule `M`);
//! * (6) `H⁰(N, C) = H⁰(N, D)` (checked per bicomodule `N`);
//! * (7) `Σ ε(a)b = Σ a ε(b)` for every `Σ a⊗b ∈ C □_D C`.
//!
//! The aggregate verdict follows (7); (3) and (4) run as cross-checks.

use crate::coalgebra::{
    format_vector, kernel_bicomodule, regular_comodules, Bicomodule, CoalgebraMorphism,
    RightComodule,
};
use crate::cotensor::{adjunction_maps, cotensor, self_cotensor_bicomodule, CotensorSpace};
use crate::error::{Error, Result};
use crate::linalg::{Execution, Field, Matrix, Scalar, Subspace};
use crate::parallel;

/// An element of `C □_D C` on which `(ε⊗I)` and `(I⊗ε)` disagree.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Witness {
    /// Coordinates in the canonical cotensor basis.
    pub coordinates: Vec<Scalar>,
    /// The same element in `C⊗C`.
    pub tensor: Vec<Scalar>,
    /// `Σ c · a⊗b` with basis labels.
    pub expanded: String,
    /// `Σ ε(a)b`
    pub counit_left: String,
    /// `Σ a ε(b)`
    pub counit_right: String,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CotensorIdentity {
    pub holds: bool,
    pub witness: Option<Witness>,
    pub cotensor_dim: usize,
}

fn require_valid(phi: &CoalgebraMorphism) -> Result<()> {
    let report = phi.validate();
    if report.is_valid() {
        Ok(())
    } else {
        Err(Error::InvalidArgument(format!(
            "not a coalgebra map ({} violations): {}",
            report.violations.len(),
            report.violations[0]
        )))
    }
}

fn counit_sides(phi: &CoalgebraMorphism) -> Result<(Matrix, Matrix)> {
    let c = phi.source();
    let id = c.identity_matrix();
    Ok((c.counit().kron(&id)?, id.kron(c.counit())?))
}

fn identity_on(x: &CotensorSpace, phi: &CoalgebraMorphism) -> Result<CotensorIdentity> {
    let c = phi.source();
    let (left, right) = counit_sides(phi)?;
    for (s, v) in x.subspace().basis_vectors().enumerate() {
        let a = left.apply(v)?;
        let b = right.apply(v)?;
        if a != b {
            let mut coordinates = vec![phi.field().zero(); x.dim()];
            coordinates[s] = phi.field().one();
            return Ok(CotensorIdentity {
                holds: false,
                witness: Some(Witness {
                    coordinates,
                    tensor: v.to_vec(),
                    expanded: x.format_vector(v),
                    counit_left: format_vector(c.labels(), &a),
                    counit_right: format_vector(c.labels(), &b),
                }),
                cotensor_dim: x.dim(),
            });
        }
    }
    Ok(CotensorIdentity {
        holds: true,
        witness: None,
        cotensor_dim: x.dim(),
    })
}

fn self_cotensor(phi: &CoalgebraMorphism) -> Result<CotensorSpace> {
    let (right, left, _) = regular_comodules(phi.source());
    cotensor(&right.corestrict(phi)?, &left.corestrict(phi)?)
}

/// Criterion (7): `(ε⊗I) = (I⊗ε)` on `C □_D C`, with a witness on failure.
pub fn criterion_cotensor_identity(phi: &CoalgebraMorphism) -> Result<CotensorIdentity> {
    identity_on(&self_cotensor(phi)?, phi)
}

/// Criterion (4): `η_C = Δ_C` maps onto `C □_D C`.
pub fn criterion_delta_surjective(phi: &CoalgebraMorphism) -> Result<bool> {
    let (right, _, _) = regular_comodules(phi.source());
    let maps = adjunction_maps(&right, phi)?;
    Ok(maps.eta.rank() == maps.cotensor.dim())
}

/// `dim(C □_D Ker φ)`, with `C` a right `D`-comodule through `φ`.
pub fn kernel_cotensor_dim(phi: &CoalgebraMorphism) -> Result<usize> {
    let kernel = kernel_bicomodule(phi)?;
    let (right, _, _) = regular_comodules(phi.source());
    let space = cotensor(&right.corestrict(phi)?, &kernel.bicomodule.left_comodule())?;
    Ok(space.dim())
}

/// Criterion (3): `C □_D Ker φ = 0`.
pub fn criterion_kernel_cotensor(phi: &CoalgebraMorphism) -> Result<bool> {
    Ok(kernel_cotensor_dim(phi)? == 0)
}

/// `H⁰(N, C) ⊆ N*`, with functionals written in the dual basis of `N`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct H0Space {
    pub coalgebra: String,
    pub bicomodule_dim: usize,
    pub subspace: Subspace,
}

impl H0Space {
    pub fn dim(&self) -> usize {
        self.subspace.dim()
    }

    pub fn contains(&self, gamma: &[Scalar]) -> bool {
        self.subspace.contains(gamma)
    }
}

/// Linear conditions on `γ ∈ N*` expressing `n₍₋₁₎γ(n₍₀₎) = γ(n₍₀₎)n₍₁₎`:
/// one row per (coalgebra basis vector, `N` basis vector).
fn h0_system(n: &Bicomodule) -> Result<Matrix> {
    let m = n.dim();
    let c = n.left_over().dim();
    let (lam, rho) = (n.left_coaction(), n.right_coaction());
    let mut sys = Matrix::zeros(n.field(), c * m, m);
    for ci in 0..c {
        for b in 0..m {
            let row = ci * m + b;
            for t in 0..m {
                let v = lam.get(ci * m + t, b) - rho.get(t * c + ci, b);
                if !v.is_zero() {
                    sys.set(row, t, v);
                }
            }
        }
    }
    Ok(sys)
}

/// `H⁰(N, C)` for a `(C, C)`-bicomodule `N`.
pub fn h0(n: &Bicomodule) -> Result<H0Space> {
    if **n.left_over() != **n.right_over() {
        return Err(Error::CoalgebraMismatch(format!(
            "H⁰ needs a (C, C)-bicomodule, got ({}, {})",
            n.left_over().name(),
            n.right_over().name()
        )));
    }
    let subspace = if n.dim() == 0 {
        Subspace::zero(n.field(), 0)
    } else {
        crate::linalg::kernel_basis(&h0_system(n)?)
    };
    Ok(H0Space {
        coalgebra: n.left_over().name().to_string(),
        bicomodule_dim: n.dim(),
        subspace,
    })
}

/// `H⁰(N, C)` next to `H⁰(N, D)` (structures corestricted along `φ`).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct H0Comparison {
    pub over_source: H0Space,
    pub over_target: H0Space,
    pub equal: bool,
}

/// Criterion (6) for one bicomodule `N`. The inclusion
/// `H⁰(N, C) ⊆ H⁰(N, D)` always holds and is enforced.
pub fn criterion_h0_equal(phi: &CoalgebraMorphism, n: &Bicomodule) -> Result<H0Comparison> {
    let over_source = h0(n)?;
    let over_target = h0(&n.corestrict_both(phi)?)?;
    if !over_source.subspace.is_subspace_of(&over_target.subspace)? {
        return Err(Error::InternalConsistency(
            "H⁰(N, C) is not contained in H⁰(N, D)".into(),
        ));
    }
    let equal = over_source.subspace == over_target.subspace;
    Ok(H0Comparison {
        over_source,
        over_target,
        equal,
    })
}

/// `T(Σ a⊗b) = Σ ε(a)ε(b)` on `C □_D C`.
#[derive(Clone, Debug)]
pub struct TFunctional {
    /// `T` evaluated on the canonical cotensor basis.
    pub values: Vec<Scalar>,
    /// Always true.
    pub in_h0_target: bool,
    /// True exactly when `φ` is a monomorphism.
    pub in_h0_source: bool,
    pub cotensor: CotensorSpace,
}

pub fn t_functional(phi: &CoalgebraMorphism) -> Result<TFunctional> {
    let cotensor = self_cotensor_bicomodule(phi)?;
    let c = phi.source();
    let ee = c.counit().kron(c.counit())?;
    let values = cotensor
        .subspace()
        .basis_vectors()
        .map(|v| ee.apply(v).map(|r| r[0].clone()))
        .collect::<Result<Vec<_>>>()?;
    let bi = cotensor.bicomodule().expect("self cotensor carries a bicomodule");
    let over_source = h0(bi)?;
    let over_target = h0(&bi.corestrict_both(phi)?)?;
    let in_h0_target = over_target.contains(&values);
    if !in_h0_target {
        return Err(Error::InternalConsistency("T is not in H⁰(C □_D C, D)".into()));
    }
    Ok(TFunctional {
        in_h0_source: over_source.contains(&values),
        in_h0_target,
        values,
        cotensor,
    })
}

/// Criterion (5) for one comodule: `η_M` is bijective.
pub fn unit_iso_check(phi: &CoalgebraMorphism, m: &RightComodule) -> Result<bool> {
    Ok(adjunction_maps(m, phi)?.eta_is_bijective())
}

#[derive(Clone, Copy, Debug)]
pub struct CheckOptions {
    /// Also run criteria (3) and (4).
    pub cross_check: bool,
    /// Also compare `H⁰(C □_D C, C)` with `H⁰(C □_D C, D)`.
    pub h0: bool,
    pub exec: Execution,
}

impl Default for CheckOptions {
    fn default() -> Self {
        CheckOptions {
            cross_check: true,
            h0: true,
            exec: Execution::default(),
        }
    }
}

#[derive(Clone, Debug)]
pub struct MonoVerdict {
    pub source: String,
    pub target: String,
    pub source_dim: usize,
    pub kernel_dim: usize,
    pub injective: bool,
    pub cotensor_dim: usize,
    /// Criterion (7).
    pub cotensor_identity: CotensorIdentity,
    /// Criterion (4), when cross-checking.
    pub delta_surjective: Option<bool>,
    /// Criterion (3) as `dim C □_D Ker φ`, when cross-checking.
    pub kernel_cotensor_dim: Option<usize>,
    /// Criterion (6) for `N = C □_D C`.
    pub h0_self_cotensor: Option<H0Comparison>,
    pub is_mono: bool,
    /// Set when (3), (4) and (7) do not all agree.
    pub disagreement: bool,
}

impl MonoVerdict {
    pub fn kernel_cotensor(&self) -> Option<bool> {
        self.kernel_cotensor_dim.map(|d| d == 0)
    }
}

/// Runs the criteria and records whether they agree, without treating a
/// disagreement as an error.
pub fn evaluate(phi: &CoalgebraMorphism, opts: CheckOptions) -> Result<MonoVerdict> {
    require_valid(phi)?;
    let exec = opts.exec;
    let (primary, cross) = parallel::join(
        exec,
        || -> Result<_> {
            let x = self_cotensor(phi)?;
            let identity = identity_on(&x, phi)?;
            let kernel_dim = phi.kernel().dim();
            Ok((identity, kernel_dim))
        },
        || -> Result<_> {
            if !opts.cross_check {
                return Ok((None, None, None));
            }
            let (first, h0) = parallel::join(
                exec,
                || -> Result<_> { Ok((criterion_delta_surjective(phi)?, kernel_cotensor_dim(phi)?)) },
                || -> Result<_> {
                    if !opts.h0 {
                        return Ok(None);
                    }
                    let x = self_cotensor_bicomodule(phi)?;
                    Ok(Some(criterion_h0_equal(phi, x.bicomodule().expect("bicomodule"))?))
                },
            );
            let (surj, kdim) = first?;
            Ok((Some(surj), Some(kdim), h0?))
        },
    );
    let (identity, kernel_dim) = primary?;
    let (delta_surjective, kernel_cotensor_dim, mut h0_self_cotensor) = cross?;
    if h0_self_cotensor.is_none() && opts.h0 {
        let x = self_cotensor_bicomodule(phi)?;
        h0_self_cotensor = Some(criterion_h0_equal(phi, x.bicomodule().expect("bicomodule"))?);
    }
    let is_mono = identity.holds;
    let disagreement = delta_surjective.is_some_and(|s| s != is_mono)
        || kernel_cotensor_dim.is_some_and(|d| (d == 0) != is_mono);
    Ok(MonoVerdict {
        source: phi.source().name().to_string(),
        target: phi.target().name().to_string(),
        source_dim: phi.source().dim(),
        kernel_dim,
        injective: kernel_dim == 0,
        cotensor_dim: identity.cotensor_dim,
        cotensor_identity: identity,
        delta_surjective,
        kernel_cotensor_dim,
        h0_self_cotensor,
        is_mono,
        disagreement,
    })
}

/// Decides whether `φ` is a monomorphism. A disagreement between the
/// criteria is reported as [`Error::TheoremViolation`].
pub fn is_monomorphism(phi: &CoalgebraMorphism) -> Result<MonoVerdict> {
    is_monomorphism_with(phi, CheckOptions::default())
}

pub fn is_monomorphism_with(phi: &CoalgebraMorphism, opts: CheckOptions) -> Result<MonoVerdict> {
    let verdict = evaluate(phi, opts)?;
    if verdict.disagreement {
        return Err(Error::TheoremViolation(format!(
            "{} -> {}: (7) = {}, (4) = {:?}, dim C□Ker = {:?}",
            verdict.source,
            verdict.target,
            verdict.is_mono,
            verdict.delta_surjective,
            verdict.kernel_cotensor_dim
        )));
    }
    Ok(verdict)
}

/// The quantities that decide criteria (3), (4) and (7) in one field.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CriteriaSummary {
    pub kernel_dim: usize,
    pub cotensor_dim: usize,
    pub kernel_cotensor_dim: usize,
    pub cotensor_identity: bool,
    pub delta_surjective: bool,
    pub kernel_cotensor: bool,
}

impl CriteriaSummary {
    pub fn compute(phi: &CoalgebraMorphism) -> Result<CriteriaSummary> {
        let v = evaluate(
            phi,
            CheckOptions {
                cross_check: true,
                h0: false,
                exec: Execution::Sequential,
            },
        )?;
        let kernel_cotensor_dim = v.kernel_cotensor_dim.expect("cross-checked");
        Ok(CriteriaSummary {
            kernel_dim: v.kernel_dim,
            cotensor_dim: v.cotensor_dim,
            kernel_cotensor_dim,
            cotensor_identity: v.is_mono,
            delta_surjective: v.delta_surjective.expect("cross-checked"),
            kernel_cotensor: kernel_cotensor_dim == 0,
        })
    }

    fn verdicts(&self) -> (bool, bool, bool) {
        (self.cotensor_identity, self.delta_surjective, self.kernel_cotensor)
    }
}

/// Criteria evaluated over the rationals and after reduction modulo `p`.
#[derive(Clone, Debug)]
pub struct FieldComparison {
    pub prime: u64,
    pub integral: bool,
    pub rational: CriteriaSummary,
    /// `None` when some constant has a denominator divisible by `p`.
    pub modular: Option<CriteriaSummary>,
    /// Set when reduction is impossible or changes one of the dimensions the
    /// criteria depend on.
    pub characteristic_sensitive: bool,
    pub verdicts_agree: bool,
}

/// Evaluates a rational morphism in `Q` and in `F_p`.
pub fn compare_fields(phi: &CoalgebraMorphism, p: u64) -> Result<FieldComparison> {
    if phi.field() != Field::Rationals {
        return Err(Error::InvalidArgument("field comparison starts from a rational morphism".into()));
    }
    let fp = Field::prime(p)?;
    let rational = CriteriaSummary::compute(phi)?;
    let reduced = match phi.to_field(fp) {
        Ok(r) if r.validate().is_valid() => Some(r),
        Ok(_) | Err(Error::NotRepresentable(_)) => None,
        Err(e) => return Err(e),
    };
    let modular = reduced.as_ref().map(CriteriaSummary::compute).transpose()?;
    let characteristic_sensitive = match &modular {
        None => true,
        Some(m) => {
            m.kernel_dim != rational.kernel_dim
                || m.cotensor_dim != rational.cotensor_dim
                || m.kernel_cotensor_dim != rational.kernel_cotensor_dim
        }
    };
    let verdicts_agree = modular
        .as_ref()
        .is_some_and(|m| m.verdicts() == rational.verdicts());
    Ok(FieldComparison {
        prime: p,
        integral: phi.is_integral(),
        rational,
        modular,
        characteristic_sensitive,
        verdicts_agree,
    })
}
