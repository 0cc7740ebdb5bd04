use std::sync::Arc;

use crate::coalgebra::report::{unflatten, Law, ValidationReport};
use crate::coalgebra::Coalgebra;
use crate::error::{Error, Result};
use crate::linalg::{kernel_basis, Field, Matrix, Subspace};

/// A linear map `φ: C -> D` given by its `dim D x dim C` matrix, intended to
/// be a coalgebra map. Construction only checks shapes; use
/// [`CoalgebraMorphism::validate`] for the morphism laws.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CoalgebraMorphism {
    source: Arc<Coalgebra>,
    target: Arc<Coalgebra>,
    matrix: Matrix,
}

impl CoalgebraMorphism {
    pub fn new(
        source: Arc<Coalgebra>,
        target: Arc<Coalgebra>,
        matrix: Matrix,
    ) -> Result<CoalgebraMorphism> {
        if source.field() != target.field() || matrix.field() != source.field() {
            return Err(Error::FieldMismatch {
                expected: source.field(),
                found: if source.field() != target.field() {
                    target.field()
                } else {
                    matrix.field()
                },
            });
        }
        if matrix.shape() != (target.dim(), source.dim()) {
            return Err(Error::Shape(format!(
                "morphism {} -> {} needs a {}x{} matrix, got {}x{}",
                source.name(),
                target.name(),
                target.dim(),
                source.dim(),
                matrix.rows(),
                matrix.cols()
            )));
        }
        Ok(CoalgebraMorphism {
            source,
            target,
            matrix,
        })
    }

    pub fn identity(c: Arc<Coalgebra>) -> CoalgebraMorphism {
        let matrix = c.identity_matrix();
        CoalgebraMorphism {
            source: c.clone(),
            target: c,
            matrix,
        }
    }

    pub fn source(&self) -> &Arc<Coalgebra> {
        &self.source
    }

    pub fn target(&self) -> &Arc<Coalgebra> {
        &self.target
    }

    pub fn matrix(&self) -> &Matrix {
        &self.matrix
    }

    pub fn field(&self) -> Field {
        self.matrix.field()
    }

    /// Checks `(F⊗F)Δ_C = Δ_D F` and `ε_D F = ε_C`.
    pub fn validate(&self) -> ValidationReport {
        let f = &self.matrix;
        let d = self.target.dim();
        let mut report = ValidationReport::default();
        let lhs = Matrix::kron_matmul(f, f, self.source.delta()).expect("shapes fixed at construction");
        let rhs = self.target.delta().matmul(f).expect("shapes fixed at construction");
        report.compare(Law::Comultiplicativity, &lhs, &rhs, |r, k| {
            let mut cell = unflatten(r, &[d, d]);
            cell.push(k);
            cell
        });
        let counit = self.target.counit().matmul(f).expect("shapes fixed at construction");
        report.compare(Law::CounitPreservation, &counit, self.source.counit(), |_, k| vec![k]);
        report
    }

    /// `self ∘ first`.
    pub fn compose_after(&self, first: &CoalgebraMorphism) -> Result<CoalgebraMorphism> {
        if *first.target != *self.source {
            return Err(Error::CoalgebraMismatch(format!(
                "cannot compose {} -> {} after {} -> {}",
                self.source.name(),
                self.target.name(),
                first.source.name(),
                first.target.name()
            )));
        }
        CoalgebraMorphism::new(
            first.source.clone(),
            self.target.clone(),
            self.matrix.matmul(&first.matrix)?,
        )
    }

    pub fn kernel(&self) -> Subspace {
        kernel_basis(&self.matrix)
    }

    pub fn is_injective(&self) -> bool {
        self.kernel().is_zero()
    }

    /// Reduces source, target and matrix into another field.
    pub fn to_field(&self, field: Field) -> Result<CoalgebraMorphism> {
        CoalgebraMorphism::new(
            Arc::new(self.source.to_field(field)?),
            Arc::new(self.target.to_field(field)?),
            self.matrix.to_field(field)?,
        )
    }

    pub fn is_integral(&self) -> bool {
        self.source.is_integral() && self.target.is_integral() && self.matrix.is_integral()
    }
}
