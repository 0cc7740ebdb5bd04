use thiserror::Error;

use crate::linalg::Field;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("field mismatch: expected {expected}, found {found}")]
    FieldMismatch { expected: Field, found: Field },

    #[error("dimension mismatch in {context}: expected {expected}, found {found}")]
    Dimension {
        context: &'static str,
        expected: usize,
        found: usize,
    },

    #[error("shape error: {0}")]
    Shape(String),

    #[error("comodule and morphism live over different coalgebras: {0}")]
    CoalgebraMismatch(String),

    #[error("not a comodule map: {0}")]
    NotAComoduleMap(String),

    #[error("not a coideal: {0}")]
    NotACoideal(String),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("value not representable in target field: {0}")]
    NotRepresentable(String),

    #[error("parse error: {0}")]
    Parse(String),

    /// A certified identity failed. Valid inputs never produce this.
    #[error("internal consistency failure: {0}")]
    InternalConsistency(String),

    /// The equivalent monomorphism criteria disagreed.
    #[error("criteria disagree (theorem violation): {0}")]
    TheoremViolation(String),
}
