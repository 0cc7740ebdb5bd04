use std::fmt;

use crate::linalg::{Matrix, Scalar};

/// The axiom a [`Violation`] refers to.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Law {
    /// `(Δ⊗I)Δ = (I⊗Δ)Δ`; cell `[a, b, c, k]`.
    Coassociativity,
    /// `(ε⊗I)Δ = I`; cell `[k, j]`.
    LeftCounit,
    /// `(I⊗ε)Δ = I`; cell `[k, i]`.
    RightCounit,
    /// `(F⊗F)Δ_C = Δ_D F`; cell `[i, j, k]`.
    Comultiplicativity,
    /// `ε_D F = ε_C`; cell `[k]`.
    CounitPreservation,
    /// `(ρ⊗I)ρ = (I⊗Δ)ρ` (right) or `(I⊗λ)λ = (Δ⊗I)λ` (left); cell is the
    /// output triple followed by the input index.
    CoactionCoassociativity,
    /// `(I⊗ε)ρ = I` or `(ε⊗I)λ = I`; cell `[input, output]`.
    CoactionCounit,
    /// `(I⊗ρ)λ = (λ⊗I)ρ`; cell `[c, b, d, a]`.
    BicomoduleCompatibility,
    /// `m(m⊗I) = m(I⊗m)`; cell `[k, i, j, l]`.
    Associativity,
    /// `m(u⊗I) = I = m(I⊗u)`; cell `[k, j]`.
    Unit,
    /// `f m_A = m_B (f⊗f)`; cell `[k, i, j]`.
    Multiplicativity,
    /// `f u_A = u_B`; cell `[k]`.
    UnitPreservation,
}

impl fmt::Display for Law {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Law::Coassociativity => "coassociativity",
            Law::LeftCounit => "left counit",
            Law::RightCounit => "right counit",
            Law::Comultiplicativity => "comultiplicativity",
            Law::CounitPreservation => "counit preservation",
            Law::CoactionCoassociativity => "coaction coassociativity",
            Law::CoactionCounit => "coaction counit",
            Law::BicomoduleCompatibility => "bicomodule compatibility",
            Law::Associativity => "associativity",
            Law::Unit => "unit",
            Law::Multiplicativity => "multiplicativity",
            Law::UnitPreservation => "unit preservation",
        };
        f.write_str(s)
    }
}

/// One failed cell of an axiom check: the two sides of the identity
/// disagree at `cell`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Violation {
    pub law: Law,
    pub cell: Vec<usize>,
    pub lhs: Scalar,
    pub rhs: Scalar,
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cell: Vec<String> = self.cell.iter().map(ToString::to_string).collect();
        write!(
            f,
            "{} violated at ({}): {} != {}",
            self.law,
            cell.join(", "),
            self.lhs,
            self.rhs
        )
    }
}

/// Every violated axiom cell. Empty means valid.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ValidationReport {
    pub violations: Vec<Violation>,
}

impl ValidationReport {
    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn merge(&mut self, other: ValidationReport) {
        self.violations.extend(other.violations);
    }

    pub fn count(&self, law: Law) -> usize {
        self.violations.iter().filter(|v| v.law == law).count()
    }

    /// Compares two equally shaped matrices cell by cell; `decode` turns a
    /// `(row, col)` position into the law's cell coordinates.
    pub(crate) fn compare(
        &mut self,
        law: Law,
        lhs: &Matrix,
        rhs: &Matrix,
        decode: impl Fn(usize, usize) -> Vec<usize>,
    ) {
        debug_assert_eq!(lhs.shape(), rhs.shape());
        for r in 0..lhs.rows() {
            for c in 0..lhs.cols() {
                let (a, b) = (lhs.get(r, c), rhs.get(r, c));
                if a != b {
                    self.violations.push(Violation {
                        law,
                        cell: decode(r, c),
                        lhs: a.clone(),
                        rhs: b.clone(),
                    });
                }
            }
        }
    }
}

impl fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_valid() {
            return write!(f, "valid");
        }
        for v in &self.violations {
            writeln!(f, "{v}")?;
        }
        Ok(())
    }
}

/// Splits a flattened index over a product of dimensions into its digits.
pub(crate) fn unflatten(mut idx: usize, dims: &[usize]) -> Vec<usize> {
    let mut out = vec![0; dims.len()];
    for (slot, &d) in out.iter_mut().zip(dims).rev() {
        *slot = idx % d;
        idx /= d;
    }
    out
}
