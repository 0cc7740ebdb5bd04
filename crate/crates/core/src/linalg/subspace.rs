use crate::error::{Error, Result};
use crate::linalg::field::{Field, Scalar};
use crate::linalg::matrix::Matrix;

/// A subspace of `k^n`, held in canonical form: the rows of `basis` are the
/// nonzero rows of a reduced row echelon matrix, so two subspaces are equal
/// exactly when their bases are identical.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Subspace {
    ambient_dim: usize,
    basis: Matrix,
    pivots: Vec<usize>,
}

impl Subspace {
    /// Span of the rows of `rows`, canonicalized.
    pub fn row_span(rows: &Matrix) -> Subspace {
        let (r, pivots) = rows.rref();
        Subspace {
            ambient_dim: rows.cols(),
            basis: r.truncate_rows(pivots.len()),
            pivots,
        }
    }

    pub fn span(field: Field, ambient_dim: usize, vectors: &[Vec<Scalar>]) -> Result<Subspace> {
        if vectors.is_empty() {
            return Ok(Subspace::zero(field, ambient_dim));
        }
        if let Some(v) = vectors.iter().find(|v| v.len() != ambient_dim) {
            return Err(Error::Dimension {
                context: "spanning vector",
                expected: ambient_dim,
                found: v.len(),
            });
        }
        Ok(Subspace::row_span(&Matrix::from_rows(field, vectors.to_vec())?))
    }

    pub fn zero(field: Field, ambient_dim: usize) -> Subspace {
        Subspace {
            ambient_dim,
            basis: Matrix::zeros(field, 0, ambient_dim),
            pivots: Vec::new(),
        }
    }

    pub fn full(field: Field, ambient_dim: usize) -> Subspace {
        Subspace {
            ambient_dim,
            basis: Matrix::identity(field, ambient_dim),
            pivots: (0..ambient_dim).collect(),
        }
    }

    pub fn field(&self) -> Field {
        self.basis.field()
    }

    pub fn dim(&self) -> usize {
        self.pivots.len()
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn is_zero(&self) -> bool {
        self.pivots.is_empty()
    }

    /// Canonical basis, one vector per row.
    pub fn basis(&self) -> &Matrix {
        &self.basis
    }

    pub fn basis_vector(&self, i: usize) -> &[Scalar] {
        self.basis.row(i)
    }

    pub fn basis_vectors(&self) -> impl Iterator<Item = &[Scalar]> {
        (0..self.dim()).map(|i| self.basis.row(i))
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    /// `ambient_dim x dim` matrix whose columns are the basis vectors.
    pub fn inclusion(&self) -> Matrix {
        self.basis.transpose()
    }

    /// Coordinates of `v` in the canonical basis, or `None` if `v` is not in
    /// the subspace. With a reduced echelon basis the coordinates are just the
    /// entries of `v` at the pivot columns; membership is then confirmed by
    /// reconstruction.
    pub fn coordinates(&self, v: &[Scalar]) -> Option<Vec<Scalar>> {
        if v.len() != self.ambient_dim {
            return None;
        }
        let coords: Vec<Scalar> = self.pivots.iter().map(|&p| v[p].clone()).collect();
        let mut residual = v.to_vec();
        for (i, c) in coords.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            for (r, b) in residual.iter_mut().zip(self.basis.row(i)) {
                if !b.is_zero() {
                    *r = &*r - &(c * b);
                }
            }
        }
        residual.iter().all(Scalar::is_zero).then_some(coords)
    }

    pub fn contains(&self, v: &[Scalar]) -> bool {
        self.coordinates(v).is_some()
    }

    fn check_compatible(&self, other: &Subspace) -> Result<()> {
        if self.field() != other.field() {
            return Err(Error::FieldMismatch {
                expected: self.field(),
                found: other.field(),
            });
        }
        if self.ambient_dim != other.ambient_dim {
            return Err(Error::Dimension {
                context: "subspace ambient dimension",
                expected: self.ambient_dim,
                found: other.ambient_dim,
            });
        }
        Ok(())
    }

    /// `self ⊆ other`.
    pub fn is_subspace_of(&self, other: &Subspace) -> Result<bool> {
        self.check_compatible(other)?;
        Ok(self.basis_vectors().all(|v| other.contains(v)))
    }

    pub fn sum(&self, other: &Subspace) -> Result<Subspace> {
        self.check_compatible(other)?;
        Ok(Subspace::row_span(&self.basis.vstack(&other.basis)?))
    }

    /// Reduces the basis into another field; the result is re-canonicalized
    /// and may have smaller dimension.
    pub fn to_field(&self, field: Field) -> Result<Subspace> {
        Ok(Subspace::row_span(&self.basis.to_field(field)?))
    }
}

/// Null space `{x : A x = 0}` in canonical form.
pub fn kernel_basis(a: &Matrix) -> Subspace {
    let field = a.field();
    let n = a.cols();
    let (r, pivots) = a.rref();
    let mut is_pivot = vec![false; n];
    for &p in &pivots {
        is_pivot[p] = true;
    }
    let vectors: Vec<Vec<Scalar>> = (0..n)
        .filter(|&f| !is_pivot[f])
        .map(|f| {
            let mut v = vec![field.zero(); n];
            v[f] = field.one();
            for (i, &p) in pivots.iter().enumerate() {
                v[p] = -r.get(i, f);
            }
            v
        })
        .collect();
    if vectors.is_empty() {
        return Subspace::zero(field, n);
    }
    Subspace::row_span(&Matrix::from_rows(field, vectors).expect("kernel vectors share a field"))
}

/// Column space of `a` as a subspace of `k^rows`.
pub fn image_basis(a: &Matrix) -> Subspace {
    Subspace::row_span(&a.transpose())
}

pub fn subspace_leq(u: &Subspace, v: &Subspace) -> Result<bool> {
    u.is_subspace_of(v)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    const Q: Field = Field::Rationals;

    fn q(v: i64) -> Scalar {
        Q.from_i64(v)
    }

    #[test]
    fn kernel_of_zero_map_is_everything() {
        let k = kernel_basis(&Matrix::zeros(Q, 2, 2));
        assert_eq!(k, Subspace::full(Q, 2));
    }

    #[test]
    fn kernel_of_identity_is_trivial() {
        let k = kernel_basis(&Matrix::identity(Q, 3));
        assert_eq!(k.dim(), 0);
        assert_eq!(k.ambient_dim(), 3);
    }

    #[test]
    fn kernel_of_sum_functional() {
        // x + y = 0 by hand: x = -y, free variable y, basis (1, -1) after scaling
        let k = kernel_basis(&Matrix::from_i64(Q, 1, 2, &[1, 1]).unwrap());
        assert_eq!(k.dim(), 1);
        assert_eq!(k.basis_vector(0), &[q(1), q(-1)]);
    }

    #[test]
    fn image_examples() {
        assert_eq!(image_basis(&Matrix::identity(Q, 3)), Subspace::full(Q, 3));
        assert!(image_basis(&Matrix::zeros(Q, 3, 2)).is_zero());
        let im = image_basis(&Matrix::from_i64(Q, 2, 2, &[1, 2, 2, 4]).unwrap());
        assert_eq!(im.dim(), 1);
        assert_eq!(im.basis_vector(0), &[q(1), q(2)]);
    }

    #[test]
    fn containment_examples() {
        let full = Subspace::full(Q, 2);
        let line = Subspace::span(Q, 2, &[vec![q(1), q(-1)]]).unwrap();
        assert!(subspace_leq(&Subspace::zero(Q, 2), &line).unwrap());
        assert!(!subspace_leq(&full, &line).unwrap());
        let ker = kernel_basis(&Matrix::from_i64(Q, 1, 2, &[1, 1]).unwrap());
        assert!(subspace_leq(&line, &ker).unwrap());
        assert!(subspace_leq(&Subspace::zero(Q, 3), &line).is_err());
    }

    #[test]
    fn coordinates_follow_pivots() {
        let s = Subspace::span(Q, 3, &[vec![q(2), q(0), q(4)], vec![q(0), q(3), q(3)]]).unwrap();
        let v = vec![q(5), q(7), q(17)];
        let c = s.coordinates(&v).unwrap();
        assert_eq!(c, vec![q(5), q(7)]);
        assert!(s.coordinates(&[q(1), q(0), q(0)]).is_none());
    }

    fn small_matrix() -> impl Strategy<Value = Matrix> {
        (1usize..5, 1usize..6).prop_flat_map(|(r, c)| {
            prop::collection::vec(-2i64..=2, r * c)
                .prop_map(move |v| Matrix::from_i64(Q, r, c, &v).unwrap())
        })
    }

    /// Two matrices of equal width; half the time the second is a row
    /// recombination of the first, so equal spans actually occur.
    fn same_width_pair() -> impl Strategy<Value = (Matrix, Matrix)> {
        (1usize..4, 1usize..5, 1usize..4).prop_flat_map(|(r1, c, r2)| {
            (
                prop::collection::vec(-2i64..=2, r1 * c),
                prop::collection::vec(-2i64..=2, r2 * c),
                prop::collection::vec(-1i64..=1, r1 * r1),
                any::<bool>(),
            )
                .prop_map(move |(x, y, mix, recombine)| {
                    let a = Matrix::from_i64(Q, r1, c, &x).unwrap();
                    let b = if recombine {
                        let mut m = Matrix::from_i64(Q, r1, r1, &mix).unwrap();
                        for i in 0..r1 {
                            m.set(i, i, q(1));
                            for j in 0..i {
                                m.set(i, j, q(0));
                            }
                        }
                        m.matmul(&a).unwrap()
                    } else {
                        Matrix::from_i64(Q, r2, c, &y).unwrap()
                    };
                    (a, b)
                })
        })
    }

    proptest! {
        #[test]
        fn rank_nullity(a in small_matrix()) {
            let k = kernel_basis(&a);
            let im = image_basis(&a);
            prop_assert_eq!(k.dim() + im.dim(), a.cols());
            for v in k.basis_vectors() {
                prop_assert!(a.apply(v).unwrap().iter().all(Scalar::is_zero));
            }
        }

        #[test]
        fn canonical_form_is_idempotent(a in small_matrix()) {
            let s = Subspace::row_span(&a);
            prop_assert_eq!(Subspace::row_span(s.basis()), s.clone());
        }

        #[test]
        fn mutual_containment_is_equality((a, b) in same_width_pair()) {
            let u = Subspace::row_span(&a);
            let v = Subspace::row_span(&b);
            let both = subspace_leq(&u, &v).unwrap() && subspace_leq(&v, &u).unwrap();
            prop_assert_eq!(both, u == v);
        }
    }
}
