use std::fmt;

use crate::error::{Error, Result};
use crate::linalg::elim::{self, Execution};
use crate::linalg::field::{Field, Scalar};

/// Flattened index of the pair `(i, j)` in a tensor product whose right
/// factor has dimension `n`. Zero-based, row-major.
#[inline]
pub fn pair_index(i: usize, j: usize, n: usize) -> usize {
    i * n + j
}

/// Dense row-major matrix over a single exact field.
///
/// Linear maps act on column vectors: a map `V -> W` is stored as a
/// `dim W x dim V` matrix. The Kronecker product of two maps is the matrix of
/// their tensor product under [`pair_index`].
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Matrix {
    field: Field,
    rows: usize,
    cols: usize,
    data: Vec<Scalar>,
}

impl Matrix {
    pub fn new(field: Field, rows: usize, cols: usize, data: Vec<Scalar>) -> Result<Matrix> {
        if data.len() != rows * cols {
            return Err(Error::Dimension {
                context: "matrix entries",
                expected: rows * cols,
                found: data.len(),
            });
        }
        if let Some(bad) = data.iter().find(|s| s.field() != field) {
            return Err(Error::FieldMismatch {
                expected: field,
                found: bad.field(),
            });
        }
        Ok(Matrix {
            field,
            rows,
            cols,
            data,
        })
    }

    pub fn zeros(field: Field, rows: usize, cols: usize) -> Matrix {
        Matrix {
            field,
            rows,
            cols,
            data: vec![field.zero(); rows * cols],
        }
    }

    pub fn identity(field: Field, n: usize) -> Matrix {
        let mut m = Matrix::zeros(field, n, n);
        for i in 0..n {
            m.data[i * n + i] = field.one();
        }
        m
    }

    pub fn from_i64(field: Field, rows: usize, cols: usize, values: &[i64]) -> Result<Matrix> {
        Matrix::new(
            field,
            rows,
            cols,
            values.iter().map(|&v| field.from_i64(v)).collect(),
        )
    }

    pub fn from_rows(field: Field, rows: Vec<Vec<Scalar>>) -> Result<Matrix> {
        let cols = rows.first().map_or(0, Vec::len);
        if let Some(r) = rows.iter().find(|r| r.len() != cols) {
            return Err(Error::Dimension {
                context: "matrix row length",
                expected: cols,
                found: r.len(),
            });
        }
        let n = rows.len();
        Matrix::new(field, n, cols, rows.into_iter().flatten().collect())
    }

    /// Builds a matrix whose columns are the given vectors, each of length `rows`.
    pub fn from_columns(field: Field, rows: usize, columns: &[Vec<Scalar>]) -> Result<Matrix> {
        let mut m = Matrix::zeros(field, rows, columns.len());
        for (j, col) in columns.iter().enumerate() {
            if col.len() != rows {
                return Err(Error::Dimension {
                    context: "matrix column length",
                    expected: rows,
                    found: col.len(),
                });
            }
            for (i, v) in col.iter().enumerate() {
                if v.field() != field {
                    return Err(Error::FieldMismatch {
                        expected: field,
                        found: v.field(),
                    });
                }
                m.data[i * m.cols + j] = v.clone();
            }
        }
        Ok(m)
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn shape(&self) -> (usize, usize) {
        (self.rows, self.cols)
    }

    #[inline]
    pub fn get(&self, r: usize, c: usize) -> &Scalar {
        &self.data[r * self.cols + c]
    }

    #[inline]
    pub(crate) fn set(&mut self, r: usize, c: usize, v: Scalar) {
        debug_assert_eq!(v.field(), self.field);
        self.data[r * self.cols + c] = v;
    }

    pub(crate) fn add_at(&mut self, r: usize, c: usize, v: &Scalar) {
        let idx = r * self.cols + c;
        self.data[idx] = &self.data[idx] + v;
    }

    pub fn row(&self, r: usize) -> &[Scalar] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn column(&self, c: usize) -> Vec<Scalar> {
        (0..self.rows).map(|r| self.get(r, c).clone()).collect()
    }

    pub fn entries(&self) -> &[Scalar] {
        &self.data
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Scalar::is_zero)
    }

    pub fn is_identity(&self) -> bool {
        self.rows == self.cols
            && (0..self.rows).all(|i| {
                (0..self.cols).all(|j| {
                    let v = self.get(i, j);
                    if i == j {
                        v.is_one()
                    } else {
                        v.is_zero()
                    }
                })
            })
    }

    pub fn is_integral(&self) -> bool {
        self.data.iter().all(Scalar::is_integral)
    }

    fn check_field(&self, other: &Matrix) -> Result<()> {
        if self.field != other.field {
            return Err(Error::FieldMismatch {
                expected: self.field,
                found: other.field,
            });
        }
        Ok(())
    }

    pub fn matmul(&self, other: &Matrix) -> Result<Matrix> {
        self.check_field(other)?;
        if self.cols != other.rows {
            return Err(Error::Dimension {
                context: "matrix product",
                expected: self.cols,
                found: other.rows,
            });
        }
        let mut out = Matrix::zeros(self.field, self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(k, j);
                    if !b.is_zero() {
                        out.add_at(i, j, &(a * b));
                    }
                }
            }
        }
        Ok(out)
    }

    /// Matrix-vector product.
    pub fn apply(&self, v: &[Scalar]) -> Result<Vec<Scalar>> {
        if v.len() != self.cols {
            return Err(Error::Dimension {
                context: "matrix-vector product",
                expected: self.cols,
                found: v.len(),
            });
        }
        Ok((0..self.rows)
            .map(|i| {
                let mut acc = self.field.zero();
                for (a, b) in self.row(i).iter().zip(v) {
                    if !a.is_zero() && !b.is_zero() {
                        acc = &acc + &(a * b);
                    }
                }
                acc
            })
            .collect())
    }

    fn zip_with(&self, other: &Matrix, f: impl Fn(&Scalar, &Scalar) -> Scalar) -> Result<Matrix> {
        self.check_field(other)?;
        if self.shape() != other.shape() {
            return Err(Error::Shape(format!(
                "{}x{} vs {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        Ok(Matrix {
            field: self.field,
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&other.data).map(|(a, b)| f(a, b)).collect(),
        })
    }

    pub fn add(&self, other: &Matrix) -> Result<Matrix> {
        self.zip_with(other, |a, b| a + b)
    }

    pub fn sub(&self, other: &Matrix) -> Result<Matrix> {
        self.zip_with(other, |a, b| a - b)
    }

    pub fn neg(&self) -> Matrix {
        self.map(|v| -v)
    }

    pub fn scale(&self, s: &Scalar) -> Matrix {
        self.map(|v| v * s)
    }

    fn map(&self, f: impl Fn(&Scalar) -> Scalar) -> Matrix {
        Matrix {
            field: self.field,
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(f).collect(),
        }
    }

    pub fn transpose(&self) -> Matrix {
        let mut out = Matrix::zeros(self.field, self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out.data[j * self.rows + i] = self.get(i, j).clone();
            }
        }
        out
    }

    /// Kronecker product: `kron(A, B)[(r1, r2)][(c1, c2)] = A[r1][c1] * B[r2][c2]`
    /// with both row and column pairs flattened by [`pair_index`].
    pub fn kron(&self, other: &Matrix) -> Result<Matrix> {
        self.check_field(other)?;
        let (br, bc) = other.shape();
        let mut out = Matrix::zeros(self.field, self.rows * br, self.cols * bc);
        for r1 in 0..self.rows {
            for c1 in 0..self.cols {
                let a = self.get(r1, c1);
                if a.is_zero() {
                    continue;
                }
                for r2 in 0..br {
                    for c2 in 0..bc {
                        let b = other.get(r2, c2);
                        if !b.is_zero() {
                            out.set(pair_index(r1, r2, br), pair_index(c1, c2, bc), a * b);
                        }
                    }
                }
            }
        }
        Ok(out)
    }

    /// `(A⊗B)·X` without forming `A⊗B`.
    pub fn kron_matmul(a: &Matrix, b: &Matrix, x: &Matrix) -> Result<Matrix> {
        a.check_field(b)?;
        a.check_field(x)?;
        if x.rows != a.cols * b.cols {
            return Err(Error::Dimension {
                context: "Kronecker product applied to matrix",
                expected: a.cols * b.cols,
                found: x.rows,
            });
        }
        let a_cols = a.sparse_columns();
        let b_cols = b.sparse_columns();
        let br = b.rows;
        let mut out = Matrix::zeros(a.field, a.rows * br, x.cols);
        for (p, a_col) in a_cols.iter().enumerate() {
            for (q, b_col) in b_cols.iter().enumerate() {
                let xr = pair_index(p, q, b.cols);
                for col in 0..x.cols {
                    let xv = x.get(xr, col);
                    if xv.is_zero() {
                        continue;
                    }
                    for (r1, av) in a_col {
                        let ax = av * xv;
                        for (r2, bv) in b_col {
                            out.add_at(pair_index(*r1, *r2, br), col, &(&ax * bv));
                        }
                    }
                }
            }
        }
        Ok(out)
    }

    fn sparse_columns(&self) -> Vec<Vec<(usize, Scalar)>> {
        (0..self.cols)
            .map(|c| {
                (0..self.rows)
                    .filter_map(|r| {
                        let v = self.get(r, c);
                        (!v.is_zero()).then(|| (r, v.clone()))
                    })
                    .collect()
            })
            .collect()
    }

    /// Stacks `self` on top of `other`.
    pub fn vstack(&self, other: &Matrix) -> Result<Matrix> {
        self.check_field(other)?;
        if self.cols != other.cols {
            return Err(Error::Dimension {
                context: "vertical stack",
                expected: self.cols,
                found: other.cols,
            });
        }
        let mut data = self.data.clone();
        data.extend_from_slice(&other.data);
        Ok(Matrix {
            field: self.field,
            rows: self.rows + other.rows,
            cols: self.cols,
            data,
        })
    }

    /// Places `self` to the left of `other`.
    pub fn hstack(&self, other: &Matrix) -> Result<Matrix> {
        self.check_field(other)?;
        if self.rows != other.rows {
            return Err(Error::Dimension {
                context: "horizontal stack",
                expected: self.rows,
                found: other.rows,
            });
        }
        let cols = self.cols + other.cols;
        let mut data = Vec::with_capacity(self.rows * cols);
        for r in 0..self.rows {
            data.extend_from_slice(self.row(r));
            data.extend_from_slice(other.row(r));
        }
        Ok(Matrix {
            field: self.field,
            rows: self.rows,
            cols,
            data,
        })
    }

    /// Submatrix with the given columns, in the given order.
    pub fn select_columns(&self, columns: &[usize]) -> Matrix {
        let mut out = Matrix::zeros(self.field, self.rows, columns.len());
        for r in 0..self.rows {
            for (j, &c) in columns.iter().enumerate() {
                out.set(r, j, self.get(r, c).clone());
            }
        }
        out
    }

    /// Reduced row echelon form and pivot columns.
    pub fn rref(&self) -> (Matrix, Vec<usize>) {
        self.rref_with(Execution::default())
    }

    pub fn rref_with(&self, exec: Execution) -> (Matrix, Vec<usize>) {
        let mut data = self.data.clone();
        let pivots = elim::rref_in_place(self.field, &mut data, self.rows, self.cols, exec);
        (
            Matrix {
                field: self.field,
                rows: self.rows,
                cols: self.cols,
                data,
            },
            pivots,
        )
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    /// Keeps the first `n` rows.
    pub(crate) fn truncate_rows(mut self, n: usize) -> Matrix {
        self.data.truncate(n * self.cols);
        self.rows = n;
        self
    }

    /// Re-expresses every entry in `field`, see [`Scalar::to_field`].
    pub fn to_field(&self, field: Field) -> Result<Matrix> {
        Ok(Matrix {
            field,
            rows: self.rows,
            cols: self.cols,
            data: self
                .data
                .iter()
                .map(|s| s.to_field(field))
                .collect::<Result<_>>()?,
        })
    }
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Matrix<{}> {}x{} [", self.field, self.rows, self.cols)?;
        for r in 0..self.rows {
            let row: Vec<String> = self.row(r).iter().map(ToString::to_string).collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        write!(f, "]")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    const Q: Field = Field::Rationals;

    fn m(rows: usize, cols: usize, v: &[i64]) -> Matrix {
        Matrix::from_i64(Q, rows, cols, v).unwrap()
    }

    #[test]
    fn kron_of_identities_is_identity() {
        let k = Matrix::identity(Q, 2).kron(&Matrix::identity(Q, 3)).unwrap();
        assert_eq!(k, Matrix::identity(Q, 6));
    }

    #[test]
    fn kron_with_unit_factor() {
        let a = m(2, 3, &[1, 2, 3, 4, 5, 6]);
        assert_eq!(a.kron(&m(1, 1, &[1])).unwrap(), a);
        assert_eq!(m(1, 1, &[1]).kron(&a).unwrap(), a);
    }

    #[test]
    fn kron_direct_expansion() {
        let k = m(2, 2, &[0, 1, 0, 0]).kron(&m(1, 1, &[2])).unwrap();
        assert_eq!(k, m(2, 2, &[0, 2, 0, 0]));
    }

    #[test]
    fn kron_index_convention() {
        let a = m(2, 2, &[1, 2, 3, 4]);
        let b = m(2, 3, &[5, 6, 7, 8, 9, 10]);
        let k = a.kron(&b).unwrap();
        for r1 in 0..2 {
            for r2 in 0..2 {
                for c1 in 0..2 {
                    for c2 in 0..3 {
                        assert_eq!(
                            k.get(pair_index(r1, r2, 2), pair_index(c1, c2, 3)),
                            &(a.get(r1, c1) * b.get(r2, c2))
                        );
                    }
                }
            }
        }
    }

    #[test]
    fn mixed_fields_are_rejected() {
        let a = Matrix::identity(Q, 2);
        let b = Matrix::identity(Field::Prime(7), 2);
        assert!(matches!(a.matmul(&b), Err(Error::FieldMismatch { .. })));
        assert!(matches!(a.kron(&b), Err(Error::FieldMismatch { .. })));
        let bad = Matrix::new(Q, 1, 2, vec![Q.one(), Field::Prime(7).one()]);
        assert!(matches!(bad, Err(Error::FieldMismatch { .. })));
    }

    #[test]
    fn product_shape_mismatch() {
        assert!(m(2, 3, &[0; 6]).matmul(&m(2, 3, &[0; 6])).is_err());
    }

    fn small_matrix(rows: usize, cols: usize) -> impl Strategy<Value = Matrix> {
        prop::collection::vec(-3i64..=3, rows * cols).prop_map(move |v| m(rows, cols, &v))
    }

    proptest! {
        #[test]
        fn kron_is_associative(a in small_matrix(2, 1), b in small_matrix(1, 2), c in small_matrix(2, 2)) {
            let left = a.kron(&b).unwrap().kron(&c).unwrap();
            let right = a.kron(&b.kron(&c).unwrap()).unwrap();
            prop_assert_eq!(left, right);
        }

        #[test]
        fn kron_matmul_matches_explicit_product(a in small_matrix(2, 3), b in small_matrix(3, 2), x in small_matrix(6, 2)) {
            let explicit = a.kron(&b).unwrap().matmul(&x).unwrap();
            prop_assert_eq!(Matrix::kron_matmul(&a, &b, &x).unwrap(), explicit);
        }

        #[test]
        fn kron_mixed_product(a in small_matrix(2, 2), b in small_matrix(2, 2), c in small_matrix(2, 2), d in small_matrix(2, 2)) {
            let lhs = a.kron(&b).unwrap().matmul(&c.kron(&d).unwrap()).unwrap();
            let rhs = a.matmul(&c).unwrap().kron(&b.matmul(&d).unwrap()).unwrap();
            prop_assert_eq!(lhs, rhs);
        }
    }
}
