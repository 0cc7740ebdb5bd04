use std::collections::HashSet;
use std::fmt;

use crate::coalgebra::report::{unflatten, Law, ValidationReport};
use crate::error::{Error, Result};
use crate::linalg::{pair_index, Field, Matrix, Scalar};

/// A finite-dimensional coalgebra given by structure constants.
///
/// `delta` is the `n² x n` matrix of `Δ: C -> C⊗C`, so the coefficient of
/// `e_i⊗e_j` in `Δ(e_k)` sits at row `pair_index(i, j, n)`, column `k`.
/// `counit` is the `1 x n` matrix of `ε`.
#[derive(Clone)]
pub struct Coalgebra {
    name: String,
    labels: Vec<String>,
    delta: Matrix,
    counit: Matrix,
}

impl Coalgebra {
    pub fn new(
        name: impl Into<String>,
        labels: Vec<String>,
        delta: Matrix,
        counit: Matrix,
    ) -> Result<Coalgebra> {
        let n = labels.len();
        check_labels(&labels)?;
        if delta.shape() != (n * n, n) {
            return Err(Error::Shape(format!(
                "comultiplication must be {}x{n}, got {}x{}",
                n * n,
                delta.rows(),
                delta.cols()
            )));
        }
        if counit.shape() != (1, n) {
            return Err(Error::Shape(format!(
                "counit must be 1x{n}, got {}x{}",
                counit.rows(),
                counit.cols()
            )));
        }
        if delta.field() != counit.field() {
            return Err(Error::FieldMismatch {
                expected: delta.field(),
                found: counit.field(),
            });
        }
        Ok(Coalgebra {
            name: name.into(),
            labels,
            delta,
            counit,
        })
    }

    /// Builds a coalgebra from sparse terms `(k, i, j, coeff)` meaning
    /// `Δ(e_k) ∋ coeff · e_i⊗e_j`. Repeated terms accumulate.
    pub fn from_terms(
        name: impl Into<String>,
        field: Field,
        labels: Vec<String>,
        terms: &[(usize, usize, usize, Scalar)],
        counit: Vec<Scalar>,
    ) -> Result<Coalgebra> {
        let n = labels.len();
        let mut delta = Matrix::zeros(field, n * n, n);
        for (k, i, j, c) in terms {
            if *k >= n || *i >= n || *j >= n {
                return Err(Error::Shape(format!(
                    "comultiplication term ({k}, {i}, {j}) out of range for dimension {n}"
                )));
            }
            if c.field() != field {
                return Err(Error::FieldMismatch {
                    expected: field,
                    found: c.field(),
                });
            }
            delta.add_at(pair_index(*i, *j, n), *k, c);
        }
        if counit.len() != n {
            return Err(Error::Shape(format!(
                "counit has {} values for dimension {n}",
                counit.len()
            )));
        }
        let counit = Matrix::new(field, 1, n, counit)?;
        Coalgebra::new(name, labels, delta, counit)
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Coalgebra {
        self.name = name.into();
        self
    }

    pub fn dim(&self) -> usize {
        self.labels.len()
    }

    pub fn field(&self) -> Field {
        self.delta.field()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn delta(&self) -> &Matrix {
        &self.delta
    }

    pub fn counit(&self) -> &Matrix {
        &self.counit
    }

    pub fn counit_vector(&self) -> Vec<Scalar> {
        self.counit.row(0).to_vec()
    }

    /// Coefficient of `e_i⊗e_j` in `Δ(e_k)`.
    pub fn mu(&self, k: usize, i: usize, j: usize) -> &Scalar {
        self.delta.get(pair_index(i, j, self.dim()), k)
    }

    pub fn identity_matrix(&self) -> Matrix {
        Matrix::identity(self.field(), self.dim())
    }

    /// Checks coassociativity and both counit laws, reporting every failing cell.
    pub fn validate(&self) -> ValidationReport {
        let n = self.dim();
        let id = self.identity_matrix();
        let mut report = ValidationReport::default();
        let lhs = Matrix::kron_matmul(&self.delta, &id, &self.delta);
        let rhs = Matrix::kron_matmul(&id, &self.delta, &self.delta);
        let (lhs, rhs) = (lhs.expect("shapes fixed"), rhs.expect("shapes fixed"));
        report.compare(Law::Coassociativity, &lhs, &rhs, |r, k| {
            let mut cell = unflatten(r, &[n, n, n]);
            cell.push(k);
            cell
        });
        let left = Matrix::kron_matmul(&self.counit, &id, &self.delta);
        report.compare(Law::LeftCounit, &left.expect("shapes fixed"), &id, |j, k| vec![k, j]);
        let right = Matrix::kron_matmul(&id, &self.counit, &self.delta);
        report.compare(Law::RightCounit, &right.expect("shapes fixed"), &id, |i, k| vec![k, i]);
        report
    }

    /// Re-expresses the constants in another field.
    pub fn to_field(&self, field: Field) -> Result<Coalgebra> {
        Coalgebra::new(
            self.name.clone(),
            self.labels.clone(),
            self.delta.to_field(field)?,
            self.counit.to_field(field)?,
        )
    }

    pub fn is_integral(&self) -> bool {
        self.delta.is_integral() && self.counit.is_integral()
    }
}

/// Structural equality: labels and constants. The display name is ignored.
impl PartialEq for Coalgebra {
    fn eq(&self, other: &Coalgebra) -> bool {
        self.labels == other.labels && self.delta == other.delta && self.counit == other.counit
    }
}

impl Eq for Coalgebra {}

impl fmt::Debug for Coalgebra {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Coalgebra({}, dim {}, {})", self.name, self.dim(), self.field())
    }
}

pub(crate) fn check_labels(labels: &[String]) -> Result<()> {
    let mut seen = HashSet::new();
    for l in labels {
        if l.is_empty() || l.chars().any(char::is_whitespace) {
            return Err(Error::InvalidArgument(format!("invalid basis label `{l}`")));
        }
        if !seen.insert(l.as_str()) {
            return Err(Error::InvalidArgument(format!("duplicate basis label `{l}`")));
        }
    }
    Ok(())
}

/// Renders a vector as a linear combination of labels, e.g. `c11 - 2*c22`.
pub fn format_vector(labels: &[String], v: &[Scalar]) -> String {
    format_terms(v.iter().enumerate().map(|(i, c)| (labels[i].clone(), c)))
}

/// Renders a vector of `V⊗W` (flattened by `pair_index`) as `Σ c · v⊗w`.
pub fn format_tensor(left: &[String], right: &[String], v: &[Scalar]) -> String {
    let m = right.len();
    format_terms(
        v.iter()
            .enumerate()
            .map(|(idx, c)| (format!("{}⊗{}", left[idx / m], right[idx % m]), c)),
    )
}

fn format_terms<'a>(terms: impl Iterator<Item = (String, &'a Scalar)>) -> String {
    let mut out = String::new();
    for (label, c) in terms {
        if c.is_zero() {
            continue;
        }
        let text = c.to_string();
        let (neg, mag) = match text.strip_prefix('-') {
            Some(rest) => (true, rest.to_string()),
            None => (false, text),
        };
        if out.is_empty() {
            if neg {
                out.push('-');
            }
        } else {
            out.push_str(if neg { " - " } else { " + " });
        }
        if mag != "1" {
            out.push_str(&mag);
            out.push('*');
        }
        out.push_str(&label);
    }
    if out.is_empty() {
        out.push('0');
    }
    out
}
