//! Gauss-Jordan elimination kernels.
//!
//! Entries are unpacked into a field-specific representation (`BigRational`
//! or `u64` residues) before elimination. Row updates for one pivot are
//! independent of each other, so with the `parallel` feature large matrices
//! distribute them across the rayon pool.

use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::linalg::field::{pow_mod, rational_height, Field, Scalar};

/// Row-update work below this many entries stays on the calling thread.
const PARALLEL_THRESHOLD: usize = 4096;

/// Chooses between the rayon pool and the calling thread for data-parallel
/// loops. Without the `parallel` feature both variants run sequentially.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Execution {
    Sequential,
    Parallel,
}

impl Default for Execution {
    fn default() -> Self {
        if cfg!(feature = "parallel") {
            Execution::Parallel
        } else {
            Execution::Sequential
        }
    }
}

trait Arith: Sync {
    type E: Clone + Send + Sync;
    fn is_zero(&self, e: &Self::E) -> bool;
    fn inv(&self, e: &Self::E) -> Self::E;
    fn mul(&self, a: &Self::E, b: &Self::E) -> Self::E;
    /// `a - f * b`
    fn sub_mul(&self, a: &Self::E, f: &Self::E, b: &Self::E) -> Self::E;
    /// Pivot preference; lower is better.
    fn cost(&self, e: &Self::E) -> u64;
}

struct RationalArith;

impl Arith for RationalArith {
    type E = BigRational;
    fn is_zero(&self, e: &BigRational) -> bool {
        e.is_zero()
    }
    fn inv(&self, e: &BigRational) -> BigRational {
        e.recip()
    }
    fn mul(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a * b
    }
    fn sub_mul(&self, a: &BigRational, f: &BigRational, b: &BigRational) -> BigRational {
        if b.is_zero() {
            a.clone()
        } else {
            a - f * b
        }
    }
    fn cost(&self, e: &BigRational) -> u64 {
        if e.is_one() {
            0
        } else {
            rational_height(e)
        }
    }
}

struct ModArith(u64);

impl Arith for ModArith {
    type E = u64;
    fn is_zero(&self, e: &u64) -> bool {
        *e == 0
    }
    fn inv(&self, e: &u64) -> u64 {
        pow_mod(*e, self.0 - 2, self.0)
    }
    fn mul(&self, a: &u64, b: &u64) -> u64 {
        a * b % self.0
    }
    fn sub_mul(&self, a: &u64, f: &u64, b: &u64) -> u64 {
        (a + self.0 - f * b % self.0) % self.0
    }
    fn cost(&self, _: &u64) -> u64 {
        0
    }
}

/// Reduces the row-major `rows x cols` block to reduced row echelon form and
/// returns the pivot columns.
pub(crate) fn rref_in_place(
    field: Field,
    data: &mut [Scalar],
    rows: usize,
    cols: usize,
    exec: Execution,
) -> Vec<usize> {
    match field {
        Field::Rationals => {
            let mut work: Vec<BigRational> = data
                .iter()
                .map(|s| s.as_rational().expect("rational entry").clone())
                .collect();
            let pivots = rref_generic(&RationalArith, &mut work, rows, cols, exec);
            for (dst, v) in data.iter_mut().zip(work) {
                *dst = Scalar::Rational(v);
            }
            pivots
        }
        Field::Prime(p) => {
            let mut work: Vec<u64> = data
                .iter()
                .map(|s| match s {
                    Scalar::Modular { value, .. } => *value,
                    Scalar::Rational(_) => unreachable!("matrix field invariant"),
                })
                .collect();
            let pivots = rref_generic(&ModArith(p), &mut work, rows, cols, exec);
            for (dst, value) in data.iter_mut().zip(work) {
                *dst = Scalar::Modular { value, modulus: p };
            }
            pivots
        }
    }
}

fn rref_generic<A: Arith>(
    ar: &A,
    data: &mut [A::E],
    rows: usize,
    cols: usize,
    exec: Execution,
) -> Vec<usize> {
    let mut pivots = Vec::new();
    let mut row = 0;
    for col in 0..cols {
        if row == rows {
            break;
        }
        let Some(pivot) = (row..rows)
            .filter(|&r| !ar.is_zero(&data[r * cols + col]))
            .min_by_key(|&r| ar.cost(&data[r * cols + col]))
        else {
            continue;
        };
        if pivot != row {
            for c in col..cols {
                data.swap(pivot * cols + c, row * cols + c);
            }
        }
        let inv = ar.inv(&data[row * cols + col]);
        for c in col..cols {
            let v = &mut data[row * cols + c];
            if !ar.is_zero(v) {
                *v = ar.mul(v, &inv);
            }
        }
        let pivot_row: Vec<A::E> = data[row * cols + col..(row + 1) * cols].to_vec();
        eliminate(ar, data, cols, col, row, &pivot_row, exec);
        pivots.push(col);
        row += 1;
    }
    pivots
}

fn eliminate<A: Arith>(
    ar: &A,
    data: &mut [A::E],
    cols: usize,
    col: usize,
    pivot_at: usize,
    pivot_row: &[A::E],
    exec: Execution,
) {
    let update = |(r, chunk): (usize, &mut [A::E])| {
        if r == pivot_at || ar.is_zero(&chunk[col]) {
            return;
        }
        let f = chunk[col].clone();
        for (dst, p) in chunk[col..].iter_mut().zip(pivot_row) {
            if !ar.is_zero(p) {
                *dst = ar.sub_mul(dst, &f, p);
            }
        }
    };
    #[cfg(feature = "parallel")]
    if exec == Execution::Parallel && data.len() >= PARALLEL_THRESHOLD {
        use rayon::prelude::*;
        data.par_chunks_mut(cols).enumerate().for_each(update);
        return;
    }
    let _ = (exec, PARALLEL_THRESHOLD);
    data.chunks_mut(cols).enumerate().for_each(update);
}
