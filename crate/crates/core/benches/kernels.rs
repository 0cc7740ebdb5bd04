use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use comono_core::constructions::fuzz_batch;
use comono_core::linalg::Execution;
use comono_core::{Field, Matrix};

fn random_matrix(field: Field, rows: usize, cols: usize, seed: u64) -> Matrix {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let data = (0..rows * cols).map(|_| field.from_i64(rng.gen_range(-3..=3))).collect();
    Matrix::new(field, rows, cols, data).unwrap()
}

fn elimination(c: &mut Criterion) {
    let mut group = c.benchmark_group("rref");
    group.sample_size(10);
    for (field, n) in [(Field::Prime(101), 96), (Field::Prime(101), 192), (Field::Rationals, 48)] {
        let a = random_matrix(field, n, n, 7);
        for exec in [Execution::Sequential, Execution::Parallel] {
            group.bench_with_input(BenchmarkId::new(format!("{field} {exec:?}"), n), &a, |b, a| {
                b.iter(|| black_box(a.rref_with(exec)))
            });
        }
    }
    group.finish();
}

fn fuzz(c: &mut Criterion) {
    let mut group = c.benchmark_group("fuzz_batch");
    group.sample_size(10);
    for exec in [Execution::Sequential, Execution::Parallel] {
        group.bench_function(format!("{exec:?} 64 seeds"), |b| {
            b.iter(|| black_box(fuzz_batch(0..64, 6, Field::Rationals, exec).unwrap()))
        });
    }
    group.finish();
}

criterion_group!(benches, elimination, fuzz);
criterion_main!(benches);
