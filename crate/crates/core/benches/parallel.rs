//! Compares the data-parallel entry points against their sequential
//! fallbacks on representative workloads: prevariety membership and balance
//! over all (2k+2)-subsets, randomized matroid rank, and per-flip fan
//! validation. Run with and without `--no-default-features` to compare the
//! rayon build against the plain one.

use criterion::{criterion_group, criterion_main, Criterion};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use pfassoc::algebra::{matroid_rank, matroid_rank_seq};
use pfassoc::fan::{build_fan, validate_fan, validate_fan_seq};
use pfassoc::sampling::triangulation_support_vector;
use pfassoc::tropical::{in_prevariety, in_prevariety_seq, is_balanced, is_balanced_seq};

fn bench_prevariety(c: &mut Criterion) {
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    let (_, v) = triangulation_support_vector(9, 2, &mut rng).unwrap();
    let mut group = c.benchmark_group("prevariety_n9_k2");
    group.bench_function("dispatch", |b| b.iter(|| in_prevariety(&v, 2).unwrap()));
    group.bench_function("sequential", |b| b.iter(|| in_prevariety_seq(&v, 2).unwrap()));
    group.finish();
}

fn bench_balance(c: &mut Criterion) {
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    let (_, v) = triangulation_support_vector(9, 2, &mut rng).unwrap();
    let mut group = c.benchmark_group("balance_n9_k2");
    group.bench_function("dispatch", |b| b.iter(|| is_balanced(&v, 2).unwrap()));
    group.bench_function("sequential", |b| b.iter(|| is_balanced_seq(&v, 2).unwrap()));
    group.finish();
}

fn bench_matroid_rank(c: &mut Criterion) {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let (t, _) = triangulation_support_vector(8, 2, &mut rng).unwrap();
    let mut group = c.benchmark_group("matroid_rank_n8_k2_t8");
    group.sample_size(20);
    group.bench_function("dispatch", |b| b.iter(|| matroid_rank(&t, 2, 8, 42)));
    group.bench_function("sequential", |b| b.iter(|| matroid_rank_seq(&t, 2, 8, 42)));
    group.finish();
}

fn bench_fan_validation(c: &mut Criterion) {
    let t = pfassoc::combinatorics::enumerate_k_triangulations(7, 1).unwrap()[0].clone();
    let f = build_fan(&t).unwrap();
    let mut group = c.benchmark_group("fan_validate_n7");
    group.sample_size(10);
    group.bench_function("dispatch", |b| b.iter(|| validate_fan(&f, &t).unwrap()));
    group.bench_function("sequential", |b| b.iter(|| validate_fan_seq(&f, &t).unwrap()));
    group.finish();
}

criterion_group!(
    benches,
    bench_prevariety,
    bench_balance,
    bench_matroid_rank,
    bench_fan_validation
);
criterion_main!(benches);
