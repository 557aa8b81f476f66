use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use sudokurand::bench::random_permutation_shift;
use sudokurand::{
    assemble, phi, random_permutation_direct, random_pi, AssemblyPolicy, RandomSource,
};
use sudokurand_bench::sample_pi;

fn bench_permutations(c: &mut Criterion) {
    let mut group = c.benchmark_group("random_permutation");
    for n in [16u32, 256, 4096] {
        group.bench_with_input(BenchmarkId::new("direct", n), &n, |b, &n| {
            let mut src = RandomSource::new(1);
            b.iter(|| black_box(random_permutation_direct(&mut src, n).unwrap()));
        });
        group.bench_with_input(BenchmarkId::new("shift", n), &n, |b, &n| {
            let mut src = RandomSource::new(1);
            b.iter(|| black_box(random_permutation_shift(&mut src, n).unwrap()));
        });
    }
    group.finish();
}

fn bench_pi_and_bijection(c: &mut Criterion) {
    let mut group = c.benchmark_group("pi");
    for n in [3u32, 10] {
        group.bench_with_input(BenchmarkId::new("random_pi", n), &n, |b, &n| {
            let mut src = RandomSource::new(2);
            b.iter(|| black_box(random_pi(&mut src, n).unwrap()));
        });
        group.bench_with_input(BenchmarkId::new("phi", n), &n, |b, &n| {
            let m = sample_pi(n, 3);
            b.iter(|| black_box(phi(black_box(&m))));
        });
    }
    group.finish();
}

fn bench_assembly(c: &mut Criterion) {
    let mut group = c.benchmark_group("assemble");
    group.sample_size(20);
    for n in [2u32, 3] {
        group.bench_with_input(BenchmarkId::from_parameter(n), &n, |b, &n| {
            let mut seed = 0u64;
            b.iter(|| {
                seed += 1;
                let mut src = RandomSource::new(seed);
                black_box(assemble(&mut src, n, AssemblyPolicy::default()).unwrap())
            });
        });
    }
    group.finish();
}

criterion_group!(
    benches,
    bench_permutations,
    bench_pi_and_bijection,
    bench_assembly
);
criterion_main!(benches);
