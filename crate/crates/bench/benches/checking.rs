use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use sudokurand::{disjoint_sperm, is_permutation, is_s_permutation, is_sudoku, RandomSource};
use sudokurand_bench::{cyclic_sudoku_cells, sample_sperm};

fn bench_is_permutation(c: &mut Criterion) {
    let mut group = c.benchmark_group("is_permutation");
    for n in [1_000u32, 100_000] {
        group.bench_with_input(BenchmarkId::from_parameter(n), &n, |b, &n| {
            let mut src = RandomSource::new(4);
            let values = sudokurand::random_permutation_direct(&mut src, n)
                .unwrap()
                .into_values();
            b.iter(|| black_box(is_permutation(black_box(&values))));
        });
    }
    group.finish();
}

fn bench_is_s_permutation(c: &mut Criterion) {
    let mut group = c.benchmark_group("is_s_permutation");
    for n in [3u32, 8] {
        group.bench_with_input(BenchmarkId::from_parameter(n), &n, |b, &n| {
            let entries = sample_sperm(n, 5).to_dense();
            b.iter(|| black_box(is_s_permutation(black_box(&entries), n).unwrap()));
        });
    }
    group.finish();
}

fn bench_is_sudoku(c: &mut Criterion) {
    let mut group = c.benchmark_group("is_sudoku");
    for n in [3u32, 5] {
        group.bench_with_input(BenchmarkId::from_parameter(n), &n, |b, &n| {
            let cells = cyclic_sudoku_cells(n);
            b.iter(|| black_box(is_sudoku(black_box(&cells), n)));
        });
    }
    group.finish();
}

fn bench_disjointness(c: &mut Criterion) {
    let mut group = c.benchmark_group("disjoint_sperm");
    for n in [3u32, 10] {
        group.bench_with_input(BenchmarkId::from_parameter(n), &n, |b, &n| {
            let a = sample_sperm(n, 6);
            let b2 = sample_sperm(n, 7);
            b.iter(|| black_box(disjoint_sperm(black_box(&a), black_box(&b2)).unwrap()));
        });
    }
    group.finish();
}

criterion_group!(
    benches,
    bench_is_permutation,
    bench_is_s_permutation,
    bench_is_sudoku,
    bench_disjointness
);
criterion_main!(benches);
