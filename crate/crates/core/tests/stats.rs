//! Statistical behavior under fixed seeds: empirical frequencies against
//! the exact probabilities, and the chi-square uniformity checks.

use std::collections::HashMap;

use sudokurand::{
    acceptance_rate, chi_square_uniform, enum_permutations, is_permutation, is_s_permutation,
    random_permutation_direct, random_pi, random_tuple, sample_until, RandomSource,
};

// 99.9% chi-square critical value for 5 degrees of freedom.
const CHI2_999_DF5: f64 = 20.515;

#[test]
fn tuple_space_at_order_two_is_flat() {
    let mut src = RandomSource::new(1001);
    let mut counts = [0u64; 4];
    let runs = 100_000;
    for _ in 0..runs {
        let t = random_tuple(&mut src, 2).unwrap();
        let idx = (t.values()[0] - 1) * 2 + (t.values()[1] - 1);
        counts[idx as usize] += 1;
    }
    for (idx, &c) in counts.iter().enumerate() {
        let freq = c as f64 / runs as f64;
        assert!((freq - 0.25).abs() < 0.01, "outcome {idx}: {freq}");
    }
}

#[test]
fn tuple_acceptance_matches_the_exact_rate_at_order_three() {
    let mut src = RandomSource::new(2002);
    let rate = acceptance_rate(
        || random_tuple(&mut src, 3).unwrap(),
        |t| is_permutation(t.values()),
        100_000,
    );
    assert!((rate - 6.0 / 27.0).abs() < 0.01, "rate {rate}");
}

#[test]
fn tuple_acceptance_matches_the_exact_rate_at_order_two() {
    let mut src = RandomSource::new(3003);
    let rate = acceptance_rate(
        || random_tuple(&mut src, 2).unwrap(),
        |t| is_permutation(t.values()),
        100_000,
    );
    assert!((rate - 0.5).abs() < 0.01, "rate {rate}");
}

#[test]
fn exhaustive_generate_reproduces_the_exact_rational() {
    // drive the estimator with the full binary candidate space instead
    // of random draws: the answer is exact, not approximate
    let mut pattern = 0u32..;
    let rate = acceptance_rate(
        || {
            let p = pattern.next().unwrap();
            let mut entries = [0u32; 16];
            for (k, e) in entries.iter_mut().enumerate() {
                *e = p >> k & 1;
            }
            entries
        },
        |entries| is_s_permutation(entries, 2).unwrap(),
        65_536,
    );
    assert_eq!(rate, 16.0 / 65_536.0);
}

#[test]
fn direct_permutations_are_uniform_at_order_three() {
    let rank: HashMap<Vec<u32>, usize> = enum_permutations(3)
        .unwrap()
        .into_iter()
        .enumerate()
        .map(|(idx, p)| (p.into_values(), idx))
        .collect();

    let mut src = RandomSource::new(42);
    let mut counts = [0u64; 6];
    let runs = 600_000;
    for _ in 0..runs {
        let p = random_permutation_direct(&mut src, 3).unwrap();
        counts[rank[p.values()]] += 1;
    }
    for (idx, &c) in counts.iter().enumerate() {
        let freq = c as f64 / runs as f64;
        assert!((freq - 1.0 / 6.0).abs() < 0.01, "permutation {idx}: {freq}");
    }
    let chi2 = chi_square_uniform(&counts);
    assert!(chi2 < CHI2_999_DF5, "chi-square {chi2}");
}

#[test]
fn random_pi_covers_all_sixteen_members_uniformly() {
    let mut src = RandomSource::new(4004);
    let mut counts = [0u64; 16];
    let runs = 200_000;
    for _ in 0..runs {
        let m = random_pi(&mut src, 2).unwrap();
        let idx: usize = m
            .rows()
            .map(|row| usize::from(row == [2, 1]))
            .fold(0, |acc, bit| acc * 2 + bit);
        counts[idx] += 1;
    }
    for (idx, &c) in counts.iter().enumerate() {
        assert!(c > 0, "member {idx} never appeared");
        let freq = c as f64 / runs as f64;
        assert!((freq - 1.0 / 16.0).abs() < 0.005, "member {idx}: {freq}");
    }
}

// Attempt counts of the rejection loop are geometric: the empirical
// mean lands within 5% of 1/p for every tractable rate.
#[test]
fn mean_attempts_track_the_inverse_rate() {
    let cases: [(u32, f64); 2] = [(2, 0.5), (3, 6.0 / 27.0)];
    for (n, p) in cases {
        let mut src = RandomSource::new(5005);
        let runs = 10_000;
        let mut total = 0u64;
        for _ in 0..runs {
            let (_, stats) = sample_until(
                || random_tuple(&mut src, n).unwrap(),
                |t| is_permutation(t.values()),
                None,
            )
            .unwrap();
            total += stats.attempts;
        }
        let mean = total as f64 / runs as f64;
        let expected = 1.0 / p;
        assert!(
            (mean - expected).abs() / expected < 0.05,
            "n = {n}: mean {mean} vs {expected}"
        );
    }

    // the Pi-matrix rate at order 2: p = 16/256, mean 16
    let mut src = RandomSource::new(6006);
    let runs = 10_000;
    let mut total = 0u64;
    for _ in 0..runs {
        let (_, stats) = sample_until(
            || {
                let v: Vec<u32> = (0..8).map(|_| src.uniform(2).unwrap()).collect();
                v
            },
            |v| sudokurand::is_pi(v, 2),
            None,
        )
        .unwrap();
        total += stats.attempts;
    }
    let mean = total as f64 / runs as f64;
    assert!((mean - 16.0).abs() / 16.0 < 0.05, "mean {mean}");
}

// Regression statistic: total candidate draws of the order-2 assembler
// over seeds 0..1000. Deterministic by seeding, frozen at first
// measurement; a change means the generator's draw sequence changed.
#[test]
fn assembler_draw_count_regression_at_order_two() {
    use sudokurand::{assemble, AssemblyPolicy};
    let mut total = 0u64;
    for seed in 0..1000 {
        let mut src = RandomSource::new(seed);
        let (_, report) = assemble(&mut src, 2, AssemblyPolicy::default()).unwrap();
        total += report.pi_matrices_generated;
    }
    println!(
        "assembler draws over 1000 seeds: {total} (mean {})",
        total as f64 / 1000.0
    );
    assert_eq!(total, 26_216, "frozen total, mean 26.216 draws per board");
}

// Doubling the trial count moves the estimate by less than three
// standard errors; a convergence sanity guard.
#[test]
fn estimates_converge_as_trials_double() {
    let p = 6.0 / 27.0;
    let trials = 100_000u64;
    let mut src = RandomSource::new(7007);
    let small = acceptance_rate(
        || random_tuple(&mut src, 3).unwrap(),
        |t| is_permutation(t.values()),
        trials,
    );
    let large = acceptance_rate(
        || random_tuple(&mut src, 3).unwrap(),
        |t| is_permutation(t.values()),
        trials * 2,
    );
    let se = (p * (1.0 - p) / trials as f64).sqrt();
    assert!(
        (small - large).abs() < 3.0 * se,
        "small {small}, large {large}, se {se}"
    );
}
