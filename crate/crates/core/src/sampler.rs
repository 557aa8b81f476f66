//! Generic rejection sampling: draw candidates until one is accepted.

use std::time::{Duration, Instant};

use crate::error::{Error, Result};

/// What a rejection-sampling run cost.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct TrialStats {
    /// Number of candidates generated (>= 1).
    pub attempts: u64,
    /// Wall time of the whole loop, monotonic clock.
    pub elapsed: Duration,
    /// Whether the run ended with an accepted candidate.
    pub accepted: bool,
}

impl TrialStats {
    /// Mean time of one generate-plus-check iteration.
    pub fn per_attempt(&self) -> Duration {
        if self.attempts == 0 {
            return Duration::ZERO;
        }
        self.elapsed / u32::try_from(self.attempts).unwrap_or(u32::MAX)
    }
}

/// Repeatedly generates candidates until `accept` passes one.
///
/// Returns the first accepted candidate together with trial statistics;
/// `attempts` equals the number of `generate` calls. With
/// `max_attempts = None` the loop is unbounded, mirroring the underlying
/// scheme; bounded callers get [`Error::RetriesExhausted`] carrying the
/// stats collected so far.
pub fn sample_until<T>(
    mut generate: impl FnMut() -> T,
    mut accept: impl FnMut(&T) -> bool,
    max_attempts: Option<u64>,
) -> Result<(T, TrialStats)> {
    let start = Instant::now();
    let mut attempts = 0u64;
    loop {
        if let Some(cap) = max_attempts {
            if attempts >= cap {
                return Err(Error::RetriesExhausted(TrialStats {
                    attempts,
                    elapsed: start.elapsed(),
                    accepted: false,
                }));
            }
        }
        let candidate = generate();
        attempts += 1;
        if accept(&candidate) {
            let stats = TrialStats {
                attempts,
                elapsed: start.elapsed(),
                accepted: true,
            };
            return Ok((candidate, stats));
        }
    }
}

/// Empirical acceptance probability: one generate-plus-check per trial.
///
/// # Panics
/// Panics if `trials` is zero.
pub fn acceptance_rate<T>(
    mut generate: impl FnMut() -> T,
    mut accept: impl FnMut(&T) -> bool,
    trials: u64,
) -> f64 {
    assert!(trials >= 1, "trials must be at least 1");
    let mut hits = 0u64;
    for _ in 0..trials {
        let candidate = generate();
        if accept(&candidate) {
            hits += 1;
        }
    }
    hits as f64 / trials as f64
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::perm::{is_permutation, random_tuple};
    use crate::rng::RandomSource;

    #[test]
    fn accepted_candidate_satisfies_predicate() {
        let mut src = RandomSource::new(3);
        for _ in 0..200 {
            let (t, stats) = sample_until(
                || random_tuple(&mut src, 3).unwrap(),
                |t| is_permutation(t.values()),
                None,
            )
            .unwrap();
            assert!(is_permutation(t.values()));
            assert!(stats.accepted);
            assert!(stats.attempts >= 1);
        }
    }

    #[test]
    fn constant_false_exhausts_the_budget() {
        let err = sample_until(|| 0u8, |_| false, Some(10)).unwrap_err();
        match err {
            Error::RetriesExhausted(stats) => {
                assert_eq!(stats.attempts, 10);
                assert!(!stats.accepted);
            }
            other => panic!("unexpected error: {other:?}"),
        }
    }

    #[test]
    fn constant_true_accepts_immediately() {
        let (v, stats) = sample_until(|| 7u8, |_| true, Some(1)).unwrap();
        assert_eq!(v, 7);
        assert_eq!(stats.attempts, 1);
    }

    #[test]
    fn acceptance_rate_of_constant_true_is_one() {
        assert_eq!(acceptance_rate(|| (), |_| true, 1000), 1.0);
    }

    // Mean attempts at n=3 is geometric with mean 27/6 = 4.5.
    #[test]
    fn mean_attempts_match_inverse_probability() {
        let mut src = RandomSource::new(42);
        let mut total = 0u64;
        let runs = 10_000;
        for _ in 0..runs {
            let (_, stats) = sample_until(
                || random_tuple(&mut src, 3).unwrap(),
                |t| is_permutation(t.values()),
                None,
            )
            .unwrap();
            total += stats.attempts;
        }
        let mean = total as f64 / runs as f64;
        assert!((mean - 4.5).abs() < 0.1, "mean attempts {mean}");
    }
}
