//! Empirical verification of the acceptance-probability formulas and
//! growth measurement of the generator and checker costs.
//!
//! Closed forms are kept as exact integer ratios (the member count over
//! the ambient count, unreduced) and only converted to floats for
//! display and error columns. Timing is informational: exponents are
//! fitted and reported, never asserted.

use std::fmt;
use std::str::FromStr;
use std::time::{Duration, Instant};

use num_bigint::BigUint;
use num_traits::ToPrimitive;
use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::perm::{is_permutation, random_permutation_direct, Permutation};
use crate::pi::is_pi;
use crate::rng::RandomSource;
use crate::sperm::is_s_permutation;
use crate::sudoku::{is_sudoku, SudokuMatrix};

/// The acceptance-probability formulas with a rejection scheme behind
/// them: tuples -> permutations, value matrices -> Pi matrices, binary
/// matrices -> S-permutation matrices, cell matrices -> Sudoku matrices.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum FormulaId {
    P1,
    P3,
    P5,
    P6,
}

impl FormulaId {
    pub const ALL: [FormulaId; 4] = [Self::P1, Self::P3, Self::P5, Self::P6];

    pub fn as_str(self) -> &'static str {
        match self {
            Self::P1 => "p1",
            Self::P3 => "p3",
            Self::P5 => "p5",
            Self::P6 => "p6",
        }
    }
}

impl fmt::Display for FormulaId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for FormulaId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "p1" => Ok(Self::P1),
            "p3" => Ok(Self::P3),
            "p5" => Ok(Self::P5),
            "p6" => Ok(Self::P6),
            other => Err(Error::BadArgument(format!("unknown formula {other:?}"))),
        }
    }
}

/// An exact probability as member count over ambient count, unreduced.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClosedForm {
    pub numerator: BigUint,
    pub denominator: BigUint,
}

impl ClosedForm {
    /// Float value; underflows to 0 when the denominator overwhelms f64.
    pub fn value(&self) -> f64 {
        let num = self.numerator.to_f64().unwrap_or(f64::INFINITY);
        let den = self.denominator.to_f64().unwrap_or(f64::INFINITY);
        if num.is_infinite() && den.is_infinite() {
            f64::NAN
        } else {
            num / den
        }
    }
}

impl fmt::Display for ClosedForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.numerator, self.denominator)
    }
}

fn big_factorial(n: u32) -> BigUint {
    (1..=n).map(BigUint::from).product()
}

fn big_pow(base: BigUint, exponent: u64) -> Result<BigUint> {
    let exponent = u32::try_from(exponent)
        .map_err(|_| Error::BadArgument("order too large for an exact closed form".into()))?;
    Ok(base.pow(exponent))
}

/// Number of Sudoku matrices of order n, where known (n <= 3).
pub fn sigma(n: u32) -> Option<BigUint> {
    match n {
        1 => Some(BigUint::from(1u32)),
        2 => Some(BigUint::from(288u32)),
        3 => Some(BigUint::parse_bytes(b"6670903752021072936960", 10).expect("literal parses")),
        _ => None,
    }
}

/// Exact acceptance probability of a formula at order n.
pub fn closed_form(formula: FormulaId, n: u32) -> Result<ClosedForm> {
    if n == 0 {
        return Err(Error::ZeroOrder);
    }
    let n64 = u64::from(n);
    let fact = big_factorial(n);
    match formula {
        // n! / n^n
        FormulaId::P1 => Ok(ClosedForm {
            numerator: fact,
            denominator: big_pow(BigUint::from(n), n64)?,
        }),
        // (n!)^2n / n^(2n²)
        FormulaId::P3 => Ok(ClosedForm {
            numerator: big_pow(fact, 2 * n64)?,
            denominator: big_pow(BigUint::from(n), 2 * n64 * n64)?,
        }),
        // (n!)^2n / 2^(n⁴)
        FormulaId::P5 => Ok(ClosedForm {
            numerator: big_pow(fact, 2 * n64)?,
            denominator: big_pow(BigUint::from(2u32), n64.pow(4))?,
        }),
        // σ_n / (n²)^(n⁴): the ambient space is every n² x n² matrix
        // over {1, …, n²}, one value per cell
        FormulaId::P6 => {
            let numerator = sigma(n).ok_or(Error::UnknownSigma(n))?;
            Ok(ClosedForm {
                numerator,
                denominator: big_pow(BigUint::from(n) * n, n64.pow(4))?,
            })
        }
    }
}

/// One probability measurement against its closed form.
#[derive(Debug, Clone, PartialEq)]
pub struct ProbabilityRow {
    pub formula_id: FormulaId,
    pub n: u32,
    pub closed_form: ClosedForm,
    pub empirical: f64,
    pub trials: u64,
    pub abs_error: f64,
}

impl ProbabilityRow {
    pub const CSV_HEADER: &'static str =
        "formula_id,n,closed_form_num,closed_form_den,empirical,trials,abs_error";

    pub fn to_csv_row(&self) -> String {
        format!(
            "{},{},{},{},{},{},{}",
            self.formula_id,
            self.n,
            self.closed_form.numerator,
            self.closed_form.denominator,
            self.empirical,
            self.trials,
            self.abs_error
        )
    }
}

impl Serialize for ProbabilityRow {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let mut s = serializer.serialize_struct("ProbabilityRow", 7)?;
        s.serialize_field("formula_id", self.formula_id.as_str())?;
        s.serialize_field("n", &self.n)?;
        s.serialize_field("closed_form_num", &self.closed_form.numerator.to_string())?;
        s.serialize_field("closed_form_den", &self.closed_form.denominator.to_string())?;
        s.serialize_field("empirical", &self.empirical)?;
        s.serialize_field("trials", &self.trials)?;
        s.serialize_field("abs_error", &self.abs_error)?;
        s.end()
    }
}

/// Estimates one acceptance probability by Monte Carlo, pairing the
/// empirical rate with the exact closed form.
///
/// The binary-matrix formula at n <= 2 is computed exhaustively instead
/// (the full candidate space is smaller than any useful trial count);
/// the row's `trials` then reports the scan size.
pub fn estimate_probability(
    formula: FormulaId,
    n: u32,
    trials: u64,
    src: &mut RandomSource,
) -> Result<ProbabilityRow> {
    if n == 0 {
        return Err(Error::ZeroOrder);
    }
    if trials == 0 {
        return Err(Error::BadArgument("trials must be at least 1".into()));
    }
    let closed = closed_form(formula, n)?;
    let (empirical, trials) = match formula {
        FormulaId::P1 => {
            let mut values = vec![0u32; n as usize];
            (
                rate(trials, || {
                    for v in &mut values {
                        *v = src.bounded(n) + 1;
                    }
                    is_permutation(&values)
                }),
                trials,
            )
        }
        FormulaId::P3 => {
            let mut values = vec![0u32; 2 * (n as usize) * (n as usize)];
            (
                rate(trials, || {
                    for v in &mut values {
                        *v = src.bounded(n) + 1;
                    }
                    is_pi(&values, n)
                }),
                trials,
            )
        }
        FormulaId::P5 if n <= 2 => exhaustive_binary_rate(n)?,
        FormulaId::P5 => {
            let bits = (n as usize).pow(4);
            let mut entries = vec![0u32; bits];
            (
                rate(trials, || {
                    for e in &mut entries {
                        *e = src.bounded(2);
                    }
                    is_s_permutation(&entries, n).expect("binary by construction")
                }),
                trials,
            )
        }
        FormulaId::P6 => {
            let n2 = n * n;
            let mut cells = vec![0u32; (n as usize).pow(4)];
            (
                rate(trials, || {
                    for c in &mut cells {
                        *c = src.bounded(n2) + 1;
                    }
                    is_sudoku(&cells, n)
                }),
                trials,
            )
        }
    };
    let abs_error = (empirical - closed.value()).abs();
    Ok(ProbabilityRow {
        formula_id: formula,
        n,
        closed_form: closed,
        empirical,
        trials,
        abs_error,
    })
}

fn rate(trials: u64, mut trial: impl FnMut() -> bool) -> f64 {
    let mut hits = 0u64;
    for _ in 0..trials {
        if trial() {
            hits += 1;
        }
    }
    hits as f64 / trials as f64
}

/// Scans every binary n² x n² matrix and returns the exact member rate.
fn exhaustive_binary_rate(n: u32) -> Result<(f64, u64)> {
    let bits = (n as usize).pow(4);
    let total = 1u64 << bits;
    let mut entries = vec![0u32; bits];
    let mut hits = 0u64;
    for pattern in 0..total {
        for (k, e) in entries.iter_mut().enumerate() {
            *e = (pattern >> k & 1) as u32;
        }
        if is_s_permutation(&entries, n)? {
            hits += 1;
        }
    }
    Ok((hits as f64 / total as f64, total))
}

/// The measurable generator and checker cost models.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum AlgorithmId {
    /// Permutation membership check, linear scan.
    IsPermutation,
    /// Direct permutation generator with the literal pool shift.
    PermutationShift,
    /// One rejection iteration for a Pi matrix: 2n² draws plus the check.
    PiIteration,
    /// Direct Pi generator built on the shifting permutation generator.
    PiDirectShift,
    /// S-permutation membership check, row/column/block sweep.
    IsSPermutation,
    /// Sudoku membership check, 3n² permutation checks.
    IsSudoku,
}

impl AlgorithmId {
    pub const ALL: [AlgorithmId; 6] = [
        Self::IsPermutation,
        Self::PermutationShift,
        Self::PiIteration,
        Self::PiDirectShift,
        Self::IsSPermutation,
        Self::IsSudoku,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            Self::IsPermutation => "is-permutation",
            Self::PermutationShift => "perm-shift",
            Self::PiIteration => "pi-iteration",
            Self::PiDirectShift => "pi-direct",
            Self::IsSPermutation => "is-sperm",
            Self::IsSudoku => "is-sudoku",
        }
    }

    /// Asymptotic label and exponent the cost model claims.
    pub fn claimed_order(self) -> (&'static str, f64) {
        match self {
            Self::IsPermutation => ("n", 1.0),
            Self::PermutationShift => ("n^2", 2.0),
            Self::PiIteration => ("n^2", 2.0),
            Self::PiDirectShift => ("n^3", 3.0),
            Self::IsSPermutation => ("n^4", 4.0),
            Self::IsSudoku => ("n^4", 4.0),
        }
    }
}

impl fmt::Display for AlgorithmId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for AlgorithmId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Self::ALL
            .into_iter()
            .find(|a| a.as_str() == s)
            .ok_or_else(|| Error::BadArgument(format!("unknown algorithm {s:?}")))
    }
}

/// Mean per-iteration cost of one algorithm at one order.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TimingRow {
    pub algorithm_id: AlgorithmId,
    pub n: u32,
    pub mean_iteration_time: Duration,
    pub claimed_order: &'static str,
}

impl TimingRow {
    pub const CSV_HEADER: &'static str = "algorithm_id,n,mean_iteration_ns,claimed_order";

    pub fn to_csv_row(&self) -> String {
        format!(
            "{},{},{},{}",
            self.algorithm_id,
            self.n,
            self.mean_iteration_time.as_nanos(),
            self.claimed_order
        )
    }
}

impl Serialize for TimingRow {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let mut s = serializer.serialize_struct("TimingRow", 4)?;
        s.serialize_field("algorithm_id", self.algorithm_id.as_str())?;
        s.serialize_field("n", &self.n)?;
        s.serialize_field(
            "mean_iteration_ns",
            &(self.mean_iteration_time.as_nanos() as u64),
        )?;
        s.serialize_field("claimed_order", self.claimed_order)?;
        s.end()
    }
}

/// A growth measurement: per-order timings and the log-log slope.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct GrowthReport {
    pub rows: Vec<TimingRow>,
    pub fitted_exponent: f64,
    pub claimed_exponent: f64,
}

/// Measures the mean per-iteration time of `algorithm` over the given
/// orders and fits a power-law exponent by least squares on the log-log
/// points.
///
/// Warm-up runs are discarded, each batch is auto-scaled to at least a
/// millisecond of work, and the reported mean is the median over
/// repeated batches. Exponents are environment-dependent output, not
/// assertions.
pub fn measure_growth(
    algorithm: AlgorithmId,
    n_values: &[u32],
    repetitions: u64,
) -> Result<GrowthReport> {
    if n_values.len() < 4 {
        return Err(Error::BadArgument(
            "growth measurement needs at least 4 orders".into(),
        ));
    }
    if n_values.windows(2).any(|w| w[0] >= w[1]) {
        return Err(Error::BadArgument(
            "orders must be strictly increasing".into(),
        ));
    }
    if n_values[0] == 0 {
        return Err(Error::ZeroOrder);
    }
    let mut rows = Vec::with_capacity(n_values.len());
    for &n in n_values {
        let mean = median_batch_time(algorithm, n, repetitions.max(1))?;
        rows.push(TimingRow {
            algorithm_id: algorithm,
            n,
            mean_iteration_time: mean,
            claimed_order: algorithm.claimed_order().0,
        });
    }
    let points: Vec<(f64, f64)> = rows
        .iter()
        .map(|r| {
            (
                f64::from(r.n).ln(),
                r.mean_iteration_time
                    .as_secs_f64()
                    .max(f64::MIN_POSITIVE)
                    .ln(),
            )
        })
        .collect();
    Ok(GrowthReport {
        rows,
        fitted_exponent: slope(&points),
        claimed_exponent: algorithm.claimed_order().1,
    })
}

fn slope(points: &[(f64, f64)]) -> f64 {
    let k = points.len() as f64;
    let mx = points.iter().map(|p| p.0).sum::<f64>() / k;
    let my = points.iter().map(|p| p.1).sum::<f64>() / k;
    let sxy: f64 = points.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
    let sxx: f64 = points.iter().map(|p| (p.0 - mx) * (p.0 - mx)).sum();
    sxy / sxx
}

fn median_batch_time(algorithm: AlgorithmId, n: u32, repetitions: u64) -> Result<Duration> {
    use std::hint::black_box;

    let mut src = RandomSource::new(0x6d65_6173);
    let mut iteration: Box<dyn FnMut()> = match algorithm {
        AlgorithmId::IsPermutation => {
            let values = random_permutation_direct(&mut src, n)?.into_values();
            Box::new(move || {
                black_box(is_permutation(black_box(&values)));
            })
        }
        AlgorithmId::PermutationShift => Box::new(move || {
            black_box(random_permutation_shift(&mut src, n).expect("n >= 1"));
        }),
        AlgorithmId::PiIteration => {
            let mut values = vec![0u32; 2 * (n as usize) * (n as usize)];
            Box::new(move || {
                for v in &mut values {
                    *v = src.bounded(n) + 1;
                }
                black_box(is_pi(black_box(&values), n));
            })
        }
        AlgorithmId::PiDirectShift => Box::new(move || {
            let mut values = Vec::with_capacity(2 * (n as usize) * (n as usize));
            for _ in 0..2 * n {
                values.extend(
                    random_permutation_shift(&mut src, n)
                        .expect("n >= 1")
                        .into_values(),
                );
            }
            black_box(values);
        }),
        AlgorithmId::IsSPermutation => {
            let entries = crate::sperm::phi(&crate::pi::random_pi(&mut src, n)?).to_dense();
            Box::new(move || {
                black_box(is_s_permutation(black_box(&entries), n).expect("binary"));
            })
        }
        AlgorithmId::IsSudoku => {
            let cells = SudokuMatrix::cyclic(n)?.cells().to_vec();
            Box::new(move || {
                black_box(is_sudoku(black_box(&cells), n));
            })
        }
    };

    // warm-up, discarded
    iteration();

    // scale the batch to at least one millisecond of work
    let mut reps = repetitions;
    loop {
        let t = run_batch(&mut iteration, reps);
        if t >= Duration::from_millis(1) || reps >= 1 << 24 {
            break;
        }
        reps *= 2;
    }

    let mut means: Vec<Duration> = (0..5)
        .map(|_| run_batch(&mut iteration, reps) / u32::try_from(reps).unwrap_or(u32::MAX))
        .collect();
    means.sort();
    Ok(means[means.len() / 2])
}

fn run_batch(iteration: &mut dyn FnMut(), reps: u64) -> Duration {
    let start = Instant::now();
    for _ in 0..reps {
        iteration();
    }
    start.elapsed()
}

/// The pool-based direct permutation generator with the literal O(n)
/// left shift after each deletion, preserved for its quadratic cost
/// model; the distribution is identical to the swap-based generator.
pub fn random_permutation_shift(src: &mut RandomSource, n: u32) -> Result<Permutation> {
    if n == 0 {
        return Err(Error::ZeroOrder);
    }
    let mut pool: Vec<u32> = (1..=n).collect();
    let mut values = Vec::with_capacity(n as usize);
    for remaining in (1..=n).rev() {
        let idx = src.bounded(remaining) as usize;
        values.push(pool[idx]);
        pool.remove(idx);
    }
    Ok(Permutation::from_values_unchecked(values))
}

/// Chi-square statistic of observed counts against the uniform
/// distribution over the buckets.
pub fn chi_square_uniform(counts: &[u64]) -> f64 {
    assert!(!counts.is_empty(), "need at least one bucket");
    let total: u64 = counts.iter().sum();
    let expected = total as f64 / counts.len() as f64;
    counts
        .iter()
        .map(|&o| {
            let d = o as f64 - expected;
            d * d / expected
        })
        .sum()
}
