//! Sudoku matrices: validation, randomized assembly from mutually
//! disjoint S-permutation layers, and the weighted-sum decomposition.
//!
//! A Sudoku matrix of order n is an n² x n² matrix over `{1, …, n²}`
//! whose every row, column and n x n block is a permutation. It is
//! exactly the weighted sum `1·A₁ + 2·A₂ + … + n²·A_{n²}` of pairwise
//! disjoint S-permutation matrices, which is what the assembler builds
//! layer by layer.

use std::fmt;
use std::time::{Duration, Instant};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::perm::is_permutation;
use crate::pi::random_pi;
use crate::rng::RandomSource;
use crate::sperm::{phi, SPermMatrix};
use crate::textgrid;

/// A validated n² x n² Sudoku matrix, cells flat row-major.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "SudokuMatrixRepr", into = "SudokuMatrixRepr")]
pub struct SudokuMatrix {
    n: u32,
    cells: Vec<u32>,
}

impl SudokuMatrix {
    /// Validates a flat row-major cell sequence of length n⁴.
    pub fn new(n: u32, cells: Vec<u32>) -> Result<Self> {
        match sudoku_violation(&cells, n) {
            None => Ok(Self { n, cells }),
            Some(reason) => Err(Error::Invalid(reason)),
        }
    }

    /// The canonical cyclic member of any order:
    /// `cell(r, c) = ((r mod n)·n + r/n + c) mod n² + 1`.
    pub fn cyclic(n: u32) -> Result<Self> {
        if n == 0 {
            return Err(Error::ZeroOrder);
        }
        let n = n as usize;
        let n2 = n * n;
        let cells = (0..n2 * n2)
            .map(|idx| {
                let (r, c) = (idx / n2, idx % n2);
                (((r % n) * n + r / n + c) % n2 + 1) as u32
            })
            .collect();
        Ok(Self { n: n as u32, cells })
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    /// Flat row-major cells, length n⁴.
    pub fn cells(&self) -> &[u32] {
        &self.cells
    }

    pub fn get(&self, i: usize, j: usize) -> u32 {
        let n2 = (self.n as usize) * (self.n as usize);
        self.cells[i * n2 + j]
    }

    /// Grid text; `separators` draws the block rulers of the usual
    /// printed layout.
    pub fn to_grid(&self, separators: bool) -> String {
        textgrid::format_square(&self.cells, self.n as usize, separators)
    }

    pub fn to_csv(&self) -> String {
        let n2 = (self.n as usize) * (self.n as usize);
        textgrid::format_csv(&self.cells, n2)
    }

    /// Parses grid or CSV text (decoration tolerated).
    pub fn parse_text(text: &str) -> Result<Self> {
        let rows = textgrid::rows(text)?;
        let len = rows.len();
        let n = (len as f64).sqrt().round() as usize;
        if n == 0 || n * n != len {
            return Err(Error::Parse(format!(
                "{len} rows do not form an n² x n² grid"
            )));
        }
        Self::new(n as u32, rows.into_iter().flatten().collect())
    }
}

impl fmt::Display for SudokuMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_grid(false))
    }
}

#[derive(Serialize, Deserialize)]
struct SudokuMatrixRepr {
    n: u32,
    cells: Vec<Vec<u32>>,
}

impl TryFrom<SudokuMatrixRepr> for SudokuMatrix {
    type Error = Error;

    fn try_from(repr: SudokuMatrixRepr) -> Result<Self> {
        let n2 = (repr.n as usize) * (repr.n as usize);
        if repr.cells.len() != n2 || repr.cells.iter().any(|r| r.len() != n2) {
            return Err(Error::Parse(format!(
                "cells do not form the declared {n2} x {n2} grid"
            )));
        }
        SudokuMatrix::new(repr.n, repr.cells.into_iter().flatten().collect())
    }
}

impl From<SudokuMatrix> for SudokuMatrixRepr {
    fn from(m: SudokuMatrix) -> Self {
        let n2 = (m.n as usize) * (m.n as usize);
        Self {
            n: m.n,
            cells: m.cells.chunks(n2).map(<[u32]>::to_vec).collect(),
        }
    }
}

/// Membership test on a flat candidate: all n² rows, n² columns and n²
/// blocks must be permutations of `{1, …, n²}`. Shape mismatches answer
/// `false`.
pub fn is_sudoku(cells: &[u32], n: u32) -> bool {
    if n == 0 {
        return false;
    }
    let n = n as usize;
    let n2 = n * n;
    if cells.len() != n2 * n2 {
        return false;
    }
    let mut line = vec![0u32; n2];
    for i in 0..n2 {
        if !is_permutation(&cells[i * n2..(i + 1) * n2]) {
            return false;
        }
    }
    for j in 0..n2 {
        for i in 0..n2 {
            line[i] = cells[i * n2 + j];
        }
        if !is_permutation(&line) {
            return false;
        }
    }
    for s in 0..n {
        for t in 0..n {
            for k in 0..n {
                for l in 0..n {
                    line[k * n + l] = cells[(s * n + k) * n2 + (t * n + l)];
                }
            }
            if !is_permutation(&line) {
                return false;
            }
        }
    }
    true
}

/// Names the first violated row, column or block, or `None` for a member.
pub fn sudoku_violation(cells: &[u32], n: u32) -> Option<String> {
    if n == 0 {
        return Some("order must be at least 1".into());
    }
    let n = n as usize;
    let n2 = n * n;
    if cells.len() != n2 * n2 {
        return Some(format!(
            "expected {} cells for an {n2} x {n2} matrix, found {}",
            n2 * n2,
            cells.len()
        ));
    }
    for i in 0..n2 {
        if !is_permutation(&cells[i * n2..(i + 1) * n2]) {
            return Some(format!("row {i} is not a permutation of 1..={n2}"));
        }
    }
    let mut line = vec![0u32; n2];
    for j in 0..n2 {
        for i in 0..n2 {
            line[i] = cells[i * n2 + j];
        }
        if !is_permutation(&line) {
            return Some(format!("column {j} is not a permutation of 1..={n2}"));
        }
    }
    for s in 0..n {
        for t in 0..n {
            for k in 0..n {
                for l in 0..n {
                    line[k * n + l] = cells[(s * n + k) * n2 + (t * n + l)];
                }
            }
            if !is_permutation(&line) {
                return Some(format!("block ({s}, {t}) is not a permutation of 1..={n2}"));
            }
        }
    }
    None
}

/// Retry policy of the assembler.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct AssemblyPolicy {
    /// Candidate draws allowed for one layer before the whole partial
    /// family is discarded.
    pub per_step_attempts: u64,
    /// Full restarts allowed before giving up.
    pub max_restarts: u64,
}

impl Default for AssemblyPolicy {
    fn default() -> Self {
        Self {
            per_step_attempts: 100_000,
            max_restarts: 100,
        }
    }
}

/// Instrumentation of one assembly run.
///
/// On success `pi_matrices_generated = n² + rejections + discarded`:
/// every draw was either kept in the final family, rejected as
/// non-disjoint, or accepted earlier and then thrown away by a restart.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct AssemblyReport {
    /// Total Pi-matrix candidates drawn.
    pub pi_matrices_generated: u64,
    /// Candidates rejected for overlapping the accumulated support.
    pub rejections: u64,
    /// Times the partial family was discarded and rebuilt from scratch.
    pub restarts: u64,
    /// Accepted layers thrown away by those restarts.
    pub discarded: u64,
    /// Wall time of the whole run.
    pub elapsed: Duration,
}

/// Assembles the n² pairwise-disjoint S-permutation layers of a random
/// Sudoku matrix, in weight order.
///
/// Each step draws a random Pi matrix, maps it through the bijection and
/// keeps it iff it is disjoint from the union of the layers accepted so
/// far (one word-wise sweep over the support bit set). A step that
/// exhausts `per_step_attempts` discards all progress and restarts,
/// since a partial family is not guaranteed extendable.
pub fn assemble_layers(
    src: &mut RandomSource,
    n: u32,
    policy: AssemblyPolicy,
) -> Result<(Vec<SPermMatrix>, AssemblyReport)> {
    if n == 0 {
        return Err(Error::ZeroOrder);
    }
    let start = Instant::now();
    let layer_count = (n as usize) * (n as usize);
    let mut report = AssemblyReport::default();
    let mut layers: Vec<SPermMatrix> = Vec::with_capacity(layer_count);
    let mut support: Vec<u64> = Vec::new();

    'restart: loop {
        layers.clear();
        support.clear();
        while layers.len() < layer_count {
            let mut attempts_this_step = 0u64;
            loop {
                if attempts_this_step >= policy.per_step_attempts {
                    report.discarded += layers.len() as u64;
                    if report.restarts >= policy.max_restarts {
                        report.elapsed = start.elapsed();
                        return Err(Error::RestartBudgetExhausted(report));
                    }
                    report.restarts += 1;
                    continue 'restart;
                }
                attempts_this_step += 1;
                report.pi_matrices_generated += 1;
                let candidate = phi(&random_pi(src, n)?);
                if support.is_empty() {
                    support = candidate.words().to_vec();
                    layers.push(candidate);
                    break;
                }
                let words = candidate.words();
                if words.iter().zip(&support).all(|(w, s)| w & s == 0) {
                    for (s, w) in support.iter_mut().zip(words) {
                        *s |= w;
                    }
                    layers.push(candidate);
                    break;
                }
                report.rejections += 1;
            }
        }
        report.elapsed = start.elapsed();
        return Ok((layers, report));
    }
}

/// Assembles a random Sudoku matrix: the weighted sum of
/// [`assemble_layers`], layer k carrying weight k.
pub fn assemble(
    src: &mut RandomSource,
    n: u32,
    policy: AssemblyPolicy,
) -> Result<(SudokuMatrix, AssemblyReport)> {
    let (layers, report) = assemble_layers(src, n, policy)?;
    let n2 = (n as usize) * (n as usize);
    let mut cells = vec![0u32; n2 * n2];
    for (idx, layer) in layers.iter().enumerate() {
        let weight = idx as u32 + 1;
        for (i, j) in layer.ones() {
            cells[i as usize * n2 + j as usize] = weight;
        }
    }
    debug_assert!(is_sudoku(&cells, n));
    Ok((SudokuMatrix { n, cells }, report))
}

/// Splits a Sudoku matrix into its n² S-permutation layers, in value
/// order: layer v holds a 1 exactly where the matrix holds v.
///
/// The layers are pairwise disjoint and their weighted sum reconstructs
/// the input.
pub fn decompose(m: &SudokuMatrix) -> Vec<SPermMatrix> {
    let n2 = (m.n as usize) * (m.n as usize);
    (1..=n2 as u32)
        .map(|v| {
            let ones = m
                .cells
                .iter()
                .enumerate()
                .filter(|&(_, &cell)| cell == v)
                .map(|(idx, _)| (idx / n2, idx % n2));
            SPermMatrix::from_ones_unchecked(m.n, ones)
        })
        .collect()
}
