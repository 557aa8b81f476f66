//! Random permutations, Pi matrices, S-permutation matrices and Sudoku
//! matrices, built from a seedable uniform source, together with the
//! exhaustive small-order enumerations and probability estimates that
//! verify them.
//!
//! The pieces fit together like this:
//!
//! * [`rng`] provides the deterministic uniform source everything draws
//!   from; [`perm`] builds tuples and permutations on top of it.
//! * [`sampler`] is the generic draw-until-accepted loop with trial
//!   statistics.
//! * [`pi`] generates 2n x n matrices of row permutations; [`sperm`]
//!   maps them bijectively onto n² x n² S-permutation matrices.
//! * [`sudoku`] assembles n² mutually disjoint S-permutation layers
//!   into a Sudoku matrix and decomposes matrices back into layers.
//! * [`enumerate`] brute-forces the tiny orders exactly;
//!   [`bench`](mod@bench) checks the acceptance-probability formulas
//!   empirically and measures cost growth.

pub mod bench;
pub mod enumerate;
mod error;
pub mod perm;
pub mod pi;
pub mod rng;
pub mod sampler;
pub mod sperm;
pub mod sudoku;
mod textgrid;

pub use bench::{
    chi_square_uniform, closed_form, estimate_probability, measure_growth, sigma, AlgorithmId,
    ClosedForm, FormulaId, GrowthReport, ProbabilityRow, TimingRow,
};
pub use enumerate::{
    count_sudoku, enum_permutations, enum_pi, enum_sperm, CountDomain, EnumerationReport,
};
pub use error::{Error, Result};
pub use perm::{
    is_permutation, permutation_violation, random_permutation_direct, random_tuple, Permutation,
    Tuple,
};
pub use pi::{disjoint_pi, is_pi, pi_violation, random_pi, PiMatrix};
pub use rng::RandomSource;
pub use sampler::{acceptance_rate, sample_until, TrialStats};
pub use sperm::{
    block_value_pairs, disjoint_sperm, is_s_permutation, phi, phi_inverse, sperm_violation,
    BlockIndex, SPermMatrix,
};
pub use sudoku::{
    assemble, assemble_layers, decompose, is_sudoku, sudoku_violation, AssemblyPolicy,
    AssemblyReport, SudokuMatrix,
};
