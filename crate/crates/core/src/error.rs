use crate::sampler::TrialStats;
use crate::sudoku::AssemblyReport;

/// Crate-wide result alias.
pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum Error {
    /// An order parameter was zero; every generator needs `n >= 1`.
    #[error("order must be at least 1")]
    ZeroOrder,

    /// An exhaustive enumeration was requested above its hard cap.
    #[error("order {n} exceeds the enumeration cap {cap}")]
    AboveCap { n: u32, cap: u32 },

    /// Two matrices of different orders were combined.
    #[error("order mismatch: {left} vs {right}")]
    OrderMismatch { left: u32, right: u32 },

    /// A matrix that must be binary holds something other than 0 or 1.
    /// Deliberately distinct from a `false` membership answer.
    #[error("entry at row {row}, column {col} is {value}; expected 0 or 1")]
    NonBinaryEntry { row: usize, col: usize, value: u32 },

    /// A candidate failed a membership check during construction or
    /// parsing. The message names the first violated constraint.
    #[error("{0}")]
    Invalid(String),

    /// `sample_until` hit its attempt cap; carries the stats so far.
    #[error("gave up after {} attempts in {:?}", .0.attempts, .0.elapsed)]
    RetriesExhausted(TrialStats),

    /// Sudoku assembly exhausted its restart budget.
    #[error(
        "assembly restart budget exhausted: {} restarts, {} candidates drawn",
        .0.restarts, .0.pi_matrices_generated
    )]
    RestartBudgetExhausted(AssemblyReport),

    /// The exact Sudoku count is only known for a few orders.
    #[error("the number of order-{0} Sudoku matrices is not known")]
    UnknownSigma(u32),

    /// Malformed textual or structural input.
    #[error("parse error: {0}")]
    Parse(String),

    /// An argument violated a documented precondition.
    #[error("invalid argument: {0}")]
    BadArgument(String),
}
