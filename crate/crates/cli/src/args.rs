use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};
use sudokurand::{AlgorithmId, FormulaId};

#[derive(Debug, Parser)]
#[command(
    name = "sudokurand",
    version,
    about = "Random permutations, Pi matrices, \
S-permutation matrices and Sudoku matrices: generate, validate, count, convert and benchmark"
)]
pub struct Args {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Generate random objects with a reproducible seed
    Gen(GenArgs),
    /// Validate an object read from a file; exit 0 iff it is a member
    Validate(ValidateArgs),
    /// Exhaustively count objects at tiny orders against closed forms
    Count(CountArgs),
    /// Probability estimates and growth measurements
    #[command(subcommand)]
    Bench(BenchCommand),
    /// Apply the Pi/S-permutation bijection to a stored object
    Convert(ConvertArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ObjectKind {
    /// Permutation of {1, …, n}
    Perm,
    /// 2n x n matrix of row permutations
    Pi,
    /// n² x n² S-permutation matrix
    #[value(alias = "sigma")]
    Sperm,
    /// n² x n² Sudoku matrix
    Sudoku,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ObjectFormat {
    /// Plain text layout (block rulers for square matrices)
    Grid,
    /// One JSON object per line
    Json,
    /// Comma-separated rows
    Csv,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum GenMethod {
    /// Constructive generators (acceptance probability 1)
    Direct,
    /// Draw raw candidates and keep the first member
    Rejection,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ReportFormat {
    Table,
    Json,
    Csv,
}

#[derive(Debug, Parser)]
pub struct GenArgs {
    /// What to generate
    #[arg(value_enum)]
    pub kind: ObjectKind,
    /// Order n of the object
    #[arg(long)]
    pub n: u32,
    /// Seed; omitted means entropy-seeded, echoed to stderr
    #[arg(long)]
    pub seed: Option<u64>,
    /// Number of objects (object k uses seed + k)
    #[arg(long, default_value_t = 1)]
    pub count: u64,
    #[arg(long, value_enum, default_value_t = ObjectFormat::Grid)]
    pub format: ObjectFormat,
    /// Write here instead of stdout
    #[arg(long)]
    pub output: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = GenMethod::Direct)]
    pub method: GenMethod,
    /// Rejection draws allowed before giving up (rejection method)
    #[arg(long, default_value_t = 1_000_000)]
    pub max_attempts: u64,
    /// Candidate draws per Sudoku layer before a restart
    #[arg(long, default_value_t = 100_000)]
    pub per_step_attempts: u64,
    /// Sudoku assembly restarts before giving up
    #[arg(long, default_value_t = 100)]
    pub max_restarts: u64,
    /// Fan the objects out over worker threads
    #[arg(long)]
    pub parallel: bool,
}

#[derive(Debug, Parser)]
pub struct ValidateArgs {
    #[arg(value_enum)]
    pub kind: ObjectKind,
    /// File holding the object, JSON or text
    #[arg(long)]
    pub input: PathBuf,
}

#[derive(Debug, Parser)]
pub struct CountArgs {
    #[arg(value_enum)]
    pub kind: ObjectKind,
    #[arg(long)]
    pub n: u32,
    #[arg(long, value_enum, default_value_t = ReportFormat::Table)]
    pub format: ReportFormat,
}

#[derive(Debug, Subcommand)]
pub enum BenchCommand {
    /// Estimate an acceptance probability against its closed form
    Prob(ProbArgs),
    /// Measure per-iteration cost growth and fit the exponent
    Growth(GrowthArgs),
}

#[derive(Debug, Parser)]
pub struct ProbArgs {
    /// One of p1, p3, p5, p6
    #[arg(long)]
    pub formula: FormulaId,
    #[arg(long)]
    pub n: u32,
    #[arg(long, default_value_t = 100_000)]
    pub trials: u64,
    #[arg(long)]
    pub seed: Option<u64>,
    #[arg(long, value_enum, default_value_t = ReportFormat::Csv)]
    pub format: ReportFormat,
}

#[derive(Debug, Parser)]
pub struct GrowthArgs {
    /// One of is-permutation, perm-shift, pi-iteration, pi-direct,
    /// is-sperm, is-sudoku
    #[arg(long)]
    pub algorithm: AlgorithmId,
    /// At least four strictly increasing orders
    #[arg(long, value_delimiter = ',', num_args = 1..)]
    pub n_values: Vec<u32>,
    /// Starting batch size; scaled up until a batch covers a millisecond
    #[arg(long, default_value_t = 10)]
    pub repetitions: u64,
    #[arg(long, value_enum, default_value_t = ReportFormat::Csv)]
    pub format: ReportFormat,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ConvertDirection {
    /// Map a Pi matrix through the bijection
    PiToSperm,
    /// Recover the Pi matrix of an S-permutation matrix
    SpermToPi,
}

#[derive(Debug, Parser)]
pub struct ConvertArgs {
    #[arg(value_enum)]
    pub direction: ConvertDirection,
    /// File holding the source object, JSON or text
    #[arg(long)]
    pub input: PathBuf,
    /// Write here instead of stdout
    #[arg(long)]
    pub output: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = ObjectFormat::Json)]
    pub format: ObjectFormat,
}
