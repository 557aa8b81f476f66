use std::fs;
use std::path::Path;

use sudokurand::{
    assemble, estimate_probability, is_permutation, is_pi, is_s_permutation, is_sudoku,
    measure_growth, phi, phi_inverse, random_permutation_direct, random_pi, random_tuple,
    sample_until, AssemblyPolicy, CountDomain, Error as CoreError, Permutation, PiMatrix,
    ProbabilityRow, RandomSource, SPermMatrix, SudokuMatrix, TimingRow,
};

use crate::args::{
    Args, BenchCommand, Command, ConvertArgs, ConvertDirection, CountArgs, GenArgs, GenMethod,
    GrowthArgs, ObjectFormat, ObjectKind, ProbArgs, ReportFormat, ValidateArgs,
};

/// Failure classified by the exit code it maps to.
#[derive(Debug)]
pub enum CliError {
    /// Exit 1: the object is not a member (or cannot even be parsed).
    Invalid(String),
    /// Exit 2: bad arguments or unusable input/output paths.
    Usage(String),
    /// Exit 3: a retry or restart budget ran out.
    Exhausted(String),
}

impl CliError {
    pub fn message(&self) -> &str {
        match self {
            Self::Invalid(m) | Self::Usage(m) | Self::Exhausted(m) => m,
        }
    }

    pub fn exit_code(&self) -> u8 {
        match self {
            Self::Invalid(_) => 1,
            Self::Usage(_) => 2,
            Self::Exhausted(_) => 3,
        }
    }
}

impl From<CoreError> for CliError {
    fn from(err: CoreError) -> Self {
        match err {
            CoreError::RetriesExhausted(_) | CoreError::RestartBudgetExhausted(_) => {
                Self::Exhausted(err.to_string())
            }
            CoreError::Invalid(_)
            | CoreError::NonBinaryEntry { .. }
            | CoreError::Parse(_)
            | CoreError::OrderMismatch { .. } => Self::Invalid(err.to_string()),
            CoreError::ZeroOrder
            | CoreError::AboveCap { .. }
            | CoreError::UnknownSigma(_)
            | CoreError::BadArgument(_) => Self::Usage(err.to_string()),
        }
    }
}

type CliResult<T = ()> = Result<T, CliError>;

pub fn run(args: Args) -> CliResult {
    match args.command {
        Command::Gen(a) => gen(a),
        Command::Validate(a) => validate(a),
        Command::Count(a) => count(a),
        Command::Bench(BenchCommand::Prob(a)) => bench_prob(a),
        Command::Bench(BenchCommand::Growth(a)) => bench_growth(a),
        Command::Convert(a) => convert(a),
    }
}

/// Uses the given seed, or draws one from entropy and echoes it to
/// stderr so the run stays reproducible after the fact.
fn resolve_seed(seed: Option<u64>) -> u64 {
    match seed {
        Some(s) => s,
        None => {
            let s = RandomSource::from_entropy().seed();
            eprintln!("seed: {s}");
            s
        }
    }
}

fn read_input(path: &Path) -> CliResult<String> {
    fs::read_to_string(path)
        .map_err(|e| CliError::Usage(format!("cannot read {}: {e}", path.display())))
}

fn emit(output: Option<&Path>, content: &str) -> CliResult {
    match output {
        Some(path) => fs::write(path, content)
            .map_err(|e| CliError::Usage(format!("cannot write {}: {e}", path.display()))),
        None => {
            print!("{content}");
            Ok(())
        }
    }
}

fn looks_like_json(text: &str) -> bool {
    text.trim_start().starts_with('{')
}

// ---------------------------------------------------------------- gen

fn gen(args: GenArgs) -> CliResult {
    if args.n == 0 {
        return Err(CoreError::ZeroOrder.into());
    }
    let seed = resolve_seed(args.seed);
    let policy = AssemblyPolicy {
        per_step_attempts: args.per_step_attempts,
        max_restarts: args.max_restarts,
    };
    let render = |index: u64| -> CliResult<String> {
        let mut src = RandomSource::new(seed.wrapping_add(index));
        render_object(&args, policy, &mut src)
    };

    let pieces: Vec<String> = if args.parallel && args.count > 1 {
        render_parallel(args.count, &render)?
    } else {
        (0..args.count).map(render).collect::<CliResult<_>>()?
    };

    let separator = match args.format {
        ObjectFormat::Json => "",
        ObjectFormat::Grid | ObjectFormat::Csv => "\n",
    };
    emit(args.output.as_deref(), &pieces.join(separator))
}

fn render_parallel(
    count: u64,
    render: &(impl Fn(u64) -> CliResult<String> + Sync),
) -> CliResult<Vec<String>> {
    let workers = std::thread::available_parallelism()
        .map(|p| p.get() as u64)
        .unwrap_or(1)
        .min(count)
        .max(1);
    let mut indexed: Vec<(u64, String)> = std::thread::scope(|scope| {
        let handles: Vec<_> = (0..workers)
            .map(|w| {
                scope.spawn(move || -> CliResult<Vec<(u64, String)>> {
                    (w..count)
                        .step_by(workers as usize)
                        .map(|i| render(i).map(|s| (i, s)))
                        .collect()
                })
            })
            .collect();
        handles
            .into_iter()
            .map(|h| h.join().expect("worker panicked"))
            .collect::<CliResult<Vec<_>>>()
            .map(|chunks| chunks.into_iter().flatten().collect())
    })?;
    indexed.sort_by_key(|&(i, _)| i);
    Ok(indexed.into_iter().map(|(_, s)| s).collect())
}

fn render_object(
    args: &GenArgs,
    policy: AssemblyPolicy,
    src: &mut RandomSource,
) -> CliResult<String> {
    let n = args.n;
    let cap = Some(args.max_attempts);
    match args.kind {
        ObjectKind::Perm => {
            let p = match args.method {
                GenMethod::Direct => random_permutation_direct(src, n)?,
                GenMethod::Rejection => {
                    let (t, _) = sample_until(
                        || random_tuple(src, n).expect("n >= 1"),
                        |t| is_permutation(t.values()),
                        cap,
                    )?;
                    Permutation::new(t.into_values())?
                }
            };
            render_perm(&p, args.format)
        }
        ObjectKind::Pi => {
            let m = match args.method {
                GenMethod::Direct => random_pi(src, n)?,
                GenMethod::Rejection => {
                    let len = 2 * (n as usize) * (n as usize);
                    let (values, _) = sample_until(
                        || {
                            (0..len)
                                .map(|_| src.uniform(n).expect("n >= 1"))
                                .collect::<Vec<u32>>()
                        },
                        |v| is_pi(v, n),
                        cap,
                    )?;
                    PiMatrix::new(n, values)?
                }
            };
            render_pi(&m, args.format)
        }
        ObjectKind::Sperm => {
            let a = match args.method {
                GenMethod::Direct => phi(&random_pi(src, n)?),
                GenMethod::Rejection => {
                    let len = (n as usize).pow(4);
                    let (entries, _) = sample_until(
                        || {
                            (0..len)
                                .map(|_| src.uniform(2).expect("n >= 1") - 1)
                                .collect::<Vec<u32>>()
                        },
                        |e| is_s_permutation(e, n).expect("binary by construction"),
                        cap,
                    )?;
                    SPermMatrix::from_dense(n, &entries)?
                }
            };
            render_sperm(&a, args.format)
        }
        ObjectKind::Sudoku => {
            let m = match args.method {
                GenMethod::Direct => assemble(src, n, policy)?.0,
                GenMethod::Rejection => {
                    let len = (n as usize).pow(4);
                    let n2 = n * n;
                    let (cells, _) = sample_until(
                        || {
                            (0..len)
                                .map(|_| src.uniform(n2).expect("n >= 1"))
                                .collect::<Vec<u32>>()
                        },
                        |c| is_sudoku(c, n),
                        cap,
                    )?;
                    SudokuMatrix::new(n, cells)?
                }
            };
            render_sudoku(&m, args.format)
        }
    }
}

fn render_perm(p: &Permutation, format: ObjectFormat) -> CliResult<String> {
    Ok(match format {
        ObjectFormat::Grid => format!("{p}\n"),
        ObjectFormat::Json => to_json_line(p)?,
        ObjectFormat::Csv => {
            let cells: Vec<String> = p.values().iter().map(u32::to_string).collect();
            format!("{}\n", cells.join(","))
        }
    })
}

fn render_pi(m: &PiMatrix, format: ObjectFormat) -> CliResult<String> {
    Ok(match format {
        ObjectFormat::Grid => m.to_text(),
        ObjectFormat::Json => to_json_line(m)?,
        ObjectFormat::Csv => m.to_csv(),
    })
}

fn render_sperm(a: &SPermMatrix, format: ObjectFormat) -> CliResult<String> {
    Ok(match format {
        ObjectFormat::Grid => a.to_grid(true),
        ObjectFormat::Json => to_json_line(a)?,
        ObjectFormat::Csv => a.to_csv(),
    })
}

fn render_sudoku(m: &SudokuMatrix, format: ObjectFormat) -> CliResult<String> {
    Ok(match format {
        ObjectFormat::Grid => m.to_grid(true),
        ObjectFormat::Json => to_json_line(m)?,
        ObjectFormat::Csv => m.to_csv(),
    })
}

fn to_json_line<T: serde::Serialize>(value: &T) -> CliResult<String> {
    serde_json::to_string(value)
        .map(|s| s + "\n")
        .map_err(|e| CliError::Invalid(format!("cannot serialize: {e}")))
}

// ----------------------------------------------------------- validate

fn validate(args: ValidateArgs) -> CliResult {
    let text = read_input(&args.input)?;
    let (label, n) = match args.kind {
        ObjectKind::Perm => {
            let p = parse_perm(&text)?;
            ("permutation", p.n())
        }
        ObjectKind::Pi => {
            let m = parse_pi(&text)?;
            ("Pi matrix", m.n())
        }
        ObjectKind::Sperm => {
            let a = parse_sperm(&text)?;
            ("S-permutation matrix", a.n())
        }
        ObjectKind::Sudoku => {
            let m = parse_sudoku(&text)?;
            ("Sudoku matrix", m.n())
        }
    };
    println!("valid {label} of order {n}");
    Ok(())
}

fn parse_perm(text: &str) -> CliResult<Permutation> {
    if looks_like_json(text) {
        serde_json::from_str(text).map_err(|e| CliError::Invalid(e.to_string()))
    } else {
        Ok(Permutation::parse_text(text)?)
    }
}

fn parse_pi(text: &str) -> CliResult<PiMatrix> {
    if looks_like_json(text) {
        serde_json::from_str(text).map_err(|e| CliError::Invalid(e.to_string()))
    } else {
        Ok(PiMatrix::parse_text(text)?)
    }
}

fn parse_sperm(text: &str) -> CliResult<SPermMatrix> {
    if looks_like_json(text) {
        serde_json::from_str(text).map_err(|e| CliError::Invalid(e.to_string()))
    } else {
        Ok(SPermMatrix::parse_text(text)?)
    }
}

fn parse_sudoku(text: &str) -> CliResult<SudokuMatrix> {
    if looks_like_json(text) {
        serde_json::from_str(text).map_err(|e| CliError::Invalid(e.to_string()))
    } else {
        Ok(SudokuMatrix::parse_text(text)?)
    }
}

// -------------------------------------------------------------- count

fn count(args: CountArgs) -> CliResult {
    let domain = match args.kind {
        ObjectKind::Perm => CountDomain::Permutations,
        ObjectKind::Pi => CountDomain::Pi,
        ObjectKind::Sperm => CountDomain::SPerm,
        ObjectKind::Sudoku => CountDomain::Sudoku,
    };
    let report = sudokurand::enumerate::report(domain, args.n)?;
    match args.format {
        ReportFormat::Table => println!(
            "domain={} n={} count={} expected={} match={}",
            report.domain_name, args.n, report.count, report.expected, report.matches
        ),
        ReportFormat::Json => println!(
            "{}",
            serde_json::to_string(&report)
                .map_err(|e| CliError::Invalid(format!("cannot serialize: {e}")))?
        ),
        ReportFormat::Csv => {
            println!("domain_name,n,count,expected,match");
            println!(
                "{},{},{},{},{}",
                report.domain_name, args.n, report.count, report.expected, report.matches
            );
        }
    }
    Ok(())
}

// -------------------------------------------------------------- bench

fn bench_prob(args: ProbArgs) -> CliResult {
    let seed = resolve_seed(args.seed);
    let mut src = RandomSource::new(seed);
    let row = estimate_probability(args.formula, args.n, args.trials, &mut src)?;
    match args.format {
        ReportFormat::Csv => {
            println!("{}", ProbabilityRow::CSV_HEADER);
            println!("{}", row.to_csv_row());
        }
        ReportFormat::Json => println!(
            "{}",
            serde_json::to_string(&row)
                .map_err(|e| CliError::Invalid(format!("cannot serialize: {e}")))?
        ),
        ReportFormat::Table => println!(
            "formula={} n={} closed_form={} ({:.6e}) empirical={:.6e} trials={} abs_error={:.3e}",
            row.formula_id,
            row.n,
            row.closed_form,
            row.closed_form.value(),
            row.empirical,
            row.trials,
            row.abs_error
        ),
    }
    Ok(())
}

fn bench_growth(args: GrowthArgs) -> CliResult {
    let report = measure_growth(args.algorithm, &args.n_values, args.repetitions)?;
    match args.format {
        ReportFormat::Csv => {
            println!("{}", TimingRow::CSV_HEADER);
            for row in &report.rows {
                println!("{}", row.to_csv_row());
            }
            println!(
                "# fitted_exponent={:.3} claimed_exponent={}",
                report.fitted_exponent, report.claimed_exponent
            );
        }
        ReportFormat::Json => println!(
            "{}",
            serde_json::to_string(&report)
                .map_err(|e| CliError::Invalid(format!("cannot serialize: {e}")))?
        ),
        ReportFormat::Table => {
            for row in &report.rows {
                println!(
                    "algorithm={} n={} mean_iteration={:?} claimed={}",
                    row.algorithm_id, row.n, row.mean_iteration_time, row.claimed_order
                );
            }
            println!(
                "fitted_exponent={:.3} claimed_exponent={}",
                report.fitted_exponent, report.claimed_exponent
            );
        }
    }
    Ok(())
}

// ------------------------------------------------------------ convert

fn convert(args: ConvertArgs) -> CliResult {
    let text = read_input(&args.input)?;
    let rendered = match args.direction {
        ConvertDirection::PiToSperm => {
            let m = parse_pi(&text)?;
            render_sperm(&phi(&m), args.format)?
        }
        ConvertDirection::SpermToPi => {
            let a = parse_sperm(&text)?;
            render_pi(&phi_inverse(&a), args.format)?
        }
    };
    emit(args.output.as_deref(), &rendered)
}
