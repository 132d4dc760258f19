use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use effmat::equality::{
    decide_equal_efficient_sets_capped, search_counterexamples_capped, EqualStatus,
    SearchStrategy,
};
use effmat::{efficiency_report, Error, DEFAULT_MAX_N};

use effmat_cli::io::{load_matrix, load_vector};
use effmat_cli::{report, CliError};

/// Exact efficient-vector analysis for reciprocal pairwise comparison
/// matrices: cycle enumeration, cone intervals, efficiency tests, order
/// analysis, efficient-set comparison, and counterexample search.
#[derive(Parser)]
#[command(name = "effmat", version, arg_required_else_help = true)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct OutputMode {
    /// Emit the report as JSON (the source of truth).
    #[arg(long, conflicts_with = "text")]
    json: bool,
    /// Emit the report as readable text (default).
    #[arg(long)]
    text: bool,
}

impl OutputMode {
    fn json(&self) -> bool {
        self.json
    }
}

#[derive(Args)]
struct CapArg {
    /// Dimension cap for cycle enumeration (overrides EFFMAT_MAX_N).
    #[arg(long, value_name = "N")]
    max_n: Option<usize>,
}

#[derive(Subcommand)]
enum Command {
    /// Full report: cycles, intervals, extremes, orders, global bounds.
    Analyze {
        matrix: PathBuf,
        #[command(flatten)]
        output: OutputMode,
        /// Also emit the path matrix of every directed Hamiltonian cycle.
        #[arg(long)]
        full: bool,
        #[command(flatten)]
        cap: CapArg,
    },
    /// Global lower and upper bound grids for efficient ratio matrices.
    Bounds {
        matrix: PathBuf,
        #[command(flatten)]
        output: OutputMode,
        #[command(flatten)]
        cap: CapArg,
    },
    /// Test a weight vector for efficiency; exit 0 when efficient, 1 when not.
    Test {
        matrix: PathBuf,
        vector: PathBuf,
        #[command(flatten)]
        output: OutputMode,
        #[command(flatten)]
        cap: CapArg,
    },
    /// Per-cycle and global order analysis.
    Orders {
        matrix: PathBuf,
        #[command(flatten)]
        output: OutputMode,
        #[command(flatten)]
        cap: CapArg,
    },
    /// Extreme vectors of every below-one cycle cone.
    Extremes {
        matrix: PathBuf,
        #[command(flatten)]
        output: OutputMode,
        #[command(flatten)]
        cap: CapArg,
    },
    /// Decide whether two matrices share their efficient set;
    /// exit 0 equal, 1 not equal, 5 unknown.
    Compare {
        first: PathBuf,
        second: PathBuf,
        #[command(flatten)]
        output: OutputMode,
        #[command(flatten)]
        cap: CapArg,
    },
    /// Randomized search for candidate pairs with equal efficient sets.
    Search {
        /// Matrix dimension (at least 5).
        #[arg(long)]
        n: usize,
        /// Number of candidate pairs to examine.
        #[arg(long, default_value_t = 100)]
        iters: usize,
        /// RNG seed; reports are deterministic per seed.
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Pair generation strategy: "perturb" or "random".
        #[arg(long, default_value = "perturb")]
        strategy: String,
        /// Write the JSON report to this path.
        #[arg(long)]
        out: Option<PathBuf>,
        #[command(flatten)]
        output: OutputMode,
        #[command(flatten)]
        cap: CapArg,
    },
}

fn resolve_cap(flag: Option<usize>) -> Result<usize, CliError> {
    if let Some(value) = flag {
        return Ok(value);
    }
    match std::env::var("EFFMAT_MAX_N") {
        Ok(text) => text
            .trim()
            .parse()
            .map_err(|_| CliError::Parse(format!("invalid EFFMAT_MAX_N value {text:?}"))),
        Err(_) => Ok(DEFAULT_MAX_N),
    }
}

fn check_cap(n: usize, cap: usize) -> Result<(), CliError> {
    if n > cap {
        return Err(Error::DimensionExceedsCap { n, cap }.into());
    }
    Ok(())
}

fn emit<T: serde::Serialize>(doc: &T, text: String, json: bool) -> Result<(), CliError> {
    let rendered = if json {
        let mut rendered = serde_json::to_string_pretty(doc)
            .map_err(|e| CliError::Parse(format!("serialization failed: {e}")))?;
        rendered.push('\n');
        rendered
    } else {
        text
    };
    use std::io::Write;
    match std::io::stdout().write_all(rendered.as_bytes()) {
        Ok(()) => Ok(()),
        Err(e) if e.kind() == std::io::ErrorKind::BrokenPipe => Ok(()),
        Err(e) => Err(CliError::Parse(format!("failed to write report: {e}"))),
    }
}

fn run(cli: Cli) -> Result<ExitCode, CliError> {
    match cli.command {
        Command::Analyze {
            matrix,
            output,
            full,
            cap,
        } => {
            let cap = resolve_cap(cap.max_n)?;
            let input = load_matrix(&matrix)?;
            check_cap(input.matrix.n(), cap)?;
            let doc = report::analysis_report(&input.matrix, input.labels, cap, full)?;
            emit(&doc, report::analysis_text(&doc), output.json())?;
            Ok(ExitCode::SUCCESS)
        }
        Command::Bounds {
            matrix,
            output,
            cap,
        } => {
            let cap = resolve_cap(cap.max_n)?;
            let input = load_matrix(&matrix)?;
            check_cap(input.matrix.n(), cap)?;
            let doc = report::bounds_report(&input.matrix, input.labels, cap)?;
            emit(&doc, report::bounds_text(&doc), output.json())?;
            Ok(ExitCode::SUCCESS)
        }
        Command::Test {
            matrix,
            vector,
            output,
            cap,
        } => {
            let cap = resolve_cap(cap.max_n)?;
            let input = load_matrix(&matrix)?;
            check_cap(input.matrix.n(), cap)?;
            let w = load_vector(&vector)?;
            if w.n() != input.matrix.n() {
                return Err(Error::DimensionMismatch {
                    left: input.matrix.n(),
                    right: w.n(),
                }
                .into());
            }
            let efficiency = efficiency_report(&w, &input.matrix)?;
            let doc = report::test_report(input.matrix.n(), &efficiency);
            emit(&doc, report::test_text(&doc), output.json())?;
            Ok(if doc.efficient {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            })
        }
        Command::Orders {
            matrix,
            output,
            cap,
        } => {
            let cap = resolve_cap(cap.max_n)?;
            let input = load_matrix(&matrix)?;
            check_cap(input.matrix.n(), cap)?;
            let doc = report::orders_report(&input.matrix, input.labels, cap)?;
            emit(&doc, report::orders_text(&doc), output.json())?;
            Ok(ExitCode::SUCCESS)
        }
        Command::Extremes {
            matrix,
            output,
            cap,
        } => {
            let cap = resolve_cap(cap.max_n)?;
            let input = load_matrix(&matrix)?;
            check_cap(input.matrix.n(), cap)?;
            let doc = report::extremes_report(&input.matrix, input.labels, cap)?;
            emit(&doc, report::extremes_text(&doc), output.json())?;
            Ok(ExitCode::SUCCESS)
        }
        Command::Compare {
            first,
            second,
            output,
            cap,
        } => {
            let cap = resolve_cap(cap.max_n)?;
            let a = load_matrix(&first)?;
            let b = load_matrix(&second)?;
            if a.matrix.n() != b.matrix.n() {
                return Err(Error::DimensionMismatch {
                    left: a.matrix.n(),
                    right: b.matrix.n(),
                }
                .into());
            }
            check_cap(a.matrix.n(), cap)?;
            let verdict = decide_equal_efficient_sets_capped(&a.matrix, &b.matrix, cap)?;
            let doc = report::compare_report(&verdict);
            emit(&doc, report::compare_text(&doc), output.json())?;
            Ok(match verdict.status {
                EqualStatus::Equal => ExitCode::SUCCESS,
                EqualStatus::NotEqual => ExitCode::from(1),
                EqualStatus::Unknown => ExitCode::from(5),
            })
        }
        Command::Search {
            n,
            iters,
            seed,
            strategy,
            out,
            output,
            cap,
        } => {
            let cap = resolve_cap(cap.max_n)?;
            let strategy: SearchStrategy = strategy
                .parse()
                .map_err(|e: String| CliError::Parse(e))?;
            let result = search_counterexamples_capped(n, iters, seed, strategy, cap)?;
            let doc = report::search_report_doc(&result);
            if let Some(path) = &out {
                let rendered = serde_json::to_string_pretty(&doc)
                    .map_err(|e| CliError::Parse(format!("serialization failed: {e}")))?;
                std::fs::write(path, rendered + "\n")
                    .map_err(|e| CliError::Parse(format!("{}: {e}", path.display())))?;
            }
            emit(&doc, report::search_text(&doc), output.json())?;
            Ok(ExitCode::SUCCESS)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => code,
        Err(error) => {
            eprintln!("error: {}", error.message());
            ExitCode::from(error.exit_code())
        }
    }
}
