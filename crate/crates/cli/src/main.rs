//! `cproj`: batch verification of c-projective models with JSON reports.

mod commands;

use std::io::Write as _;
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use anyhow::Context;
use clap::{Args, Parser, Subcommand};
use cproj_core::prolong::CurvType;
use cproj_core::report::Report;

#[derive(Parser)]
#[command(name = "cproj", version, about = "Exact checks for submaximally symmetric c-projective structures")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Algebraic upper bounds per curvature type against the closed forms.
    Table {
        #[arg(long, default_value_t = 2)]
        n_min: usize,
        #[arg(long, default_value_t = 6)]
        n_max: usize,
        #[command(flatten)]
        output: Output,
    },
    /// Runs the full check battery on catalog models or manifest files.
    Verify(VerifyArgs),
    /// Annihilator and first prolongation for one curvature type.
    Prolong {
        #[arg(long = "type")]
        kind: CurvType,
        #[arg(long)]
        n: usize,
        #[command(flatten)]
        output: Output,
    },
    /// Jacobi identity, derived series and gradings of a structure-constant algebra.
    Algebra(AlgebraArgs),
    /// Metric checks: Kähler flags, mobility, parallel forms, isometries.
    Metric(MetricArgs),
}

#[derive(Args)]
struct Output {
    /// Write the JSON report here instead of standard output.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct VerifyArgs {
    /// Catalog model name; repeat for several models.
    #[arg(long, required_unless_present_any = ["manifest", "all"])]
    model: Vec<String>,
    /// Complex dimension, applied to every `--model`.
    #[arg(long, default_value_t = 2)]
    n: usize,
    /// Model manifest files; repeat for several.
    #[arg(long)]
    manifest: Vec<PathBuf>,
    /// Every catalog model at its smallest admissible dimension.
    #[arg(long)]
    all: bool,
    /// Overrides the ansatz degree of the symmetry solver.
    #[arg(long)]
    max_degree: Option<u32>,
    /// Skips the metric checks.
    #[arg(long)]
    no_metric: bool,
    /// Models verified concurrently.
    #[arg(long, default_value_t = 1)]
    jobs: usize,
    #[command(flatten)]
    output: Output,
}

#[derive(Args)]
#[command(args_conflicts_with_subcommands = true)]
struct AlgebraArgs {
    #[command(subcommand)]
    deform: Option<AlgebraCommand>,
    /// Built-in algebra name.
    #[arg(conflicts_with = "manifest")]
    name: Option<String>,
    /// Algebra manifest file.
    #[arg(long)]
    manifest: Option<PathBuf>,
    /// Parameter value: `symbolic` or a rational number.
    #[arg(long, default_value = "symbolic", allow_hyphen_values = true)]
    lambda: String,
    #[command(flatten)]
    output: Output,
}

#[derive(Subcommand)]
enum AlgebraCommand {
    /// Deforms the graded algebra of a curvature type by its cochain.
    Deform {
        #[arg(long = "type")]
        kind: CurvType,
        #[arg(long)]
        n: usize,
        #[command(flatten)]
        output: Output,
    },
}

#[derive(Args)]
struct MetricArgs {
    #[arg(long, default_value = "submax-metric")]
    model: String,
    #[arg(long, default_value_t = 2)]
    n: usize,
    /// Signs `±1` of the last `n - 2` diagonal entries of the submaximal metric.
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    signs: Vec<i64>,
    #[command(flatten)]
    output: Output,
}

fn emit(mut report: Report, started: Instant, output: &Output) -> anyhow::Result<bool> {
    report.finish(started.elapsed());
    let json = report.to_json();
    match &output.out {
        Some(path) => {
            std::fs::write(path, format!("{json}\n")).with_context(|| format!("writing {}", path.display()))?;
            let failed = report.failures().count();
            eprintln!("{}: {} checks, {failed} failed -> {}", report.command, report.checks.len(), path.display());
        }
        None => {
            let mut stdout = std::io::stdout().lock();
            match writeln!(stdout, "{json}") {
                Err(e) if e.kind() != std::io::ErrorKind::BrokenPipe => return Err(e).context("writing report"),
                _ => {}
            }
        }
    }
    for f in report.failures() {
        eprintln!("FAIL {} [{}]: expected {}, computed {}", f.check, f.anchor, f.expected, f.computed);
    }
    Ok(report.pass)
}

fn run(cli: Cli) -> anyhow::Result<bool> {
    let started = Instant::now();
    match cli.command {
        Command::Table { n_min, n_max, output } => emit(commands::table(n_min, n_max)?, started, &output),
        Command::Verify(args) => {
            let opts = cproj_core::battery::VerifyOptions {
                degree: args.max_degree,
                metric: !args.no_metric,
            };
            let models = commands::collect_models(&args.model, args.n, &args.manifest, args.all)?;
            emit(commands::verify(models, &opts, args.jobs)?, started, &args.output)
        }
        Command::Prolong { kind, n, output } => emit(commands::prolong(kind, n)?, started, &output),
        Command::Algebra(args) => match args.deform {
            Some(AlgebraCommand::Deform { kind, n, output }) => emit(commands::deform(kind, n)?, started, &output),
            None => {
                let report = commands::algebra(args.name.as_deref(), args.manifest.as_deref(), &args.lambda)?;
                emit(report, started, &args.output)
            }
        },
        Command::Metric(args) => emit(commands::metric(&args.model, args.n, &args.signs)?, started, &args.output),
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::FAILURE,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
