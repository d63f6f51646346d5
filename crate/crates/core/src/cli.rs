//! Command-line front end: `solve`, `gen`, `verify`, `bench`.

use crate::bench::{run_bench, write_csv, write_summary, BenchConfig};
use crate::datagen::{gen_synthetic, GenConfig};
use crate::model::{Instance, InstanceFileError};
use crate::solver::{solve, SolveError, SolverOptions};
use crate::verify::{run_verify, VerifyConfig};
use clap::{Args, Parser, Subcommand};
use std::fs;
use std::io::{self, Write};
use std::path::PathBuf;
use std::process::ExitCode;

pub const EXIT_INVALID: u8 = 2;
pub const EXIT_INFEASIBLE: u8 = 3;

#[derive(Debug, Parser)]
#[command(name = "divrank", version, about = "Diversity-constrained ranking LP solver")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Solve an instance file and print the solution JSON.
    Solve(SolveArgs),
    /// Write a synthetic instance file.
    Gen(GenArgs),
    /// Cross-check both algorithms against the reference solvers.
    Verify(VerifyArgs),
    /// Time both algorithms over a size grid and write CSV.
    Bench(BenchArgs),
}

#[derive(Debug, Args)]
pub struct SolveArgs {
    #[arg(long)]
    pub input: PathBuf,
    #[arg(long)]
    pub output: Option<PathBuf>,
    /// Bisection and tracing only.
    #[arg(long)]
    pub no_screening: bool,
    /// Stopping bracket width.
    #[arg(long)]
    pub delta: Option<f64>,
    /// Bracket width below which kinks are traced.
    #[arg(long)]
    pub big_delta: Option<f64>,
}

#[derive(Debug, Args)]
pub struct GenArgs {
    #[arg(long)]
    pub m: usize,
    #[arg(long)]
    pub n: usize,
    #[arg(long, default_value_t = 0.5)]
    pub alpha: f64,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long)]
    pub output: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    #[arg(long, default_value_t = 100)]
    pub count: usize,
    #[arg(long, default_value_t = 100)]
    pub m: usize,
    #[arg(long, default_value_t = 10)]
    pub n: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, default_value_t = 0.5)]
    pub alpha: f64,
    #[arg(long)]
    pub parallel: bool,
}

#[derive(Debug, Args)]
pub struct BenchArgs {
    #[arg(long, value_delimiter = ',', default_value = "100,300,1000,3000,10000")]
    pub m_list: Vec<usize>,
    #[arg(long, value_delimiter = ',', default_value = "10,30")]
    pub n_list: Vec<usize>,
    #[arg(long, default_value_t = 20)]
    pub reps: usize,
    #[arg(long, default_value_t = 0.5)]
    pub alpha: f64,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Output file; stdout when omitted.
    #[arg(long)]
    pub csv: Option<PathBuf>,
}

/// Initializes logging from `DIVRANK_LOG` (default `warn`).
pub fn init_logging() {
    let env = env_logger::Env::new().filter_or("DIVRANK_LOG", "warn");
    let _ = env_logger::Builder::from_env(env).try_init();
}

pub fn main() -> ExitCode {
    init_logging();
    run(Cli::parse())
}

pub fn run(cli: Cli) -> ExitCode {
    let result = match cli.command {
        Command::Solve(args) => cmd_solve(&args),
        Command::Gen(args) => cmd_gen(&args),
        Command::Verify(args) => cmd_verify(&args),
        Command::Bench(args) => cmd_bench(&args),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {}", e.message);
            ExitCode::from(e.code)
        }
    }
}

#[derive(Debug)]
pub struct CliError {
    pub code: u8,
    pub message: String,
}

impl CliError {
    fn new(code: u8, message: impl Into<String>) -> Self {
        Self {
            code,
            message: message.into(),
        }
    }
}

impl From<io::Error> for CliError {
    fn from(e: io::Error) -> Self {
        CliError::new(1, e.to_string())
    }
}

fn emit(output: Option<&PathBuf>, text: &str) -> Result<(), CliError> {
    match output {
        Some(path) => fs::write(path, text).map_err(|e| CliError::new(1, format!("{}: {e}", path.display()))),
        None => {
            let mut out = io::stdout().lock();
            writeln!(out, "{text}")?;
            Ok(())
        }
    }
}

pub fn solver_options(args: &SolveArgs) -> SolverOptions {
    let mut opts = if args.no_screening {
        SolverOptions::without_screening()
    } else {
        SolverOptions::default()
    };
    if let Some(d) = args.delta {
        opts.small_delta = d;
    }
    opts.big_delta = args.big_delta;
    opts
}

pub fn cmd_solve(args: &SolveArgs) -> Result<(), CliError> {
    let text = fs::read_to_string(&args.input)
        .map_err(|e| CliError::new(EXIT_INVALID, format!("{}: {e}", args.input.display())))?;
    let instance = Instance::from_json(&text).map_err(|e| match e {
        InstanceFileError::Parse(e) => CliError::new(EXIT_INVALID, format!("malformed instance: {e}")),
        InstanceFileError::Invalid(errs) => {
            let list: Vec<String> = errs.0.iter().map(|e| format!("  - {e}")).collect();
            CliError::new(EXIT_INVALID, format!("invalid instance:\n{}", list.join("\n")))
        }
    })?;
    match solve(&instance, &solver_options(args)) {
        Ok(solution) => emit(args.output.as_ref(), &solution.to_json()),
        Err(SolveError::Infeasible { b1, b2, div_min, div_max }) => {
            let report = serde_json::json!({
                "status": "Infeasible",
                "b1": b1,
                "b2": b2,
                "div_min": div_min,
                "div_max": div_max,
            });
            emit(args.output.as_ref(), &serde_json::to_string_pretty(&report).expect("json"))?;
            Err(CliError::new(
                EXIT_INFEASIBLE,
                format!("infeasible: [{b1}, {b2}] misses attainable range [{div_min}, {div_max}]"),
            ))
        }
        Err(e) => Err(CliError::new(1, e.to_string())),
    }
}

pub fn cmd_gen(args: &GenArgs) -> Result<(), CliError> {
    let cfg = GenConfig::new(args.m, args.n, args.seed).with_alpha(args.alpha);
    let instance = gen_synthetic(&cfg).map_err(|e| CliError::new(EXIT_INVALID, e.to_string()))?;
    emit(args.output.as_ref(), &instance.to_json())
}

pub fn cmd_verify(args: &VerifyArgs) -> Result<(), CliError> {
    let report = run_verify(&VerifyConfig {
        count: args.count,
        m: args.m,
        n: args.n,
        seed: args.seed,
        alpha: args.alpha,
        parallel: args.parallel,
    });
    println!(
        "checked {} instances (m = {}, n = {}), {} against brute force, {} mismatches",
        report.checked,
        args.m,
        args.n,
        report.with_brute_force,
        report.mismatches.len()
    );
    if report.passed() {
        Ok(())
    } else {
        for m in &report.mismatches {
            eprintln!("  {m}");
        }
        Err(CliError::new(1, "verification failed"))
    }
}

pub fn cmd_bench(args: &BenchArgs) -> Result<(), CliError> {
    let cfg = BenchConfig {
        m_list: args.m_list.clone(),
        n_list: args.n_list.clone(),
        reps: args.reps,
        alpha: args.alpha,
        seed: args.seed,
    };
    let rows = run_bench(&cfg).map_err(|e| CliError::new(1, e.to_string()))?;
    match &args.csv {
        Some(path) => {
            let file = fs::File::create(path).map_err(|e| CliError::new(1, format!("{}: {e}", path.display())))?;
            write_csv(&rows, io::BufWriter::new(file))?;
            write_summary(&rows, io::stdout().lock())?;
        }
        None => {
            write_csv(&rows, io::stdout().lock())?;
            write_summary(&rows, io::stderr().lock())?;
        }
    }
    Ok(())
}
