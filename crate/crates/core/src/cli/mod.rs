//! Command-line front end.
//!
//! `dioph-grover [run] --bits M --target N ...` runs a search and prints a
//! report; `dioph-grover verify --bits M --target N` runs the self-check suite.

pub mod report;
pub mod verify;

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;
use std::str::FromStr;

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::arith::build_layout;
use crate::circuit::export_text;
use crate::error::Error;
use crate::grover::{build_search_circuit, run_grover, schedule, Iterations, RunOptions, SearchProblem};
use crate::statevector::DEFAULT_MAX_WIDTH;

pub use report::ReportDocument;
pub use verify::{verify, CheckResult, Fault, VerifyReport};

pub const MAX_WIDTH_ENV: &str = "DIOPH_GROVER_MAX_WIDTH";

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 1;
pub const EXIT_NO_SOLUTIONS: i32 = 2;
pub const EXIT_CAPACITY: i32 = 3;
pub const EXIT_VERIFY_FAILED: i32 = 4;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum OutputFormat {
    Json,
    Csv,
}

/// `k` or `auto`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct IterationArg(pub Iterations);

impl FromStr for IterationArg {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        if s.eq_ignore_ascii_case("auto") {
            return Ok(IterationArg(Iterations::Auto));
        }
        s.parse::<usize>()
            .map(|k| IterationArg(Iterations::Fixed(k)))
            .map_err(|_| format!("expected a non-negative integer or `auto`, got `{s}`"))
    }
}

/// Everything one invocation needs.
#[derive(Debug, Clone, PartialEq, Args)]
pub struct RunConfig {
    /// Bits per variable (m).
    #[arg(long = "bits", value_parser = clap::value_parser!(u32).range(1..))]
    pub bits: u32,
    /// Target sum (n).
    #[arg(long = "target")]
    pub target: u64,
    /// Grover iterations, or `auto` for floor(pi/4 * sqrt(N/M)).
    #[arg(long, default_value = "auto")]
    pub iterations: IterationArg,
    /// Measurement shots; 0 reports exact probabilities.
    #[arg(long, default_value_t = 0)]
    pub shots: u64,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, value_enum, default_value_t = OutputFormat::Json)]
    pub format: OutputFormat,
    /// Keep only the K most probable histogram rows; 0 keeps all.
    #[arg(long, default_value_t = 0)]
    pub top: usize,
    /// Write the full circuit as OpenQASM 3 to this path.
    #[arg(long = "export-circuit")]
    pub export_circuit: Option<PathBuf>,
    /// Run even if solutions are at least half of the index space.
    #[arg(long)]
    pub force: bool,
    /// Largest simulated width in qubits.
    #[arg(long = "max-width", env = MAX_WIDTH_ENV, default_value_t = DEFAULT_MAX_WIDTH)]
    pub max_width: usize,
    /// Drop the adder gate at this index before verifying (fault injection).
    #[arg(long = "corrupt-adder-gate", hide = true)]
    pub corrupt_adder_gate: Option<usize>,
}

#[derive(Debug, Parser)]
#[command(name = "dioph-grover", version, about = "Grover search for x + y = n")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Run the search and print a report (default).
    Run(RunConfig),
    /// Run the self-check suite at this size.
    Verify(RunConfig),
}

/// Inserts the default `run` subcommand when the first argument is a flag.
fn with_default_subcommand(args: Vec<OsString>) -> Vec<OsString> {
    let first = args.get(1).and_then(|a| a.to_str());
    let needs_run = matches!(first, Some(a) if a.starts_with("--")
        && !matches!(a, "--help" | "--version"));
    if needs_run {
        let mut out = Vec::with_capacity(args.len() + 1);
        out.push(args[0].clone());
        out.push(OsString::from("run"));
        out.extend(args.into_iter().skip(1));
        out
    } else {
        args
    }
}

/// Parses `args` (including the program name) and executes. Returns the
/// process exit status.
pub fn main_with_args<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString>,
{
    let args = with_default_subcommand(args.into_iter().map(Into::into).collect());
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let text = e.render().to_string();
            let _ = if e.use_stderr() {
                err.write_all(text.as_bytes())
            } else {
                out.write_all(text.as_bytes())
            };
            return code;
        }
    };
    match cli.command {
        Command::Run(config) => run(&config, out, err),
        Command::Verify(config) => run_verify(&config, out, err),
    }
}

fn error_status(e: &Error) -> i32 {
    match e {
        Error::Capacity { .. } => EXIT_CAPACITY,
        _ => EXIT_USAGE,
    }
}

fn fail(err: &mut dyn Write, status: i32, message: impl std::fmt::Display) -> i32 {
    let _ = writeln!(err, "error: {message}");
    status
}

/// Runs a search and writes the serialized report to `out`.
pub fn run(config: &RunConfig, out: &mut dyn Write, err: &mut dyn Write) -> i32 {
    let m = config.bits as usize;
    let options = RunOptions {
        iterations: config.iterations.0,
        shots: (config.shots > 0).then_some(config.shots),
        seed: config.seed,
        force: config.force,
        max_width: config.max_width,
    };
    let report = match run_grover(m, config.target, &options) {
        Ok(r) => r,
        Err(e) => return fail(err, error_status(&e), e),
    };
    if !report.has_solutions() {
        return fail(
            err,
            EXIT_NO_SOLUTIONS,
            format_args!(
                "no solutions exist for x + y = {} with {}-bit x and y",
                config.target, m
            ),
        );
    }
    if let Some(path) = &config.export_circuit {
        let text = build_layout(m)
            .and_then(|l| build_search_circuit(&l, config.target, report.iterations).map(|c| (l, c)))
            .map(|(l, c)| export_text(&c, &l.register_names()));
        let written = match text {
            Ok(t) => std::fs::write(path, t).map_err(|e| e.to_string()),
            Err(e) => Err(e.to_string()),
        };
        if let Err(e) = written {
            return fail(err, EXIT_USAGE, format_args!("cannot export circuit to {}: {e}", path.display()));
        }
    }
    let doc = ReportDocument::from_report(&report, config.shots, config.seed, config.top);
    let text = match config.format {
        OutputFormat::Json => doc.to_json(),
        OutputFormat::Csv => doc.to_csv(),
    };
    if out.write_all(text.as_bytes()).is_err() {
        return EXIT_USAGE;
    }
    EXIT_OK
}

/// Runs the self-check suite and prints one line per check.
pub fn run_verify(config: &RunConfig, out: &mut dyn Write, err: &mut dyn Write) -> i32 {
    let m = config.bits as usize;
    if let Ok(problem) = SearchProblem::new(m, config.target) {
        let _ = writeln!(
            out,
            "verifying x + y = {} with m = {} ({} solutions, auto k = {})",
            config.target,
            m,
            problem.solutions,
            schedule(&problem, Iterations::Auto)
        );
    }
    let fault = config.corrupt_adder_gate.map(Fault::DropAdderGate);
    let report = match verify(m, config.target, config.max_width, fault) {
        Ok(r) => r,
        Err(e) => return fail(err, error_status(&e), e),
    };
    for check in &report.checks {
        let _ = writeln!(out, "{check}");
    }
    if report.passed() {
        EXIT_OK
    } else {
        let names: Vec<&str> = report.failures().map(|c| c.name).collect();
        fail(err, EXIT_VERIFY_FAILED, format_args!("failed checks: {}", names.join(", ")))
    }
}
