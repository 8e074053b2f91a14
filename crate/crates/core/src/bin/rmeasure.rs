use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use resource_measures::io::{measure_report_json, read_map, read_state, sweep_csv};
use resource_measures::measures::{closed_form_measure, TsallisOrder};
use resource_measures::oracle::OracleConfig;
use resource_measures::verify::{run_suite, SuiteConfig};
use resource_measures::Error;

/// Closed-form resource measures for idempotent unital resource-destroying maps.
#[derive(Parser)]
#[command(name = "rmeasure", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Json,
    Csv,
}

#[derive(Subcommand)]
enum Command {
    /// Evaluate the measure of one state at one order.
    Measure {
        #[arg(long)]
        state: PathBuf,
        #[arg(long)]
        map: PathBuf,
        #[arg(long)]
        a: f64,
        #[arg(long, value_enum, default_value = "json")]
        output: Format,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Evaluate the measure on a grid of orders and write CSV (a,value,N).
    Sweep {
        #[arg(long)]
        state: PathBuf,
        #[arg(long)]
        map: PathBuf,
        #[arg(long, requires_all = ["a_max", "steps"], conflicts_with = "a_grid")]
        a_min: Option<f64>,
        #[arg(long)]
        a_max: Option<f64>,
        #[arg(long)]
        steps: Option<usize>,
        /// Explicit comma-separated orders instead of a uniform range.
        #[arg(long, value_delimiter = ',')]
        a_grid: Option<Vec<f64>>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Run a verification suite: theorem1, axioms, theorem2, piani, continuity, adjoint, decomposition.
    Verify {
        suite: String,
        #[arg(long, value_delimiter = ',')]
        dims: Option<Vec<usize>>,
        #[arg(long, default_value_t = 20)]
        trials: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, value_delimiter = ',')]
        a_grid: Option<Vec<f64>>,
        /// Oracle restarts per minimization.
        #[arg(long)]
        restarts: Option<usize>,
        #[arg(long, value_enum, default_value = "json")]
        output: Format,
        #[arg(long)]
        out: Option<PathBuf>,
        /// Tolerance of the suite's headline check.
        #[arg(long)]
        tol: Option<f64>,
    },
}

enum Failure {
    Input(String),
    Certification(String),
    SuiteFailed(String),
    Internal(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        if e.is_certification() {
            Failure::Certification(e.to_string())
        } else {
            Failure::Input(e.to_string())
        }
    }
}

fn write_output(text: &str, out: Option<&Path>) -> Result<(), Failure> {
    match out {
        Some(path) => fs::write(path, text).map_err(|e| Failure::Internal(format!("Io: {}: {e}", path.display()))),
        None => match std::io::stdout().lock().write_all(text.as_bytes()) {
            Err(e) if e.kind() != std::io::ErrorKind::BrokenPipe => Err(Failure::Internal(format!("Io: stdout: {e}"))),
            _ => Ok(()),
        },
    }
}

fn with_newline(mut s: String) -> String {
    if !s.ends_with('\n') {
        s.push('\n');
    }
    s
}

fn sweep_grid(a_min: f64, a_max: f64, steps: usize) -> Result<Vec<f64>, Failure> {
    if !(a_min > 0.0 && a_min < a_max && a_max <= 2.0) {
        return Err(Failure::Input(format!("BadRange: need 0 < a_min < a_max <= 2, got a_min={a_min} a_max={a_max}")));
    }
    if steps < 2 {
        return Err(Failure::Input(format!("BadRange: steps must be at least 2, got {steps}")));
    }
    let h = (a_max - a_min) / (steps - 1) as f64;
    Ok((0..steps)
        .map(|k| if k == steps - 1 { a_max } else { a_min + h * k as f64 })
        .map(|a| if (a - 1.0).abs() < 1e-9 { 1.0 } else { a })
        .collect())
}

fn run(command: Command) -> Result<ExitCode, Failure> {
    match command {
        Command::Measure { state, map, a, output, out } => {
            let a = TsallisOrder::new(a)?;
            let rho = read_state(&state)?;
            let map = read_map(&map)?;
            let report = closed_form_measure(&rho, &map, a)?;
            let text = match output {
                Format::Json => measure_report_json(&report),
                Format::Csv => sweep_csv(std::slice::from_ref(&report)),
            };
            write_output(&with_newline(text), out.as_deref())?;
        }
        Command::Sweep { state, map, a_min, a_max, steps, a_grid, out } => {
            let grid = match (a_grid, a_min, a_max, steps) {
                (Some(grid), ..) => grid,
                (None, Some(lo), Some(hi), Some(n)) => sweep_grid(lo, hi, n)?,
                _ => return Err(Failure::Input("BadRange: give --a-min/--a-max/--steps or --a-grid".into())),
            };
            let orders = grid.into_iter().map(TsallisOrder::new).collect::<Result<Vec<_>, _>>()?;
            let rho = read_state(&state)?;
            let map = read_map(&map)?;
            let rows = orders
                .into_iter()
                .map(|a| closed_form_measure(&rho, &map, a))
                .collect::<Result<Vec<_>, _>>()?;
            write_output(&with_newline(sweep_csv(&rows)), out.as_deref())?;
        }
        Command::Verify { suite, dims, trials, seed, a_grid, restarts, output, out, tol } => {
            let mut config = SuiteConfig::new(trials, seed);
            config.dims = match dims {
                Some(dims) => dims,
                None if suite == "theorem2" => vec![3, 4, 5, 6],
                None => config.dims,
            };
            if let Some(grid) = a_grid {
                config.a_grid = grid;
            }
            if let Some(restarts) = restarts {
                config.oracle = OracleConfig { restarts, ..config.oracle };
            }
            config.tolerance = tol;
            let report = run_suite(&suite, &config)?;
            let text = match output {
                Format::Json => report.to_json(),
                Format::Csv => report.records_csv(),
            };
            write_output(&with_newline(text), out.as_deref())?;
            eprintln!("{}: {:.3} s", report.suite, report.wall_time.as_secs_f64());
            if !report.passed() {
                return Err(Failure::SuiteFailed(format!(
                    "SuiteFailed: {} failing trials, worst violation {:e}",
                    report.failures, report.worst_violation
                )));
            }
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) if !e.use_stderr() => {
            let _ = e.print();
            return ExitCode::SUCCESS;
        }
        Err(e) => {
            let rendered = e.to_string();
            let reason: Vec<&str> = rendered.lines().take_while(|l| !l.trim().is_empty()).map(str::trim).collect();
            eprintln!("error: Usage: {}", reason.join(" ").trim_start_matches("error: "));
            return ExitCode::from(2);
        }
    };
    match run(cli.command) {
        Ok(code) => code,
        Err(failure) => {
            let (code, message) = match failure {
                Failure::Input(m) => (2, m),
                Failure::Certification(m) | Failure::SuiteFailed(m) => (3, m),
                Failure::Internal(m) => (1, m),
            };
            eprintln!("error: {}", message.replace('\n', " "));
            ExitCode::from(code)
        }
    }
}
