//! Command-line front end: single runs, reference presets, parameter
//! sweeps, and coefficient-table dumps.
//!
//! Exit codes: 0 success, 2 configuration or usage error, 3 numerical
//! failure. Sweep points that fail are reported in their output row and
//! on stderr without failing the whole sweep.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use decoq_core::{
    build_coefficient_table, coefficients_csv, execute_run, execute_sweep, preset, run_document,
    sweep_csv, Error, RunConfig, SweepConfig,
};

#[derive(Parser)]
#[command(name = "decoq", version, about = "Driven-qubit decoherence simulator")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Integrate one trajectory; write its CSV table and summary report.
    Run {
        /// JSON run configuration.
        #[arg(long)]
        config: PathBuf,
        /// Output file: trajectory CSV, a blank line, then the report.
        #[arg(long)]
        out: PathBuf,
    },
    /// Run every point of a parameter sweep; write one CSV row per value.
    Sweep {
        /// JSON sweep configuration: base run, dotted path, values.
        #[arg(long)]
        config: PathBuf,
        /// Output CSV file.
        #[arg(long)]
        out: PathBuf,
        /// Maximum number of sweep points in flight (default: all cores).
        #[arg(long)]
        jobs: Option<usize>,
    },
    /// Print a named reference scenario as a run configuration.
    Preset {
        /// One of the fig* scenario names; anything else lists them.
        name: String,
        /// Write the configuration here instead of stdout.
        #[arg(long)]
        emit_config: Option<PathBuf>,
    },
    /// Tabulate the master-equation coefficients on the full grid.
    DumpCoefficients {
        /// JSON run configuration.
        #[arg(long)]
        config: PathBuf,
        /// Output CSV file.
        #[arg(long)]
        out: PathBuf,
    },
}

struct Failure {
    code: u8,
    message: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::Config(_) => 2,
            Error::Numerical(_) => 3,
        };
        Failure { code, message: e.to_string() }
    }
}

fn read_to_string(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path)
        .map_err(|e| Failure { code: 2, message: format!("cannot read {}: {e}", path.display()) })
}

fn write_file(path: &Path, contents: &str) -> Result<(), Failure> {
    fs::write(path, contents)
        .map_err(|e| Failure { code: 2, message: format!("cannot write {}: {e}", path.display()) })
}

fn emit_warnings(warnings: &[String]) {
    for w in warnings {
        eprintln!("warning: {w}");
    }
}

fn dispatch(command: Command) -> Result<(), Failure> {
    match command {
        Command::Run { config, out } => {
            let cfg = RunConfig::from_json_str(&read_to_string(&config)?)?;
            let outcome = execute_run(&cfg)?;
            emit_warnings(&outcome.resolved.warnings);
            write_file(&out, &run_document(&outcome))?;
            print!("{}", outcome.report);
            Ok(())
        }
        Command::Sweep { config, out, jobs } => {
            let sweep = SweepConfig::from_json_str(&read_to_string(&config)?)?;
            let records = match jobs {
                None => execute_sweep(&sweep),
                Some(0) => {
                    return Err(Failure { code: 2, message: "--jobs must be >= 1".into() });
                }
                Some(n) => rayon::ThreadPoolBuilder::new()
                    .num_threads(n)
                    .build()
                    .map_err(|e| Failure { code: 2, message: format!("--jobs {n}: {e}") })?
                    .install(|| execute_sweep(&sweep)),
            };
            for rec in &records {
                if let Err(e) = &rec.outcome {
                    eprintln!("warning: sweep point {} failed: {e}", rec.value);
                }
            }
            write_file(&out, &sweep_csv(&records))
        }
        Command::Preset { name, emit_config } => {
            let cfg = preset(&name)?;
            let text = cfg.to_json_string();
            match emit_config {
                Some(path) => write_file(&path, &text),
                None => {
                    print!("{text}");
                    Ok(())
                }
            }
        }
        Command::DumpCoefficients { config, out } => {
            let cfg = RunConfig::from_json_str(&read_to_string(&config)?)?;
            let run = cfg.resolved()?;
            emit_warnings(&run.warnings);
            let table =
                build_coefficient_table(&run.noise, &run.hamiltonian, run.t_max, run.h_coeff)?;
            write_file(&out, &coefficients_csv(&table))
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match dispatch(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(failure) => {
            eprintln!("error: {}", failure.message);
            ExitCode::from(failure.code)
        }
    }
}
