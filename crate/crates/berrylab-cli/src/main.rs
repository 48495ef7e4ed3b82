//! Command-line front end.
//!
//! Exit codes: 0 success, 1 config/usage error, 2 numerical failure,
//! 3 verification failure.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use berrylab_cli::runner::{self, RunError};
use berrylab_cli::{config, trace, verify};

#[derive(Parser)]
#[command(
    name = "berrylab",
    version,
    about = "Geometric phases of a dipole-coupled two-level system"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run the experiment described by a TOML config file.
    Run {
        /// Path to the experiment config.
        config: PathBuf,
        /// Also write a per-sample CSV trace (per sweep point: the index is
        /// inserted before the extension when the run sweeps).
        #[arg(long)]
        trace: Option<PathBuf>,
        /// Write summary records (one JSON object per line) here instead of
        /// stdout.
        #[arg(long)]
        out: Option<PathBuf>,
        /// Worker threads for sweep points; defaults to BERRYLAB_WORKERS or
        /// the core count.
        #[arg(long)]
        workers: Option<usize>,
    },
    /// Run the verification suite and print one pass/fail line per criterion.
    Verify {
        /// Shrink the draw counts for a fast smoke check.
        #[arg(long)]
        quick: bool,
    },
}

fn main() -> ExitCode {
    match Cli::parse().command {
        Command::Run {
            config,
            trace,
            out,
            workers,
        } => run(&config, trace.as_deref(), out.as_deref(), workers),
        Command::Verify { quick } => run_verify(quick),
    }
}

fn run(
    config_path: &Path,
    trace_path: Option<&Path>,
    out_path: Option<&Path>,
    workers: Option<usize>,
) -> ExitCode {
    let text = match fs::read_to_string(config_path) {
        Ok(text) => text,
        Err(e) => {
            eprintln!("error: cannot read {}: {e}", config_path.display());
            return ExitCode::from(1);
        }
    };
    let config = match config::parse(&text) {
        Ok(config) => config,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(1);
        }
    };

    let records = match runner::run_experiment(&config, workers) {
        Ok(records) => records,
        Err(e @ (RunError::Config(_) | RunError::Threading(_))) => {
            eprintln!("error: {e}");
            return ExitCode::from(1);
        }
        Err(e @ RunError::Numerical { .. }) => {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    };

    for record in &records {
        eprintln!(
            "point {} finished in {:.3} ms",
            record.index,
            record.duration.as_secs_f64() * 1e3
        );
        for branch in &record.branches {
            if let Some(prop) = &branch.propagation {
                if prop.rho < 10.0 {
                    eprintln!(
                        "warning: point {} branch {}: adiabaticity rho = {:.3} is below 10",
                        record.index, branch.branch, prop.rho
                    );
                }
                if prop.fidelity < 0.99 {
                    eprintln!(
                        "warning: point {} branch {}: fidelity {:.6} below 0.99; \
                         the run is not adiabatic",
                        record.index, branch.branch, prop.fidelity
                    );
                }
            }
        }
    }

    if let Some(base) = trace_path {
        for record in &records {
            let path = trace_file_name(base, record.index, records.len() > 1);
            if let Err(e) = write_trace_file(&path, record) {
                eprintln!("error: cannot write trace {}: {e}", path.display());
                return ExitCode::from(1);
            }
        }
    }

    let summary = runner::to_jsonl(&records);
    match out_path {
        Some(path) => {
            if let Err(e) = fs::write(path, summary) {
                eprintln!("error: cannot write {}: {e}", path.display());
                return ExitCode::from(1);
            }
        }
        None => print!("{summary}"),
    }
    ExitCode::SUCCESS
}

fn trace_file_name(base: &Path, index: usize, sweeping: bool) -> PathBuf {
    if !sweeping {
        return base.to_path_buf();
    }
    let stem = base.file_stem().unwrap_or_default().to_string_lossy();
    let name = match base.extension() {
        Some(ext) => format!("{stem}.{index}.{}", ext.to_string_lossy()),
        None => format!("{stem}.{index}"),
    };
    base.with_file_name(name)
}

fn write_trace_file(path: &Path, record: &runner::ResultRecord) -> std::io::Result<()> {
    let point = &record.config;
    let params = config::build_params(point)
        .map_err(|e| std::io::Error::new(std::io::ErrorKind::InvalidInput, e.to_string()))?;
    let field = config::build_field(point)
        .map_err(|e| std::io::Error::new(std::io::ErrorKind::InvalidInput, e.to_string()))?;
    let samples = point.run.samples.unwrap_or(1024);
    let mut writer = std::io::BufWriter::new(fs::File::create(path)?);
    trace::write_trace(&mut writer, &field, &params, samples)?;
    writer.flush()
}

fn run_verify(quick: bool) -> ExitCode {
    let reports = verify::run_all(quick);
    let mut all_pass = true;
    for report in &reports {
        println!("{}", report.line());
        all_pass &= report.pass;
    }
    if all_pass {
        println!("verification suite: all {} criteria passed", reports.len());
        ExitCode::SUCCESS
    } else {
        println!("verification suite: FAILURES present");
        ExitCode::from(3)
    }
}
