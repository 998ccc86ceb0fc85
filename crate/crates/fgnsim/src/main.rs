use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use fgnsim::config::SweepSpec;
use fgnsim::sweep::{mc_tolerance, mc_worst_deviation, run_sweep_to_files, SweepRow};
use fgnsim::validate::{run_checks, DEFAULT_TOL};
use fgnsim::{csv, FgnError};

#[derive(Parser)]
#[command(
    name = "fgnsim",
    version,
    about = "Four-qubit GHZ dynamics under fractional Gaussian noise"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Exact sweep over the (H, tau) grid of a spec file.
    Sweep {
        #[arg(long)]
        spec: PathBuf,
        /// Overrides `out_csv` from the spec.
        #[arg(long)]
        out: Option<PathBuf>,
        /// Prefix for one SVG panel per Hurst value; overrides `out_svg`.
        #[arg(long)]
        svg: Option<PathBuf>,
    },
    /// Run the oracle suite and print a pass/fail table.
    Validate {
        #[arg(long, default_value_t = DEFAULT_TOL, value_parser = positive_float)]
        tol: f64,
        #[arg(long)]
        report: Option<PathBuf>,
    },
    /// Sweep with Monte Carlo columns next to the exact ones.
    Mc {
        #[arg(long)]
        spec: PathBuf,
        #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
        samples: u64,
    },
}

fn positive_float(s: &str) -> Result<f64, String> {
    match s.parse::<f64>() {
        Ok(v) if v > 0.0 && v.is_finite() => Ok(v),
        Ok(_) => Err("tolerance must be a positive finite number".into()),
        Err(e) => Err(e.to_string()),
    }
}

fn check_mc(rows: &[SweepRow], samples: usize) -> bool {
    match mc_worst_deviation(rows) {
        Some(worst) => {
            let tol = mc_tolerance(samples);
            println!("monte carlo: worst |x_mc - x| = {worst:.3e} (tolerance {tol:.3e})");
            worst <= tol
        }
        None => true,
    }
}

fn run(cli: Cli) -> Result<ExitCode, FgnError> {
    match cli.command {
        Command::Sweep { spec, out, svg } => {
            let mut spec = SweepSpec::from_file(&spec)?;
            if let Some(out) = out {
                spec.out_csv = out;
            }
            if svg.is_some() {
                spec.out_svg = svg;
            }
            let rows = run_sweep_to_files(&spec)?;
            println!("wrote {} rows to {}", rows.len(), spec.out_csv.display());
            Ok(if check_mc(&rows, spec.mc_samples) {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            })
        }
        Command::Validate { tol, report } => {
            let result = run_checks(tol)?;
            let table = result.render();
            print!("{table}");
            if let Some(path) = report {
                csv::write_atomic(&path, &table)?;
            }
            Ok(if result.all_passed() {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            })
        }
        Command::Mc { spec, samples } => {
            let mut spec = SweepSpec::from_file(&spec)?;
            spec.mc_samples = usize::try_from(samples)
                .map_err(|_| FgnError::config(0, "samples", "too large"))?;
            let rows = run_sweep_to_files(&spec)?;
            println!("wrote {} rows to {}", rows.len(), spec.out_csv.display());
            Ok(if check_mc(&rows, spec.mc_samples) {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            })
        }
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("fgnsim: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
