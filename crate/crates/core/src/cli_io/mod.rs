//! Command-line front end: single-configuration reports, `(p, θ)` sweeps and
//! the figure datasets, written as CSV or JSON.
//!
//! Exit codes: 0 success (or separable for `state`), 3 entangled (`state`
//! only), 1 I/O failure, 2 invalid input, 4 failed record validation.

mod format;
mod report;
mod sweep;

use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};
use thiserror::Error;

use crate::channel_state::{ChannelConfig, PolarizationVector};
use crate::entanglement::DEFAULT_TOL;
use crate::error::Error;

pub use format::{fmt12, fmt_sig};
pub use report::{
    flatten_csv, majorana_report, state_report, ConstellationEntryReport, MajoranaReport,
    PointReport, StateReport,
};
pub use sweep::{
    figure_rows, sweep_record, sweep_records, write_figure, write_sweep, Figure, GridRange,
    SweepRecord, SweepSpec, FIG1_HEADER, FIG2_HEADER, FIG3_HEADER, FIG4_HEADER, FIG4_RESOLUTION,
    SWEEP_HEADER,
};

pub const EXIT_OK: i32 = 0;
pub const EXIT_IO: i32 = 1;
pub const EXIT_INVALID: i32 = 2;
pub const EXIT_ENTANGLED: i32 = 3;
pub const EXIT_VALIDATION: i32 = 4;

#[derive(Debug, Error)]
pub enum CliError {
    #[error(transparent)]
    Lib(#[from] Error),
    #[error("I/O error: {0}")]
    Io(#[from] io::Error),
    #[error("record validation failed: {0}")]
    Validation(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Lib(_) => EXIT_INVALID,
            CliError::Io(_) => EXIT_IO,
            CliError::Validation(_) => EXIT_VALIDATION,
        }
    }
}

#[derive(Debug, Parser)]
#[command(
    name = "channel-spin",
    version,
    about = "Entanglement and Majorana constellations of the channel spin-1 state"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum OutputFormat {
    Csv,
    Json,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Full report for one beam/target polarization pair. Exits 3 when entangled.
    State {
        /// Beam polarization `x,y,z`.
        #[arg(long, value_parser = parse_vec3, allow_hyphen_values = true)]
        p1: [f64; 3],
        /// Target polarization `x,y,z`.
        #[arg(long, value_parser = parse_vec3, allow_hyphen_values = true)]
        p2: [f64; 3],
        #[arg(long, value_enum, default_value = "json")]
        format: OutputFormat,
        #[arg(long, default_value_t = DEFAULT_TOL)]
        tol: f64,
        /// Output file (stdout when omitted).
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// CSV over a (p, θ) grid with equal magnitudes; θ is half the angle
    /// between the vectors.
    Sweep {
        /// Polarization range `lo,hi`.
        #[arg(long, value_parser = parse_pair, default_value = "0,1")]
        p: (f64, f64),
        /// Half-angle range `lo,hi` (radians unless --degrees).
        #[arg(long, value_parser = parse_pair, default_value = "0,1.5707963267948966")]
        theta: (f64, f64),
        /// Samples per axis: `n` for both or `np,ntheta`.
        #[arg(long, value_parser = parse_steps, default_value = "101")]
        steps: (usize, usize),
        #[arg(long, default_value_t = DEFAULT_TOL)]
        tol: f64,
        #[arg(long)]
        degrees: bool,
        /// Re-check a sample of records against the library invariants.
        #[arg(long)]
        validate: bool,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Dataset behind one of the four figures.
    Figure {
        #[arg(value_parser = clap::value_parser!(u8).range(1..=4))]
        which: u8,
        #[arg(long, default_value_t = DEFAULT_TOL)]
        tol: f64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// JSON constellation of the SLF state at (p, θ).
    Majorana {
        #[arg(long)]
        p: f64,
        /// Half-angle (radians unless --degrees).
        #[arg(long)]
        theta: f64,
        #[arg(long)]
        degrees: bool,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

fn parse_floats(s: &str) -> Result<Vec<f64>, String> {
    s.split(',')
        .map(|t| t.trim().parse::<f64>().map_err(|e| format!("'{t}': {e}")))
        .collect()
}

fn parse_vec3(s: &str) -> Result<[f64; 3], String> {
    let v = parse_floats(s)?;
    <[f64; 3]>::try_from(v).map_err(|_| "expected three comma-separated numbers".to_string())
}

fn parse_pair(s: &str) -> Result<(f64, f64), String> {
    match parse_floats(s)?.as_slice() {
        [lo, hi] => Ok((*lo, *hi)),
        _ => Err("expected lo,hi".to_string()),
    }
}

fn parse_steps(s: &str) -> Result<(usize, usize), String> {
    let v: Vec<usize> = s
        .split(',')
        .map(|t| t.trim().parse::<usize>().map_err(|e| format!("'{t}': {e}")))
        .collect::<Result<_, _>>()?;
    match v.as_slice() {
        [n] => Ok((*n, *n)),
        [np, nt] => Ok((*np, *nt)),
        _ => Err("expected n or np,ntheta".to_string()),
    }
}

fn open_output(out: &Option<PathBuf>) -> Result<Box<dyn Write>, CliError> {
    Ok(match out {
        Some(path) => Box::new(BufWriter::new(File::create(path)?)),
        None => Box::new(BufWriter::new(io::stdout().lock())),
    })
}

fn angle(value: f64, degrees: bool) -> f64 {
    if degrees {
        value.to_radians()
    } else {
        value
    }
}

/// Runs a parsed command and returns its success exit code.
pub fn execute(cli: &Cli) -> Result<i32, CliError> {
    match &cli.command {
        Command::State {
            p1,
            p2,
            format,
            tol,
            out,
        } => {
            let cfg = ChannelConfig::new(
                PolarizationVector::new(p1[0], p1[1], p1[2])?,
                PolarizationVector::new(p2[0], p2[1], p2[2])?,
            );
            let report = state_report(&cfg, *tol)?;
            let value = serde_json::to_value(&report).expect("report is serializable");
            let text = match format {
                OutputFormat::Json => {
                    serde_json::to_string_pretty(&value).expect("serializable") + "\n"
                }
                OutputFormat::Csv => flatten_csv(&value),
            };
            let mut w = open_output(out)?;
            w.write_all(text.as_bytes())?;
            w.flush()?;
            Ok(if report.entangled() {
                EXIT_ENTANGLED
            } else {
                EXIT_OK
            })
        }
        Command::Sweep {
            p,
            theta,
            steps,
            tol,
            degrees,
            validate,
            out,
        } => {
            let spec = SweepSpec {
                p_range: GridRange::new(p.0, p.1, steps.0),
                theta_range: GridRange::new(
                    angle(theta.0, *degrees),
                    angle(theta.1, *degrees),
                    steps.1,
                ),
                tol: *tol,
            };
            spec.validate()?;
            let mut w = open_output(out)?;
            write_sweep(&spec, *validate, &mut w)?;
            Ok(EXIT_OK)
        }
        Command::Figure { which, tol, out } => {
            let fig = Figure::from_number(*which)?;
            let mut w = open_output(out)?;
            write_figure(fig, *tol, &mut w)?;
            Ok(EXIT_OK)
        }
        Command::Majorana {
            p,
            theta,
            degrees,
            out,
        } => {
            let report = majorana_report(*p, angle(*theta, *degrees))?;
            let text = serde_json::to_string_pretty(&report).expect("serializable") + "\n";
            let mut w = open_output(out)?;
            w.write_all(text.as_bytes())?;
            w.flush()?;
            Ok(EXIT_OK)
        }
    }
}

/// Runs a command, reporting failures on stderr, and returns the exit code.
pub fn run(cli: &Cli) -> i32 {
    match execute(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            e.exit_code()
        }
    }
}
