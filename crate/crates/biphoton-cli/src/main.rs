//! Command-line driver: samples excitation curves into CSV files, renders
//! predefined figure curve sets, and prints the built-in material data.
//!
//! Exit codes separate the failure classes: 0 on success, 2 for
//! configuration and usage errors, 3 for numerical failures (quadrature
//! non-convergence, ambiguous curve metrics), 4 for physics-domain errors
//! (wavelength outside a dispersion window, evanescent waves, out-of-regime
//! parameters).

mod config;
mod figures;
mod output;

use std::fmt;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use biphoton::material::Material;
use biphoton::optics::PumpSpec;

#[derive(Parser)]
#[command(name = "biphoton", version, about = "Two-photon excitation by classical and SPDC-pair light")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Render a predefined figure curve set to CSV files plus a manifest.
    Figure {
        /// Figure id: 2a, 2b, 4, 5, 6, 7, 8a, 8b, or 9.
        id: String,
        /// Output directory (default: figures/fig<id>).
        #[arg(long)]
        out: Option<PathBuf>,
        /// Samples per curve (default depends on the figure).
        #[arg(long)]
        samples: Option<usize>,
        /// Relative quadrature tolerance (default 1e-6).
        #[arg(long)]
        tol: Option<f64>,
    },
    /// Sample the single curve described by a JSON configuration file.
    Run {
        /// Path to the JSON configuration.
        #[arg(long)]
        config: PathBuf,
        /// Output directory; omit to print the CSV to stdout.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Print the built-in material data as JSON.
    Material {
        /// Include the dispersion coefficients and derived constants.
        #[arg(long)]
        show: bool,
    },
}

/// Failure classes carried up to the exit-code mapping.
pub enum CliError {
    Config(String),
    Io(String),
    Lib(biphoton::Error),
}

impl CliError {
    fn exit_code(&self) -> u8 {
        match self {
            Self::Config(_) | Self::Io(_) => 2,
            Self::Lib(e) => match e {
                biphoton::Error::InvalidInput(_) => 2,
                biphoton::Error::NonConvergence { .. }
                | biphoton::Error::AmbiguousCurve { .. }
                | biphoton::Error::PeakAtEdge { .. } => 3,
                biphoton::Error::WavelengthOutOfWindow { .. }
                | biphoton::Error::Evanescent { .. }
                | biphoton::Error::Domain(_) => 4,
            },
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::Config(msg) => write!(f, "configuration error: {msg}"),
            Self::Io(msg) => write!(f, "io error: {msg}"),
            Self::Lib(e) => write!(f, "{e}"),
        }
    }
}

impl From<biphoton::Error> for CliError {
    fn from(e: biphoton::Error) -> Self {
        Self::Lib(e)
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        Self::Io(e.to_string())
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match dispatch(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}

fn dispatch(cli: Cli) -> Result<(), CliError> {
    match cli.command {
        Command::Figure {
            id,
            out,
            samples,
            tol,
        } => {
            let out = out.unwrap_or_else(|| PathBuf::from(format!("figures/fig{id}")));
            figures::render(&id, &out, samples, tol)
        }
        Command::Run { config, out } => {
            let cfg = config::RunConfig::load(&config)?;
            cfg.execute(out.as_deref())
        }
        Command::Material { show: _ } => {
            println!("{}", material_report()?);
            Ok(())
        }
    }
}

/// Dispersion data plus a few derived constants at the stock pump.
fn material_report() -> Result<String, CliError> {
    let material = Material::bbo();
    let pump = PumpSpec::plane_wave(532e-9)?;
    let collinear = biphoton::crystal::collinear_cut_angle(&pump, &material)?;
    let mut value: serde_json::Value =
        serde_json::from_str(&material.to_json()).expect("material serializes to valid JSON");
    value["derived"] = serde_json::json!({
        "n_o_532nm": material.index_ordinary(532e-9)?,
        "n_o_1064nm": material.index_ordinary(1064e-9)?,
        "collinear_cut_angle_deg_532nm_pump": collinear.to_degrees(),
    });
    serde_json::to_string_pretty(&value).map_err(|e| CliError::Io(e.to_string()))
}
