use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::config::{Mass, ModelFlags, ParityArg};
use crate::families::Family;

#[derive(Debug, Parser)]
#[command(name = "pdm", version, about = "Bound states and zero modes of sech-type potentials")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Bound-state spectrum; writes spectrum.csv and one wavefunction_<k>.csv per state.
    Spectrum(SpectrumArgs),
    /// Depths at which a family binds a state at E = 0.
    Zeromodes(ZeroModeArgs),
    /// Numerical state overlaid on its closed form; writes overlay_<k>.csv.
    Wavefunction(WavefunctionArgs),
    /// Well phase and stationary points of the potential.
    Classify(ClassifyArgs),
    /// Evaluates a local confluent or triconfluent Heun function.
    Heun(HeunArgs),
    /// Recomputes a reference table and reports deviations.
    Reproduce(ReproduceArgs),
}

#[derive(Debug, Clone, Args)]
pub struct SampleArgs {
    /// Half-width of the x range for wavefunction output.
    #[arg(long)]
    pub xmax: Option<f64>,
    /// Sample points across [-xmax, xmax].
    #[arg(long)]
    pub points: Option<usize>,
    /// Output directory.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Clone, Args)]
#[command(allow_negative_numbers = true)]
pub struct SpectrumArgs {
    #[command(flatten)]
    pub model: ModelFlags,
    #[arg(long)]
    pub emin: Option<f64>,
    #[arg(long)]
    pub emax: Option<f64>,
    #[command(flatten)]
    pub sample: SampleArgs,
}

#[derive(Debug, Clone, Args)]
#[command(allow_negative_numbers = true)]
pub struct ZeroModeArgs {
    #[arg(long, value_enum)]
    pub family: Option<Family>,
    #[arg(long = "C", value_name = "C")]
    pub c: Option<f64>,
    #[arg(long)]
    pub from: Option<f64>,
    #[arg(long)]
    pub to: Option<f64>,
    #[arg(long, value_enum)]
    pub parity: Option<ParityArg>,
    /// `constant` runs the constant-mass threshold scan instead.
    #[arg(long, value_enum)]
    pub mass: Option<Mass>,
    #[arg(long)]
    pub n: Option<usize>,
    #[arg(long)]
    pub eps: Option<f64>,
    #[arg(long)]
    pub config: Option<PathBuf>,
}

#[derive(Debug, Clone, Args)]
#[command(allow_negative_numbers = true)]
pub struct WavefunctionArgs {
    #[command(flatten)]
    pub model: ModelFlags,
    /// Index of the state in the ascending spectrum.
    #[arg(long)]
    pub state: Option<usize>,
    #[command(flatten)]
    pub sample: SampleArgs,
}

#[derive(Debug, Clone, Args)]
#[command(allow_negative_numbers = true)]
pub struct ClassifyArgs {
    #[command(flatten)]
    pub model: ModelFlags,
    /// Relative tolerance for the onset and zero-barrier conditions.
    #[arg(long, default_value_t = 1e-5)]
    pub tol: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum HeunKind {
    Confluent,
    Triconfluent,
}

#[derive(Debug, Clone, Args)]
#[command(allow_negative_numbers = true)]
pub struct HeunArgs {
    #[arg(long, value_enum)]
    pub kind: HeunKind,
    #[arg(long, default_value_t = 0.0)]
    pub alpha: f64,
    #[arg(long, default_value_t = 0.0)]
    pub beta: f64,
    #[arg(long, default_value_t = 0.0)]
    pub gamma: f64,
    /// Confluent only.
    #[arg(long, default_value_t = 0.0)]
    pub delta: f64,
    /// Confluent only.
    #[arg(long, default_value_t = 0.0)]
    pub eta: f64,
    /// Real part of the argument.
    #[arg(long = "u", visible_alias = "y", default_value_t = 0.0)]
    pub u: f64,
    /// Imaginary part of the argument.
    #[arg(long, default_value_t = 0.0)]
    pub im: f64,
}

#[derive(Debug, Clone, Args)]
#[command(allow_negative_numbers = true)]
pub struct ReproduceArgs {
    #[arg(long, value_parser = clap::value_parser!(u8).range(1..=4))]
    pub table: u8,
    /// Directory for reproduce_table<N>.csv.
    #[arg(long)]
    pub out: Option<PathBuf>,
}
