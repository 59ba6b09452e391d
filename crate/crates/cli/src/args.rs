use std::f64::consts::PI;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use fock_teleport::HalfInt;

#[derive(Debug, Parser)]
#[command(name = "fockport", version, about = "Teleportation through Fock states entangled on a beam splitter")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Coefficients of the two-mode resource state
    Resource(ResourceCmd),
    /// Number-sum outcome probabilities and per-outcome fidelities
    Distribution(DistributionCmd),
    /// Average fidelity of a single configuration
    Fidelity(FidelityCmd),
    /// Average-fidelity map over beam-splitter angle and photon-number difference
    Sweep(SweepCmd),
    /// Location of the joint phase-difference maximum over the same map
    PhaseMap(PhaseMapCmd),
    /// Compare resource states against a dense brute-force propagator
    OracleCheck(OracleCmd),
}

#[derive(Debug, Clone, Args)]
pub struct Common {
    /// Flat `key = value` file; command-line flags take precedence
    #[arg(long, value_name = "FILE")]
    pub config: Option<PathBuf>,

    /// Output directory (overridden by FOCKPORT_OUT_DIR)
    #[arg(long, value_name = "DIR")]
    pub out_dir: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum TargetKind {
    Cat,
    Fock,
    Coherent,
}

#[derive(Debug, Clone, Args)]
pub struct TargetArgs {
    #[arg(long, value_enum, default_value_t = TargetKind::Cat)]
    pub target: TargetKind,

    /// Amplitude of cat and coherent targets
    #[arg(long, default_value_t = 3.0, allow_hyphen_values = true, value_parser = non_negative)]
    pub alpha: f64,

    /// Photon number of a Fock target
    #[arg(long, default_value_t = 0)]
    pub k: usize,

    /// Fock-basis cutoff; chosen from the truncation limit when omitted
    #[arg(long)]
    pub cutoff: Option<usize>,
}

#[derive(Debug, Clone, Args)]
pub struct ResourceArgs {
    /// Photons entering mode A
    #[arg(long, requires = "m_in", conflicts_with_all = ["total", "m"])]
    pub n_in: Option<usize>,

    /// Photons entering mode B
    #[arg(long, requires = "n_in")]
    pub m_in: Option<usize>,

    /// Total photon number
    #[arg(long, requires = "m")]
    pub total: Option<usize>,

    /// Half-difference (n_in - m_in) / 2, a multiple of 1/2
    #[arg(long, requires = "total", allow_hyphen_values = true, value_parser = half_int)]
    pub m: Option<HalfInt>,

    /// Beam-splitter angle in [0, π]
    #[arg(long, default_value_t = PI / 2.0, allow_hyphen_values = true, value_parser = beta)]
    pub beta: f64,
}

#[derive(Debug, Clone, Args)]
pub struct GridArgs {
    /// Total photon number shared by every cell
    #[arg(long)]
    pub total: usize,

    /// Interior angles π(k+1)/(steps+1), k = 0..steps
    #[arg(long, default_value_t = 101, value_parser = at_least_two)]
    pub beta_steps: usize,

    /// Half-difference range `start:end` in unit steps; defaults to the lowest compatible value up to total/2
    #[arg(long, value_parser = m_range, allow_hyphen_values = true)]
    pub m_range: Option<(HalfInt, HalfInt)>,

    /// Worker threads; defaults to the available parallelism
    #[arg(long)]
    pub threads: Option<usize>,

    /// Output file stem; `.csv` and `.pgm` are appended
    #[arg(long)]
    pub prefix: Option<String>,
}

#[derive(Debug, Args)]
#[command(args_override_self = true)]
pub struct ResourceCmd {
    #[command(flatten)]
    pub resource: ResourceArgs,
    /// Write coefficients to this file in the output directory instead of stdout
    #[arg(long)]
    pub output: Option<PathBuf>,
    #[command(flatten)]
    pub common: Common,
}

#[derive(Debug, Args)]
#[command(args_override_self = true)]
pub struct DistributionCmd {
    #[command(flatten)]
    pub target: TargetArgs,
    #[command(flatten)]
    pub resource: ResourceArgs,
    /// Write the table to this file in the output directory instead of stdout
    #[arg(long)]
    pub output: Option<PathBuf>,
    #[command(flatten)]
    pub common: Common,
}

#[derive(Debug, Args)]
#[command(args_override_self = true)]
pub struct FidelityCmd {
    #[command(flatten)]
    pub target: TargetArgs,
    #[command(flatten)]
    pub resource: ResourceArgs,
    /// Also report the fidelity conditioned on this number-sum outcome
    #[arg(long)]
    pub q: Option<usize>,
    #[command(flatten)]
    pub common: Common,
}

#[derive(Debug, Args)]
#[command(args_override_self = true)]
pub struct SweepCmd {
    #[command(flatten)]
    pub target: TargetArgs,
    #[command(flatten)]
    pub grid: GridArgs,
    #[command(flatten)]
    pub common: Common,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Convention {
    /// Real rotation amplitudes
    Rotation,
    /// Resource coefficients with their quarter-turn phases
    Resource,
}

#[derive(Debug, Args)]
#[command(args_override_self = true)]
pub struct PhaseMapCmd {
    #[command(flatten)]
    pub grid: GridArgs,
    /// Phase samples on [0, 2π)
    #[arg(long, default_value_t = 4096, value_parser = phi_grid)]
    pub phi_grid: usize,
    #[arg(long, value_enum, default_value_t = Convention::Rotation)]
    pub convention: Convention,
    #[command(flatten)]
    pub common: Common,
}

#[derive(Debug, Args)]
#[command(args_override_self = true)]
pub struct OracleCmd {
    /// Check every photon-number pair up to this total
    #[arg(long, default_value_t = 40)]
    pub max_total: usize,
    /// Comma-separated angles; defaults to 0.1, 0.5, π/2, 2.5, 3.0
    #[arg(long, value_delimiter = ',', value_parser = beta)]
    pub betas: Vec<f64>,
    /// Pass threshold on 1 - |overlap|
    #[arg(long, default_value_t = fock_teleport::oracle::RESOURCE_OVERLAP_TOL, allow_hyphen_values = true, value_parser = non_negative)]
    pub tol: f64,
    /// Print only failing rows and the summary
    #[arg(long)]
    pub quiet: bool,
    #[command(flatten)]
    pub common: Common,
}

fn number(s: &str) -> Result<f64, String> {
    s.trim().parse::<f64>().map_err(|e| format!("`{s}` is not a number: {e}"))
}

fn beta(s: &str) -> Result<f64, String> {
    let x = number(s)?;
    if (0.0..=PI).contains(&x) {
        Ok(x)
    } else {
        Err(format!("{x} is outside [0, π]"))
    }
}

fn non_negative(s: &str) -> Result<f64, String> {
    let x = number(s)?;
    if x >= 0.0 && x.is_finite() {
        Ok(x)
    } else {
        Err(format!("{x} must be finite and >= 0"))
    }
}

fn at_least_two(s: &str) -> Result<usize, String> {
    let n: usize = s.trim().parse().map_err(|e| format!("`{s}`: {e}"))?;
    if n >= 2 {
        Ok(n)
    } else {
        Err(format!("{n} is below the minimum of 2"))
    }
}

fn phi_grid(s: &str) -> Result<usize, String> {
    let n: usize = s.trim().parse().map_err(|e| format!("`{s}`: {e}"))?;
    let min = fock_teleport::phase::MIN_PHASE_GRID;
    if n >= min {
        Ok(n)
    } else {
        Err(format!("{n} is below the minimum of {min}"))
    }
}

pub fn half_int(s: &str) -> Result<HalfInt, String> {
    let s = s.trim();
    let parsed = match s.split_once('/') {
        Some((num, "2")) => num.trim().parse::<i64>().ok().map(HalfInt::from_twice),
        Some(_) => None,
        None => s.parse::<f64>().ok().and_then(HalfInt::from_f64),
    };
    parsed.ok_or_else(|| format!("`{s}` is not a multiple of 1/2"))
}

fn m_range(s: &str) -> Result<(HalfInt, HalfInt), String> {
    let (a, b) = s.split_once(':').ok_or_else(|| format!("`{s}` is not of the form start:end"))?;
    let (a, b) = (half_int(a)?, half_int(b)?);
    if a > b {
        return Err(format!("start {a} exceeds end {b}"));
    }
    Ok((a, b))
}
