use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};

#[derive(Debug, Parser)]
#[command(name = "degenac", version, about = "Allen-Cahn with degenerate diffusivity: waves, energies and slow motion")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Transition constant by quadrature, closed form and the display formulas
    Gamma(GammaArgs),
    /// Standing wave sampled on a grid, with its pointwise residual
    Wave(WaveArgs),
    /// N-layer profile glued from standing waves
    Profile(ProfileArgs),
    /// Energy, lower bound and transition-structure check of a field
    Energy(EnergyArgs),
    /// Integrate the PDE from a profile
    Simulate(SimulateArgs),
    /// Exit times over a list of eps and the exponential/algebraic verdict
    Sweep(SweepArgs),
    /// Aggregate the JSON summaries found in a directory
    Report(ReportArgs),
}

#[derive(Debug, Args)]
pub struct ConfigArg {
    /// Path to a JSON config, or the JSON object itself
    #[arg(long)]
    pub config: String,
}

/// Jump layout flags shared by the subcommands that build a profile.
#[derive(Debug, Args, Default)]
pub struct LayoutArgs {
    /// Jump locations h_1 < ... < h_N
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true, num_args = 1)]
    pub jumps: Option<Vec<f64>>,
    /// Domain as a,b
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true, num_args = 1)]
    pub domain: Option<Vec<f64>>,
    /// Value of the jump function left of h_1 (+1 or -1)
    #[arg(long, allow_hyphen_values = true)]
    pub first_value: Option<f64>,
    /// Grid cells (default: (b - a) * 20 / eps)
    #[arg(long)]
    pub cells: Option<usize>,
}

#[derive(Debug, Args)]
pub struct GammaArgs {
    #[command(flatten)]
    pub config: ConfigArg,
}

#[derive(Debug, Args)]
pub struct WaveArgs {
    #[command(flatten)]
    pub config: ConfigArg,
    /// Sampling grid as a,b,N (N cells)
    #[arg(long, allow_hyphen_values = true)]
    pub grid: String,
    /// Always use the quadrature inversion table
    #[arg(long)]
    pub numeric: bool,
    #[arg(long, default_value = "wave.csv")]
    pub out: PathBuf,
    #[arg(long)]
    pub plot: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct ProfileArgs {
    #[command(flatten)]
    pub config: ConfigArg,
    #[command(flatten)]
    pub layout: LayoutArgs,
    /// Refuse unless eps is below the compacton threshold
    #[arg(long)]
    pub compacton: bool,
    #[arg(long, default_value = "profile.csv")]
    pub out: PathBuf,
    #[arg(long)]
    pub plot: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct EnergyArgs {
    #[command(flatten)]
    pub config: ConfigArg,
    #[command(flatten)]
    pub layout: LayoutArgs,
    /// Field CSV (x, u); built from the jumps when absent
    #[arg(long)]
    pub init: Option<PathBuf>,
    /// L1 radius of the transition-structure check (default: the layout's r)
    #[arg(long)]
    pub delta: Option<f64>,
    /// Multiple of theta(eps) allowed above N gamma
    #[arg(long, default_value_t = 1.0)]
    pub slack: f64,
    /// Also write the JSON report here
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct SimulateArgs {
    #[command(flatten)]
    pub config: ConfigArg,
    #[command(flatten)]
    pub layout: LayoutArgs,
    /// Initial field CSV (x, u); built from the jumps when absent
    #[arg(long)]
    pub init: Option<PathBuf>,
    #[arg(long)]
    pub t_end: Option<f64>,
    /// Steps between records
    #[arg(long)]
    pub record_every: Option<usize>,
    /// Keep a snapshot every this many records
    #[arg(long)]
    pub snapshot_every: Option<usize>,
    #[arg(long)]
    pub max_steps: Option<usize>,
    /// Stop once the interfaces move this far (Hausdorff) from the start
    #[arg(long)]
    pub stop_delta1: Option<f64>,
    /// Output directory
    #[arg(long, default_value = "trace")]
    pub out: PathBuf,
    #[arg(long)]
    pub plot: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct SweepArgs {
    #[command(flatten)]
    pub config: ConfigArg,
    #[command(flatten)]
    pub layout: LayoutArgs,
    /// eps values
    #[arg(long, value_delimiter = ',', num_args = 1)]
    pub eps: Option<Vec<f64>>,
    #[arg(long)]
    pub delta1: Option<f64>,
    /// Fixed horizon per point (default: 10 exp(1/eps))
    #[arg(long)]
    pub t_max: Option<f64>,
    /// Step budget per point
    #[arg(long)]
    pub max_steps: Option<usize>,
    /// Worker threads; DEGENAC_JOBS takes precedence
    #[arg(long)]
    pub jobs: Option<usize>,
    #[arg(long, default_value = "sweep.csv")]
    pub out: PathBuf,
    #[arg(long)]
    pub plot: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct ReportArgs {
    /// Directory holding sweep and simulate summaries
    #[arg(long)]
    pub dir: PathBuf,
    /// Write the report here instead of stdout
    #[arg(long)]
    pub out: Option<PathBuf>,
}
