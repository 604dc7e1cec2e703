use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Debug, Parser)]
#[command(name = "udw", version, about = "Transition rates of Unruh-DeWitt detectors near reflecting boundaries")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Rate at a single parameter point.
    Rate(RateArgs),
    /// Rate along one parameter axis.
    Sweep(SweepArgs),
    /// Laboratory estimate for a named atomic preset.
    Estimate(EstimateArgs),
    /// Run an invariant suite.
    Verify(VerifyArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum BathKind {
    Thermal,
    Accel,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum GeomKind {
    Free,
    Mirror,
    Cavity,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Dir {
    Up,
    Down,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    /// key=value lines (rate, estimate, verify only)
    Text,
    Csv,
    Json,
}

/// Every flag that fixes a rate evaluation. Lengths and temperatures are in
/// units of the transition energy.
#[derive(Debug, Clone, Args)]
pub struct ScenarioArgs {
    #[arg(long, default_value_t = 1, value_parser = clap::value_parser!(u8).range(1..=2))]
    pub atoms: u8,
    #[arg(long, value_enum, default_value_t = BathKind::Thermal)]
    pub bath: BathKind,
    #[arg(long = "T-over-w0", allow_negative_numbers = true)]
    pub t_over_w0: Option<f64>,
    #[arg(long = "alpha-over-w0", allow_negative_numbers = true)]
    pub alpha_over_w0: Option<f64>,
    #[arg(long, value_enum, default_value_t = GeomKind::Free)]
    pub geom: GeomKind,
    #[arg(long = "w0L", allow_negative_numbers = true)]
    pub w0l: Option<f64>,
    #[arg(long = "w0z0", allow_negative_numbers = true)]
    pub w0z0: Option<f64>,
    #[arg(long = "w0d", allow_negative_numbers = true)]
    pub w0d: Option<f64>,
    /// Entanglement angle; defaults to π/4.
    #[arg(long, allow_negative_numbers = true)]
    pub theta: Option<f64>,
    #[arg(long, value_enum, default_value_t = Dir::Up)]
    pub dir: Dir,
    #[arg(long, default_value_t = 0.1)]
    pub lambda: f64,
    /// Transition energy in eV; adds absolute rates to the output.
    #[arg(long = "omega0-ev")]
    pub omega0_ev: Option<f64>,
    #[arg(long = "policy-rel-tol")]
    pub policy_rel_tol: Option<f64>,
}

#[derive(Debug, Clone, Args)]
pub struct OutputArgs {
    #[arg(long, value_enum)]
    pub format: Option<Format>,
    /// Print floats in scientific notation with this many significant digits.
    #[arg(long = "fixed-digits", value_parser = clap::value_parser!(u8).range(1..=17))]
    pub fixed_digits: Option<u8>,
}

#[derive(Debug, Args)]
pub struct RateArgs {
    #[command(flatten)]
    pub scenario: ScenarioArgs,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Axis {
    #[value(name = "T-over-w0")]
    TOverW0,
    #[value(name = "alpha-over-w0")]
    AlphaOverW0,
    #[value(name = "w0L")]
    W0L,
    #[value(name = "w0z0")]
    W0z0,
    #[value(name = "w0d")]
    W0d,
    Theta,
}

impl Axis {
    pub fn name(self) -> &'static str {
        match self {
            Axis::TOverW0 => "T_over_w0",
            Axis::AlphaOverW0 => "alpha_over_w0",
            Axis::W0L => "w0L",
            Axis::W0z0 => "w0z0",
            Axis::W0d => "w0d",
            Axis::Theta => "theta",
        }
    }
}

#[derive(Debug, Args)]
pub struct SweepArgs {
    #[command(flatten)]
    pub scenario: ScenarioArgs,
    #[command(flatten)]
    pub output: OutputArgs,
    #[arg(long, value_enum)]
    pub axis: Axis,
    #[arg(long, allow_negative_numbers = true)]
    pub min: f64,
    #[arg(long, allow_negative_numbers = true)]
    pub max: f64,
    #[arg(long, default_value_t = 101)]
    pub steps: usize,
    /// Write the table here instead of stdout.
    #[arg(long)]
    pub output_file: Option<std::path::PathBuf>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum PresetName {
    Rb87,
    Cs133,
}

#[derive(Debug, Args)]
pub struct EstimateArgs {
    #[arg(long, value_enum)]
    pub preset: PresetName,
    #[arg(long, default_value_t = 1, value_parser = clap::value_parser!(u8).range(1..=2))]
    pub atoms: u8,
    /// Use the rounded dimensionless inputs behind the published figures.
    #[arg(long = "paper-rounding")]
    pub rounded: bool,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum SuiteName {
    Balance,
    Equivalence,
    Limits,
    Oracle,
    Wightman,
    All,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    #[arg(value_enum, default_value_t = SuiteName::All)]
    pub suite: SuiteName,
    #[command(flatten)]
    pub output: OutputArgs,
}
