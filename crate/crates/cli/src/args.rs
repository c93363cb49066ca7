use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Debug, Parser)]
#[command(name = "reslab", version, about = "Exact resonance counting experiments on tori")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    #[command(flatten)]
    pub global: Global,
}

#[derive(Debug, Args)]
pub struct Global {
    /// Report format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Csv)]
    pub format: Format,
    /// Write the report here instead of standard output.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    /// Data-parallel width (default: available parallelism).
    #[arg(long, global = true, value_parser = clap::value_parser!(u32).range(1..=1024))]
    pub threads: Option<u32>,
    /// Seed for randomized scans.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    /// Also write a gnuplot script next to the CSV given by --out.
    #[arg(long, global = true)]
    pub emit_plot: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Json,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Resonant tuple counts.
    #[command(subcommand)]
    Resonance(Resonance),
    /// Space-time norms of the wave packets over one period.
    Strichartz(StrichartzArgs),
    /// First Picard iterate: one coefficient or the L² norm.
    Picard(PicardArgs),
    /// Diophantine witnesses and the phase split on T²_γ.
    Irrational(IrrationalArgs),
    /// Cubic resonances of the Airy equation.
    #[command(subcommand)]
    Airy(Airy),
    /// Number-theoretic growth quantities.
    #[command(subcommand)]
    Asymptotics(Asymptotics),
}

#[derive(Debug, Subcommand)]
pub enum Resonance {
    /// Count one resonant set at one box radius.
    Count(CountArgs),
    /// Count at every radius 1..=N.
    Scan(CountArgs),
}

#[derive(Debug, Args)]
pub struct CountArgs {
    #[arg(long, value_parser = clap::value_parser!(u8).range(1..=3))]
    pub dim: u8,
    #[arg(long = "N")]
    pub n: u32,
    /// Anchor `c1[,c2[,c3]]`. Without it: orthogonal pairs in 2d/3d, `Γ′(0)` in 1d.
    #[arg(long, allow_hyphen_values = true)]
    pub k: Option<String>,
    /// brute | fast | mitm (default fast, mitm in 1d).
    #[arg(long)]
    pub method: Option<String>,
}

#[derive(Debug, Args)]
pub struct StrichartzArgs {
    #[arg(long, value_parser = clap::value_parser!(u8).range(1..=3))]
    pub dim: u8,
    #[arg(long = "N")]
    pub n: u32,
    #[arg(long, default_value_t = 1)]
    pub m: u32,
}

#[derive(Debug, Args)]
pub struct PicardArgs {
    #[arg(long, value_parser = clap::value_parser!(u8).range(1..=2))]
    pub dim: u8,
    #[arg(long = "N")]
    pub n: u32,
    #[arg(long, default_value_t = 1)]
    pub m: u32,
    /// Time (default 2π/m²).
    #[arg(long, allow_hyphen_values = true)]
    pub t: Option<f64>,
    /// Report the coefficient at this anchor instead of the norm.
    #[arg(long, allow_hyphen_values = true)]
    pub k: Option<String>,
}

#[derive(Debug, Args)]
pub struct IrrationalArgs {
    /// `rat:p/q`, `sqrt:d`, `e` or `[int:n;]cf:a1,a2,…`.
    #[arg(long)]
    pub gamma: String,
    #[arg(long = "N")]
    pub n: u32,
    /// Split the Picard iterate at this time instead of reporting the witness.
    #[arg(long)]
    pub t: Option<f64>,
    /// Number of convergents searched.
    #[arg(long, default_value_t = 2_000_000)]
    pub depth: usize,
}

#[derive(Debug, Subcommand)]
pub enum Airy {
    /// `#Γ_Airy(n, k)` in the box `[−N, N]³`.
    Count(AiryCountArgs),
    /// The lcm construction for `m` members of `Γ_Airy(3M³, 3M)`.
    Witness(AiryWitnessArgs),
    /// Scan `|k| ≤ 3N`, or random anchors under a gap condition.
    Scan(AiryScanArgs),
}

#[derive(Debug, Args)]
pub struct AiryCountArgs {
    #[arg(long = "N")]
    pub n: u32,
    /// Sum `k₁ + k₂ + k₃`.
    #[arg(long, allow_hyphen_values = true)]
    pub k: String,
    /// Cube sum `k₁³ + k₂³ + k₃³`.
    #[arg(long, allow_hyphen_values = true)]
    pub cube_sum: String,
    /// brute | divisor.
    #[arg(long, default_value = "divisor")]
    pub method: String,
    /// Also count members obeying the gap condition with this factor.
    #[arg(long)]
    pub gap_factor: Option<f64>,
}

#[derive(Debug, Args)]
pub struct AiryWitnessArgs {
    #[arg(long)]
    pub m: u32,
}

#[derive(Debug, Args)]
pub struct AiryScanArgs {
    #[arg(long = "N")]
    pub n: u32,
    /// Switch to the random restricted scan with this gap factor.
    #[arg(long)]
    pub gap_factor: Option<f64>,
    /// Anchors drawn by the restricted scan.
    #[arg(long, default_value_t = 1000)]
    pub samples: usize,
}

#[derive(Debug, Subcommand)]
pub enum Asymptotics {
    /// `Σ_{p≤N} φ(p)/p² / log N` against 6/π².
    TotientLimit(RadiusArg),
    /// Orthogonal pairs split into axis and quadrant-core parts.
    QuadrantCore(RadiusArg),
    /// The 3d direction sum `Σ [N/a]²·#plane points`.
    DirectionSum(RadiusArg),
    /// `lcm(1..m+1)` against `(m+1)^{π(m+1)}`.
    LcmBound(AiryWitnessArgs),
    /// Quotients and convergents of a γ preset.
    ContinuedFraction(ContinuedFractionArgs),
}

#[derive(Debug, Args)]
pub struct RadiusArg {
    #[arg(long = "N")]
    pub n: u32,
}

#[derive(Debug, Args)]
pub struct ContinuedFractionArgs {
    #[arg(long)]
    pub gamma: String,
    #[arg(long)]
    pub depth: usize,
}
