use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::input::{parse_g_range, parse_real};

#[derive(Parser, Debug)]
#[command(
    name = "srp",
    version,
    about = "Unit-circle zero criteria for self-reciprocal polynomials"
)]
pub struct Cli {
    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Table, global = true)]
    pub format: Format,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Table,
    Csv,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Run the criterion and print the m-sequence, R-sequence and verdict.
    Check(CheckArgs),
    /// Print R_1..R_2g exactly.
    Rvalues(RvaluesArgs),
    /// Run the canonical-system verification battery.
    Verify(VerifyArgs),
    /// Generate instances, run criterion and oracle, report agreement.
    Experiment(ExperimentArgs),
}

/// The polynomial, as inline half-coefficients `c_0 … c_g` or a JSON file.
#[derive(Args, Debug)]
pub struct PolyInput {
    /// JSON file `{"g": 2, "coeffs": ["1", "-1", "2"]}`.
    #[arg(long, conflicts_with = "coeffs")]
    pub file: Option<PathBuf>,

    /// Coefficients c_0 … c_g as integers or p/q; put them after all options.
    #[arg(allow_hyphen_values = true, value_name = "C")]
    pub coeffs: Vec<String>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum CheckMode {
    Log,
    Omega,
    Both,
}

#[derive(Args, Debug)]
pub struct CheckArgs {
    #[arg(long, value_enum, default_value_t = CheckMode::Log)]
    pub mode: CheckMode,

    #[command(flatten)]
    pub input: PolyInput,
}

#[derive(Args, Debug)]
pub struct RvaluesArgs {
    /// Read the values as λ_1 … λ_g of c_0 Π (x² - 2λ_j x + 1) and cross-print
    /// the closed forms in λ (g ≤ 3).
    #[arg(long)]
    pub lambdas: bool,

    /// Leading coefficient c_0 for --lambdas.
    #[arg(long, default_value = "1", allow_hyphen_values = true)]
    pub c0: String,

    #[command(flatten)]
    pub input: PolyInput,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum BatteryArg {
    Canonical,
    Factorization,
    Kernel,
    All,
}

#[derive(Args, Debug)]
pub struct VerifyArgs {
    #[arg(long, value_enum, default_value_t = BatteryArg::All)]
    pub battery: BatteryArg,

    /// Base q > 1 of the floating-point objects.
    #[arg(long, env = "SRP_Q", default_value = "2", value_parser = parse_real)]
    pub q: f64,

    /// Check the ω-system at this ω > 0 instead of the log-mode system.
    #[arg(long, value_parser = parse_real)]
    pub omega: Option<f64>,

    #[arg(long, default_value_t = 0)]
    pub seed: u64,

    /// Also write the Hamiltonian steps as CSV (n,a_start,a_end,m) to this path.
    #[arg(long, value_name = "PATH")]
    pub hamiltonian_csv: Option<PathBuf>,

    #[command(flatten)]
    pub input: PolyInput,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum OmegaArg {
    /// Exact root counts on (1, ∞).
    Exact,
    /// Evaluation at a few t > 1; can only refute.
    Sampled,
    Off,
}

#[derive(Args, Debug)]
pub struct ExperimentArgs {
    /// Comma-separated instance modes.
    #[arg(
        long,
        value_delimiter = ',',
        default_value = "OnCircleSimple,OnCircleMultiple,OffCircle,Mixed"
    )]
    pub modes: Vec<srp_core::oracle::InstanceMode>,

    /// Inclusive range of g, as `a..b` or a single value.
    #[arg(long, default_value = "1..4", value_parser = parse_g_range)]
    pub g_range: (usize, usize),

    /// Instances per (mode, g) cell.
    #[arg(long, default_value_t = 10)]
    pub count: usize,

    #[arg(long, default_value_t = 0)]
    pub seed: u64,

    /// How the ω-mode criterion is decided.
    #[arg(long, value_enum, default_value_t = OmegaArg::Exact)]
    pub omega: OmegaArg,

    /// Include wall-clock timings (makes the output non-reproducible).
    #[arg(long)]
    pub timing: bool,
}
