use std::path::PathBuf;

use clap::{ArgAction, Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

#[derive(Debug, Parser, Serialize)]
#[command(name = "mvrho", version, about = "Multivariate Spearman-type statistics, Pitman efficiency and extremal alternatives")]
#[command(args_override_self = true)]
pub struct Cli {
    /// `key = value` file with default flags for the subcommand.
    #[arg(long, global = true, value_name = "FILE")]
    pub config: Option<PathBuf>,
    /// Write the JSON report here instead of standard output.
    #[arg(long, global = true, value_name = "FILE")]
    pub out: Option<PathBuf>,
    /// Also write the report table as CSV.
    #[arg(long, global = true, value_name = "FILE")]
    pub csv: Option<PathBuf>,
    /// Worker threads; results do not depend on it.
    #[arg(long, global = true, env = "MVRHO_THREADS")]
    pub threads: Option<usize>,
    /// Repeat for more log output on standard error.
    #[arg(short, long, global = true, action = ArgAction::Count)]
    #[serde(skip)]
    pub verbose: u8,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Command {
    /// Rank statistics of a CSV sample (header row, then one row per subject).
    Stat(StatArgs),
    /// Pitman slopes and efficiencies of the S, W and V tests.
    Efficiency(EfficiencyArgs),
    /// Monte Carlo size and power study.
    Simulate(SimulateArgs),
    /// Green functions, Lagrange multipliers and extremal alternatives.
    Green(GreenArgs),
}

impl Command {
    pub fn name(&self) -> &'static str {
        match self {
            Command::Stat(_) => "stat",
            Command::Efficiency(_) => "efficiency",
            Command::Simulate(_) => "simulate",
            Command::Green(_) => "green",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
pub enum StatChoice {
    #[value(name = "S", alias = "s")]
    S,
    #[value(name = "W", alias = "w")]
    W,
    #[value(name = "V", alias = "v")]
    V,
    #[value(name = "U", alias = "u")]
    U,
    #[value(name = "all")]
    #[serde(rename = "all")]
    All,
}

#[derive(Debug, Args, Serialize)]
pub struct StatArgs {
    /// Input CSV file.
    pub input: PathBuf,
    #[arg(long, value_enum, default_value = "all")]
    pub stat: StatChoice,
    /// `reject`, or `random:SEED` to break ties by a seeded shuffle.
    #[arg(long, default_value = "reject")]
    pub ties: String,
    #[arg(long, default_value_t = 0.05)]
    pub alpha: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum ModelChoice {
    Fgm,
    Gaussian,
    OptimalS,
    OptimalW,
}

#[derive(Debug, Args, Serialize)]
pub struct EfficiencyArgs {
    #[arg(long, value_enum)]
    pub model: ModelChoice,
    /// Dimension; a comma-separated list gives one report per value.
    #[arg(long, value_delimiter = ',', action = ArgAction::Set, required = true)]
    pub m: Vec<usize>,
    /// `closed`, `gauss:K`, `gh:K` or `mc:N[@SEED]`; default picks the most exact.
    #[arg(long)]
    pub method: Option<String>,
    /// Seed for `mc:N` when it carries none.
    #[arg(long)]
    pub seed: Option<u64>,
    /// Local parameters at which to tabulate the power of the S test.
    #[arg(long, value_delimiter = ',', action = ArgAction::Set)]
    pub h: Vec<f64>,
    #[arg(long, default_value_t = 0.05)]
    pub alpha: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
pub enum SimStat {
    #[value(name = "S", alias = "s")]
    S,
    #[value(name = "W", alias = "w")]
    W,
    #[value(name = "V", alias = "v")]
    V,
}

#[derive(Debug, Args, Serialize)]
pub struct SimulateArgs {
    /// Density model; `gaussian` samples the Gaussian copula.
    #[arg(long, value_enum)]
    pub model: ModelChoice,
    #[arg(long)]
    pub m: usize,
    #[arg(long, value_enum, value_delimiter = ',', action = ArgAction::Set, default_value = "S")]
    pub stat: Vec<SimStat>,
    #[arg(long, value_delimiter = ',', action = ArgAction::Set, required = true)]
    pub n: Vec<usize>,
    #[arg(long, default_value_t = 2000)]
    pub reps: usize,
    /// Local parameters, θ = h/√n.
    #[arg(long, value_delimiter = ',', action = ArgAction::Set, conflicts_with = "theta")]
    pub h: Vec<f64>,
    /// Fixed alternatives.
    #[arg(long, value_delimiter = ',', action = ArgAction::Set)]
    pub theta: Vec<f64>,
    #[arg(long, default_value_t = 0.05)]
    pub alpha: f64,
    #[arg(long)]
    pub seed: u64,
    /// Tabulate mean |S − U| over the n values instead (null samples).
    #[arg(long)]
    pub u_gap: bool,
}

#[derive(Debug, Args, Serialize)]
pub struct GreenArgs {
    #[arg(long)]
    pub m: usize,
    /// Members as digit strings, e.g. "12,13,23,123"; "0" is the empty set.
    #[arg(long, default_value = "", allow_hyphen_values = true)]
    pub family: String,
    /// Replace the family by its superset closure.
    #[arg(long)]
    pub close: bool,
    /// Evaluate the kernel at this point (with --xi).
    #[arg(long, value_delimiter = ',', action = ArgAction::Set, requires = "xi")]
    pub eval: Vec<f64>,
    #[arg(long, value_delimiter = ',', action = ArgAction::Set, requires = "eval")]
    pub xi: Vec<f64>,
    /// Lagrange multiplier of the measure.
    #[arg(long)]
    pub lambda: bool,
    /// Tabulate the extremal alternative Ω on a grid.
    #[arg(long)]
    pub optimal: bool,
    #[arg(long, default_value_t = 11)]
    pub grid: usize,
    /// Atom of a discrete measure (repeatable); Lebesgue measure when absent.
    #[arg(long = "point", value_name = "X1,..,XM", action = ArgAction::Append)]
    pub points: Vec<String>,
    /// Weights of the atoms; equal weights when absent.
    #[arg(long, value_delimiter = ',', action = ArgAction::Set)]
    pub weights: Vec<f64>,
    /// Number of up-set families of subsets of {1..m}.
    #[arg(long)]
    pub count_upsets: bool,
}
