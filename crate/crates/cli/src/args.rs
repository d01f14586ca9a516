use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use cp_groebner::{ApproximationOrder, ClosureRelation, ConfigurationPattern};

#[derive(Parser, Debug)]
#[command(name = "cpgb", version, about = "Closure approximations and Monte Carlo for the 1D contact process")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Print correlation identities as polynomials.
    Identities(IdentitiesArgs),
    /// Print the generators of an approximation ideal.
    Ideal(SystemArgs),
    /// Print the reduced Groebner basis of an approximation ideal.
    Groebner(GroebnerArgs),
    /// Solve an approximation: elimination polynomial, branch and critical bound.
    Approx(ApproxArgs),
    /// Tabulate the approximate density over a range of infection rates.
    Sweep(SweepArgs),
    /// Estimate extinction probability or density by simulation.
    Simulate(SimulateArgs),
    /// Put an approximation and a simulation side by side at one rate.
    Compare(CompareArgs),
}

#[derive(Args, Debug)]
#[group(required = true, multiple = false)]
pub struct IdentitiesArgs {
    /// Pattern over the alphabet `o` (occupied) and `x` (vacant), e.g. `ooxo`.
    #[arg(long)]
    pub pattern: Option<ConfigurationPattern>,
    /// Print the identities used by the order-m approximations (m = 1..3).
    #[arg(long)]
    pub order: Option<u32>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum SchemeArg {
    /// The closure relations that come with `--order`.
    Builtin,
    /// Closure relations given with `--relation`.
    Custom,
}

#[derive(Args, Debug)]
pub struct SystemArgs {
    /// Approximation order: 1, 2, 2prime or 3.
    #[arg(long, default_value = "3")]
    pub order: ApproximationOrder,
    #[arg(long, value_enum, default_value = "builtin")]
    pub scheme: SchemeArg,
    /// Closure relation such as `o*ooxo=oo*oxo`; repeatable.
    #[arg(long = "relation")]
    pub relations: Vec<ClosureRelation>,
    /// Patterns whose identities enter the ideal, comma separated; defaults
    /// to those of `--order`.
    #[arg(long, value_delimiter = ',')]
    pub patterns: Vec<ConfigurationPattern>,
}

#[derive(Args, Debug)]
pub struct GroebnerArgs {
    #[command(flatten)]
    pub system: SystemArgs,
    /// Log every processed critical pair to stderr.
    #[arg(long)]
    pub trace: bool,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum OutFormat {
    Text,
    Json,
    Csv,
}

#[derive(Args, Debug)]
pub struct ApproxArgs {
    #[command(flatten)]
    pub system: SystemArgs,
    #[arg(long, value_enum, default_value = "text")]
    pub out: OutFormat,
}

#[derive(Args, Debug)]
pub struct SweepArgs {
    #[arg(long, default_value = "3")]
    pub order: ApproximationOrder,
    #[arg(long)]
    pub from: f64,
    #[arg(long)]
    pub to: f64,
    #[arg(long)]
    pub step: f64,
    #[arg(long, value_enum, default_value = "csv")]
    pub out: OutFormat,
    /// Write to a file instead of stdout.
    #[arg(long)]
    pub output: Option<PathBuf>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum SimMode {
    Extinction,
    Density,
    Duality,
}

#[derive(Args, Debug, Clone)]
pub struct SimParams {
    /// Ring size.
    #[arg(long = "L", default_value_t = 400)]
    pub size: usize,
    /// Time horizon.
    #[arg(long = "T", default_value_t = 200.0)]
    pub horizon: f64,
    #[arg(long, default_value_t = 1000)]
    pub replicas: usize,
    #[arg(long, default_value_t = 42)]
    pub seed: u64,
}

#[derive(Args, Debug)]
pub struct SimulateArgs {
    #[arg(long)]
    pub lambda: f64,
    /// Initial pattern for extinction and duality runs.
    #[arg(long, default_value = "o")]
    pub pattern: ConfigurationPattern,
    #[command(flatten)]
    pub params: SimParams,
    #[arg(long, value_enum, default_value = "extinction")]
    pub mode: SimMode,
}

#[derive(Args, Debug)]
pub struct CompareArgs {
    #[arg(long, default_value = "3")]
    pub order: ApproximationOrder,
    #[arg(long)]
    pub lambda: f64,
    #[command(flatten)]
    pub params: SimParams,
}
