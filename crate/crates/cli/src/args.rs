use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Parser, Debug)]
#[command(name = "evapcond", version, about = "Entropy-production bounds for evaporation and condensation of polyatomic gases")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Evaluate the entropy-production bound at one state.
    Lambda(StateArgs),
    /// Report the necessary admissibility conditions at one state.
    Admissible(StateArgs),
    /// Classify flow regimes by Mach number.
    Classify(ClassifyArgs),
    /// Curve of maximal entropy production for evaporation.
    EvaporationCurve(GridArgs),
    /// Surface of maximal entropy production for condensation.
    CondensationSurface(GridArgs),
    /// Pressure intervals with positive entropy production.
    BoundarySurface(GridArgs),
    /// Largest evaporation Mach number with nonnegative entropy production.
    MaxMach(GridArgs),
    /// Compare a computed dataset with a reference table.
    Compare(CompareArgs),
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Json,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum Form {
    Direct,
    Recast,
    Checked,
}

#[derive(Args, Debug, Clone, Default)]
pub struct CommonArgs {
    /// Internal degrees of freedom; repeat for several gases.
    #[arg(long, allow_negative_numbers = true)]
    pub delta: Vec<f64>,
    /// Output file (stdout when omitted).
    #[arg(long)]
    pub out: Option<PathBuf>,
    #[arg(long, value_enum)]
    pub format: Option<Format>,
    /// Flat `key = value` file; command-line flags take precedence.
    #[arg(long)]
    pub config: Option<PathBuf>,
}

#[derive(Args, Debug, Clone)]
pub struct StateArgs {
    #[command(flatten)]
    pub common: CommonArgs,
    #[arg(long = "p", allow_negative_numbers = true)]
    pub p: Option<f64>,
    #[arg(long = "T", allow_negative_numbers = true)]
    pub t: Option<f64>,
    #[arg(long, allow_negative_numbers = true)]
    pub mach: Option<f64>,
    #[arg(long, value_enum)]
    pub form: Option<Form>,
}

#[derive(Args, Debug, Clone)]
pub struct ClassifyArgs {
    #[command(flatten)]
    pub common: CommonArgs,
    #[command(flatten)]
    pub grid: MachGrid,
}

#[derive(Args, Debug, Clone, Default)]
pub struct MachGrid {
    /// Single Mach number; replaces the Mach grid.
    #[arg(long, allow_negative_numbers = true)]
    pub mach: Option<f64>,
    #[arg(long = "mach-min", allow_negative_numbers = true)]
    pub mach_min: Option<f64>,
    #[arg(long = "mach-max", allow_negative_numbers = true)]
    pub mach_max: Option<f64>,
    #[arg(long = "mach-step")]
    pub mach_step: Option<f64>,
}

#[derive(Args, Debug, Clone)]
pub struct GridArgs {
    #[command(flatten)]
    pub common: CommonArgs,
    #[command(flatten)]
    pub mach: MachGrid,
    /// Single temperature ratio; replaces the temperature grid.
    #[arg(long = "T", allow_negative_numbers = true)]
    pub t: Option<f64>,
    #[arg(long = "T-min")]
    pub t_min: Option<f64>,
    #[arg(long = "T-max")]
    pub t_max: Option<f64>,
    #[arg(long = "T-step")]
    pub t_step: Option<f64>,
    #[arg(long = "p-min")]
    pub p_min: Option<f64>,
    #[arg(long = "p-max")]
    pub p_max: Option<f64>,
    #[arg(long = "p-points")]
    pub p_points: Option<usize>,
    /// Target `|Λ|` at extracted zero crossings.
    #[arg(long = "zero-tol")]
    pub zero_tol: Option<f64>,
    /// Simplex diameter at which the 2D maximization stops.
    #[arg(long = "simplex-tol")]
    pub simplex_tol: Option<f64>,
    /// Bracket width at which the 1D maximization stops.
    #[arg(long = "golden-tol")]
    pub golden_tol: Option<f64>,
    /// Ignore the admissibility conditions while searching.
    #[arg(long = "no-admissibility")]
    pub no_admissibility: bool,
}

#[derive(Args, Debug, Clone)]
pub struct CompareArgs {
    #[command(flatten)]
    pub common: CommonArgs,
    /// Reference table with columns `mach[,T],p[,T_value]`.
    #[arg(long)]
    pub reference: Option<PathBuf>,
    /// Dataset written by `evaporation-curve` or `condensation-surface`.
    #[arg(long)]
    pub computed: Option<PathBuf>,
    /// Join keys: `mach` or `mach,T`.
    #[arg(long)]
    pub key: Option<String>,
    /// Largest Mach distance bridged by interpolation or nearest match.
    #[arg(long = "join-tol")]
    pub join_tol: Option<f64>,
}
