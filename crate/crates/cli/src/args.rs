use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Debug, Parser)]
#[command(
    name = "shannon",
    version,
    about = "Shannon, total, differential and microcanonical entropy calculations"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,

    /// Entropy unit.
    #[arg(long, global = true, value_enum, default_value_t = UnitArg::Nats)]
    pub unit: UnitArg,

    /// Custom entropy constant k; overrides --unit.
    #[arg(long, global = true)]
    pub k: Option<f64>,

    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    pub format: Format,

    /// Seed for randomized checks.
    #[arg(long, global = true, default_value_t = 42)]
    pub seed: u64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum UnitArg {
    Nats,
    Bits,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Shannon entropy of a discrete distribution.
    Discrete {
        /// Inline JSON (`[..]` or `{"probs":[..]}`) or a path to a JSON file.
        #[arg(long)]
        probs: String,
        /// Rescale the input by its sum instead of rejecting it.
        #[arg(long)]
        renormalize: bool,
        #[arg(long, default_value_t = shannon_core::DEFAULT_TOLERANCE)]
        tolerance: f64,
    },
    /// Total entropy of a binned variable.
    Total {
        /// Inline JSON `{"values":[..],"probs":[..],"widths":[..]}` or a path.
        #[arg(long)]
        binned: String,
        #[arg(long, default_value_t = shannon_core::DEFAULT_TOLERANCE)]
        tolerance: f64,
    },
    /// Differential entropy of a density.
    Differential {
        /// Inline JSON density spec or a path.
        #[arg(long)]
        density: String,
    },
    /// Modified differential entropy −k∫f ln(hf).
    Modified {
        #[arg(long)]
        density: String,
        #[arg(long = "h")]
        h: f64,
    },
    /// Quantize a density into bins of width h.
    Quantize {
        #[arg(long)]
        density: String,
        #[arg(long = "h")]
        h: f64,
    },
    /// Total entropy against differential entropy as h halves.
    Converge {
        #[arg(long)]
        density: String,
        #[arg(long, default_value_t = 0.5)]
        h_start: f64,
        /// Number of widths, starting at h-start.
        #[arg(long, default_value_t = 8)]
        halvings: usize,
    },
    /// Randomized checks of the entropy axioms.
    Axioms(AxiomArgs),
    /// Fit φ′(p) = A ln p + B to sampled derivatives.
    FitPhi {
        /// CSV file of `p,phi_prime` rows, or inline JSON `[[p, g], ..]`.
        #[arg(long)]
        input: String,
    },
    /// Ideal-gas microcanonical entropy.
    #[command(subcommand)]
    Statmech(StatmechCommand),
}

#[derive(Debug, Args)]
pub struct AxiomArgs {
    #[arg(long)]
    pub distributions: Option<usize>,
    #[arg(long)]
    pub max_n: Option<usize>,
    #[arg(long)]
    pub product_pairs: Option<usize>,
    #[arg(long)]
    pub concavity_trials: Option<usize>,
    #[arg(long)]
    pub schur_pairs: Option<usize>,
    #[arg(long)]
    pub schur_transfers: Option<usize>,
}

#[derive(Debug, Subcommand)]
pub enum StatmechCommand {
    /// Shell volume, Boltzmann entropy and the Sackur–Tetrode value.
    IdealGas(ShellArgs),
    /// The two classical entropy expressions for the uniform shell density.
    Compare(CompareArgs),
    /// Perturbative check that the uniform shell density maximizes entropy.
    Maxent(MaxentArgs),
}

#[derive(Debug, Args)]
pub struct ShellArgs {
    #[arg(long = "E")]
    pub energy: f64,
    #[arg(long = "dE")]
    pub shell_width: f64,
    #[arg(long = "V")]
    pub volume: f64,
    #[arg(long = "N")]
    pub particles: u64,
    #[arg(long, default_value_t = 1.0)]
    pub mass: f64,
    #[arg(long = "planck-h", default_value_t = 1.0)]
    pub planck_h: f64,
    #[arg(long)]
    pub indistinguishable: bool,
}

#[derive(Debug, Args)]
pub struct CompareArgs {
    /// Use this ln Ω instead of the ideal-gas shell.
    #[arg(long = "ln-omega", allow_hyphen_values = true)]
    pub ln_omega: Option<f64>,
    #[arg(long = "E")]
    pub energy: Option<f64>,
    #[arg(long = "dE")]
    pub shell_width: Option<f64>,
    #[arg(long = "V")]
    pub volume: Option<f64>,
    #[arg(long = "N")]
    pub particles: u64,
    #[arg(long, default_value_t = 1.0)]
    pub mass: f64,
    #[arg(long = "planck-h", default_value_t = 1.0)]
    pub planck_h: f64,
}

#[derive(Debug, Args)]
pub struct MaxentArgs {
    /// Number of equal cells of total volume 1.
    #[arg(long, conflicts_with = "cell_volumes")]
    pub cells: Option<usize>,
    /// Inline JSON array of cell volumes, or a path.
    #[arg(long)]
    pub cell_volumes: Option<String>,
    /// Density to evaluate (inline JSON array or path); uniform if omitted.
    #[arg(long)]
    pub densities: Option<String>,
    /// Phase-cell constant C.
    #[arg(long = "C", default_value_t = 1.0)]
    pub cell_constant: f64,
    #[arg(long, default_value_t = 1000)]
    pub trials: usize,
}
