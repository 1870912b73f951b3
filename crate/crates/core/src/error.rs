use thiserror::Error;

/// Errors produced by the entropy toolkit.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("distribution is empty")]
    EmptyDistribution,

    #[error("negative probability p[{index}] = {value}")]
    NegativeProbability { index: usize, value: f64 },

    #[error("probabilities sum to {sum}, outside tolerance {tolerance} of 1")]
    NotNormalized { sum: f64, tolerance: f64 },

    #[error("non-finite value in {what}")]
    NonFinite { what: &'static str },

    #[error("length mismatch: {what} has {found} entries, expected {expected}")]
    LengthMismatch {
        what: &'static str,
        expected: usize,
        found: usize,
    },

    #[error("width must be positive, got {0}")]
    NonPositiveWidth(f64),

    #[error("values must be strictly increasing (violated at index {index})")]
    ValuesNotIncreasing { index: usize },

    #[error("entropy constant k must be positive and finite, got {0}")]
    InvalidK(f64),

    #[error("invalid tolerance {0}")]
    InvalidTolerance(f64),

    #[error("invalid density: {0}")]
    InvalidDensity(String),

    #[error("phi `{name}` is not finite at p = {p}")]
    PhiUndefined { name: String, p: f64 },

    #[error("function is not finite at p = {p}")]
    EvaluationFailure { p: f64 },

    #[error("invalid grid: {0}")]
    InvalidGrid(String),

    #[error("invalid samples: {0}")]
    InvalidSamples(String),

    #[error("degenerate design: ln p has no spread across samples")]
    DegenerateDesign,

    #[error("fit is not entropy-admissible: A = {a} must be negative")]
    NotAdmissible { a: f64 },

    #[error("support captures mass {captured}, below the required 1 - 1e-9")]
    UnboundedSupport { captured: f64 },

    #[error("quantization would need {0} bins")]
    TooManyBins(usize),

    #[error("quadrature did not converge on [{lo}, {hi}] (error estimate {estimate:e})")]
    QuadratureFailure { lo: f64, hi: f64, estimate: f64 },

    #[error("invalid sweep: {0}")]
    InvalidSweep(String),

    #[error("invalid shell: {0}")]
    InvalidShell(String),

    #[error("invalid shell density: {0}")]
    InvalidShellDensity(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    /// Variant name, stable for machine-readable error reports.
    pub fn kind(&self) -> &'static str {
        match self {
            Self::EmptyDistribution => "EmptyDistribution",
            Self::NegativeProbability { .. } => "NegativeProbability",
            Self::NotNormalized { .. } => "NotNormalized",
            Self::NonFinite { .. } => "NonFinite",
            Self::LengthMismatch { .. } => "LengthMismatch",
            Self::NonPositiveWidth(_) => "NonPositiveWidth",
            Self::ValuesNotIncreasing { .. } => "ValuesNotIncreasing",
            Self::InvalidK(_) => "InvalidK",
            Self::InvalidTolerance(_) => "InvalidTolerance",
            Self::InvalidDensity(_) => "InvalidDensity",
            Self::PhiUndefined { .. } => "PhiUndefined",
            Self::EvaluationFailure { .. } => "EvaluationFailure",
            Self::InvalidGrid(_) => "InvalidGrid",
            Self::InvalidSamples(_) => "InvalidSamples",
            Self::DegenerateDesign => "DegenerateDesign",
            Self::NotAdmissible { .. } => "NotAdmissible",
            Self::UnboundedSupport { .. } => "UnboundedSupport",
            Self::TooManyBins(_) => "TooManyBins",
            Self::QuadratureFailure { .. } => "QuadratureFailure",
            Self::InvalidSweep(_) => "InvalidSweep",
            Self::InvalidShell(_) => "InvalidShell",
            Self::InvalidShellDensity(_) => "InvalidShellDensity",
        }
    }
}
