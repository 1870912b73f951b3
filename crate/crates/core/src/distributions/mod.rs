//! Validated probability carriers shared by the rest of the crate.
//!
//! All types are immutable once built. Normalization is checked and never
//! repaired implicitly; [`DiscreteDistribution::renormalized`] is the only
//! path that rescales.

mod density;
mod value;

pub use density::{DensityFamily, DensityJson, DensitySpec, TRUNCATION_EPSILON};
pub use value::{EntropyUnit, EntropyValue};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::numeric::pairwise_sum;

/// Default slack allowed on `|Σ p − 1|`.
pub const DEFAULT_TOLERANCE: f64 = 1e-9;

/// A finite probability vector `(p₁, …, pₙ)`.
///
/// Zero entries are kept so that indices stay aligned with values and widths.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DiscreteDistribution {
    probs: Vec<f64>,
    #[serde(skip)]
    tolerance: f64,
}

/// Checks that `probs` is a probability vector within `tolerance`.
pub fn validate_distribution(probs: Vec<f64>, tolerance: f64) -> Result<DiscreteDistribution> {
    if !(tolerance >= 0.0 && tolerance.is_finite()) {
        return Err(Error::InvalidTolerance(tolerance));
    }
    if probs.is_empty() {
        return Err(Error::EmptyDistribution);
    }
    if probs.iter().any(|p| !p.is_finite()) {
        return Err(Error::NonFinite {
            what: "probabilities",
        });
    }
    if let Some((index, &value)) = probs.iter().enumerate().find(|(_, p)| **p < 0.0) {
        return Err(Error::NegativeProbability { index, value });
    }
    let sum = pairwise_sum(&probs);
    if (sum - 1.0).abs() > tolerance {
        return Err(Error::NotNormalized { sum, tolerance });
    }
    Ok(DiscreteDistribution { probs, tolerance })
}

impl DiscreteDistribution {
    /// Validates with [`DEFAULT_TOLERANCE`].
    pub fn new(probs: Vec<f64>) -> Result<Self> {
        validate_distribution(probs, DEFAULT_TOLERANCE)
    }

    pub fn with_tolerance(probs: Vec<f64>, tolerance: f64) -> Result<Self> {
        validate_distribution(probs, tolerance)
    }

    /// Rescales non-negative weights by their sum.
    pub fn renormalized(weights: Vec<f64>, tolerance: f64) -> Result<Self> {
        if weights.iter().any(|p| !p.is_finite()) {
            return Err(Error::NonFinite {
                what: "probabilities",
            });
        }
        if let Some((index, &value)) = weights.iter().enumerate().find(|(_, p)| **p < 0.0) {
            return Err(Error::NegativeProbability { index, value });
        }
        let sum = pairwise_sum(&weights);
        if sum <= 0.0 {
            return Err(Error::NotNormalized { sum, tolerance });
        }
        validate_distribution(weights.into_iter().map(|w| w / sum).collect(), tolerance)
    }

    pub fn uniform(n: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::EmptyDistribution);
        }
        Self::new(vec![1.0 / n as f64; n])
    }

    pub fn probs(&self) -> &[f64] {
        &self.probs
    }

    pub fn len(&self) -> usize {
        self.probs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.probs.is_empty()
    }

    pub fn tolerance(&self) -> f64 {
        self.tolerance
    }

    pub fn into_probs(self) -> Vec<f64> {
        self.probs
    }

    /// The mixture `λ·self + (1 − λ)·other` of two same-length distributions.
    pub fn mix(&self, other: &Self, lambda: f64) -> Result<Self> {
        if other.len() != self.len() {
            return Err(Error::LengthMismatch {
                what: "mixture component",
                expected: self.len(),
                found: other.len(),
            });
        }
        if !(0.0..=1.0).contains(&lambda) {
            return Err(Error::InvalidSamples(format!(
                "mixing weight {lambda} outside [0, 1]"
            )));
        }
        let probs = self
            .probs
            .iter()
            .zip(&other.probs)
            .map(|(p, q)| lambda * p + (1.0 - lambda) * q)
            .collect();
        validate_distribution(probs, self.tolerance.max(other.tolerance))
    }
}

/// Joint distribution of two independent experiments, `p_j · q_α`, with `j`
/// as the outer index.
///
/// The result carries the tolerance `(n + m) · max(tol_p, tol_q)`.
pub fn product_distribution(
    p: &DiscreteDistribution,
    q: &DiscreteDistribution,
) -> DiscreteDistribution {
    let probs = p
        .probs
        .iter()
        .flat_map(|pj| q.probs.iter().map(move |qa| pj * qa))
        .collect();
    DiscreteDistribution {
        probs,
        tolerance: (p.len() + q.len()) as f64 * p.tolerance.max(q.tolerance),
    }
}

/// A discrete variable observed through intervals of width `hᵢ` around `xᵢ`.
#[derive(Debug, Clone, PartialEq)]
pub struct BinnedVariable {
    values: Vec<f64>,
    dist: DiscreteDistribution,
    widths: Vec<f64>,
}

impl BinnedVariable {
    pub fn new(values: Vec<f64>, dist: DiscreteDistribution, widths: Vec<f64>) -> Result<Self> {
        for (what, len) in [("values", values.len()), ("widths", widths.len())] {
            if len != dist.len() {
                return Err(Error::LengthMismatch {
                    what,
                    expected: dist.len(),
                    found: len,
                });
            }
        }
        if values.iter().chain(&widths).any(|x| !x.is_finite()) {
            return Err(Error::NonFinite {
                what: "values or widths",
            });
        }
        if let Some(&h) = widths.iter().find(|h| **h <= 0.0) {
            return Err(Error::NonPositiveWidth(h));
        }
        if let Some(i) = values.windows(2).position(|w| w[1] <= w[0]) {
            return Err(Error::ValuesNotIncreasing { index: i + 1 });
        }
        Ok(Self {
            values,
            dist,
            widths,
        })
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn dist(&self) -> &DiscreteDistribution {
        &self.dist
    }

    pub fn probs(&self) -> &[f64] {
        self.dist.probs()
    }

    pub fn widths(&self) -> &[f64] {
        &self.widths
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }
}

/// JSON form of a distribution: `{"probs":[...]}` or a bare array.
#[derive(Debug, Clone, PartialEq, Deserialize)]
#[serde(untagged)]
pub enum DistributionJson {
    Object { probs: Vec<f64> },
    Bare(Vec<f64>),
}

impl DistributionJson {
    pub fn into_probs(self) -> Vec<f64> {
        match self {
            Self::Object { probs } | Self::Bare(probs) => probs,
        }
    }
}

/// JSON form of a binned variable. Unknown fields are ignored so that richer
/// objects (e.g. a quantization result) are accepted as input.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BinnedJson {
    pub values: Vec<f64>,
    pub probs: Vec<f64>,
    pub widths: Vec<f64>,
}

impl From<&BinnedVariable> for BinnedJson {
    fn from(v: &BinnedVariable) -> Self {
        Self {
            values: v.values.clone(),
            probs: v.dist.probs.clone(),
            widths: v.widths.clone(),
        }
    }
}
