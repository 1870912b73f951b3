use std::f64::consts::{PI, SQRT_2};

use serde::{Deserialize, Serialize};
use statrs::distribution::{ContinuousCDF, Normal};
use statrs::function::erf::erfc;

use crate::error::{Error, Result};

/// Tail mass allowed outside an automatically truncated support.
pub const TRUNCATION_EPSILON: f64 = 1e-10;

/// Minimum mass a declared support has to capture.
const SUPPORT_MASS_FLOOR: f64 = 1.0 - 1e-9;

// Beyond ~38.6σ the gaussian density underflows to zero.
const GAUSSIAN_FULL_RANGE_SIGMAS: f64 = 40.0;
// exp(-745) underflows to zero.
const EXPONENTIAL_FULL_RANGE_RATES: f64 = 745.0;

/// Parametric density families.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum DensityFamily {
    Uniform { a: f64, b: f64 },
    Gaussian { mu: f64, sigma: f64 },
    Exponential { rate: f64 },
}

/// A continuous density with an explicit, finite support.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "DensityJson", into = "DensityJson")]
pub struct DensitySpec {
    family: DensityFamily,
    support: Option<(f64, f64)>,
}

fn finite(xs: &[f64]) -> bool {
    xs.iter().all(|x| x.is_finite())
}

impl DensitySpec {
    pub fn uniform(a: f64, b: f64) -> Result<Self> {
        if !finite(&[a, b]) || a >= b {
            return Err(Error::InvalidDensity(format!(
                "uniform needs finite a < b, got a={a}, b={b}"
            )));
        }
        Ok(Self {
            family: DensityFamily::Uniform { a, b },
            support: None,
        })
    }

    pub fn gaussian(mu: f64, sigma: f64) -> Result<Self> {
        if !finite(&[mu, sigma]) || sigma <= 0.0 {
            return Err(Error::InvalidDensity(format!(
                "gaussian needs finite mu and sigma > 0, got mu={mu}, sigma={sigma}"
            )));
        }
        Ok(Self {
            family: DensityFamily::Gaussian { mu, sigma },
            support: None,
        })
    }

    pub fn exponential(rate: f64) -> Result<Self> {
        if !finite(&[rate]) || rate <= 0.0 {
            return Err(Error::InvalidDensity(format!(
                "exponential needs lambda > 0, got {rate}"
            )));
        }
        Ok(Self {
            family: DensityFamily::Exponential { rate },
            support: None,
        })
    }

    /// Replaces the automatic truncation with `[lo, hi]`.
    pub fn with_support(self, lo: f64, hi: f64) -> Result<Self> {
        if !finite(&[lo, hi]) || lo >= hi {
            return Err(Error::InvalidDensity(format!(
                "support needs finite lo < hi, got [{lo}, {hi}]"
            )));
        }
        let captured = 1.0 - self.cdf(lo) - self.sf(hi);
        if captured < SUPPORT_MASS_FLOOR {
            return Err(Error::UnboundedSupport { captured });
        }
        Ok(Self {
            support: Some((lo, hi)),
            ..self
        })
    }

    pub fn family(&self) -> DensityFamily {
        self.family
    }

    pub fn name(&self) -> &'static str {
        match self.family {
            DensityFamily::Uniform { .. } => "uniform",
            DensityFamily::Gaussian { .. } => "gaussian",
            DensityFamily::Exponential { .. } => "exponential",
        }
    }

    pub fn has_declared_support(&self) -> bool {
        self.support.is_some()
    }

    pub fn pdf(&self, x: f64) -> f64 {
        match self.family {
            DensityFamily::Uniform { a, b } => {
                if (a..=b).contains(&x) {
                    1.0 / (b - a)
                } else {
                    0.0
                }
            }
            DensityFamily::Gaussian { mu, sigma } => {
                let z = (x - mu) / sigma;
                (-0.5 * z * z).exp() / (sigma * (2.0 * PI).sqrt())
            }
            DensityFamily::Exponential { rate } => {
                if x >= 0.0 {
                    rate * (-rate * x).exp()
                } else {
                    0.0
                }
            }
        }
    }

    pub fn cdf(&self, x: f64) -> f64 {
        match self.family {
            DensityFamily::Uniform { a, b } => ((x - a) / (b - a)).clamp(0.0, 1.0),
            DensityFamily::Gaussian { mu, sigma } => 0.5 * erfc(-(x - mu) / (sigma * SQRT_2)),
            DensityFamily::Exponential { rate } => {
                if x <= 0.0 {
                    0.0
                } else {
                    -(-rate * x).exp_m1()
                }
            }
        }
    }

    /// Upper-tail mass `1 − F(x)`, computed without cancellation.
    pub fn sf(&self, x: f64) -> f64 {
        match self.family {
            DensityFamily::Uniform { a, b } => ((b - x) / (b - a)).clamp(0.0, 1.0),
            DensityFamily::Gaussian { mu, sigma } => 0.5 * erfc((x - mu) / (sigma * SQRT_2)),
            DensityFamily::Exponential { rate } => {
                if x <= 0.0 {
                    1.0
                } else {
                    (-rate * x).exp()
                }
            }
        }
    }

    /// Where the density is positive; infinite ends are allowed.
    pub fn natural_support(&self) -> (f64, f64) {
        match self.family {
            DensityFamily::Uniform { a, b } => (a, b),
            DensityFamily::Gaussian { .. } => (f64::NEG_INFINITY, f64::INFINITY),
            DensityFamily::Exponential { .. } => (0.0, f64::INFINITY),
        }
    }

    /// Finite support used for binning: the declared support, or the
    /// `[ε/2, 1 − ε/2]` quantile range for infinite ends.
    pub fn truncated_support(&self) -> (f64, f64) {
        if let Some(s) = self.support {
            return s;
        }
        let half = 0.5 * TRUNCATION_EPSILON;
        match self.family {
            DensityFamily::Uniform { a, b } => (a, b),
            DensityFamily::Gaussian { mu, sigma } => {
                // mu = 0, sigma = 1 are always valid
                let z = Normal::new(0.0, 1.0)
                    .expect("standard normal")
                    .inverse_cdf(half);
                (mu + sigma * z, mu - sigma * z)
            }
            DensityFamily::Exponential { rate } => (0.0, -half.ln() / rate),
        }
    }

    /// Range for full-support integrals such as `−∫ f ln f`: the declared
    /// support, or out to where the density underflows.
    pub fn integration_range(&self) -> (f64, f64) {
        if let Some(s) = self.support {
            return s;
        }
        match self.family {
            DensityFamily::Uniform { a, b } => (a, b),
            DensityFamily::Gaussian { mu, sigma } => (
                mu - GAUSSIAN_FULL_RANGE_SIGMAS * sigma,
                mu + GAUSSIAN_FULL_RANGE_SIGMAS * sigma,
            ),
            DensityFamily::Exponential { rate } => (0.0, EXPONENTIAL_FULL_RANGE_RATES / rate),
        }
    }
}

/// JSON form, e.g. `{"family":"gaussian","mu":0,"sigma":1}`.
#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DensityJson {
    pub family: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub a: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub b: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub mu: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub sigma: Option<f64>,
    #[serde(default, alias = "rate", skip_serializing_if = "Option::is_none")]
    pub lambda: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub support: Option<[f64; 2]>,
}

fn required(v: Option<f64>, family: &str, field: &str) -> Result<f64> {
    v.ok_or_else(|| Error::InvalidDensity(format!("{family} needs `{field}`")))
}

impl TryFrom<DensityJson> for DensitySpec {
    type Error = Error;

    fn try_from(j: DensityJson) -> Result<Self> {
        let fam = j.family.as_str();
        let spec = match fam {
            "uniform" => Self::uniform(required(j.a, fam, "a")?, required(j.b, fam, "b")?)?,
            "gaussian" | "normal" => {
                Self::gaussian(required(j.mu, fam, "mu")?, required(j.sigma, fam, "sigma")?)?
            }
            "exponential" => Self::exponential(required(j.lambda, fam, "lambda")?)?,
            other => return Err(Error::InvalidDensity(format!("unknown family `{other}`"))),
        };
        match j.support {
            Some([lo, hi]) => spec.with_support(lo, hi),
            None => Ok(spec),
        }
    }
}

impl From<DensitySpec> for DensityJson {
    fn from(d: DensitySpec) -> Self {
        let mut j = DensityJson {
            family: d.name().to_string(),
            support: d.support.map(|(lo, hi)| [lo, hi]),
            ..Default::default()
        };
        match d.family {
            DensityFamily::Uniform { a, b } => (j.a, j.b) = (Some(a), Some(b)),
            DensityFamily::Gaussian { mu, sigma } => (j.mu, j.sigma) = (Some(mu), Some(sigma)),
            DensityFamily::Exponential { rate } => j.lambda = Some(rate),
        }
        j
    }
}
