//! Perturbative check that the uniform shell density maximizes entropy.

use rand::Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::discrete::axioms::stream;
use crate::distributions::EntropyUnit;
use crate::error::{Error, Result};
use crate::numeric::pairwise_sum;

pub const NORMALIZATION_TOLERANCE: f64 = 1e-9;
/// A perturbation may exceed the uniform entropy by at most this much.
pub const MAXIMALITY_SLACK: f64 = 1e-12;

// Perturbations per RNG substream; fixed so results do not depend on how
// many threads run the shards.
const SHARD_SIZE: usize = 128;

/// A shell density sampled on cells of phase-space volume `wᵢ`, normalized
/// so that `Σ wᵢ fᵢ = 1`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DiscretizedShellDensity {
    cell_volumes: Vec<f64>,
    densities: Vec<f64>,
}

impl DiscretizedShellDensity {
    pub fn new(cell_volumes: Vec<f64>, densities: Vec<f64>) -> Result<Self> {
        if cell_volumes.is_empty() || cell_volumes.len() != densities.len() {
            return Err(Error::InvalidShellDensity(format!(
                "{} cell volumes for {} densities",
                cell_volumes.len(),
                densities.len()
            )));
        }
        if cell_volumes.iter().any(|w| !(*w > 0.0 && w.is_finite())) {
            return Err(Error::InvalidShellDensity(
                "cell volumes must be positive".into(),
            ));
        }
        if densities.iter().any(|f| !(*f >= 0.0 && f.is_finite())) {
            return Err(Error::InvalidShellDensity(
                "densities must be non-negative".into(),
            ));
        }
        let mass = weighted_mass(&cell_volumes, &densities);
        if (mass - 1.0).abs() > NORMALIZATION_TOLERANCE {
            return Err(Error::InvalidShellDensity(format!(
                "total mass {mass} is not 1"
            )));
        }
        Ok(Self {
            cell_volumes,
            densities,
        })
    }

    /// `fᵢ = 1 / Σ wⱼ`, the equilibrium density.
    pub fn uniform(cell_volumes: Vec<f64>) -> Result<Self> {
        let total = pairwise_sum(&cell_volumes);
        let densities = vec![1.0 / total; cell_volumes.len()];
        Self::new(cell_volumes, densities)
    }

    /// All mass in one cell.
    pub fn spike(cell_volumes: Vec<f64>, cell: usize) -> Result<Self> {
        let mut densities = vec![0.0; cell_volumes.len()];
        let w = *cell_volumes
            .get(cell)
            .ok_or_else(|| Error::InvalidShellDensity(format!("no cell {cell}")))?;
        densities[cell] = 1.0 / w;
        Self::new(cell_volumes, densities)
    }

    pub fn cell_volumes(&self) -> &[f64] {
        &self.cell_volumes
    }

    pub fn densities(&self) -> &[f64] {
        &self.densities
    }
}

fn weighted_mass(w: &[f64], f: &[f64]) -> f64 {
    let terms: Vec<f64> = w.iter().zip(f).map(|(w, f)| w * f).collect();
    pairwise_sum(&terms)
}

fn entropy_nats(w: &[f64], f: &[f64], c: f64) -> f64 {
    let terms: Vec<f64> = w
        .iter()
        .zip(f)
        .map(|(&w, &f)| if f == 0.0 { 0.0 } else { -w * f * (c * f).ln() })
        .collect();
    pairwise_sum(&terms)
}

fn check_cell_constant(c: f64) -> Result<()> {
    if c > 0.0 && c.is_finite() {
        Ok(())
    } else {
        Err(Error::InvalidShell(format!(
            "cell constant C must be positive, got {c}"
        )))
    }
}

/// `S = −k Σ wᵢ fᵢ ln(C fᵢ)`.
pub fn shell_entropy(d: &DiscretizedShellDensity, c: f64, unit: EntropyUnit) -> Result<f64> {
    let unit = unit.check()?;
    check_cell_constant(c)?;
    Ok(unit.from_nats(entropy_nats(&d.cell_volumes, &d.densities, c)))
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct MaxEntReport {
    /// Entropy of the density that was passed in.
    pub entropy: f64,
    pub uniform_entropy: f64,
    /// Largest entropy among the perturbed densities.
    pub max_perturbed_entropy: f64,
    pub trials: usize,
    pub is_maximal: bool,
}

/// Draws `trials` random perturbations of the uniform density on the cells
/// of `d`, each keeping `Σ wᵢ fᵢ = 1` and `fᵢ ≥ 0`, and checks that none
/// beats the uniform entropy by more than [`MAXIMALITY_SLACK`].
///
/// Trials are split into fixed-size shards, each with its own substream of
/// `seed`, so the report is the same at any level of parallelism.
pub fn maxent_shell_check(
    d: &DiscretizedShellDensity,
    c: f64,
    unit: EntropyUnit,
    trials: usize,
    seed: u64,
) -> Result<MaxEntReport> {
    let unit = unit.check()?;
    check_cell_constant(c)?;
    let w = &d.cell_volumes;
    let total = pairwise_sum(w);
    let u = 1.0 / total;
    let uniform = vec![u; w.len()];
    let s_uniform = entropy_nats(w, &uniform, c);

    let shards = trials.div_ceil(SHARD_SIZE);
    let best = (0..shards)
        .into_par_iter()
        .map(|shard| {
            let mut rng = stream(seed, shard as u64);
            let count = SHARD_SIZE.min(trials - shard * SHARD_SIZE);
            let mut best = f64::NEG_INFINITY;
            let mut f = vec![0.0; w.len()];
            for _ in 0..count {
                let mut delta: Vec<f64> =
                    (0..w.len()).map(|_| rng.random_range(-1.0..1.0)).collect();
                let shift = weighted_mass(w, &delta) / total;
                delta.iter_mut().for_each(|x| *x -= shift);
                let t_max = delta
                    .iter()
                    .filter(|x| **x < 0.0)
                    .map(|x| u / -x)
                    .fold(f64::INFINITY, f64::min);
                let t = if t_max.is_finite() {
                    (1.0 - rng.random::<f64>()) * t_max
                } else {
                    0.0
                };
                for (fi, di) in f.iter_mut().zip(&delta) {
                    *fi = (u + t * di).max(0.0);
                }
                best = best.max(entropy_nats(w, &f, c));
            }
            best
        })
        .reduce(|| f64::NEG_INFINITY, f64::max);

    let s_input = entropy_nats(w, &d.densities, c);
    Ok(MaxEntReport {
        entropy: unit.from_nats(s_input),
        uniform_entropy: unit.from_nats(s_uniform),
        max_perturbed_entropy: unit.from_nats(best),
        trials,
        is_maximal: best <= s_uniform + MAXIMALITY_SLACK,
    })
}
