//! Seeded randomized checks of the entropy axioms.
//!
//! Every sub-check draws from its own ChaCha stream derived from the suite
//! seed, so adding trials to one check never shifts the samples of another.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use super::{additivity_defect, schur_concavity_check, shannon_entropy};
use crate::distributions::{DiscreteDistribution, EntropyUnit, DEFAULT_TOLERANCE};
use crate::error::Result;

pub const UNIFORM_EQUALITY_TOL: f64 = 1e-12;
pub const ADDITIVITY_TOL: f64 = 1e-10;
pub const CONCAVITY_TOL: f64 = 1e-10;

// Samples closer than this (max-norm) to uniform are excluded from the
// strict-inequality check.
const NEAR_UNIFORM: f64 = 1e-5;

const STREAM_SAMPLES: u64 = 1;
const STREAM_PRODUCTS: u64 = 2;
const STREAM_CONCAVITY: u64 = 3;
const STREAM_SCHUR: u64 = 4;

pub(crate) fn stream(seed: u64, id: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(id);
    rng
}

fn random_weights<R: Rng>(rng: &mut R, n: usize) -> Vec<f64> {
    // exponential weights give a flat Dirichlet
    let mut w: Vec<f64> = (0..n).map(|_| -(1.0 - rng.random::<f64>()).ln()).collect();
    if n > 1 && rng.random_bool(0.25) {
        let keep = rng.random_range(0..n);
        for (i, x) in w.iter_mut().enumerate() {
            if i != keep && rng.random_bool(0.3) {
                *x = 0.0;
            }
        }
    }
    if w.iter().all(|x| *x == 0.0) {
        w[0] = 1.0;
    }
    w
}

/// A random distribution of the given length, occasionally with zero entries.
pub fn random_distribution_of_len<R: Rng>(rng: &mut R, n: usize) -> DiscreteDistribution {
    let w = random_weights(rng, n);
    DiscreteDistribution::renormalized(w, DEFAULT_TOLERANCE)
        .expect("renormalized positive weights are a distribution")
}

/// A random distribution with `1 ≤ n ≤ max_n`.
pub fn random_distribution<R: Rng>(rng: &mut R, max_n: usize) -> DiscreteDistribution {
    let n = rng.random_range(1..=max_n.max(1));
    random_distribution_of_len(rng, n)
}

/// Applies `transfers` random Robin Hood moves to `p`: each moves a random
/// fraction of half the gap from a richer to a poorer coordinate. The result
/// is majorized by `p`.
pub fn robin_hood<R: Rng>(
    rng: &mut R,
    p: &DiscreteDistribution,
    transfers: usize,
) -> DiscreteDistribution {
    let mut q = p.probs().to_vec();
    let n = q.len();
    if n >= 2 {
        for _ in 0..transfers {
            let i = rng.random_range(0..n);
            let j = rng.random_range(0..n);
            let (rich, poor) = if q[i] >= q[j] { (i, j) } else { (j, i) };
            let gap = q[rich] - q[poor];
            if gap <= 0.0 {
                continue;
            }
            let eps = rng.random::<f64>() * 0.5 * gap;
            q[rich] -= eps;
            q[poor] += eps;
        }
    }
    DiscreteDistribution::with_tolerance(q, p.tolerance()).expect("transfers preserve sum and sign")
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct AxiomConfig {
    pub seed: u64,
    pub distributions: usize,
    pub max_n: usize,
    pub product_pairs: usize,
    pub concavity_trials: usize,
    pub schur_pairs: usize,
    pub schur_transfers: usize,
}

impl Default for AxiomConfig {
    fn default() -> Self {
        Self {
            seed: 42,
            distributions: 10_000,
            max_n: 64,
            product_pairs: 1_000,
            concavity_trials: 1_000,
            schur_pairs: 1_000,
            schur_transfers: 8,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct AxiomReport {
    pub config: AxiomConfig,
    /// Smallest entropy seen across random samples.
    pub min_entropy: f64,
    pub non_negative: bool,
    /// Largest `H − k ln n` seen; positive values beyond the tolerance fail.
    pub max_excess_over_uniform: f64,
    /// Largest `|H(uniform_n) − k ln n|` for `n ≤ max_n`.
    pub uniform_gap: f64,
    /// Samples far from uniform that did not sit strictly below `k ln n`.
    pub non_strict: usize,
    pub maximal_at_uniform: bool,
    pub max_additivity_defect: f64,
    pub additive: bool,
    /// Smallest `H(λp + (1−λ)q) − λH(p) − (1−λ)H(q)`.
    pub min_concavity_slack: f64,
    pub concave: bool,
    pub schur_violations: usize,
    pub schur_incomparable: usize,
    pub schur_concave: bool,
    pub passed: bool,
}

/// Runs the full randomized axiom suite.
pub fn run_axiom_suite(config: AxiomConfig, unit: EntropyUnit) -> Result<AxiomReport> {
    let k = unit.check()?.k();
    let h = |d: &DiscreteDistribution| shannon_entropy(d, unit).map(|v| v.value);

    let mut rng = stream(config.seed, STREAM_SAMPLES);
    let mut min_entropy = f64::INFINITY;
    let mut max_excess = f64::NEG_INFINITY;
    let mut non_strict = 0;
    for _ in 0..config.distributions {
        let p = random_distribution(&mut rng, config.max_n);
        let n = p.len();
        let hp = h(&p)?;
        let bound = k * (n as f64).ln();
        min_entropy = min_entropy.min(hp);
        max_excess = max_excess.max(hp - bound);
        let inv = 1.0 / n as f64;
        let far = p.probs().iter().any(|x| (x - inv).abs() > NEAR_UNIFORM);
        if far && hp >= bound - UNIFORM_EQUALITY_TOL {
            non_strict += 1;
        }
    }
    let mut uniform_gap: f64 = 0.0;
    for n in 1..=config.max_n.max(1) {
        let u = DiscreteDistribution::uniform(n)?;
        uniform_gap = uniform_gap.max((h(&u)? - k * (n as f64).ln()).abs());
    }

    let mut rng = stream(config.seed, STREAM_PRODUCTS);
    let mut max_defect: f64 = 0.0;
    for _ in 0..config.product_pairs {
        let p = random_distribution(&mut rng, config.max_n);
        let q = random_distribution(&mut rng, config.max_n);
        max_defect = max_defect.max(additivity_defect(&p, &q, unit)?);
    }

    let mut rng = stream(config.seed, STREAM_CONCAVITY);
    let mut min_slack = f64::INFINITY;
    for _ in 0..config.concavity_trials {
        let n = rng.random_range(1..=config.max_n.max(1));
        let p = random_distribution_of_len(&mut rng, n);
        let q = random_distribution_of_len(&mut rng, n);
        let lambda: f64 = rng.random_range(f64::EPSILON..1.0);
        let mixed = p.mix(&q, lambda)?;
        let slack = h(&mixed)? - lambda * h(&p)? - (1.0 - lambda) * h(&q)?;
        min_slack = min_slack.min(slack);
    }

    let mut rng = stream(config.seed, STREAM_SCHUR);
    let mut violations = 0;
    let mut incomparable = 0;
    for _ in 0..config.schur_pairs {
        let p = random_distribution(&mut rng, config.max_n);
        let q = robin_hood(&mut rng, &p, config.schur_transfers);
        let report = schur_concavity_check(&p, &q, unit)?;
        if report.incomparable {
            incomparable += 1;
        }
        if !report.majorizes || !report.entropy_ordered {
            violations += 1;
        }
    }

    let non_negative = min_entropy >= 0.0;
    let maximal_at_uniform = max_excess <= UNIFORM_EQUALITY_TOL
        && uniform_gap <= UNIFORM_EQUALITY_TOL
        && non_strict == 0;
    let additive = max_defect <= ADDITIVITY_TOL;
    let concave = min_slack >= -CONCAVITY_TOL;
    let schur_concave = violations == 0;
    Ok(AxiomReport {
        config,
        min_entropy,
        non_negative,
        max_excess_over_uniform: max_excess,
        uniform_gap,
        non_strict,
        maximal_at_uniform,
        max_additivity_defect: max_defect,
        additive,
        min_concavity_slack: min_slack,
        concave,
        schur_violations: violations,
        schur_incomparable: incomparable,
        schur_concave,
        passed: non_negative && maximal_at_uniform && additive && concave && schur_concave,
    })
}
