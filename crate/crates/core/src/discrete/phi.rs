use std::fmt;
use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Slack for the sampled concavity inequality.
pub const CONCAVITY_SLACK: f64 = 1e-12;

type Evaluator = Arc<dyn Fn(f64) -> f64 + Send + Sync>;

/// A function `φ : [0, 1] → ℝ` generating the entropy `Σ φ(pᵢ)`.
///
/// The value at zero is stored separately: it is fixed by convention rather
/// than by evaluating the closure.
#[derive(Clone)]
pub struct PhiFunction {
    name: String,
    at_zero: f64,
    eval: Evaluator,
}

impl PhiFunction {
    pub fn new<F>(name: impl Into<String>, at_zero: f64, f: F) -> Self
    where
        F: Fn(f64) -> f64 + Send + Sync + 'static,
    {
        Self {
            name: name.into(),
            at_zero,
            eval: Arc::new(f),
        }
    }

    /// `φ(p) = −p ln p` with `φ(0) = 0`.
    pub fn shannon() -> Self {
        Self::new("shannon", 0.0, |p: f64| -p * p.ln())
    }

    /// `φ(p) = p (1 − p)`, the Gini–Simpson term.
    pub fn gini() -> Self {
        Self::new("gini", 0.0, |p| p * (1.0 - p))
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn eval(&self, p: f64) -> f64 {
        if p == 0.0 {
            self.at_zero
        } else {
            (self.eval)(p)
        }
    }

    /// Largest sampled violation of `φ(λp + (1−λ)q) ≥ λφ(p) + (1−λ)φ(q)` over
    /// `trials` random triples in (0, 1). Zero or negative means none seen.
    pub fn concavity_violation(&self, trials: usize, seed: u64) -> f64 {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut worst = f64::NEG_INFINITY;
        for _ in 0..trials {
            let p: f64 = rng.random_range(f64::EPSILON..1.0);
            let q: f64 = rng.random_range(f64::EPSILON..1.0);
            let lambda: f64 = rng.random_range(f64::EPSILON..1.0);
            let chord = lambda * self.eval(p) + (1.0 - lambda) * self.eval(q);
            let curve = self.eval(lambda * p + (1.0 - lambda) * q);
            worst = worst.max(chord - curve);
        }
        worst
    }

    pub fn is_concave(&self, trials: usize, seed: u64) -> bool {
        self.concavity_violation(trials, seed) <= CONCAVITY_SLACK
    }
}

impl fmt::Debug for PhiFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("PhiFunction")
            .field("name", &self.name)
            .field("at_zero", &self.at_zero)
            .finish_non_exhaustive()
    }
}
