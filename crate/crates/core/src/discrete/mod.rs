//! Discrete entropies and the checks that characterize them.

pub mod axioms;
mod phi;

pub use phi::{PhiFunction, CONCAVITY_SLACK};

use serde::Serialize;

use crate::distributions::{
    product_distribution, BinnedVariable, DiscreteDistribution, EntropyUnit, EntropyValue,
};
use crate::error::{Error, Result};
use crate::numeric::{pairwise_sum, xlogx};

/// Slack on partial sums when testing majorization.
pub const MAJORIZATION_SLACK: f64 = 1e-12;
/// Slack on the entropy ordering implied by majorization.
pub const ORDERING_SLACK: f64 = 1e-12;

pub(crate) fn shannon_nats(probs: &[f64]) -> f64 {
    let terms: Vec<f64> = probs.iter().map(|&p| -xlogx(p)).collect();
    pairwise_sum(&terms) + 0.0
}

/// `−k Σ pᵢ ln pᵢ`, with `0 ln 0 = 0`.
pub fn shannon_entropy(p: &DiscreteDistribution, unit: EntropyUnit) -> Result<EntropyValue> {
    let unit = unit.check()?;
    Ok(EntropyValue::from_nats(shannon_nats(p.probs()), unit))
}

/// `Σ φ(pᵢ)`.
pub fn phi_entropy(p: &DiscreteDistribution, phi: &PhiFunction) -> Result<f64> {
    let terms = p
        .probs()
        .iter()
        .map(|&pi| {
            let v = phi.eval(pi);
            if v.is_finite() {
                Ok(v)
            } else {
                Err(Error::PhiUndefined {
                    name: phi.name().to_string(),
                    p: pi,
                })
            }
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(pairwise_sum(&terms))
}

pub(crate) fn total_nats(probs: &[f64], widths: &[f64]) -> f64 {
    let terms: Vec<f64> = probs
        .iter()
        .zip(widths)
        .map(|(&p, &h)| if p == 0.0 { 0.0 } else { p * (h.ln() - p.ln()) })
        .collect();
    pairwise_sum(&terms)
}

/// Total entropy `−k Σ pᵢ ln(pᵢ / hᵢ)`.
///
/// Unlike Shannon entropy this can be negative when widths are small.
pub fn total_entropy(v: &BinnedVariable, unit: EntropyUnit) -> Result<EntropyValue> {
    let unit = unit.check()?;
    Ok(EntropyValue::from_nats(
        total_nats(v.probs(), v.widths()),
        unit,
    ))
}

/// `|H(p × q) − H(p) − H(q)|`.
pub fn additivity_defect(
    p: &DiscreteDistribution,
    q: &DiscreteDistribution,
    unit: EntropyUnit,
) -> Result<f64> {
    let joint = shannon_entropy(&product_distribution(p, q), unit)?.value;
    let parts = shannon_entropy(p, unit)?.value + shannon_entropy(q, unit)?.value;
    Ok((joint - parts).abs())
}

/// True when `p` majorizes `q`: after sorting both in descending order every
/// partial sum of `p` is at least the matching partial sum of `q`.
pub fn majorizes(p: &[f64], q: &[f64]) -> bool {
    if p.len() != q.len() {
        return false;
    }
    let desc = |xs: &[f64]| {
        let mut v = xs.to_vec();
        v.sort_by(|a, b| b.total_cmp(a));
        v
    };
    let (p, q) = (desc(p), desc(q));
    let (mut sp, mut sq) = (0.0, 0.0);
    p.iter().zip(&q).all(|(a, b)| {
        sp += a;
        sq += b;
        sp >= sq - MAJORIZATION_SLACK
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SchurReport {
    /// `p` majorizes `q`.
    pub majorizes: bool,
    /// `q` majorizes `p`.
    pub reverse: bool,
    /// Neither majorizes the other; the ordering check is then vacuous.
    pub incomparable: bool,
    /// The entropy ordering implied by majorization holds.
    pub entropy_ordered: bool,
    pub entropy_p: f64,
    pub entropy_q: f64,
}

/// Tests Schur concavity of Shannon entropy on one pair: if `p` majorizes
/// `q` then `H(p) ≤ H(q)` (and symmetrically).
pub fn schur_concavity_check(
    p: &DiscreteDistribution,
    q: &DiscreteDistribution,
    unit: EntropyUnit,
) -> Result<SchurReport> {
    if p.len() != q.len() {
        return Err(Error::LengthMismatch {
            what: "majorization pair",
            expected: p.len(),
            found: q.len(),
        });
    }
    let hp = shannon_entropy(p, unit)?.value;
    let hq = shannon_entropy(q, unit)?.value;
    let forward = majorizes(p.probs(), q.probs());
    let reverse = majorizes(q.probs(), p.probs());
    let ordered =
        (!forward || hp <= hq + ORDERING_SLACK) && (!reverse || hq <= hp + ORDERING_SLACK);
    Ok(SchurReport {
        majorizes: forward,
        reverse,
        incomparable: !forward && !reverse,
        entropy_ordered: ordered,
        entropy_p: hp,
        entropy_q: hq,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::{E, LN_2};

    fn dist(p: &[f64]) -> DiscreteDistribution {
        DiscreteDistribution::new(p.to_vec()).unwrap()
    }

    // Independent oracle: plain left-to-right summation with explicit branch.
    fn oracle_shannon(p: &[f64]) -> f64 {
        let mut s = 0.0;
        for &x in p {
            if x > 0.0 {
                s -= x * x.ln();
            }
        }
        s
    }

    #[test]
    fn shannon_examples() {
        let n = EntropyUnit::Nats;
        assert_eq!(shannon_entropy(&dist(&[0.5, 0.5]), n).unwrap().value, LN_2);
        assert_eq!(
            shannon_entropy(&dist(&[1.0, 0.0, 0.0]), n).unwrap().value,
            0.0
        );
        let third = [1.0 / 3.0, 2.0 / 3.0];
        let h = shannon_entropy(&dist(&third), n).unwrap().value;
        assert!((h - oracle_shannon(&third)).abs() < 1e-15);
        assert!((h - 0.636_514_168_294_813).abs() < 1e-12);
        assert!(shannon_entropy(&dist(&[1.0]), EntropyUnit::Scaled(0.0)).is_err());
    }

    #[test]
    fn phi_examples() {
        let half = dist(&[0.5, 0.5]);
        assert_eq!(phi_entropy(&half, &PhiFunction::shannon()).unwrap(), LN_2);
        assert_eq!(phi_entropy(&half, &PhiFunction::gini()).unwrap(), 0.5);
        assert_eq!(
            phi_entropy(&dist(&[1.0, 0.0]), &PhiFunction::shannon()).unwrap(),
            0.0
        );
        let bad = PhiFunction::new("recip", 0.0, |p| 1.0 / (p - 0.5));
        assert!(matches!(
            phi_entropy(&half, &bad),
            Err(Error::PhiUndefined { .. })
        ));
    }

    #[test]
    fn total_entropy_examples() {
        let n = EntropyUnit::Nats;
        let v = |p: &[f64], h: &[f64]| {
            BinnedVariable::new(vec![0.0, 1.0], dist(p), h.to_vec()).unwrap()
        };
        assert_eq!(
            total_entropy(&v(&[0.5, 0.5], &[1.0, 1.0]), n)
                .unwrap()
                .value,
            LN_2
        );
        let h = total_entropy(&v(&[0.5, 0.5], &[2.0, 2.0]), n)
            .unwrap()
            .value;
        assert!((h - 4f64.ln()).abs() < 1e-15);
        let h = total_entropy(&v(&[1.0, 0.0], &[E, 1.0]), n).unwrap().value;
        assert!((h - 1.0).abs() < 1e-15);
        // small widths give negative total entropy
        assert!(
            total_entropy(&v(&[0.5, 0.5], &[0.1, 0.1]), n)
                .unwrap()
                .value
                < 0.0
        );
    }

    #[test]
    fn additivity_examples() {
        let n = EntropyUnit::Nats;
        let p = dist(&[0.5, 0.5]);
        let q = dist(&[1.0 / 3.0, 2.0 / 3.0]);
        assert!(additivity_defect(&p, &q, n).unwrap() <= 1e-12);
        let sum = shannon_entropy(&p, n).unwrap().value + shannon_entropy(&q, n).unwrap().value;
        assert!((sum - 1.329_661_348_854_758).abs() < 1e-12);
        assert_eq!(additivity_defect(&dist(&[1.0]), &q, n).unwrap(), 0.0);
        let r = dist(&[0.25, 0.75]);
        assert!(additivity_defect(&r, &r, n).unwrap() <= 1e-12);
    }

    #[test]
    fn schur_examples() {
        let n = EntropyUnit::Nats;
        let r = schur_concavity_check(&dist(&[1.0, 0.0]), &dist(&[0.5, 0.5]), n).unwrap();
        assert!(r.majorizes && r.entropy_ordered && !r.reverse);
        assert_eq!(r.entropy_p, 0.0);
        assert_eq!(r.entropy_q, LN_2);

        let r = schur_concavity_check(&dist(&[0.5, 0.5]), &dist(&[0.5, 0.5]), n).unwrap();
        assert!(r.majorizes && r.reverse && r.entropy_ordered);

        // partial sums 0.7, 0.9, 1.0 vs 0.5, 0.8, 1.0
        let r = schur_concavity_check(&dist(&[0.7, 0.2, 0.1]), &dist(&[0.5, 0.3, 0.2]), n).unwrap();
        assert!(r.majorizes && !r.reverse && r.entropy_ordered);
        assert!(r.entropy_p < r.entropy_q);
    }

    #[test]
    fn schur_incomparable_and_errors() {
        let n = EntropyUnit::Nats;
        // partial sums 0.6, 0.8, 1.0 vs 0.5, 0.95, 1.0
        let r =
            schur_concavity_check(&dist(&[0.6, 0.2, 0.2]), &dist(&[0.5, 0.45, 0.05]), n).unwrap();
        assert!(r.incomparable && r.entropy_ordered);
        assert!(matches!(
            schur_concavity_check(&dist(&[1.0]), &dist(&[0.5, 0.5]), n),
            Err(Error::LengthMismatch { .. })
        ));
    }

    #[test]
    fn majorization_ignores_order() {
        assert!(majorizes(&[0.1, 0.7, 0.2], &[0.3, 0.2, 0.5]));
        assert!(!majorizes(&[0.3, 0.2, 0.5], &[0.1, 0.7, 0.2]));
    }
}
