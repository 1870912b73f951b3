//! Binning of continuous densities and the h → 0 convergence harness.
//!
//! Bins are `[x_min + i·h, x_min + (i+1)·h]`. For bounded families `x_min` is
//! the left edge of the support. For the gaussian (unless a support is
//! declared) the ε-truncated edges are pushed outward onto the lattice that
//! has `μ` as a bin midpoint, so grids for different `h` stay centred.
//! Bin masses are exact quadrature masses; the mean-value representative
//! point is never located because nothing downstream needs it.

use rayon::prelude::*;
use serde::Serialize;

use crate::discrete::{shannon_nats, total_nats};
use crate::distributions::{
    BinnedVariable, DensityFamily, DensitySpec, DiscreteDistribution, EntropyUnit, EntropyValue,
};
use crate::error::{Error, Result};
use crate::numeric::pairwise_sum;
use crate::quadrature::integrate;

/// Absolute quadrature tolerance per bin.
pub const BIN_TOLERANCE: f64 = 1e-10;
/// Absolute quadrature tolerance for full-support integrals.
pub const FULL_TOLERANCE: f64 = 1e-9;
/// Slack on `Σ pᵢ + mass_deficit = 1`.
pub const CONSERVATION_TOLERANCE: f64 = 1e-8;
pub const MAX_BINS: usize = 20_000_000;

/// A density quantized at uniform width `h`.
#[derive(Debug, Clone, PartialEq)]
pub struct QuantizationResult {
    pub binned: BinnedVariable,
    pub h: f64,
    /// Integrated density mass inside the binned range, before the bin
    /// masses are rescaled to sum to one.
    pub captured_mass: f64,
    /// Density mass outside the binned range.
    pub mass_deficit: f64,
}

impl QuantizationResult {
    pub fn probs(&self) -> &[f64] {
        self.binned.probs()
    }

    pub fn len(&self) -> usize {
        self.binned.len()
    }

    pub fn is_empty(&self) -> bool {
        self.binned.is_empty()
    }

    /// Shannon entropy of the bin masses, ignoring widths.
    pub fn shannon(&self, unit: EntropyUnit) -> Result<EntropyValue> {
        let unit = unit.check()?;
        Ok(EntropyValue::from_nats(shannon_nats(self.probs()), unit))
    }
}

fn check_width(h: f64) -> Result<()> {
    if h > 0.0 && h.is_finite() {
        Ok(())
    } else {
        Err(Error::NonPositiveWidth(h))
    }
}

/// Number of width-`h` bins needed to cover `span`, treating near-integers
/// as exact so that `1 / 0.1` gives ten bins rather than eleven.
fn bins_to_cover(span: f64, h: f64) -> f64 {
    let r = span / h;
    if (r - r.round()).abs() <= 1e-9 * r.max(1.0) {
        r.round()
    } else {
        r.ceil()
    }
}

fn grid(f: &DensitySpec, h: f64) -> Result<(f64, usize)> {
    let (lo, hi) = f.truncated_support();
    let x_min = match f.family() {
        DensityFamily::Gaussian { mu, .. } if !f.has_declared_support() => {
            let anchor = mu - 0.5 * h;
            anchor - ((anchor - lo) / h).ceil().max(0.0) * h
        }
        _ => lo,
    };
    let n = bins_to_cover(hi - x_min, h).max(1.0);
    if n.is_nan() || n > MAX_BINS as f64 {
        return Err(Error::TooManyBins(if n.is_finite() {
            n as usize
        } else {
            usize::MAX
        }));
    }
    Ok((x_min, n as usize))
}

fn bin_mass(f: &DensitySpec, a: f64, b: f64) -> Result<f64> {
    let (s_lo, s_hi) = f.natural_support();
    let (a, b) = (a.max(s_lo), b.min(s_hi));
    if a >= b {
        return Ok(0.0);
    }
    Ok(integrate(|x| f.pdf(x), a, b, BIN_TOLERANCE)?.value)
}

/// Quantizes `f` into bins of width `h`.
pub fn quantize_density(f: &DensitySpec, h: f64) -> Result<QuantizationResult> {
    check_width(h)?;
    let (x_min, n) = grid(f, h)?;
    let edge = |i: usize| x_min + i as f64 * h;
    let probs = (0..n)
        .into_par_iter()
        .map(|i| bin_mass(f, edge(i), edge(i + 1)))
        .collect::<Result<Vec<_>>>()?;
    let values = (0..n).map(|i| x_min + (i as f64 + 0.5) * h).collect();
    let mass_deficit = f.cdf(edge(0)) + f.sf(edge(n));
    let captured = pairwise_sum(&probs);
    if captured + mass_deficit < 1.0 - CONSERVATION_TOLERANCE {
        return Err(Error::UnboundedSupport { captured });
    }
    // Masses of the truncated density, so that Σ pᵢ = 1 to rounding.
    let probs = probs.into_iter().map(|p| p / captured).collect();
    let dist = DiscreteDistribution::new(probs)?;
    let binned = BinnedVariable::new(values, dist, vec![h; n])?;
    Ok(QuantizationResult {
        binned,
        h,
        captured_mass: captured,
        mass_deficit,
    })
}

fn neg_f_ln_f(f: &DensitySpec, scale: f64) -> impl Fn(f64) -> f64 + '_ {
    // ln(scale · f) split so that a subnormal f times scale < 1 cannot
    // underflow to ln 0
    let ln_scale = scale.ln();
    move |x| {
        let d = f.pdf(x);
        if d <= 0.0 {
            0.0
        } else {
            -d * (ln_scale + d.ln())
        }
    }
}

/// `∫ −f ln(scale · f)` over the integration range; `scale = 1` is the
/// differential entropy in nats.
pub(crate) fn entropy_integral_nats(f: &DensitySpec, scale: f64) -> Result<f64> {
    let (lo, hi) = f.integration_range();
    let (s_lo, s_hi) = f.natural_support();
    let (lo, hi) = (lo.max(s_lo), hi.min(s_hi));
    Ok(integrate(neg_f_ln_f(f, scale), lo, hi, FULL_TOLERANCE)?.value)
}

/// Differential entropy `−k ∫ f ln f dx` by adaptive quadrature.
pub fn differential_entropy(f: &DensitySpec, unit: EntropyUnit) -> Result<EntropyValue> {
    let unit = unit.check()?;
    Ok(EntropyValue::from_nats(
        entropy_integral_nats(f, 1.0)?,
        unit,
    ))
}

/// Total entropy `−k Σ pᵢ ln(pᵢ / h)` of `f` quantized at width `h`.
pub fn total_entropy_from_density(
    f: &DensitySpec,
    h: f64,
    unit: EntropyUnit,
) -> Result<EntropyValue> {
    let unit = unit.check()?;
    let q = quantize_density(f, h)?;
    Ok(EntropyValue::from_nats(
        total_nats(q.binned.probs(), q.binned.widths()),
        unit,
    ))
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ConvergenceRow {
    pub h: f64,
    pub total_entropy: f64,
    pub differential_entropy: f64,
    pub abs_error: f64,
}

/// `h_start, h_start/2, …` with `count` entries.
pub fn halving_widths(h_start: f64, count: usize) -> Vec<f64> {
    (0..count).map(|j| h_start / 2f64.powi(j as i32)).collect()
}

/// Total entropy against differential entropy for each width in `h_values`,
/// which must be positive and strictly decreasing.
pub fn convergence_sweep(
    f: &DensitySpec,
    h_values: &[f64],
    unit: EntropyUnit,
) -> Result<Vec<ConvergenceRow>> {
    if h_values.is_empty() {
        return Err(Error::InvalidSweep("no widths given".into()));
    }
    if let Some(&h) = h_values.iter().find(|h| !(**h > 0.0 && h.is_finite())) {
        return Err(Error::InvalidSweep(format!("width {h} is not positive")));
    }
    if h_values.windows(2).any(|w| w[1] >= w[0]) {
        return Err(Error::InvalidSweep("widths must strictly decrease".into()));
    }
    let hc = differential_entropy(f, unit)?.value;
    h_values
        .iter()
        .map(|&h| {
            let ht = total_entropy_from_density(f, h, unit)?.value;
            Ok(ConvergenceRow {
                h,
                total_entropy: ht,
                differential_entropy: hc,
                abs_error: (ht - hc).abs(),
            })
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use statrs::function::erf::{erf, erfc};
    use std::f64::consts::{E, LN_2, PI, SQRT_2};

    fn gauss() -> DensitySpec {
        DensitySpec::gaussian(0.0, 1.0).unwrap()
    }

    #[test]
    fn uniform_bins() {
        let q = quantize_density(&DensitySpec::uniform(0.0, 1.0).unwrap(), 0.1).unwrap();
        assert_eq!(q.len(), 10);
        assert!(q.probs().iter().all(|p| (p - 0.1).abs() < 1e-15));
        assert_eq!(q.mass_deficit, 0.0);

        let q = quantize_density(&DensitySpec::uniform(0.0, 2.0).unwrap(), 0.5).unwrap();
        assert_eq!(q.len(), 4);
        assert!(q.probs().iter().all(|p| (p - 0.25).abs() < 1e-15));
        assert_eq!(q.binned.values(), &[0.25, 0.75, 1.25, 1.75]);
    }

    #[test]
    fn uneven_span_gets_a_partial_last_bin() {
        let q = quantize_density(&DensitySpec::uniform(0.0, 1.0).unwrap(), 0.3).unwrap();
        assert_eq!(q.len(), 4);
        assert!((q.probs()[3] - 0.1).abs() < 1e-14);
    }

    #[test]
    fn gaussian_central_bin_matches_erf() {
        let q = quantize_density(&gauss(), 0.5).unwrap();
        let centre = q
            .binned
            .values()
            .iter()
            .position(|x| x.abs() < 1e-12)
            .expect("a bin centred on the mean");
        // oracle: Φ(0.25) − Φ(−0.25) = erf(0.25/√2), over the captured mass
        let oracle = erf(0.25 / SQRT_2);
        let lo = q.binned.values()[0] - 0.25;
        let hi = q.binned.values()[q.len() - 1] + 0.25;
        let outside = 0.5 * (erfc(-lo / SQRT_2) + erfc(hi / SQRT_2));
        assert!((q.probs()[centre] - oracle / (1.0 - outside)).abs() < 1e-12);
        assert!((q.probs()[centre] - oracle).abs() < 1e-10);
        assert!((q.captured_mass + outside - 1.0).abs() < 1e-12);
        assert!((oracle - 0.197_413).abs() < 1e-6);
        assert!(q.mass_deficit > 0.0 && q.mass_deficit <= 1e-10);
    }

    #[test]
    fn errors() {
        let g = gauss();
        assert_eq!(quantize_density(&g, 0.0), Err(Error::NonPositiveWidth(0.0)));
        assert!(quantize_density(&g, f64::NAN).is_err());
        assert!(matches!(
            quantize_density(&g, 1e-12),
            Err(Error::TooManyBins(_))
        ));
    }

    #[test]
    fn differential_entropy_closed_forms() {
        let n = EntropyUnit::Nats;
        let h = |d: DensitySpec| differential_entropy(&d, n).unwrap().value;
        assert_eq!(h(DensitySpec::uniform(0.0, 1.0).unwrap()), 0.0);
        assert!((h(DensitySpec::uniform(0.0, 2.0).unwrap()) - LN_2).abs() < 1e-12);
        assert!((h(gauss()) - 0.5 * (2.0 * PI * E).ln()).abs() < 1e-8);
        assert!((h(DensitySpec::exponential(1.0).unwrap()) - 1.0).abs() < 1e-8);
        let rate: f64 = 3.0;
        assert!((h(DensitySpec::exponential(rate).unwrap()) - (1.0 - rate.ln())).abs() < 1e-8);
    }

    #[test]
    fn total_entropy_examples() {
        let n = EntropyUnit::Nats;
        let u1 = DensitySpec::uniform(0.0, 1.0).unwrap();
        assert!(total_entropy_from_density(&u1, 0.1, n).unwrap().value.abs() < 1e-12);
        let u2 = DensitySpec::uniform(0.0, 2.0).unwrap();
        assert!((total_entropy_from_density(&u2, 0.5, n).unwrap().value - LN_2).abs() < 1e-12);
        // oracle: H_C plus the h²/24 · Fisher-information bias, well within 0.01
        let ht = total_entropy_from_density(&gauss(), 0.25, n).unwrap().value;
        assert!((ht - 1.418_939).abs() < 0.01);
        assert!(ht > 1.418_938_533);
    }

    #[test]
    fn sweep_examples() {
        let n = EntropyUnit::Nats;
        let rows = convergence_sweep(&gauss(), &[0.5, 0.25, 0.125], n).unwrap();
        assert!(rows.windows(2).all(|w| w[1].abs_error < w[0].abs_error));

        let rows = convergence_sweep(
            &DensitySpec::uniform(0.0, 1.0).unwrap(),
            &[0.5, 0.1, 0.01],
            n,
        )
        .unwrap();
        assert!(rows.iter().all(|r| r.abs_error < 1e-12), "{rows:?}");

        let rows = convergence_sweep(&DensitySpec::exponential(1.0).unwrap(), &[0.4, 0.2, 0.1], n)
            .unwrap();
        assert!(rows.windows(2).all(|w| w[1].abs_error < w[0].abs_error));
        assert!(rows[2].abs_error < 0.01);
    }

    #[test]
    fn sweep_validation() {
        let n = EntropyUnit::Nats;
        let g = gauss();
        assert!(matches!(
            convergence_sweep(&g, &[], n),
            Err(Error::InvalidSweep(_))
        ));
        assert!(convergence_sweep(&g, &[0.1, 0.2], n).is_err());
        assert!(convergence_sweep(&g, &[0.1, -0.2], n).is_err());
        assert_eq!(halving_widths(0.5, 3), vec![0.5, 0.25, 0.125]);
    }

    #[test]
    fn conservation_on_declared_support() {
        let d = gauss().with_support(-7.0, 7.0).unwrap();
        let q = quantize_density(&d, 0.3).unwrap();
        let total = q.captured_mass + q.mass_deficit;
        assert!((pairwise_sum(q.probs()) - 1.0).abs() < 1e-14);
        assert!((total - 1.0).abs() < CONSERVATION_TOLERANCE);
        assert!((q.binned.values()[0] - (-7.0 + 0.15)).abs() < 1e-12);
    }
}
