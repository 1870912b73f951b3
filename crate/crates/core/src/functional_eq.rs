//! Numerical checks of the functional equations behind the Shannon form.
//!
//! Additivity of `Σ φ(pᵢ)` forces φ′ to satisfy the difference equation
//! `g(q·pⱼ) − g(q·p_k) = g(pⱼ) − g(p_k)`, whose continuous solutions are
//! `g(p) = A ln p + B`. The Cauchy form `g(p·q) = g(p) + g(q)` holds only
//! for `B = 0`, so both defects are reported separately.

use rayon::prelude::*;
use serde::Serialize;

use crate::discrete::PhiFunction;
use crate::error::{Error, Result};

pub const DEFAULT_GRID_POINTS: usize = 32;
pub const DEFAULT_GRID_MIN: f64 = 1e-3;

/// `DEFAULT_GRID_POINTS` logarithmically spaced points in `[1e-3, 1]`.
pub fn default_grid() -> Vec<f64> {
    log_grid(DEFAULT_GRID_MIN, DEFAULT_GRID_POINTS)
}

/// `n ≥ 2` logarithmically spaced points from `lo` to exactly 1.
pub fn log_grid(lo: f64, n: usize) -> Vec<f64> {
    let step = -lo.ln() / (n - 1) as f64;
    (0..n)
        .map(|i| {
            if i + 1 == n {
                1.0
            } else {
                (lo.ln() + step * i as f64).exp()
            }
        })
        .collect()
}

fn check_grid(grid: &[f64], what: &str) -> Result<()> {
    if grid.is_empty() {
        return Err(Error::InvalidGrid(format!("{what} is empty")));
    }
    if let Some(p) = grid.iter().find(|p| !(**p > 0.0 && **p <= 1.0)) {
        return Err(Error::InvalidGrid(format!(
            "{what} point {p} outside (0, 1]"
        )));
    }
    Ok(())
}

fn eval_checked<G: Fn(f64) -> f64>(g: &G, p: f64) -> Result<f64> {
    let v = g(p);
    if v.is_finite() {
        Ok(v)
    } else {
        Err(Error::EvaluationFailure { p })
    }
}

fn max_reduce(parts: Vec<f64>) -> f64 {
    parts.into_iter().fold(0.0, f64::max)
}

/// Max over `(q, pⱼ, p_k)` of `|[g(q pⱼ) − g(q p_k)] − [g(pⱼ) − g(p_k)]|`.
pub fn difference_equation_defect<G>(g: G, grid_p: &[f64], grid_q: &[f64]) -> Result<f64>
where
    G: Fn(f64) -> f64 + Sync,
{
    check_grid(grid_p, "p grid")?;
    check_grid(grid_q, "q grid")?;
    let base = grid_p
        .iter()
        .map(|&p| eval_checked(&g, p))
        .collect::<Result<Vec<_>>>()?;
    let rows = grid_q
        .par_iter()
        .map(|&q| {
            let scaled = grid_p
                .iter()
                .map(|&p| eval_checked(&g, q * p))
                .collect::<Result<Vec<_>>>()?;
            let mut worst: f64 = 0.0;
            for j in 0..grid_p.len() {
                for k in 0..grid_p.len() {
                    let lhs = scaled[j] - scaled[k];
                    let rhs = base[j] - base[k];
                    worst = worst.max((lhs - rhs).abs());
                }
            }
            Ok(worst)
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(max_reduce(rows))
}

/// Max over pairs `(p, q)` of `|g(p q) − g(p) − g(q)|`.
pub fn cauchy_defect<G>(g: G, grid: &[f64]) -> Result<f64>
where
    G: Fn(f64) -> f64 + Sync,
{
    check_grid(grid, "grid")?;
    let base = grid
        .iter()
        .map(|&p| eval_checked(&g, p))
        .collect::<Result<Vec<_>>>()?;
    let rows = grid
        .par_iter()
        .zip(base.par_iter())
        .map(|(&p, &gp)| {
            let mut worst: f64 = 0.0;
            for (&q, &gq) in grid.iter().zip(&base) {
                worst = worst.max((eval_checked(&g, p * q)? - gp - gq).abs());
            }
            Ok(worst)
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(max_reduce(rows))
}

/// Samples `(p, φ′(p))` with `p ∈ (0, 1]` and at least three distinct `p`.
#[derive(Debug, Clone, PartialEq)]
pub struct PhiPrimeSamples {
    points: Vec<(f64, f64)>,
}

impl PhiPrimeSamples {
    pub fn new(points: Vec<(f64, f64)>) -> Result<Self> {
        if let Some((p, g)) = points
            .iter()
            .find(|(p, g)| !(*p > 0.0 && *p <= 1.0) || !g.is_finite())
        {
            return Err(Error::InvalidSamples(format!(
                "sample ({p}, {g}) needs p in (0, 1] and finite phi'"
            )));
        }
        let mut ps: Vec<f64> = points.iter().map(|(p, _)| *p).collect();
        ps.sort_by(f64::total_cmp);
        ps.dedup();
        if ps.len() < 3 {
            return Err(Error::InvalidSamples(format!(
                "need at least 3 distinct p values, got {}",
                ps.len()
            )));
        }
        Ok(Self { points })
    }

    /// Samples `g` at each grid point.
    pub fn from_fn<G: Fn(f64) -> f64>(g: G, grid: &[f64]) -> Result<Self> {
        Self::new(grid.iter().map(|&p| (p, g(p))).collect())
    }

    pub fn points(&self) -> &[(f64, f64)] {
        &self.points
    }
}

/// Least-squares fit of `φ′(p) = A ln p + B`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct LogAffineFit {
    #[serde(rename = "A")]
    pub a: f64,
    #[serde(rename = "B")]
    pub b: f64,
    /// Max absolute deviation over the samples.
    pub residual: f64,
}

impl LogAffineFit {
    /// Concavity of φ requires `A < 0`; `A = 0` is rejected.
    pub fn admissible(&self) -> bool {
        self.a < 0.0
    }
}

pub fn fit_log_affine(samples: &PhiPrimeSamples) -> Result<LogAffineFit> {
    let pts = samples.points();
    let n = pts.len() as f64;
    let xs: Vec<f64> = pts.iter().map(|(p, _)| p.ln()).collect();
    let x_mean = xs.iter().sum::<f64>() / n;
    let g_mean = pts.iter().map(|(_, g)| g).sum::<f64>() / n;
    let (mut sxx, mut sxg) = (0.0, 0.0);
    for (x, (_, g)) in xs.iter().zip(pts) {
        let dx = x - x_mean;
        sxx += dx * dx;
        sxg += dx * (g - g_mean);
    }
    if sxx.is_nan() || sxx <= 0.0 {
        return Err(Error::DegenerateDesign);
    }
    let a = sxg / sxx;
    let b = g_mean - a * x_mean;
    let residual = xs
        .iter()
        .zip(pts)
        .map(|(x, (_, g))| (g - (a * x + b)).abs())
        .fold(0.0, f64::max);
    Ok(LogAffineFit { a, b, residual })
}

/// Integrates `φ′ = A ln p + B` under the boundary condition
/// `φ(1) = boundary_log_width` (which is `k ln h` with `k = −A`):
///
/// `φ(p) = A p ln p + (B − A)(p − 1) + boundary_log_width`.
pub fn reconstruct_phi(fit: &LogAffineFit, boundary_log_width: f64) -> Result<PhiFunction> {
    if !fit.admissible() {
        return Err(Error::NotAdmissible { a: fit.a });
    }
    let (a, b, c) = (fit.a, fit.b, boundary_log_width);
    let at_zero = a - b + c;
    Ok(PhiFunction::new("log-affine", at_zero, move |p: f64| {
        a * p * p.ln() + (b - a) * (p - 1.0) + c
    }))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quadrature::integrate;

    fn tenths() -> Vec<f64> {
        (1..=9).map(|i| i as f64 / 10.0).collect()
    }

    #[test]
    fn default_grid_shape() {
        let g = default_grid();
        assert_eq!(g.len(), 32);
        assert!((g[0] - 1e-3).abs() < 1e-18);
        assert_eq!(g[31], 1.0);
        assert!(g.windows(2).all(|w| w[1] > w[0]));
    }

    #[test]
    fn difference_equation_examples() {
        let grid = tenths();
        let d = difference_equation_defect(|p: f64| -2.0 * p.ln() + 3.0, &grid, &grid).unwrap();
        assert!(d <= 1e-10, "{d}");
        let d = difference_equation_defect(f64::ln, &default_grid(), &default_grid()).unwrap();
        assert!(d <= 1e-12, "{d}");
        let grid: Vec<f64> = (2..=9).map(|i| i as f64 / 10.0).collect();
        // oracle: q = 0.2, pⱼ = 0.9, p_k = 0.2 gives |0.0308 − 0.77|
        let d = difference_equation_defect(|p| p * p, &grid, &grid).unwrap();
        assert!(d > 0.1);
        assert!((d - 0.7392).abs() < 1e-12, "{d}");
    }

    #[test]
    fn cauchy_examples() {
        let grid = default_grid();
        assert!(cauchy_defect(f64::ln, &grid).unwrap() <= 1e-12);
        assert!(cauchy_defect(|p: f64| -3.0 * p.ln(), &grid).unwrap() <= 1e-12);
        let d = cauchy_defect(|p: f64| p.ln() + 1.0, &grid).unwrap();
        assert!((d - 1.0).abs() <= 1e-12, "{d}");
        // log-affine with B ≠ 0 passes the difference form but not Cauchy's
        let g = |p: f64| -2.0 * p.ln() + 3.0;
        assert!(difference_equation_defect(g, &grid, &grid).unwrap() <= 1e-10);
        assert!((cauchy_defect(g, &grid).unwrap() - 3.0).abs() <= 1e-12);
    }

    #[test]
    fn grid_and_evaluation_errors() {
        assert!(matches!(
            cauchy_defect(f64::ln, &[0.5, 1.5]),
            Err(Error::InvalidGrid(_))
        ));
        assert!(matches!(
            difference_equation_defect(f64::ln, &[0.0, 0.5], &[0.5]),
            Err(Error::InvalidGrid(_))
        ));
        assert!(matches!(
            cauchy_defect(|p: f64| 1.0 / (p - 0.25), &[0.5, 1.0]),
            Err(Error::EvaluationFailure { .. })
        ));
    }

    // Oracle: normal equations solved by Cramer's rule on raw sums.
    fn cramer_fit(pts: &[(f64, f64)]) -> (f64, f64) {
        let n = pts.len() as f64;
        let (mut sx, mut sy, mut sxx, mut sxy) = (0.0, 0.0, 0.0, 0.0);
        for &(p, g) in pts {
            let x = p.ln();
            sx += x;
            sy += g;
            sxx += x * x;
            sxy += x * g;
        }
        let det = n * sxx - sx * sx;
        ((n * sxy - sx * sy) / det, (sxx * sy - sx * sxy) / det)
    }

    #[test]
    fn fit_examples() {
        let grid = tenths();
        let s = PhiPrimeSamples::from_fn(|p: f64| -2.0 * p.ln() + 3.0, &grid).unwrap();
        let fit = fit_log_affine(&s).unwrap();
        assert!((fit.a + 2.0).abs() < 1e-12 && (fit.b - 3.0).abs() < 1e-12);
        assert!(fit.residual <= 1e-10);
        assert!(fit.admissible());

        let s = PhiPrimeSamples::from_fn(f64::ln, &grid).unwrap();
        let fit = fit_log_affine(&s).unwrap();
        assert!((fit.a - 1.0).abs() < 1e-12 && fit.b.abs() < 1e-12);
        assert!(fit.residual <= 1e-12);
        assert!(!fit.admissible());

        let s = PhiPrimeSamples::from_fn(|p| p, &grid).unwrap();
        let fit = fit_log_affine(&s).unwrap();
        let (a, b) = cramer_fit(s.points());
        assert!((fit.a - a).abs() < 1e-12 && (fit.b - b).abs() < 1e-12);
        assert!(fit.residual > 0.05, "{}", fit.residual);
    }

    #[test]
    fn zero_slope_is_not_admissible() {
        let fit = LogAffineFit {
            a: 0.0,
            b: 1.0,
            residual: 0.0,
        };
        assert!(!fit.admissible());
        assert_eq!(
            reconstruct_phi(&fit, 0.0).unwrap_err(),
            Error::NotAdmissible { a: 0.0 }
        );
    }

    #[test]
    fn sample_validation() {
        assert!(PhiPrimeSamples::new(vec![(0.5, 1.0), (0.5, 2.0), (1.0, 0.0)]).is_err());
        assert!(PhiPrimeSamples::new(vec![(0.0, 1.0), (0.5, 2.0), (1.0, 0.0)]).is_err());
        assert!(PhiPrimeSamples::new(vec![(0.2, f64::NAN), (0.5, 2.0), (1.0, 0.0)]).is_err());
        // distinct p whose logs coincide
        let p = 0.5f64;
        let pts = vec![(p, 1.0), (p.next_up(), 1.0), (p.next_up().next_up(), 1.0)];
        let s = PhiPrimeSamples::new(pts).unwrap();
        let xs: Vec<f64> = s.points().iter().map(|(p, _)| p.ln()).collect();
        if xs.windows(2).all(|w| w[0] == w[1]) {
            assert_eq!(fit_log_affine(&s), Err(Error::DegenerateDesign));
        }
    }

    #[test]
    fn reconstruct_examples() {
        let fit = |a, b| LogAffineFit {
            a,
            b,
            residual: 0.0,
        };
        let phi = reconstruct_phi(&fit(-1.0, 0.0), 0.0).unwrap();
        assert_eq!(phi.eval(1.0), 0.0);
        let ln2 = std::f64::consts::LN_2;
        let phi = reconstruct_phi(&fit(-1.0, 0.0), ln2).unwrap();
        assert_eq!(phi.eval(1.0), ln2);

        // oracle: φ(0.5) = φ(1) − ∫_{0.5}^{1} (A ln p + B) dp by quadrature
        let phi = reconstruct_phi(&fit(-2.0, 1.0), 0.0).unwrap();
        let area = integrate(|p: f64| -2.0 * p.ln() + 1.0, 0.5, 1.0, 1e-14)
            .unwrap()
            .value;
        assert!((phi.eval(0.5) - (0.0 - area)).abs() < 1e-12);
        assert!((phi.eval(0.5) - (ln2 - 1.5)).abs() < 1e-12);
        // value at zero is the p → 0 limit
        assert!((phi.eval(0.0) - phi.eval(1e-300)).abs() < 1e-12);
    }
}
