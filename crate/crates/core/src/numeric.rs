//! Small numeric helpers shared across modules.

const PAIRWISE_BLOCK: usize = 8;

/// Pairwise (tree) summation with a fixed split order.
///
/// The result depends only on the slice contents and order, so per-element
/// work can be computed in parallel and summed here without changing bits.
pub fn pairwise_sum(xs: &[f64]) -> f64 {
    if xs.len() <= PAIRWISE_BLOCK {
        return xs.iter().sum();
    }
    let mid = xs.len() / 2;
    pairwise_sum(&xs[..mid]) + pairwise_sum(&xs[mid..])
}

/// `x ln x` with the `0 ln 0 = 0` convention.
#[inline]
pub fn xlogx(x: f64) -> f64 {
    if x == 0.0 {
        0.0
    } else {
        x * x.ln()
    }
}

/// Numerically stable `ln(e^d - 1)` for `d > 0`.
pub fn ln_expm1(d: f64) -> f64 {
    if d > 1.0 {
        d + (-(-d).exp_m1()).ln()
    } else {
        d.exp_m1().ln()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn pairwise_matches_naive_on_exact_values() {
        let xs: Vec<f64> = (1..=100).map(f64::from).collect();
        assert_eq!(pairwise_sum(&xs), 5050.0);
        assert_eq!(pairwise_sum(&[]), 0.0);
    }

    #[test]
    fn xlogx_convention() {
        assert_eq!(xlogx(0.0), 0.0);
        assert_eq!(xlogx(1.0), 0.0);
        assert!((xlogx(0.5) + 0.5 * std::f64::consts::LN_2).abs() < 1e-16);
    }

    #[test]
    fn ln_expm1_is_continuous_across_branch() {
        for d in [1e-10f64, 0.5, 1.0 - 1e-12, 1.0, 1.0 + 1e-12, 3.0, 40.0] {
            let naive = d.exp_m1().ln();
            assert!(
                (ln_expm1(d) - naive).abs() <= 1e-14 * naive.abs().max(1.0),
                "d={d}"
            );
        }
        // exp overflows here; the stable form does not
        assert!((ln_expm1(5000.0) - 5000.0).abs() < 1e-12);
    }
}
