use proptest::prelude::*;
use shannon_core::discrete::shannon_entropy;
use shannon_core::quantize::{
    convergence_sweep, differential_entropy, halving_widths, quantize_density,
    total_entropy_from_density,
};
use shannon_core::statmech::modified_differential_entropy;
use shannon_core::{DensitySpec, EntropyUnit};

fn density() -> impl Strategy<Value = DensitySpec> {
    prop_oneof![
        (-5.0f64..5.0, 0.1f64..5.0).prop_map(|(a, w)| DensitySpec::uniform(a, a + w).unwrap()),
        (-5.0f64..5.0, 0.2f64..3.0).prop_map(|(m, s)| DensitySpec::gaussian(m, s).unwrap()),
        (0.2f64..5.0).prop_map(|r| DensitySpec::exponential(r).unwrap()),
    ]
}

fn families() -> Vec<DensitySpec> {
    vec![
        DensitySpec::uniform(-1.0, 2.0).unwrap(),
        DensitySpec::gaussian(0.5, 1.5).unwrap(),
        DensitySpec::exponential(2.0).unwrap(),
    ]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn quantization_conserves_mass(f in density(), h in 0.05f64..1.0) {
        let q = quantize_density(&f, h).unwrap();
        prop_assert!((q.captured_mass + q.mass_deficit - 1.0).abs() <= 1e-8);
        let rescaled: f64 = q.probs().iter().sum();
        prop_assert!((rescaled - 1.0).abs() <= 1e-13);
        prop_assert!(q.mass_deficit < 1e-9);
    }

    #[test]
    fn total_entropy_is_quantized_shannon_plus_log_width(f in density(), h in 0.05f64..1.0) {
        let q = quantize_density(&f, h).unwrap();
        let hs = shannon_entropy(q.binned.dist(), EntropyUnit::Nats).unwrap().value;
        let ht = total_entropy_from_density(&f, h, EntropyUnit::Nats).unwrap().value;
        prop_assert!((ht - hs - h.ln()).abs() <= 1e-12);
    }
}

#[test]
fn k_scaling_for_continuous_operations() {
    let k2 = EntropyUnit::scaled(2.0).unwrap();
    let n = EntropyUnit::Nats;
    for f in families() {
        let d = differential_entropy(&f, n).unwrap().value;
        assert_eq!(differential_entropy(&f, k2).unwrap().value, 2.0 * d);
        let t = total_entropy_from_density(&f, 0.25, n).unwrap().value;
        assert_eq!(
            total_entropy_from_density(&f, 0.25, k2).unwrap().value,
            2.0 * t
        );
        let m = modified_differential_entropy(&f, 0.25, n).unwrap().value;
        assert_eq!(
            modified_differential_entropy(&f, 0.25, k2).unwrap().value,
            2.0 * m
        );
    }
}

#[test]
fn modified_entropy_identity_across_families() {
    for f in families() {
        let hc = differential_entropy(&f, EntropyUnit::Nats).unwrap().value;
        for h in [0.1, 0.5, 1.0, 2.0] {
            let hm = modified_differential_entropy(&f, h, EntropyUnit::Nats)
                .unwrap()
                .value;
            assert!((hm - hc + f64::ln(h)).abs() < 1e-8, "{} h={h}", f.name());
        }
    }
}

#[test]
fn uniform_entropy_scales_with_width() {
    for a in [0.5, 1.0, 2.0, 4.0] {
        let f = DensitySpec::uniform(0.0, a).unwrap();
        let hc = differential_entropy(&f, EntropyUnit::Nats).unwrap().value;
        assert!((hc - f64::ln(a)).abs() < 1e-8);
    }
    let narrow = DensitySpec::uniform(0.0, 0.5).unwrap();
    assert!(
        differential_entropy(&narrow, EntropyUnit::Nats)
            .unwrap()
            .value
            < 0.0
    );
}

#[test]
fn smooth_densities_converge_monotonically() {
    for f in [
        DensitySpec::gaussian(0.0, 1.0).unwrap(),
        DensitySpec::gaussian(-2.0, 0.5).unwrap(),
    ] {
        let rows = convergence_sweep(&f, &halving_widths(0.5, 8), EntropyUnit::Nats).unwrap();
        assert!(rows.windows(2).all(|w| w[1].abs_error < w[0].abs_error));
    }
}
