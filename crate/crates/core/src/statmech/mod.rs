//! Classical microcanonical entropy for the ideal monatomic gas.
//!
//! The phase-space volume below energy `E` for `N` particles of mass `m` in
//! volume `V` is `Φ(E) = V^N (2πmE)^{3N/2} / Γ(3N/2 + 1)`, and the shell
//! `(E, E + ΔE)` has volume `Ω = Φ(E + ΔE) − Φ(E)`. Everything is kept in the
//! log domain; `Φ` itself overflows for a few hundred particles.

mod maxent;

pub use maxent::{maxent_shell_check, shell_entropy, DiscretizedShellDensity, MaxEntReport};

use std::f64::consts::PI;

use serde::Serialize;
use statrs::function::gamma::ln_gamma;

use crate::distributions::{DensitySpec, EntropyUnit, EntropyValue};
use crate::error::{Error, Result};
use crate::numeric::ln_expm1;
use crate::quantize::entropy_integral_nats;

/// Shells thicker than this fraction of `E` are flagged.
pub const THICK_SHELL_RATIO: f64 = 0.1;

// Below this log-ratio the shell volume switches to Φ′(E)·ΔE.
const THIN_SHELL_LOG_RATIO: f64 = 1e-12;

// Largest exponent for which exp() stays finite.
const MAX_EXP: f64 = 709.0;

/// Modified differential entropy `−k ∫ f ln(h f) dx`, integrated directly.
///
/// This is the h → 0 limit of the Shannon entropy of the quantized density,
/// and equals the differential entropy minus `k ln h`.
pub fn modified_differential_entropy(
    f: &DensitySpec,
    h: f64,
    unit: EntropyUnit,
) -> Result<EntropyValue> {
    let unit = unit.check()?;
    if !(h > 0.0 && h.is_finite()) {
        return Err(Error::NonPositiveWidth(h));
    }
    Ok(EntropyValue::from_nats(entropy_integral_nats(f, h)?, unit))
}

/// Microcanonical ideal-gas parameters. Natural units: `m = h = k = 1`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ShellSpec {
    pub energy: f64,
    pub shell_width: f64,
    pub volume: f64,
    pub particles: u64,
    pub mass: f64,
    /// Phase-cell constant `h`.
    pub planck_h: f64,
    pub indistinguishable: bool,
}

impl ShellSpec {
    /// Indistinguishable particles with `m = h = 1`.
    pub fn natural(energy: f64, shell_width: f64, volume: f64, particles: u64) -> Self {
        Self {
            energy,
            shell_width,
            volume,
            particles,
            mass: 1.0,
            planck_h: 1.0,
            indistinguishable: true,
        }
    }

    pub fn validate(&self) -> Result<()> {
        let named = [
            ("E", self.energy),
            ("dE", self.shell_width),
            ("V", self.volume),
            ("mass", self.mass),
            ("planck_h", self.planck_h),
        ];
        for (name, v) in named {
            if !(v > 0.0 && v.is_finite()) {
                return Err(Error::InvalidShell(format!(
                    "{name} must be positive, got {v}"
                )));
            }
        }
        if self.particles == 0 {
            return Err(Error::InvalidShell("N must be at least 1".into()));
        }
        Ok(())
    }

    /// `ΔE / E` above [`THICK_SHELL_RATIO`].
    pub fn is_thick(&self) -> bool {
        self.shell_width / self.energy > THICK_SHELL_RATIO
    }

    fn n(&self) -> f64 {
        self.particles as f64
    }

    /// `ln Φ(energy)` for this gas.
    pub fn log_phase_volume(&self, energy: f64) -> f64 {
        let n = self.n();
        n * self.volume.ln() + 1.5 * n * (2.0 * PI * self.mass * energy).ln()
            - ln_gamma(1.5 * n + 1.0)
    }
}

/// `ln Ω(E, V, N)`, the log volume of the energy shell.
pub fn log_phase_shell_volume(spec: &ShellSpec) -> Result<f64> {
    spec.validate()?;
    let n = spec.n();
    let base = spec.log_phase_volume(spec.energy);
    // ln Φ(E + ΔE) − ln Φ(E)
    let step = 1.5 * n * (spec.shell_width / spec.energy).ln_1p();
    if step < THIN_SHELL_LOG_RATIO {
        Ok(base + (1.5 * n / spec.energy).ln() + spec.shell_width.ln())
    } else {
        Ok(base + ln_expm1(step))
    }
}

fn log_cell_count(spec: &ShellSpec) -> f64 {
    let mut c = 3.0 * spec.n() * spec.planck_h.ln();
    if spec.indistinguishable {
        c += ln_gamma(spec.n() + 1.0);
    }
    c
}

/// `S = k ln(Ω / C^N)` with `C^N = h^{3N}`, times `N!` when indistinguishable.
pub fn boltzmann_entropy(spec: &ShellSpec, unit: EntropyUnit) -> Result<EntropyValue> {
    let unit = unit.check()?;
    let ln_omega = log_phase_shell_volume(spec)?;
    Ok(EntropyValue::from_nats(
        ln_omega - log_cell_count(spec),
        unit,
    ))
}

/// Sackur–Tetrode closed form
/// `S / (Nk) = ln[(V/N)(4πmE / (3N h²))^{3/2}] + 5/2`.
///
/// For distinguishable particles Stirling's `N ln N − N` is added back.
pub fn sackur_tetrode(spec: &ShellSpec, unit: EntropyUnit) -> Result<EntropyValue> {
    let unit = unit.check()?;
    spec.validate()?;
    let n = spec.n();
    let thermal = 4.0 * PI * spec.mass * spec.energy / (3.0 * n * spec.planck_h.powi(2));
    let mut s = n * ((spec.volume / n).ln() + 1.5 * thermal.ln() + 2.5);
    if !spec.indistinguishable {
        s += n * n.ln() - n;
    }
    Ok(EntropyValue::from_nats(s, unit))
}

/// The two classical entropies of the uniform shell density `f = 1/Ω`:
/// the Boltzmann form `k[ln Ω − 3N ln h]` (cell constant inside the log) and
/// the quantum-limit form `k ln Ω / h^{3N}` (density divided by the cell).
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct EntropyComparison {
    #[serde(rename = "S_boltzmann")]
    pub boltzmann: f64,
    /// `None` when `|k ln Ω| / h^{3N}` overflows.
    #[serde(rename = "S_quantum_limit")]
    pub quantum_limit: Option<f64>,
    /// `ln |k ln Ω / h^{3N}|`, always finite unless `ln Ω = 0`.
    #[serde(rename = "S_quantum_limit_log_magnitude")]
    pub quantum_limit_log_magnitude: f64,
    #[serde(rename = "S_quantum_limit_sign")]
    pub quantum_limit_sign: f64,
    /// `boltzmann − quantum_limit`, when the latter is representable.
    pub gap: Option<f64>,
}

/// Comparison for a given `ln Ω`, particle count and cell constant.
pub fn compare_from_log_omega(
    ln_omega: f64,
    particles: u64,
    planck_h: f64,
    unit: EntropyUnit,
) -> Result<EntropyComparison> {
    let unit = unit.check()?;
    if !ln_omega.is_finite() {
        return Err(Error::InvalidShell(format!(
            "ln Omega must be finite, got {ln_omega}"
        )));
    }
    if !(planck_h > 0.0 && planck_h.is_finite()) || particles == 0 {
        return Err(Error::InvalidShell(format!(
            "need planck_h > 0 and N >= 1, got {planck_h}, {particles}"
        )));
    }
    let dof = 3.0 * particles as f64;
    let boltzmann = unit.from_nats(ln_omega - dof * planck_h.ln());
    let scaled = unit.from_nats(ln_omega);
    let log_magnitude = scaled.abs().ln() - dof * planck_h.ln();
    let sign = if scaled < 0.0 { -1.0 } else { 1.0 };
    let quantum_limit = if log_magnitude > MAX_EXP {
        None
    } else {
        let cells = planck_h.powf(dof);
        if cells.is_finite() && cells > 0.0 {
            Some(scaled / cells)
        } else {
            Some(sign * log_magnitude.exp())
        }
    };
    Ok(EntropyComparison {
        boltzmann,
        quantum_limit,
        quantum_limit_log_magnitude: log_magnitude,
        quantum_limit_sign: sign,
        gap: quantum_limit.map(|q| boltzmann - q),
    })
}

/// [`compare_from_log_omega`] with `ln Ω` from the ideal-gas shell.
pub fn classical_entropy_comparison(
    spec: &ShellSpec,
    unit: EntropyUnit,
) -> Result<EntropyComparison> {
    let ln_omega = log_phase_shell_volume(spec)?;
    compare_from_log_omega(ln_omega, spec.particles, spec.planck_h, unit)
}
