//! Numerical information theory built around Shannon entropy.
//!
//! The crate covers four connected constructions:
//!
//! - [`discrete`]: Shannon entropy, the concave φ-entropy family, total entropy
//!   with observational bin widths, and randomized axiom checks
//!   (non-negativity, maximality at uniform, additivity, concavity, Schur
//!   concavity).
//! - [`functional_eq`]: numerical checks of the difference and Cauchy
//!   functional equations that pin φ′(p) = A ln p + B, least-squares recovery
//!   of (A, B), and reconstruction of φ under a width boundary condition.
//! - [`quantize`]: binning of continuous densities, differential entropy by
//!   adaptive quadrature, and the h → 0 convergence sweep.
//! - [`statmech`]: modified differential entropy, the ideal-gas energy shell,
//!   Boltzmann entropy, a perturbative max-entropy check and the comparison of
//!   the two classical entropy expressions.
//!
//! Entropies are computed in nats internally; [`EntropyUnit`] maps them to
//! bits or to an arbitrary positive constant `k`.

pub mod discrete;
pub mod distributions;
pub mod error;
pub mod functional_eq;
pub mod numeric;
pub mod quadrature;
pub mod quantize;
pub mod statmech;

pub use distributions::{
    product_distribution, validate_distribution, BinnedVariable, DensityFamily, DensitySpec,
    DiscreteDistribution, EntropyUnit, EntropyValue, DEFAULT_TOLERANCE,
};
pub use error::{Error, Result};
