//! Optimal inputs, modulations and capacities.
//!
//! * [`mono`]: one mode with anisotropic noise, closed form and grid oracle.
//! * [`multimode`]: Gauss-Markov noise in the limit of infinitely many uses.
//! * [`limits`]: finite-use rates and the classical / full-correlation limits.

pub mod limits;
pub mod mono;
pub mod multimode;

use crate::error::{Error, Result};
use crate::toeplitz::MarkovParams;

pub use limits::{
    classical_limit_capacity, finite_n_rate, finite_rate_from_spectra, finite_rate_toeplitz,
    full_correlation_capacity, log_environment_mean, EigenPairing,
};
pub use mono::{
    brute_force_mono_oracle, holevo_chi, mono_capacity, mono_solve, mono_threshold,
    MonoChannelNoise, MonoSolution, ORACLE_RESOLUTION,
};
pub use multimode::{
    asymptotic_capacity, environment_entropy_term, first_mode_variance, multimode_solve,
    multimode_threshold, squeezing_fraction, symmetric_noise_solution, symmetric_threshold,
    FirstModeForm, MultimodeSolution, NoiseShape,
};

/// Largest correlation accepted by the closed-form solvers.
pub const PHI_MAX: f64 = 0.999;

/// Relative slack when comparing `n̄` against a threshold, so that a value
/// equal to the threshold up to round-off is accepted.
pub const THRESHOLD_SLACK: f64 = 1e-12;

/// A value for each quadrature.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadraturePair<T> {
    pub q: T,
    pub p: T,
}

impl<T> QuadraturePair<T> {
    pub fn new(q: T, p: T) -> Self {
        QuadraturePair { q, p }
    }

    pub fn map<U>(self, mut f: impl FnMut(T) -> U) -> QuadraturePair<U> {
        QuadraturePair {
            q: f(self.q),
            p: f(self.p),
        }
    }
}

pub(crate) fn threshold_holds(n_bar: f64, threshold: f64) -> bool {
    n_bar >= threshold - THRESHOLD_SLACK * threshold.max(1.0)
}

/// Closed-form paths take `0 ≤ φ ≤ 0.999`.
pub(crate) fn check_solver_params(params: &MarkovParams) -> Result<()> {
    let phi = params.phi();
    if !(0.0..=PHI_MAX).contains(&phi) {
        return Err(Error::domain("phi", phi, "closed-form solvers take 0 <= phi <= 0.999"));
    }
    Ok(())
}

pub(crate) fn check_positive_n_bar(n_bar: f64) -> Result<()> {
    if !(n_bar > 0.0 && n_bar.is_finite()) {
        return Err(Error::domain("n_bar", n_bar, "mean photon number must be positive"));
    }
    Ok(())
}
