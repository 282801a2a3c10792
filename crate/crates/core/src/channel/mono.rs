//! Single-mode channel with phase-dependent additive noise
//! `γ_env = diag(γ_q, γ_p)`.
//!
//! Above the energy threshold the optimal input is the pure squeezed state
//! whose anisotropy matches the noise, and the modulation tops both
//! quadratures up to a common level `μ`, leaving a thermal output.

use crate::error::{Error, Result};
use crate::gaussian::g_unchecked;
use crate::numerics::grid_maximize;

use super::threshold_holds;

/// Noise variances of the two quadratures.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MonoChannelNoise {
    gamma_q: f64,
    gamma_p: f64,
}

impl MonoChannelNoise {
    pub fn new(gamma_q: f64, gamma_p: f64) -> Result<Self> {
        for (name, v) in [("gamma_q", gamma_q), ("gamma_p", gamma_p)] {
            if !(v > 0.0 && v.is_finite()) {
                return Err(Error::domain(name, v, "noise variance must be positive"));
            }
        }
        Ok(MonoChannelNoise { gamma_q, gamma_p })
    }

    /// Phase-insensitive noise of variance `n` in both quadratures.
    pub fn thermal(n: f64) -> Result<Self> {
        Self::new(n, n)
    }

    pub fn gamma_q(&self) -> f64 {
        self.gamma_q
    }

    pub fn gamma_p(&self) -> f64 {
        self.gamma_p
    }
}

/// Input and modulation variances of a single-mode channel.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MonoSolution {
    pub in_q: f64,
    pub in_p: f64,
    pub mod_q: f64,
    pub mod_p: f64,
    /// Water-filling level (total output variance); for the oracle this is
    /// the mean of the two quadrature totals.
    pub mu: f64,
    pub capacity_bits: f64,
    pub above_threshold: bool,
}

impl MonoSolution {
    pub fn total_q(&self, noise: &MonoChannelNoise) -> f64 {
        self.in_q + noise.gamma_q + self.mod_q
    }

    pub fn total_p(&self, noise: &MonoChannelNoise) -> f64 {
        self.in_p + noise.gamma_p + self.mod_p
    }
}

/// Minimum mean photon number for which both modulation variances are
/// non-negative.
pub fn mono_threshold(noise: &MonoChannelNoise) -> f64 {
    let (lo, hi) = if noise.gamma_q <= noise.gamma_p {
        (noise.gamma_q, noise.gamma_p)
    } else {
        (noise.gamma_p, noise.gamma_q)
    };
    0.5 * ((hi / lo).sqrt() + (hi - lo) - 1.0)
}

fn check_n_bar(n_bar: f64) -> Result<()> {
    if !(n_bar >= 0.0 && n_bar.is_finite()) {
        return Err(Error::domain("n_bar", n_bar, "mean photon number must be non-negative"));
    }
    Ok(())
}

/// Closed-form optimum above threshold.
pub fn mono_solve(noise: &MonoChannelNoise, n_bar: f64) -> Result<MonoSolution> {
    check_n_bar(n_bar)?;
    let threshold = mono_threshold(noise);
    if !threshold_holds(n_bar, threshold) {
        return Err(Error::BelowThreshold { n_bar, threshold });
    }
    let (gq, gp) = (noise.gamma_q, noise.gamma_p);
    let in_q = 0.5 * (gq / gp).sqrt();
    let in_p = 0.5 * (gp / gq).sqrt();
    let mu = n_bar + 0.5 * (gq + gp) + 0.5;
    Ok(MonoSolution {
        in_q,
        in_p,
        // clamp round-off at the threshold
        mod_q: (mu - (in_q + gq)).max(0.0),
        mod_p: (mu - (in_p + gp)).max(0.0),
        mu,
        capacity_bits: capacity_unchecked(noise, n_bar),
        above_threshold: true,
    })
}

/// One-shot capacity `g(n̄ + (γ_q+γ_p)/2) − g(√(γ_q γ_p))` in bits.
pub fn mono_capacity(noise: &MonoChannelNoise, n_bar: f64) -> Result<f64> {
    check_n_bar(n_bar)?;
    let threshold = mono_threshold(noise);
    if !threshold_holds(n_bar, threshold) {
        return Err(Error::BelowThreshold { n_bar, threshold });
    }
    Ok(capacity_unchecked(noise, n_bar))
}

fn capacity_unchecked(noise: &MonoChannelNoise, n_bar: f64) -> f64 {
    let (gq, gp) = (noise.gamma_q, noise.gamma_p);
    g_unchecked(n_bar + 0.5 * (gq + gp)) - g_unchecked((gq * gp).sqrt())
}

/// Holevo quantity of a diagonal single-mode ensemble:
/// `g(ν̄ − 1/2) − g(ν_out − 1/2)`.
pub fn holevo_chi(noise: &MonoChannelNoise, in_q: f64, in_p: f64, mod_q: f64, mod_p: f64) -> f64 {
    let out_q = in_q + noise.gamma_q;
    let out_p = in_p + noise.gamma_p;
    let nu_out = (out_q * out_p).sqrt();
    let nu_bar = ((out_q + mod_q) * (out_p + mod_p)).sqrt();
    g_unchecked(nu_bar - 0.5) - g_unchecked(nu_out - 0.5)
}

/// Grid resolution used by the oracle when none is given.
pub const ORACLE_RESOLUTION: usize = 129;
const ORACLE_REFINEMENTS: usize = 2;

/// Brute-force maximization of the Holevo quantity over pure diagonal inputs
/// `(in_q, 1/(4 in_q))` and modulations `(mod_q, mod_p ≥ 0)`, with the energy
/// constraint `in_q + in_p + mod_q + mod_p = 2n̄ + 1` used to eliminate
/// `mod_p`. Works below threshold too, where the optimum sits on the
/// boundary `mod = 0`.
pub fn brute_force_mono_oracle(noise: &MonoChannelNoise, n_bar: f64, resolution: usize) -> Result<MonoSolution> {
    check_n_bar(n_bar)?;
    if resolution < 64 {
        return Err(Error::Config(format!("oracle resolution must be >= 64, got {resolution}")));
    }
    let budget = 2.0 * n_bar + 1.0;
    // in_q + 1/(4 in_q) <= budget
    let disc = (budget * budget - 1.0).max(0.0).sqrt();
    let in_lo = 0.5 * (budget - disc);
    let in_hi = 0.5 * (budget + disc);
    let mod_hi = (budget - 1.0).max(0.0);

    let modulation_p = |in_q: f64, mod_q: f64| budget - in_q - 0.25 / in_q - mod_q;
    let objective = |x: &[f64]| {
        let (in_q, mod_q) = (x[0], x[1]);
        if in_q <= 0.0 {
            return None;
        }
        let mod_p = modulation_p(in_q, mod_q);
        (mod_p >= 0.0).then(|| holevo_chi(noise, in_q, 0.25 / in_q, mod_q, mod_p))
    };
    let best = grid_maximize(objective, &[(in_lo, in_hi), (0.0, mod_hi)], resolution, ORACLE_REFINEMENTS)?;
    let (in_q, mod_q) = (best.point[0], best.point[1]);
    let in_p = 0.25 / in_q;
    let mod_p = modulation_p(in_q, mod_q).max(0.0);
    let total_q = in_q + noise.gamma_q + mod_q;
    let total_p = in_p + noise.gamma_p + mod_p;
    Ok(MonoSolution {
        in_q,
        in_p,
        mod_q,
        mod_p,
        mu: 0.5 * (total_q + total_p),
        capacity_bits: best.value,
        above_threshold: threshold_holds(n_bar, mono_threshold(noise)),
    })
}
