//! Gauss-Markov channel in the limit of infinitely many uses.
//!
//! In the common eigenbasis every spectral component `x ∈ [0, π]` is a
//! single-mode channel with noise `(λ(x), λ(π − x))`. Each gets the matched
//! squeezed input, and a single global level `μ_gl = n̄ + N + 1/2` sets the
//! modulation everywhere, provided `n̄` reaches the threshold at which the
//! modulation stays non-negative over the whole band.

use std::f64::consts::PI;

use crate::error::{Error, Result};
use crate::gaussian::g_unchecked;
use crate::numerics::{spectral_mean, QuadratureConfig};
use crate::toeplitz::{MarkovParams, SpectralFunction};

use super::{check_positive_n_bar, check_solver_params, threshold_holds, QuadraturePair};

/// Which environment the solution refers to.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum NoiseShape {
    /// `diag(M(φ), M(−φ))`: opposite correlations in q and p.
    Anticorrelated,
    /// `diag(M(φ), M(φ))`: identical correlations in both quadratures.
    Symmetric,
}

#[derive(Debug, Clone, PartialEq)]
pub struct MultimodeSolution {
    pub params: MarkovParams,
    pub shape: NoiseShape,
    pub n_bar: f64,
    /// Fraction of the photon budget spent on input squeezing.
    pub eta: f64,
    pub mu_global: f64,
    pub capacity_bits: f64,
    pub threshold: f64,
}

impl MultimodeSolution {
    pub fn environment(&self, x: f64) -> QuadraturePair<f64> {
        match self.shape {
            NoiseShape::Anticorrelated => {
                QuadraturePair::new(self.params.symbol(x), self.params.reflected_symbol(x))
            }
            NoiseShape::Symmetric => {
                let v = self.params.symbol(x);
                QuadraturePair::new(v, v)
            }
        }
    }

    /// Pure input matched to the local noise anisotropy, `γ_in^q γ_in^p = 1/4`.
    pub fn input(&self, x: f64) -> QuadraturePair<f64> {
        match self.shape {
            NoiseShape::Anticorrelated => {
                let r = anisotropy(self.params.phi(), x);
                QuadraturePair::new(0.5 * r, 0.5 / r)
            }
            NoiseShape::Symmetric => QuadraturePair::new(0.5, 0.5),
        }
    }

    /// `γ_out = γ_in + γ_env`.
    pub fn output(&self, x: f64) -> QuadraturePair<f64> {
        let (i, e) = (self.input(x), self.environment(x));
        QuadraturePair::new(i.q + e.q, i.p + e.p)
    }

    /// `γ_mod = μ_gl − γ_out`.
    pub fn modulation(&self, x: f64) -> QuadraturePair<f64> {
        self.output(x).map(|o| self.mu_global - o)
    }

    /// `γ_in + γ_env + γ_mod`; flat at `μ_gl` by construction.
    pub fn total(&self, x: f64) -> QuadraturePair<f64> {
        let (o, m) = (self.output(x), self.modulation(x));
        QuadraturePair::new(o.q + m.q, o.p + m.p)
    }

    /// Input spectra sampled on `samples` evenly spaced points of `[0, π]`.
    pub fn input_spectrum(&self, samples: usize) -> QuadraturePair<SpectralFunction> {
        self.sampled(samples, |x| self.input(x))
    }

    pub fn modulation_spectrum(&self, samples: usize) -> QuadraturePair<SpectralFunction> {
        self.sampled(samples, |x| self.modulation(x))
    }

    fn sampled(
        &self,
        samples: usize,
        f: impl Fn(f64) -> QuadraturePair<f64>,
    ) -> QuadraturePair<SpectralFunction> {
        let samples = samples.max(2);
        let grid: Vec<f64> = (0..samples)
            .map(|k| PI * k as f64 / (samples - 1) as f64)
            .collect();
        let values: Vec<QuadraturePair<f64>> = grid.iter().map(|&x| f(x)).collect();
        let q = values.iter().map(|v| v.q).collect();
        let p = values.iter().map(|v| v.p).collect();
        QuadraturePair::new(
            SpectralFunction::sampled(grid.clone(), q).expect("increasing grid"),
            SpectralFunction::sampled(grid, p).expect("increasing grid"),
        )
    }

    /// Smallest modulation variance over a uniform grid of `points` values.
    pub fn min_modulation(&self, points: usize) -> f64 {
        let points = points.max(2);
        (0..points)
            .map(|k| PI * k as f64 / (points - 1) as f64)
            .map(|x| {
                let m = self.modulation(x);
                m.q.min(m.p)
            })
            .fold(f64::INFINITY, f64::min)
    }

    /// `(1/π)∫ γ_mod^q dx`, which should equal `(1 − η) n̄`.
    pub fn modulation_energy(&self, config: &QuadratureConfig) -> Result<f64> {
        spectral_mean(|x| self.modulation(x).q, config)
    }

    /// Mean photon number recomputed from the spectra:
    /// `(1/π)∫ [(γ_in^q+γ_in^p)/2 + (γ_mod^q+γ_mod^p)/2] dx − 1/2`.
    pub fn mean_photon_number(&self, config: &QuadratureConfig) -> Result<f64> {
        let per_mode = spectral_mean(
            |x| {
                let (i, m) = (self.input(x), self.modulation(x));
                0.5 * (i.q + i.p) + 0.5 * (m.q + m.p)
            },
            config,
        )?;
        Ok(per_mode - 0.5)
    }
}

/// `√(λ(x)/λ(π − x))`; independent of `N`.
fn anisotropy(phi: f64, x: f64) -> f64 {
    let a = 1.0 + phi * phi;
    let b = 2.0 * phi * x.cos();
    ((a + b) / (a - b)).sqrt()
}

/// `((1+φ)/(1−φ) − 1)(N + 1/2)`.
pub fn multimode_threshold(params: &MarkovParams) -> f64 {
    let phi = params.phi();
    let half = params.noise() + 0.5;
    // expanded so that exact thresholds like φ = 0.7, N = 1 → 7 stay exact
    (1.0 + phi) / (1.0 - phi) * half - half
}

/// Threshold for the symmetric environment, `λ(0) − N`.
pub fn symmetric_threshold(params: &MarkovParams) -> f64 {
    let phi = params.phi();
    let noise = params.noise();
    (1.0 + phi) / (1.0 - phi) * noise - noise
}

/// `η = ((∫₀^π γ_in^q dx) − π/2) / (π n̄)`.
pub fn squeezing_fraction(params: &MarkovParams, n_bar: f64, config: &QuadratureConfig) -> Result<f64> {
    check_positive_n_bar(n_bar)?;
    check_solver_params(params)?;
    let phi = params.phi();
    let mean_input = spectral_mean(|x| 0.5 * anisotropy(phi, x), config)?;
    Ok((mean_input - 0.5) / n_bar)
}

/// `(1/π)∫₀^π g(ν_env(x)) dx` with `ν_env = √(λ(x) λ(π − x))`.
pub fn environment_entropy_term(params: &MarkovParams, config: &QuadratureConfig) -> Result<f64> {
    spectral_mean(|x| g_unchecked(params.symplectic_symbol(x)), config)
}

/// Capacity per use, `g(n̄ + N) − (1/π)∫ g(ν_env(x)) dx`.
pub fn asymptotic_capacity(params: &MarkovParams, n_bar: f64, config: &QuadratureConfig) -> Result<f64> {
    check_positive_n_bar(n_bar)?;
    check_solver_params(params)?;
    let threshold = multimode_threshold(params);
    if !threshold_holds(n_bar, threshold) {
        return Err(Error::BelowThreshold { n_bar, threshold });
    }
    Ok(g_unchecked(n_bar + params.noise()) - environment_entropy_term(params, config)?)
}

/// Global water-filling solution for the anti-correlated environment.
pub fn multimode_solve(params: &MarkovParams, n_bar: f64, config: &QuadratureConfig) -> Result<MultimodeSolution> {
    check_positive_n_bar(n_bar)?;
    check_solver_params(params)?;
    let threshold = multimode_threshold(params);
    if !threshold_holds(n_bar, threshold) {
        return Err(Error::BelowThreshold { n_bar, threshold });
    }
    Ok(MultimodeSolution {
        params: *params,
        shape: NoiseShape::Anticorrelated,
        n_bar,
        eta: squeezing_fraction(params, n_bar, config)?,
        mu_global: n_bar + params.noise() + 0.5,
        capacity_bits: asymptotic_capacity(params, n_bar, config)?,
        threshold,
    })
}

/// Environment with identical correlations in both quadratures: coherent
/// input everywhere, modulation water-filled over `λ(x) + 1/2`.
pub fn symmetric_noise_solution(
    params: &MarkovParams,
    n_bar: f64,
    config: &QuadratureConfig,
) -> Result<MultimodeSolution> {
    check_positive_n_bar(n_bar)?;
    check_solver_params(params)?;
    let threshold = symmetric_threshold(params);
    if !threshold_holds(n_bar, threshold) {
        return Err(Error::BelowThreshold { n_bar, threshold });
    }
    let entropy_term = spectral_mean(|x| g_unchecked(params.symbol(x)), config)?;
    Ok(MultimodeSolution {
        params: *params,
        shape: NoiseShape::Symmetric,
        n_bar,
        eta: 0.0,
        mu_global: n_bar + params.noise() + 0.5,
        capacity_bits: g_unchecked(n_bar + params.noise()) - entropy_term,
        threshold,
    })
}

/// Integrand variant for the first-mode variance.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum FirstModeForm {
    /// `√((1 + φ + 2φ cos x)/(1 + φ − 2φ cos x))`.
    #[default]
    Printed,
    /// `√((1 + φ² + 2φ cos x)/(1 + φ² − 2φ cos x))`, i.e. the band average
    /// of `2 γ_in^q(x)`.
    Alternate,
}

/// Variance of the first mode of the optimal input after rotating back to
/// the original basis: `(1/2π)∫₀^π √(…) dx`. Equal in q and p; 1/2 at φ = 0.
pub fn first_mode_variance(phi: f64, form: FirstModeForm, config: &QuadratureConfig) -> Result<f64> {
    if !(0.0..1.0).contains(&phi) {
        return Err(Error::domain("phi", phi, "first-mode variance takes 0 <= phi < 1"));
    }
    let a = match form {
        FirstModeForm::Printed => 1.0 + phi,
        FirstModeForm::Alternate => 1.0 + phi * phi,
    };
    let mean = spectral_mean(
        |x| {
            let b = 2.0 * phi * x.cos();
            ((a + b) / (a - b)).sqrt()
        },
        config,
    )?;
    Ok(0.5 * mean)
}
