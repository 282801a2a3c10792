//! Finite-use rates and limiting regimes.

use crate::error::{Error, Result};
use crate::gaussian::g_unchecked;
use crate::numerics::{spectral_mean, symmetric_eigenvalues, QuadratureConfig};
use crate::toeplitz::{markov_matrix, MarkovParams, Sign, ToeplitzSpec};

/// How the q and p eigenvalues are matched up in the finite-use rate.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum EigenPairing {
    /// q descending against p ascending, mirroring `λ_p(x) = λ_q(π − x)`.
    #[default]
    Reversed,
    /// Both descending.
    SameOrder,
}

/// `g(n̄ + N) − (1/n) Σ_k g(√(λq_k λp_k))` from explicit spectra.
///
/// Both slices are sorted internally; their order on input does not matter.
pub fn finite_rate_from_spectra(
    n_bar: f64,
    mean_noise: f64,
    q_eigenvalues: &[f64],
    p_eigenvalues: &[f64],
    pairing: EigenPairing,
) -> Result<f64> {
    if q_eigenvalues.len() != p_eigenvalues.len() {
        return Err(Error::DimensionMismatch {
            expected: q_eigenvalues.len(),
            found: p_eigenvalues.len(),
        });
    }
    if q_eigenvalues.is_empty() {
        return Err(Error::domain("n", 0.0, "at least one channel use is required"));
    }
    if !(n_bar >= 0.0 && n_bar.is_finite()) {
        return Err(Error::domain("n_bar", n_bar, "mean photon number must be non-negative"));
    }
    let mut q = q_eigenvalues.to_vec();
    let mut p = p_eigenvalues.to_vec();
    q.sort_by(|a, b| b.total_cmp(a));
    match pairing {
        EigenPairing::Reversed => p.sort_by(|a, b| a.total_cmp(b)),
        EigenPairing::SameOrder => p.sort_by(|a, b| b.total_cmp(a)),
    }
    let mut env = 0.0;
    for (k, (&lq, &lp)) in q.iter().zip(&p).enumerate() {
        let prod = lq * lp;
        if prod.is_nan() || prod < 0.0 {
            return Err(Error::Unphysical { index: k, value: prod });
        }
        env += g_unchecked(prod.sqrt());
    }
    Ok(g_unchecked(n_bar + mean_noise) - env / q.len() as f64)
}

/// Rate for `n` uses of the Gauss-Markov channel with noise
/// `diag(M(φ), M(−φ))`.
pub fn finite_n_rate(params: &MarkovParams, n_bar: f64, n: usize, pairing: EigenPairing) -> Result<f64> {
    if n == 0 {
        return Err(Error::domain("n", 0.0, "at least one channel use is required"));
    }
    let q = symmetric_eigenvalues(&markov_matrix(*params, Sign::Plus, n)?)?;
    let p = symmetric_eigenvalues(&markov_matrix(*params, Sign::Minus, n)?)?;
    finite_rate_from_spectra(n_bar, params.noise(), &q, &p, pairing)
}

/// Rate for arbitrary Toeplitz noise blocks; `N` is read off the main diagonal.
pub fn finite_rate_toeplitz(
    q: &ToeplitzSpec,
    p: &ToeplitzSpec,
    n_bar: f64,
    pairing: EigenPairing,
) -> Result<f64> {
    let lq = symmetric_eigenvalues(&q.matrix())?;
    let lp = symmetric_eigenvalues(&p.matrix())?;
    let mean_noise = 0.5 * (q.diagonals()[0] + p.diagonals()[0]);
    finite_rate_from_spectra(n_bar, mean_noise, &lq, &lp, pairing)
}

/// `log2((1 + snr)/(1 − φ²))`.
pub fn classical_limit_capacity(params: &MarkovParams, snr: f64) -> Result<f64> {
    if !(snr > 0.0 && snr.is_finite()) {
        return Err(Error::domain("snr", snr, "signal to noise ratio must be positive"));
    }
    let phi = params.phi();
    Ok(((1.0 + snr) / (1.0 - phi * phi)).log2())
}

/// `(1/π)∫₀^π log2 ν_env(x) dx`; equals `log2(N(1 − φ²))`.
pub fn log_environment_mean(params: &MarkovParams, config: &QuadratureConfig) -> Result<f64> {
    spectral_mean(|x| params.symplectic_symbol(x).log2(), config)
}

/// `g(n̄ + N)`, the capacity approached as `φ → 1`.
pub fn full_correlation_capacity(noise: f64, n_bar: f64) -> Result<f64> {
    crate::gaussian::g_function(n_bar + noise)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::channel::asymptotic_capacity;
    use crate::gaussian::g_function;
    use approx::assert_abs_diff_eq;

    fn params(noise: f64, phi: f64) -> MarkovParams {
        MarkovParams::new(noise, phi).unwrap()
    }

    fn thermal(n_bar: f64, noise: f64) -> f64 {
        g_function(n_bar + noise).unwrap() - g_function(noise).unwrap()
    }

    #[test]
    fn single_use_is_thermal() {
        let r = finite_n_rate(&params(1.5, 0.6), 3.0, 1, EigenPairing::Reversed).unwrap();
        assert_abs_diff_eq!(r, thermal(3.0, 1.5), epsilon = 1e-12);
    }

    #[test]
    fn white_noise_is_flat_in_n() {
        for n in [1, 2, 7, 30] {
            let r = finite_n_rate(&params(1.0, 0.0), 7.5, n, EigenPairing::Reversed).unwrap();
            assert_abs_diff_eq!(r, thermal(7.5, 1.0), epsilon = 1e-12);
        }
    }

    #[test]
    fn approaches_capacity() {
        let p = params(1.0, 0.7);
        let c = asymptotic_capacity(&p, 7.5, &QuadratureConfig::default()).unwrap();
        let dev = |n| (finite_n_rate(&p, 7.5, n, EigenPairing::Reversed).unwrap() - c).abs();
        assert!(dev(200) < dev(50));
        assert!(dev(200) < 5e-3);
    }

    #[test]
    fn pairing_matters_only_with_memory() {
        let white = params(1.0, 0.0);
        let a = finite_n_rate(&white, 2.0, 12, EigenPairing::Reversed).unwrap();
        let b = finite_n_rate(&white, 2.0, 12, EigenPairing::SameOrder).unwrap();
        assert_abs_diff_eq!(a, b, epsilon = 1e-13);
        let p = params(1.0, 0.6);
        let a = finite_n_rate(&p, 5.0, 12, EigenPairing::Reversed).unwrap();
        let b = finite_n_rate(&p, 5.0, 12, EigenPairing::SameOrder).unwrap();
        assert!((a - b).abs() > 1e-3);
    }

    #[test]
    fn toeplitz_path_matches_markov_path() {
        let p = params(1.0, 0.4);
        let q = ToeplitzSpec::markov(p, Sign::Plus, 20).unwrap();
        let m = ToeplitzSpec::markov(p, Sign::Minus, 20).unwrap();
        let a = finite_rate_toeplitz(&q, &m, 3.0, EigenPairing::Reversed).unwrap();
        let b = finite_n_rate(&p, 3.0, 20, EigenPairing::Reversed).unwrap();
        assert_abs_diff_eq!(a, b, epsilon = 1e-13);
    }

    #[test]
    fn rejects_bad_inputs() {
        assert!(finite_n_rate(&params(1.0, 0.5), 1.0, 0, EigenPairing::Reversed).is_err());
        assert!(finite_rate_from_spectra(1.0, 1.0, &[1.0], &[1.0, 2.0], EigenPairing::Reversed).is_err());
        assert!(classical_limit_capacity(&params(1.0, 0.5), 0.0).is_err());
    }

    #[test]
    fn classical_limit_values() {
        assert_eq!(classical_limit_capacity(&params(1.0, 0.0), 1.0).unwrap(), 1.0);
        assert_abs_diff_eq!(
            classical_limit_capacity(&params(1.0, 0.5), 3.0).unwrap(),
            (16.0f64 / 3.0).log2(),
            epsilon = 1e-14
        );
    }

    #[test]
    fn log_mean_identity() {
        let cfg = QuadratureConfig::default();
        for (noise, phi) in [(1.0, 0.3), (5.0, 0.9)] {
            let p = params(noise, phi);
            assert_abs_diff_eq!(
                log_environment_mean(&p, &cfg).unwrap(),
                (noise * (1.0 - phi * phi)).log2(),
                epsilon = 1e-9
            );
        }
    }

    #[test]
    fn full_correlation_bound() {
        let c = asymptotic_capacity(&params(1.0, 0.99), 300.0, &QuadratureConfig::default()).unwrap();
        assert!(c < full_correlation_capacity(1.0, 300.0).unwrap());
    }
}
