//! Cross-checks against nalgebra and against plain composite quadrature.

use std::f64::consts::PI;

use approx::assert_abs_diff_eq;
use nalgebra::DMatrix;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use gmcap::channel::{asymptotic_capacity, finite_n_rate, EigenPairing};
use gmcap::gaussian::{symplectic_eigenvalues, CovarianceBlocks, SymplecticForm};
use gmcap::matrix::{Matrix, SymmetricMatrix};
use gmcap::numerics::{symmetric_eigen, symmetric_eigenvalues, EigenConfig, QuadratureConfig};
use gmcap::toeplitz::{markov_matrix, MarkovParams, Sign};

const SEED: u64 = 0x5eed_0002;

fn to_na(m: &Matrix) -> DMatrix<f64> {
    DMatrix::from_fn(m.dim(), m.dim(), |i, j| m[(i, j)])
}

/// Positive imaginary parts of the eigenvalues of `Ω γ`, descending.
fn oracle_symplectic(cov: &CovarianceBlocks) -> Vec<f64> {
    let omega = to_na(&SymplecticForm::new(cov.n_modes()).matrix());
    let gamma = to_na(&cov.to_matrix());
    let mut nu: Vec<f64> = (omega * gamma)
        .complex_eigenvalues()
        .iter()
        .filter(|z| z.im > 0.0)
        .map(|z| z.im)
        .collect();
    nu.sort_by(|a, b| b.total_cmp(a));
    nu
}

fn oracle_eigenvalues(m: &SymmetricMatrix) -> Vec<f64> {
    let mut v: Vec<f64> = to_na(m.as_matrix()).symmetric_eigenvalues().iter().copied().collect();
    v.sort_by(|a, b| b.total_cmp(a));
    v
}

fn g(x: f64) -> f64 {
    if x == 0.0 {
        0.0
    } else {
        (x + 1.0) * (x + 1.0).log2() - x * x.log2()
    }
}

fn random_spd(rng: &mut ChaCha8Rng, n: usize) -> SymmetricMatrix {
    let a = Matrix::from_fn(n, |_, _| rng.random_range(-1.0..1.0));
    let aat = a.matmul(&a.transpose()).unwrap();
    SymmetricMatrix::new(aat.add(&Matrix::identity(n)).unwrap()).unwrap()
}

#[test]
fn markov_pair_symplectic_spectrum() {
    let p = MarkovParams::new(1.0, 0.5).unwrap();
    let cov = CovarianceBlocks::new(
        markov_matrix(p, Sign::Plus, 4).unwrap(),
        markov_matrix(p, Sign::Minus, 4).unwrap(),
    )
    .unwrap();
    let ours = symplectic_eigenvalues(&cov).unwrap();
    let oracle = oracle_symplectic(&cov);
    assert_eq!(ours.len(), 4);
    for (a, b) in ours.iter().zip(&oracle) {
        assert_abs_diff_eq!(a, b, epsilon = 1e-10);
    }
}

#[test]
fn random_blocks_symplectic_spectrum() {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    for n in [1, 2, 5, 12] {
        let cov = CovarianceBlocks::new(random_spd(&mut rng, n), random_spd(&mut rng, n)).unwrap();
        let ours = symplectic_eigenvalues(&cov).unwrap();
        let oracle = oracle_symplectic(&cov);
        for (a, b) in ours.iter().zip(&oracle) {
            assert_abs_diff_eq!(a, b, epsilon = 1e-9 * b.max(1.0));
        }
    }
}

#[test]
fn eigensolvers_match_nalgebra() {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED + 1);
    let m = random_spd(&mut rng, 40);
    let oracle = oracle_eigenvalues(&m);
    let jacobi = symmetric_eigen(&m, &EigenConfig::default()).unwrap().values;
    let ql = symmetric_eigenvalues(&m).unwrap();
    for k in 0..40 {
        assert_abs_diff_eq!(jacobi[k], oracle[k], epsilon = 1e-10 * oracle[0]);
        assert_abs_diff_eq!(ql[k], oracle[k], epsilon = 1e-10 * oracle[0]);
    }
}

#[test]
fn finite_rate_matches_nalgebra_spectra() {
    let (n_bar, n) = (7.5, 120);
    for phi in [0.4, 0.7] {
        let p = MarkovParams::new(1.0, phi).unwrap();
        let lq = oracle_eigenvalues(&markov_matrix(p, Sign::Plus, n).unwrap());
        let mut lp = oracle_eigenvalues(&markov_matrix(p, Sign::Minus, n).unwrap());
        lp.reverse();
        let env: f64 = lq.iter().zip(&lp).map(|(a, b)| g((a * b).sqrt())).sum::<f64>() / n as f64;
        let expected = g(n_bar + 1.0) - env;
        let ours = finite_n_rate(&p, n_bar, n, EigenPairing::Reversed).unwrap();
        assert_abs_diff_eq!(ours, expected, epsilon = 1e-10);
    }
}

/// Composite Simpson rule with `panels` (even) subintervals on `[0, π]`.
fn simpson(f: impl Fn(f64) -> f64, panels: usize) -> f64 {
    let h = PI / panels as f64;
    let mut s = f(0.0) + f(PI);
    for k in 1..panels {
        let w = if k % 2 == 1 { 4.0 } else { 2.0 };
        s += w * f(k as f64 * h);
    }
    s * h / 3.0
}

#[test]
fn capacity_matches_composite_simpson() {
    for (phi, n_bar) in [(0.4f64, 3.0), (0.7, 7.5), (0.9, 30.0)] {
        let noise = 1.0f64;
        let nu = |x: f64| {
            let c = x.cos();
            noise * (1.0 - phi * phi) / ((1.0 + phi * phi).powi(2) - 4.0 * phi * phi * c * c).sqrt()
        };
        let expected = g(n_bar + noise) - simpson(|x| g(nu(x)), 40_000) / PI;
        let p = MarkovParams::new(noise, phi).unwrap();
        let ours = asymptotic_capacity(&p, n_bar, &QuadratureConfig::default()).unwrap();
        assert_abs_diff_eq!(ours, expected, epsilon = 1e-9);
    }
}
