//! Entropy and energy of Gaussian states at the covariance-matrix level.
//!
//! Covariance matrices are stored in quadrature-block form `diag(γ_q, γ_p)`
//! with ordering `(q₁..qₙ; p₁..pₙ)` and no q–p cross terms. The vacuum has
//! variance 1/2 in every quadrature. Entropies are in bits.

use crate::error::{Error, Result};
use crate::matrix::{Matrix, SymmetricMatrix};
use crate::numerics::{symmetric_eigen, EigenConfig};

/// Symplectic eigenvalues may dip this far below 1/2 and still count as physical.
pub const PHYSICALITY_TOL: f64 = 1e-9;

/// Frobenius norm of `[γ_q, γ_p]` below which the blocks are treated as commuting.
pub const COMMUTING_TOL: f64 = 1e-10;

/// Tolerance on `det γ = 1/4` (single mode) or `ν = 1/2` (multimode) for purity.
pub const PURITY_TOL: f64 = 1e-9;

/// Entropy of a thermal state with mean photon number `x`:
/// `g(x) = (x+1) log₂(x+1) − x log₂ x`, with `g(0) = 0`.
pub fn g_function(x: f64) -> Result<f64> {
    if x.is_nan() || x < 0.0 {
        return Err(Error::domain("x", x, "g is defined for x >= 0"));
    }
    Ok(g_unchecked(x))
}

#[inline]
pub(crate) fn g_unchecked(x: f64) -> f64 {
    if x <= 0.0 {
        0.0
    } else {
        (x + 1.0) * (x + 1.0).log2() - x * x.log2()
    }
}

/// Real symplectic form `Ω = [[0, 1], [−1, 0]]` on n modes. The commutation
/// matrix `J` of the quadrature ordering `(q; p)` is `i Ω`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SymplecticForm {
    n_modes: usize,
}

impl SymplecticForm {
    pub fn new(n_modes: usize) -> Self {
        SymplecticForm { n_modes }
    }

    pub fn n_modes(&self) -> usize {
        self.n_modes
    }

    pub fn matrix(&self) -> Matrix {
        let n = self.n_modes;
        Matrix::from_fn(2 * n, |i, j| {
            if i < n && j == i + n {
                1.0
            } else if i >= n && j + n == i {
                -1.0
            } else {
                0.0
            }
        })
    }

    /// `|S Ω Sᵀ − Ω|_F`; zero for symplectic `S`.
    pub fn symplectic_defect(&self, s: &Matrix) -> Result<f64> {
        let omega = self.matrix();
        let lhs = s.matmul(&omega)?.matmul(&s.transpose())?;
        Ok(lhs.sub(&omega)?.frobenius_norm())
    }
}

/// Covariance matrix `diag(γ_q, γ_p)` of an n-mode state (or of classical
/// noise / modulation, which uses the same layout).
#[derive(Debug, Clone, PartialEq)]
pub struct CovarianceBlocks {
    q: SymmetricMatrix,
    p: SymmetricMatrix,
}

impl CovarianceBlocks {
    pub fn new(q: SymmetricMatrix, p: SymmetricMatrix) -> Result<Self> {
        if q.dim() != p.dim() {
            return Err(Error::DimensionMismatch {
                expected: q.dim(),
                found: p.dim(),
            });
        }
        if q.dim() == 0 {
            return Err(Error::Config("covariance needs at least one mode".into()));
        }
        Ok(CovarianceBlocks { q, p })
    }

    /// Diagonal blocks with the given per-mode variances.
    pub fn from_diagonals(q: &[f64], p: &[f64]) -> Result<Self> {
        Self::new(SymmetricMatrix::from_diagonal(q), SymmetricMatrix::from_diagonal(p))
    }

    pub fn single_mode(q: f64, p: f64) -> Self {
        Self::from_diagonals(&[q], &[p]).expect("one mode")
    }

    pub fn vacuum(n_modes: usize) -> Self {
        Self::thermal(n_modes, 0.0)
    }

    /// `(N + 1/2)·1` in both quadratures.
    pub fn thermal(n_modes: usize, mean_photons: f64) -> Self {
        let v = vec![mean_photons + 0.5; n_modes];
        Self::from_diagonals(&v, &v).expect("equal dimensions")
    }

    pub fn zeros(n_modes: usize) -> Self {
        Self::new(SymmetricMatrix::zeros(n_modes), SymmetricMatrix::zeros(n_modes))
            .expect("equal dimensions")
    }

    pub fn n_modes(&self) -> usize {
        self.q.dim()
    }

    pub fn q_block(&self) -> &SymmetricMatrix {
        &self.q
    }

    pub fn p_block(&self) -> &SymmetricMatrix {
        &self.p
    }

    /// Trace of the full `2n × 2n` matrix.
    pub fn trace(&self) -> f64 {
        self.q.as_matrix().trace() + self.p.as_matrix().trace()
    }

    pub fn add(&self, other: &CovarianceBlocks) -> Result<Self> {
        Self::new(self.q.add(&other.q)?, self.p.add(&other.p)?)
    }

    /// Applies the passive transformation `diag(U, U)` to both blocks.
    pub fn rotate(&self, u: &Matrix) -> Result<Self> {
        Self::new(self.q.congruence(u)?, self.p.congruence(u)?)
    }

    /// Full `2n × 2n` matrix `diag(γ_q, γ_p)`.
    pub fn to_matrix(&self) -> Matrix {
        let n = self.n_modes();
        Matrix::from_fn(2 * n, |i, j| match (i < n, j < n) {
            (true, true) => self.q[(i, j)],
            (false, false) => self.p[(i - n, j - n)],
            _ => 0.0,
        })
    }

    pub fn commutator_norm(&self) -> f64 {
        let qp = self.q.as_matrix().matmul(self.p.as_matrix()).expect("same dim");
        let pq = self.p.as_matrix().matmul(self.q.as_matrix()).expect("same dim");
        qp.sub(&pq).expect("same dim").frobenius_norm()
    }
}

/// Symplectic spectrum of `diag(γ_q, γ_p)`, descending.
///
/// The eigenvalues of `γ_q γ_p` are the squared symplectic eigenvalues. When
/// the blocks commute they are diagonalized in a common orthonormal basis
/// and `ν_k = √(λ_q,k λ_p,k)`; otherwise the spectrum comes from the
/// symmetric form `γ_q^{1/2} γ_p γ_q^{1/2}`.
pub fn symplectic_eigenvalues(cov: &CovarianceBlocks) -> Result<Vec<f64>> {
    let cfg = EigenConfig::default();
    let mut nu = if cov.commutator_norm() <= COMMUTING_TOL {
        match common_basis_spectrum(cov, &cfg)? {
            Some(v) => v,
            None => product_spectrum(cov, &cfg)?,
        }
    } else {
        product_spectrum(cov, &cfg)?
    };
    nu.sort_by(|a, b| b.total_cmp(a));
    Ok(nu)
}

fn common_basis_spectrum(cov: &CovarianceBlocks, cfg: &EigenConfig) -> Result<Option<Vec<f64>>> {
    // A generic combination separates eigenvalues that are degenerate in one block only.
    const MIX: f64 = std::f64::consts::FRAC_1_SQRT_2;
    let mixed = cov.q.add(&cov.p.scale(MIX))?;
    let basis = symmetric_eigen(&mixed, cfg)?.vectors;
    let q = cov.q.congruence(&basis)?;
    let p = cov.p.congruence(&basis)?;
    let scale = 1.0 + q.as_matrix().frobenius_norm() + p.as_matrix().frobenius_norm();
    if q.as_matrix().off_diagonal_norm() > 1e-9 * scale || p.as_matrix().off_diagonal_norm() > 1e-9 * scale {
        return Ok(None);
    }
    q.as_matrix()
        .diagonal()
        .iter()
        .zip(p.as_matrix().diagonal())
        .map(|(&a, b)| {
            let prod = a * b;
            if prod < 0.0 {
                Err(Error::domain("λq·λp", prod, "covariance blocks must be positive semidefinite"))
            } else {
                Ok(prod.sqrt())
            }
        })
        .collect::<Result<Vec<_>>>()
        .map(Some)
}

fn product_spectrum(cov: &CovarianceBlocks, cfg: &EigenConfig) -> Result<Vec<f64>> {
    let eq = symmetric_eigen(&cov.q, cfg)?;
    if let Some(&min) = eq.values.last() {
        if min < -1e-12 * eq.values[0].abs().max(1.0) {
            return Err(Error::domain("λ_min(γ_q)", min, "covariance blocks must be positive semidefinite"));
        }
    }
    let n = cov.n_modes();
    let sqrt_vals: Vec<f64> = eq.values.iter().map(|v| v.max(0.0).sqrt()).collect();
    // γ_q^{1/2} = U diag(√λ) Uᵀ
    let u = &eq.vectors;
    let root = Matrix::from_fn(n, |i, j| {
        (0..n).map(|k| u[(i, k)] * sqrt_vals[k] * u[(j, k)]).sum()
    });
    let inner = cov.p.congruence(&root)?;
    symmetric_eigen(&inner, cfg)?
        .values
        .into_iter()
        .map(|v| {
            if v < -1e-12 {
                Err(Error::domain("ν²", v, "covariance blocks must be positive semidefinite"))
            } else {
                Ok(v.max(0.0).sqrt())
            }
        })
        .collect()
}

/// Von Neumann entropy in bits, `Σ_k g(|ν_k| − 1/2)`.
pub fn entropy(cov: &CovarianceBlocks) -> Result<f64> {
    let nu = symplectic_eigenvalues(cov)?;
    let mut s = 0.0;
    for (index, &v) in nu.iter().enumerate() {
        let v = v.abs();
        if v < 0.5 - PHYSICALITY_TOL {
            return Err(Error::Unphysical { index, value: v });
        }
        s += g_unchecked(v - 0.5);
    }
    Ok(s)
}

/// Mean photon number per mode of the modulated input:
/// `(Tr γ_in + Tr γ_mod) / 2n − 1/2`.
pub fn mean_photon_number(gamma_in: &CovarianceBlocks, gamma_mod: &CovarianceBlocks) -> Result<f64> {
    if gamma_in.n_modes() != gamma_mod.n_modes() {
        return Err(Error::DimensionMismatch {
            expected: gamma_in.n_modes(),
            found: gamma_mod.n_modes(),
        });
    }
    let n = gamma_in.n_modes() as f64;
    Ok((gamma_in.trace() + gamma_mod.trace()) / (2.0 * n) - 0.5)
}

/// Whether `γ_in` describes a pure state: `det γ = 1/4` for one mode, all
/// symplectic eigenvalues equal to 1/2 otherwise.
pub fn validate_pure_input(gamma_in: &CovarianceBlocks) -> bool {
    if gamma_in.n_modes() == 1 {
        let det = gamma_in.q[(0, 0)] * gamma_in.p[(0, 0)];
        return (det - 0.25).abs() <= PURITY_TOL;
    }
    match symplectic_eigenvalues(gamma_in) {
        Ok(nu) => nu.iter().all(|v| (v - 0.5).abs() <= PURITY_TOL),
        Err(_) => false,
    }
}
