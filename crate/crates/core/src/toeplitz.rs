//! Gauss-Markov noise covariances, their circulant embedding, the real
//! Fourier basis that diagonalizes circulants, and the asymptotic spectrum.
//!
//! The q quadrature carries the AR(1) covariance `N φ^{|i−j|}`; the p
//! quadrature carries the same process with `φ → −φ`. For large `n` both
//! spectra are sampled by the symbol
//!
//! ```text
//! λ(x) = N (1 − φ²) / (1 + φ² − 2φ cos x),   x ∈ [0, π]
//! ```
//!
//! with the p spectrum given by `λ(π − x)`.

use std::f64::consts::PI;

use crate::error::{Error, Result};
use crate::matrix::{Matrix, SymmetricMatrix};
use crate::numerics::symmetric_eigenvalues;

/// Orthogonality tolerance accepted by [`symplectic_block_check`].
pub const ORTHOGONALITY_TOL: f64 = 1e-10;

/// Noise variance `N` and nearest-neighbour correlation `φ` of the AR(1) noise.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MarkovParams {
    noise: f64,
    phi: f64,
}

impl MarkovParams {
    pub fn new(noise: f64, phi: f64) -> Result<Self> {
        if !(noise > 0.0 && noise.is_finite()) {
            return Err(Error::domain("N", noise, "noise variance must be positive"));
        }
        if phi.is_nan() || phi.abs() >= 1.0 {
            return Err(Error::domain("phi", phi, "correlation must satisfy |phi| < 1"));
        }
        Ok(MarkovParams { noise, phi })
    }

    pub fn noise(&self) -> f64 {
        self.noise
    }

    pub fn phi(&self) -> f64 {
        self.phi
    }

    /// `λ(x)`, the asymptotic q-quadrature spectrum.
    pub fn symbol(&self, x: f64) -> f64 {
        let phi = self.phi;
        self.noise * (1.0 - phi * phi) / (1.0 + phi * phi - 2.0 * phi * x.cos())
    }

    /// `λ(π − x)`, the asymptotic p-quadrature spectrum.
    pub fn reflected_symbol(&self, x: f64) -> f64 {
        self.symbol(PI - x)
    }

    /// `ν_env(x) = √(λ(x) λ(π − x))`, evaluated in a form that stays
    /// accurate as `φ → 1`.
    pub fn symplectic_symbol(&self, x: f64) -> f64 {
        let phi2 = self.phi * self.phi;
        let c = x.cos();
        let a = 1.0 + phi2;
        let b = 2.0 * self.phi * c;
        self.noise * (1.0 - phi2) / ((a - b) * (a + b)).sqrt()
    }

    /// `1/λ(x)`, the symbol of the tridiagonal inverse.
    pub fn inverse_symbol(&self, x: f64) -> f64 {
        let phi = self.phi;
        (1.0 + phi * phi - 2.0 * phi * x.cos()) / (self.noise * (1.0 - phi * phi))
    }

    /// The same process with the correlation sign flipped.
    pub fn with_sign(&self, sign: Sign) -> Self {
        MarkovParams {
            noise: self.noise,
            phi: sign.apply(self.phi),
        }
    }
}

/// Which quadrature's correlation sign to use: `+φ` for q, `−φ` for p.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    pub fn apply(self, phi: f64) -> f64 {
        match self {
            Sign::Plus => phi,
            Sign::Minus => -phi,
        }
    }
}

/// Symmetric Toeplitz matrix given by its first row `t_0, …, t_{n−1}`.
#[derive(Debug, Clone, PartialEq)]
pub struct ToeplitzSpec {
    diagonals: Vec<f64>,
}

impl ToeplitzSpec {
    pub fn new(diagonals: Vec<f64>) -> Result<Self> {
        if diagonals.is_empty() {
            return Err(Error::Config("Toeplitz matrix needs at least one diagonal".into()));
        }
        if diagonals.iter().any(|t| !t.is_finite()) {
            return Err(Error::Config("Toeplitz diagonals must be finite".into()));
        }
        Ok(ToeplitzSpec { diagonals })
    }

    pub fn markov(params: MarkovParams, sign: Sign, n: usize) -> Result<Self> {
        let phi = sign.apply(params.phi);
        Self::new((0..n).map(|k| params.noise * phi.powi(k as i32)).collect())
    }

    pub fn n(&self) -> usize {
        self.diagonals.len()
    }

    pub fn diagonals(&self) -> &[f64] {
        &self.diagonals
    }

    /// `T_ij = t_{|i−j|}`.
    pub fn matrix(&self) -> SymmetricMatrix {
        SymmetricMatrix::from_upper(self.n(), |i, j| self.diagonals[j - i])
    }

    /// Circulant built from the same diagonals: `t_d` for `d ≤ κ` and
    /// `t_{n−d}` beyond, with `κ = ⌊n/2⌋`.
    pub fn circulant(&self) -> SymmetricMatrix {
        let n = self.n();
        let kappa = circulant_half_width(n);
        SymmetricMatrix::from_upper(n, |i, j| {
            let d = j - i;
            if d <= kappa {
                self.diagonals[d]
            } else {
                self.diagonals[n - d]
            }
        })
    }

    /// `Σ_k |t_k|` over both sides of the diagonal.
    pub fn wiener_sum(&self) -> f64 {
        self.diagonals[0].abs() + 2.0 * self.diagonals[1..].iter().map(|t| t.abs()).sum::<f64>()
    }

    /// Truncated Fourier symbol `t_0 + 2 Σ_{k≥1} t_k cos(kx)`.
    pub fn symbol(&self, x: f64) -> f64 {
        self.diagonals[0]
            + 2.0
                * self.diagonals[1..]
                    .iter()
                    .enumerate()
                    .map(|(k, t)| t * ((k + 1) as f64 * x).cos())
                    .sum::<f64>()
    }
}

/// `κ = (n−1)/2` for odd `n`, `n/2` for even `n`.
pub fn circulant_half_width(n: usize) -> usize {
    n / 2
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SymbolKind {
    MarkovSymbol,
    InverseSymbol,
    CustomSampled,
}

/// An eigenvalue function on the spectral domain `[0, π]`.
#[derive(Debug, Clone, PartialEq)]
pub enum SpectralFunction {
    /// `λ(x)`, or `λ(π − x)` when `reflected`.
    Markov { params: MarkovParams, reflected: bool },
    /// `1/λ(x)`.
    Inverse(MarkovParams),
    /// Piecewise-linear interpolation through `(x_k, v_k)`, `x` ascending.
    Sampled { x: Vec<f64>, values: Vec<f64> },
}

impl SpectralFunction {
    pub fn sampled(x: Vec<f64>, values: Vec<f64>) -> Result<Self> {
        if x.len() != values.len() {
            return Err(Error::DimensionMismatch {
                expected: x.len(),
                found: values.len(),
            });
        }
        if x.is_empty() || x.windows(2).any(|w| w[1] <= w[0]) {
            return Err(Error::Config("sample grid must be non-empty and strictly increasing".into()));
        }
        Ok(SpectralFunction::Sampled { x, values })
    }

    pub fn kind(&self) -> SymbolKind {
        match self {
            SpectralFunction::Markov { .. } => SymbolKind::MarkovSymbol,
            SpectralFunction::Inverse(_) => SymbolKind::InverseSymbol,
            SpectralFunction::Sampled { .. } => SymbolKind::CustomSampled,
        }
    }

    pub fn evaluate(&self, x: f64) -> f64 {
        match self {
            SpectralFunction::Markov { params, reflected: false } => params.symbol(x),
            SpectralFunction::Markov { params, reflected: true } => params.reflected_symbol(x),
            SpectralFunction::Inverse(params) => params.inverse_symbol(x),
            SpectralFunction::Sampled { x: xs, values } => {
                if x <= xs[0] {
                    return values[0];
                }
                let last = xs.len() - 1;
                if x >= xs[last] {
                    return values[last];
                }
                let k = xs.partition_point(|&v| v <= x) - 1;
                let t = (x - xs[k]) / (xs[k + 1] - xs[k]);
                values[k] + t * (values[k + 1] - values[k])
            }
        }
    }

    pub fn sample(&self, grid: &[f64]) -> Vec<f64> {
        grid.iter().map(|&x| self.evaluate(x)).collect()
    }
}

/// `M_ij = N (±φ)^{|i−j|}`.
pub fn markov_matrix(params: MarkovParams, sign: Sign, n: usize) -> Result<SymmetricMatrix> {
    if n == 0 {
        return Err(Error::Config("matrix size must be at least 1".into()));
    }
    Ok(ToeplitzSpec::markov(params, sign, n)?.matrix())
}

/// Circulant counterpart of [`markov_matrix`]; all such matrices commute.
pub fn circulant_embedding(params: MarkovParams, sign: Sign, n: usize) -> Result<SymmetricMatrix> {
    if n < 2 {
        return Err(Error::Config("circulant embedding needs n >= 2".into()));
    }
    Ok(ToeplitzSpec::markov(params, sign, n)?.circulant())
}

/// Real orthogonal `Q` with `QᵀCQ` diagonal for every symmetric circulant `C`.
///
/// The columns of `Q` are: the constant vector; then for each frequency
/// `j = 1..⌊(n−1)/2⌋` the pair `√(2/n) cos(2πjk/n)`, `√(2/n) sin(2πjk/n)`;
/// and for even `n` the alternating vector `n^{−1/2} (−1)^k` last.
pub fn fourier_diagonalizer(n: usize) -> Matrix {
    let mut q = Matrix::zeros(n);
    if n == 0 {
        return q;
    }
    let nf = n as f64;
    let c0 = 1.0 / nf.sqrt();
    let c = (2.0 / nf).sqrt();
    for k in 0..n {
        q[(k, 0)] = c0;
    }
    let mut col = 1;
    for j in 1..=(n - 1) / 2 {
        for k in 0..n {
            // reduce jk mod n first so large n keeps full angle accuracy
            let angle = 2.0 * PI * ((j * k) % n) as f64 / nf;
            q[(k, col)] = c * angle.cos();
            q[(k, col + 1)] = c * angle.sin();
        }
        col += 2;
    }
    if n.is_multiple_of(2) {
        for k in 0..n {
            q[(k, n - 1)] = if k % 2 == 0 { c0 } else { -c0 };
        }
    }
    q
}

/// `λ(x)` for the q quadrature; use `π − x` for p.
pub fn asymptotic_markov_spectrum(params: MarkovParams, x: f64) -> f64 {
    debug_assert!((0.0..=PI).contains(&x), "spectral parameter {x} outside [0, π]");
    params.symbol(x)
}

/// Tridiagonal matrix `V` that inverts `M(φ)` away from the boundary rows:
/// diagonal `(1+φ²)/(N(1−φ²))`, off-diagonal `−φ/(N(1−φ²))`.
pub fn tridiagonal_inverse(params: MarkovParams, n: usize) -> Result<SymmetricMatrix> {
    if n < 2 {
        return Err(Error::Config("tridiagonal inverse needs n >= 2".into()));
    }
    let phi = params.phi;
    let denom = params.noise * (1.0 - phi * phi);
    let diag = (1.0 + phi * phi) / denom;
    let off = -phi / denom;
    Ok(SymmetricMatrix::from_upper(n, |i, j| match j - i {
        0 => diag,
        1 => off,
        _ => 0.0,
    }))
}

/// Frobenius norm of `ab − ba`.
pub fn commutator_norm(a: &SymmetricMatrix, b: &SymmetricMatrix) -> Result<f64> {
    let ab = a.as_matrix().matmul(b.as_matrix())?;
    let ba = b.as_matrix().matmul(a.as_matrix())?;
    Ok(ab.sub(&ba)?.frobenius_norm())
}

/// Whether `diag(U_q, U_p)` is a passive symplectic map, i.e. `U_qᵀ U_p = 1`.
pub fn symplectic_block_check(u_q: &Matrix, u_p: &Matrix) -> Result<bool> {
    if u_q.dim() != u_p.dim() {
        return Err(Error::DimensionMismatch {
            expected: u_q.dim(),
            found: u_p.dim(),
        });
    }
    for u in [u_q, u_p] {
        let deviation = u.orthogonality_defect();
        if deviation > ORTHOGONALITY_TOL {
            return Err(Error::NotOrthogonal { deviation });
        }
    }
    let product = u_q.transpose().matmul(u_p)?;
    let defect = product.sub(&Matrix::identity(u_q.dim()))?.frobenius_norm();
    Ok(defect <= ORTHOGONALITY_TOL)
}

/// All eigenvalues, descending.
pub fn finite_spectrum(m: &SymmetricMatrix) -> Result<Vec<f64>> {
    symmetric_eigenvalues(m)
}

/// Midpoint grid `x_k = π (k − 1/2) / n`, `k = 1..n`.
pub fn midpoint_grid(n: usize) -> Vec<f64> {
    (1..=n).map(|k| PI * (k as f64 - 0.5) / n as f64).collect()
}

/// Largest gap between the sorted eigenvalues of a finite matrix and the
/// sorted symbol samples on the midpoint grid.
pub fn szego_deviation(eigenvalues: &[f64], symbol: impl Fn(f64) -> f64) -> f64 {
    let mut eig = eigenvalues.to_vec();
    eig.sort_by(|a, b| b.total_cmp(a));
    let mut samples: Vec<f64> = midpoint_grid(eig.len()).into_iter().map(symbol).collect();
    samples.sort_by(|a, b| b.total_cmp(a));
    eig.iter()
        .zip(&samples)
        .map(|(a, b)| (a - b).abs())
        .fold(0.0, f64::max)
}

/// Szegő deviation of `M(φ)` at size `n` against `λ(x)`.
pub fn markov_szego_deviation(params: MarkovParams, n: usize) -> Result<f64> {
    let eig = finite_spectrum(&markov_matrix(params, Sign::Plus, n)?)?;
    Ok(szego_deviation(&eig, |x| params.symbol(x)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    fn params(noise: f64, phi: f64) -> MarkovParams {
        MarkovParams::new(noise, phi).unwrap()
    }

    fn rows(m: &SymmetricMatrix) -> Vec<Vec<f64>> {
        (0..m.dim()).map(|i| m.as_matrix().row(i).to_vec()).collect()
    }

    #[test]
    fn params_validation() {
        assert!(MarkovParams::new(0.0, 0.1).is_err());
        assert!(MarkovParams::new(1.0, 1.0).is_err());
        assert!(MarkovParams::new(1.0, -1.0).is_err());
        assert!(MarkovParams::new(1.0, f64::NAN).is_err());
        assert!(MarkovParams::new(1.0, -0.5).is_ok());
    }

    #[test]
    fn markov_matrix_examples() {
        assert_eq!(
            markov_matrix(params(1.0, 0.0), Sign::Plus, 3).unwrap(),
            SymmetricMatrix::identity(3)
        );
        assert_eq!(
            rows(&markov_matrix(params(1.0, 0.5), Sign::Plus, 2).unwrap()),
            vec![vec![1.0, 0.5], vec![0.5, 1.0]]
        );
        let m = markov_matrix(params(2.0, 0.4), Sign::Minus, 3).unwrap();
        let expected = [[2.0, -0.8, 0.32], [-0.8, 2.0, -0.8], [0.32, -0.8, 2.0]];
        for i in 0..3 {
            for j in 0..3 {
                assert_abs_diff_eq!(m[(i, j)], expected[i][j], epsilon = 1e-15);
            }
        }
        assert!(markov_matrix(params(1.0, 0.5), Sign::Plus, 0).is_err());
    }

    #[test]
    fn circulant_examples() {
        assert_eq!(
            circulant_embedding(params(2.5, 0.0), Sign::Plus, 4).unwrap(),
            SymmetricMatrix::identity(4).scale(2.5)
        );
        assert_eq!(
            rows(&circulant_embedding(params(1.0, 0.5), Sign::Plus, 3).unwrap()),
            vec![vec![1.0, 0.5, 0.5], vec![0.5, 1.0, 0.5], vec![0.5, 0.5, 1.0]]
        );
        assert!(circulant_embedding(params(1.0, 0.5), Sign::Plus, 1).is_err());
    }

    #[test]
    fn circulant_rows_are_cyclic_shifts() {
        for sign in [Sign::Plus, Sign::Minus] {
            for n in [5, 6] {
                let c = circulant_embedding(params(1.3, 0.4), sign, n).unwrap();
                let first = c.as_matrix().row(0).to_vec();
                for r in 1..n {
                    let shifted: Vec<f64> = (0..n).map(|j| first[(j + n - r) % n]).collect();
                    assert_eq!(c.as_matrix().row(r), shifted.as_slice());
                }
            }
        }
    }

    #[test]
    fn circulant_agrees_with_toeplitz_within_half_width() {
        for n in [7, 8] {
            let p = params(1.0, 0.6);
            let t = markov_matrix(p, Sign::Plus, n).unwrap();
            let c = circulant_embedding(p, Sign::Plus, n).unwrap();
            let kappa = circulant_half_width(n);
            for i in 0..n {
                for j in 0..n {
                    if i.abs_diff(j) <= kappa {
                        assert_eq!(t[(i, j)], c[(i, j)]);
                    }
                }
            }
        }
    }

    #[test]
    fn fourier_basis_is_orthogonal() {
        assert_eq!(fourier_diagonalizer(1), Matrix::identity(1));
        for n in [2, 3, 8, 9, 64] {
            assert!(fourier_diagonalizer(n).orthogonality_defect() < 1e-12, "n = {n}");
        }
    }

    #[test]
    fn fourier_basis_diagonalizes_circulant() {
        let c = circulant_embedding(params(1.0, 0.5), Sign::Plus, 8).unwrap();
        let d = c.congruence(&fourier_diagonalizer(8)).unwrap();
        assert!(d.as_matrix().off_diagonal_norm() <= 1e-10);
    }

    #[test]
    fn spectrum_endpoints() {
        let p = params(1.0, 0.5);
        assert_abs_diff_eq!(asymptotic_markov_spectrum(p, 0.0), 3.0, epsilon = 1e-14);
        assert_abs_diff_eq!(asymptotic_markov_spectrum(p, PI), 1.0 / 3.0, epsilon = 1e-14);
        assert_abs_diff_eq!(p.reflected_symbol(0.0), 1.0 / 3.0, epsilon = 1e-14);
        let white = params(2.2, 0.0);
        for x in [0.0, 1.0, PI] {
            assert_eq!(asymptotic_markov_spectrum(white, x), 2.2);
        }
    }

    #[test]
    fn symplectic_symbol_matches_product() {
        let p = params(1.7, 0.8);
        for k in 0..=20 {
            let x = PI * k as f64 / 20.0;
            let direct = (p.symbol(x) * p.reflected_symbol(x)).sqrt();
            assert_abs_diff_eq!(p.symplectic_symbol(x), direct, epsilon = 1e-12);
        }
        assert_abs_diff_eq!(p.symplectic_symbol(0.0), 1.7, epsilon = 1e-14);
    }

    #[test]
    fn tridiagonal_inverse_interior_rows() {
        let p = params(1.0, 0.6);
        let n = 10;
        let v = tridiagonal_inverse(p, n).unwrap();
        let m = markov_matrix(p, Sign::Plus, n).unwrap();
        let vm = v.as_matrix().matmul(m.as_matrix()).unwrap();
        for i in 1..n - 1 {
            for j in 0..n {
                let expected = if i == j { 1.0 } else { 0.0 };
                assert_abs_diff_eq!(vm[(i, j)], expected, epsilon = 1e-12);
            }
        }
        // boundary rows are not exact
        assert!((vm[(0, 0)] - 1.0).abs() > 1e-3);
    }

    #[test]
    fn tridiagonal_inverse_white_noise() {
        let v = tridiagonal_inverse(params(4.0, 0.0), 3).unwrap();
        assert_eq!(v, SymmetricMatrix::identity(3).scale(0.25));
    }

    #[test]
    fn commutators() {
        let a = markov_matrix(params(1.0, 0.5), Sign::Plus, 4).unwrap();
        assert_eq!(commutator_norm(&a, &a).unwrap(), 0.0);
        let b = markov_matrix(params(1.0, 0.5), Sign::Minus, 4).unwrap();
        assert!(commutator_norm(&a, &b).unwrap() > 1e-3);
        let ca = circulant_embedding(params(1.0, 0.5), Sign::Plus, 16).unwrap();
        let cb = circulant_embedding(params(1.0, 0.5), Sign::Minus, 16).unwrap();
        assert!(commutator_norm(&ca, &cb).unwrap() <= 1e-12);
        assert!(commutator_norm(&a, &SymmetricMatrix::identity(3)).is_err());
    }

    #[test]
    fn block_check() {
        let q = fourier_diagonalizer(6);
        assert!(symplectic_block_check(&q, &q).unwrap());
        let id = Matrix::identity(3);
        let perm = Matrix::from_rows(&[vec![0.0, 1.0, 0.0], vec![1.0, 0.0, 0.0], vec![0.0, 0.0, 1.0]]).unwrap();
        assert!(!symplectic_block_check(&id, &perm).unwrap());
        let (c, s) = (0.3f64.cos(), 0.3f64.sin());
        let mut r = Matrix::identity(6);
        r[(0, 0)] = c;
        r[(0, 1)] = -s;
        r[(1, 0)] = s;
        r[(1, 1)] = c;
        assert!(!symplectic_block_check(&q, &q.matmul(&r).unwrap()).unwrap());
        let bad = Matrix::identity(3).scale(2.0);
        assert!(matches!(symplectic_block_check(&bad, &id), Err(Error::NotOrthogonal { .. })));
    }

    #[test]
    fn finite_spectrum_examples() {
        assert_eq!(finite_spectrum(&SymmetricMatrix::identity(4)).unwrap(), vec![1.0; 4]);
        let two = finite_spectrum(&markov_matrix(params(1.0, 0.5), Sign::Plus, 2).unwrap()).unwrap();
        assert_abs_diff_eq!(two[0], 1.5, epsilon = 1e-14);
        assert_abs_diff_eq!(two[1], 0.5, epsilon = 1e-14);
        let big = finite_spectrum(&markov_matrix(params(1.0, 0.9), Sign::Plus, 64).unwrap()).unwrap();
        assert!(*big.last().unwrap() > 0.0);
    }

    #[test]
    fn spectrum_bounds() {
        let p = params(1.5, 0.7);
        let lo = 1.5 * 0.3 / 1.7;
        let hi = 1.5 * 1.7 / 0.3;
        for k in 0..=100 {
            let v = p.symbol(PI * k as f64 / 100.0);
            assert!(v >= lo * (1.0 - 1e-14) && v <= hi * (1.0 + 1e-14));
        }
    }

    #[test]
    fn sampled_function_interpolates() {
        let f = SpectralFunction::sampled(vec![0.0, 1.0, 2.0], vec![1.0, 3.0, 2.0]).unwrap();
        assert_eq!(f.kind(), SymbolKind::CustomSampled);
        assert_eq!(f.evaluate(0.5), 2.0);
        assert_eq!(f.evaluate(1.5), 2.5);
        assert_eq!(f.evaluate(-1.0), 1.0);
        assert_eq!(f.evaluate(5.0), 2.0);
        assert!(SpectralFunction::sampled(vec![0.0, 0.0], vec![1.0, 1.0]).is_err());
    }

    #[test]
    fn toeplitz_spec_symbol_and_wiener_sum() {
        let t = ToeplitzSpec::new(vec![2.0, -0.5, 0.25]).unwrap();
        assert_eq!(t.wiener_sum(), 3.5);
        assert_abs_diff_eq!(t.symbol(0.0), 1.5, epsilon = 1e-15);
        assert!(ToeplitzSpec::new(vec![]).is_err());
    }
}
