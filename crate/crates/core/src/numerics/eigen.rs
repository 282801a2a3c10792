//! Dense symmetric eigensolvers.
//!
//! [`symmetric_eigen`] is a cyclic Jacobi solver returning eigenvectors; it
//! is accurate to high relative precision and is what the covariance-level
//! code uses. [`symmetric_eigenvalues`] reduces to tridiagonal form with
//! Householder reflections and then runs implicit QL, which is an order of
//! magnitude faster for the large noise blocks of the finite-use rate.

use crate::error::{Error, Result};
use crate::matrix::{Matrix, SymmetricMatrix};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EigenConfig {
    /// Convergence threshold on `|offdiag(A)|_F / |A|_F`.
    pub off_diag_tol: f64,
    pub max_sweeps: usize,
}

impl Default for EigenConfig {
    fn default() -> Self {
        EigenConfig {
            off_diag_tol: 1e-12,
            max_sweeps: 100,
        }
    }
}

/// Eigen-decomposition `m = V diag(values) Vᵀ`, eigenvalues descending.
/// Column `k` of `vectors` belongs to `values[k]`.
#[derive(Debug, Clone)]
pub struct SymmetricEigen {
    pub values: Vec<f64>,
    pub vectors: Matrix,
}

impl SymmetricEigen {
    pub fn reconstruct(&self) -> Matrix {
        let d = Matrix::from_diagonal(&self.values);
        self.vectors
            .matmul(&d)
            .and_then(|vd| vd.matmul(&self.vectors.transpose()))
            .expect("square factors of equal size")
    }

    pub fn vector(&self, k: usize) -> Vec<f64> {
        let n = self.vectors.dim();
        (0..n).map(|i| self.vectors[(i, k)]).collect()
    }
}

/// Cyclic Jacobi with the usual threshold rotations.
pub fn symmetric_eigen(m: &SymmetricMatrix, config: &EigenConfig) -> Result<SymmetricEigen> {
    let n = m.dim();
    let mut a = m.as_matrix().clone();
    let mut v = Matrix::identity(n);
    let scale = a.frobenius_norm();

    let mut converged = scale == 0.0 || n < 2;
    let mut off = a.off_diagonal_norm();
    for _ in 0..config.max_sweeps {
        if converged || off <= config.off_diag_tol * scale {
            converged = true;
            break;
        }
        for p in 0..n - 1 {
            for q in (p + 1)..n {
                let apq = a[(p, q)];
                if apq == 0.0 {
                    continue;
                }
                let theta = (a[(q, q)] - a[(p, p)]) / (2.0 * apq);
                let t = theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt());
                let t = if theta == 0.0 { 1.0 } else { t };
                let c = 1.0 / (t * t + 1.0).sqrt();
                let s = t * c;
                rotate(&mut a, &mut v, p, q, c, s);
            }
        }
        off = a.off_diagonal_norm();
    }
    if !converged && off > config.off_diag_tol * scale {
        return Err(Error::EigenNonConvergence {
            sweeps: config.max_sweeps,
            off_diagonal: off,
        });
    }

    let mut order: Vec<usize> = (0..n).collect();
    let diag = a.diagonal();
    order.sort_by(|&i, &j| diag[j].total_cmp(&diag[i]).then(i.cmp(&j)));
    let values = order.iter().map(|&i| diag[i]).collect();
    let vectors = Matrix::from_fn(n, |i, k| v[(i, order[k])]);
    Ok(SymmetricEigen { values, vectors })
}

/// Applies the plane rotation `J(p, q, θ)` as `A ← JᵀAJ`, `V ← VJ`.
fn rotate(a: &mut Matrix, v: &mut Matrix, p: usize, q: usize, c: f64, s: f64) {
    let n = a.dim();
    for k in 0..n {
        let akp = a[(k, p)];
        let akq = a[(k, q)];
        a[(k, p)] = c * akp - s * akq;
        a[(k, q)] = s * akp + c * akq;
    }
    for k in 0..n {
        let apk = a[(p, k)];
        let aqk = a[(q, k)];
        a[(p, k)] = c * apk - s * aqk;
        a[(q, k)] = s * apk + c * aqk;
    }
    a[(p, q)] = 0.0;
    a[(q, p)] = 0.0;
    for k in 0..n {
        let vkp = v[(k, p)];
        let vkq = v[(k, q)];
        v[(k, p)] = c * vkp - s * vkq;
        v[(k, q)] = s * vkp + c * vkq;
    }
}

/// Eigenvalues only, descending, via Householder tridiagonalization and
/// implicit QL with Wilkinson shifts.
pub fn symmetric_eigenvalues(m: &SymmetricMatrix) -> Result<Vec<f64>> {
    let (mut d, mut e) = tridiagonalize(m.as_matrix().clone());
    tridiagonal_ql(&mut d, &mut e)?;
    d.sort_by(|a, b| b.total_cmp(a));
    Ok(d)
}

/// Householder reduction to symmetric tridiagonal form. Returns the diagonal
/// and the sub-diagonal (`e[i]` couples rows `i` and `i + 1`; last entry 0).
fn tridiagonalize(mut a: Matrix) -> (Vec<f64>, Vec<f64>) {
    let n = a.dim();
    let mut e = vec![0.0; n];
    for k in 0..n.saturating_sub(2) {
        let alpha2: f64 = ((k + 1)..n).map(|i| a[(i, k)] * a[(i, k)]).sum();
        let norm = alpha2.sqrt();
        if norm == 0.0 {
            e[k] = 0.0;
            continue;
        }
        let x0 = a[(k + 1, k)];
        let alpha = if x0 > 0.0 { -norm } else { norm };
        // v = x - alpha e1, normalized so H = I - 2 v vᵀ / (vᵀv)
        let mut v = vec![0.0; n];
        v[k + 1] = x0 - alpha;
        for i in (k + 2)..n {
            v[i] = a[(i, k)];
        }
        let vtv: f64 = v.iter().map(|x| x * x).sum();
        if vtv == 0.0 {
            e[k] = x0;
            continue;
        }
        // p = A v / (vᵀv/2), K = vᵀp / (2 vᵀv/2), w = p - K v; A ← A - v wᵀ - w vᵀ
        let h = 0.5 * vtv;
        let mut p = vec![0.0; n];
        for i in (k + 1)..n {
            let mut s = 0.0;
            for j in (k + 1)..n {
                s += a[(i, j)] * v[j];
            }
            p[i] = s / h;
        }
        let kk: f64 = ((k + 1)..n).map(|i| v[i] * p[i]).sum::<f64>() / (2.0 * h);
        for i in (k + 1)..n {
            p[i] -= kk * v[i];
        }
        for i in (k + 1)..n {
            for j in (k + 1)..=i {
                let upd = a[(i, j)] - v[i] * p[j] - p[i] * v[j];
                a[(i, j)] = upd;
                a[(j, i)] = upd;
            }
        }
        e[k] = alpha;
        for i in (k + 1)..n {
            a[(i, k)] = 0.0;
            a[(k, i)] = 0.0;
        }
        a[(k + 1, k)] = alpha;
        a[(k, k + 1)] = alpha;
    }
    if n >= 2 {
        e[n - 2] = a[(n - 1, n - 2)];
    }
    let d = a.diagonal();
    (d, e)
}

/// Implicit QL on a symmetric tridiagonal matrix (diagonal `d`, sub-diagonal
/// `e`). Eigenvalues are left in `d`, unsorted.
fn tridiagonal_ql(d: &mut [f64], e: &mut [f64]) -> Result<()> {
    const MAX_ITER: usize = 60;
    let n = d.len();
    if n == 0 {
        return Ok(());
    }
    e[n - 1] = 0.0;
    for l in 0..n {
        let mut iter = 0;
        loop {
            let mut m = l;
            while m + 1 < n {
                let dd = d[m].abs() + d[m + 1].abs();
                if e[m].abs() <= f64::EPSILON * dd {
                    break;
                }
                m += 1;
            }
            if m == l {
                break;
            }
            iter += 1;
            if iter > MAX_ITER {
                return Err(Error::EigenNonConvergence {
                    sweeps: MAX_ITER,
                    off_diagonal: e[l].abs(),
                });
            }
            let mut g = (d[l + 1] - d[l]) / (2.0 * e[l]);
            let mut r = g.hypot(1.0);
            g = d[m] - d[l] + e[l] / (g + r.copysign(g));
            let (mut s, mut c, mut p) = (1.0, 1.0, 0.0);
            let mut i = m;
            let mut underflow = false;
            while i > l {
                i -= 1;
                let f = s * e[i];
                let b = c * e[i];
                r = f.hypot(g);
                e[i + 1] = r;
                if r == 0.0 {
                    d[i + 1] -= p;
                    e[m] = 0.0;
                    underflow = true;
                    break;
                }
                s = f / r;
                c = g / r;
                g = d[i + 1] - p;
                r = (d[i] - g) * s + 2.0 * c * b;
                p = s * r;
                d[i + 1] = g + p;
                g = c * r - b;
            }
            if underflow {
                continue;
            }
            d[l] -= p;
            e[l] = g;
            e[m] = 0.0;
        }
    }
    Ok(())
}
