//! Adaptive Gauss-Legendre quadrature.
//!
//! Each panel is integrated once with the full rule and once as the sum of
//! its two halves; the difference is the panel's error estimate. The panel
//! with the largest estimate is bisected until the summed estimates drop
//! below `abs_tol`. Panels are kept in interval order and the final sum is
//! taken left to right, so the result does not depend on anything but the
//! inputs.

use std::f64::consts::PI;

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadratureConfig {
    pub abs_tol: f64,
    pub max_subdivisions: usize,
    /// Number of Gauss-Legendre nodes per panel.
    pub rule_order: usize,
}

impl Default for QuadratureConfig {
    fn default() -> Self {
        QuadratureConfig {
            abs_tol: 1e-10,
            max_subdivisions: 1 << 14,
            rule_order: 16,
        }
    }
}

impl QuadratureConfig {
    pub fn with_tolerance(abs_tol: f64) -> Self {
        QuadratureConfig {
            abs_tol,
            ..Default::default()
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.abs_tol.is_nan() || self.abs_tol <= 0.0 {
            return Err(Error::Config(format!(
                "quadrature abs_tol must be positive, got {}",
                self.abs_tol
            )));
        }
        if self.rule_order < 2 || self.max_subdivisions == 0 {
            return Err(Error::Config(
                "quadrature needs rule_order >= 2 and max_subdivisions >= 1".into(),
            ));
        }
        Ok(())
    }
}

/// Nodes and weights of an n-point Gauss-Legendre rule on [-1, 1].
#[derive(Debug, Clone)]
pub struct GaussLegendre {
    nodes: Vec<f64>,
    weights: Vec<f64>,
}

impl GaussLegendre {
    pub fn new(order: usize) -> Self {
        let mut nodes = vec![0.0; order];
        let mut weights = vec![0.0; order];
        let n = order as f64;
        let half = order.div_ceil(2);
        for i in 0..half {
            // Tricomi initial guess, then Newton on P_n.
            let mut x = (PI * (i as f64 + 0.75) / (n + 0.5)).cos();
            let mut dp = 0.0;
            for _ in 0..100 {
                let (p, d) = legendre(order, x);
                dp = d;
                let dx = p / d;
                x -= dx;
                if dx.abs() < 1e-16 {
                    break;
                }
            }
            let (_, d) = legendre(order, x);
            if d != 0.0 {
                dp = d;
            }
            let w = 2.0 / ((1.0 - x * x) * dp * dp);
            nodes[i] = -x;
            nodes[order - 1 - i] = x;
            weights[i] = w;
            weights[order - 1 - i] = w;
        }
        if order % 2 == 1 {
            nodes[half - 1] = 0.0;
        }
        GaussLegendre { nodes, weights }
    }

    pub fn nodes(&self) -> &[f64] {
        &self.nodes
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    pub fn apply(&self, f: &impl Fn(f64) -> f64, a: f64, b: f64) -> f64 {
        let mid = 0.5 * (a + b);
        let half = 0.5 * (b - a);
        let sum: f64 = self
            .nodes
            .iter()
            .zip(&self.weights)
            .map(|(&x, &w)| w * f(mid + half * x))
            .sum();
        sum * half
    }
}

/// Value and derivative of the Legendre polynomial P_n at x.
fn legendre(n: usize, x: f64) -> (f64, f64) {
    let mut p0 = 1.0;
    let mut p1 = x;
    if n == 0 {
        return (1.0, 0.0);
    }
    for k in 2..=n {
        let k = k as f64;
        let p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
    }
    let d = n as f64 * (x * p1 - p0) / (x * x - 1.0);
    (p1, d)
}

#[derive(Debug, Clone, Copy)]
struct Panel {
    a: f64,
    b: f64,
    value: f64,
    error: f64,
}

fn evaluate_panel(rule: &GaussLegendre, f: &impl Fn(f64) -> f64, a: f64, b: f64) -> Panel {
    let whole = rule.apply(f, a, b);
    let mid = 0.5 * (a + b);
    let halves = rule.apply(f, a, mid) + rule.apply(f, mid, b);
    Panel {
        a,
        b,
        value: halves,
        error: (halves - whole).abs(),
    }
}

/// Integral of `f` over `[a, b]` to `config.abs_tol`.
pub fn integrate(f: impl Fn(f64) -> f64, a: f64, b: f64, config: &QuadratureConfig) -> Result<f64> {
    config.validate()?;
    if a == b {
        return Ok(0.0);
    }
    if b < a {
        return integrate(f, b, a, config).map(|v| -v);
    }
    let rule = GaussLegendre::new(config.rule_order);
    let mut panels = vec![evaluate_panel(&rule, &f, a, b)];
    loop {
        let total_error: f64 = panels.iter().map(|p| p.error).sum();
        if !total_error.is_finite() || panels.iter().any(|p| !p.value.is_finite()) {
            return Err(Error::QuadratureNonConvergence {
                subdivisions: panels.len(),
                estimate: panels.iter().map(|p| p.value).sum(),
                error_bound: total_error,
            });
        }
        if total_error <= config.abs_tol {
            break;
        }
        if panels.len() >= config.max_subdivisions {
            return Err(Error::QuadratureNonConvergence {
                subdivisions: panels.len(),
                estimate: panels.iter().map(|p| p.value).sum(),
                error_bound: total_error,
            });
        }
        // first index wins ties
        let worst = panels
            .iter()
            .enumerate()
            .fold(0, |best, (i, p)| if p.error > panels[best].error { i } else { best });
        let Panel { a, b, .. } = panels[worst];
        let mid = 0.5 * (a + b);
        if mid <= a || mid >= b {
            // interval cannot be split any further in floating point
            panels[worst].error = 0.0;
            continue;
        }
        let left = evaluate_panel(&rule, &f, a, mid);
        let right = evaluate_panel(&rule, &f, mid, b);
        panels.splice(worst..=worst, [left, right]);
    }
    Ok(panels.iter().map(|p| p.value).sum())
}

/// Integral over the spectral domain `[0, π]`.
pub fn integrate_spectral(f: impl Fn(f64) -> f64, config: &QuadratureConfig) -> Result<f64> {
    integrate(f, 0.0, PI, config)
}

/// `(1/π) ∫₀^π f(x) dx`.
pub fn spectral_mean(f: impl Fn(f64) -> f64, config: &QuadratureConfig) -> Result<f64> {
    integrate_spectral(f, config).map(|v| v / PI)
}
