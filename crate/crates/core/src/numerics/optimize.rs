//! Deterministic coarse-to-fine grid search.

use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq)]
pub struct GridOptimum {
    pub point: Vec<f64>,
    pub value: f64,
}

/// Maximizes `objective` over the box `bounds` on a regular grid with
/// `resolution` points per axis (endpoints included), then repeats
/// `refinements` times on a box four times smaller centred on the incumbent
/// and clipped to the original bounds.
///
/// `objective` returns `None` for infeasible points, which are skipped. A
/// feasible point producing a non-finite value is an error. Grid points are
/// visited in lexicographic order and only a strictly better value replaces
/// the incumbent, so ties go to the lexicographically smallest point.
pub fn grid_maximize<F>(
    objective: F,
    bounds: &[(f64, f64)],
    resolution: usize,
    refinements: usize,
) -> Result<GridOptimum>
where
    F: Fn(&[f64]) -> Option<f64>,
{
    if resolution < 2 {
        return Err(Error::Config(format!(
            "grid resolution must be at least 2, got {resolution}"
        )));
    }
    for &(lo, hi) in bounds {
        if !(lo.is_finite() && hi.is_finite() && lo <= hi) {
            return Err(Error::Config(format!("invalid search interval [{lo}, {hi}]")));
        }
    }

    let mut current: Vec<(f64, f64)> = bounds.to_vec();
    let mut best: Option<GridOptimum> = None;
    for pass in 0..=refinements {
        if pass > 0 {
            let incumbent = &best.as_ref().expect("set by first pass").point;
            current = current
                .iter()
                .zip(bounds)
                .zip(incumbent)
                .map(|((&(lo, hi), &(lo0, hi0)), &c)| {
                    let half = (hi - lo) / 8.0;
                    ((c - half).max(lo0), (c + half).min(hi0))
                })
                .collect();
        }
        if let Some(found) = scan(&objective, &current, resolution)? {
            let better = match &best {
                None => true,
                Some(b) => found.value > b.value,
            };
            if better {
                best = Some(found);
            }
        }
        if best.is_none() {
            return Err(Error::NoFeasiblePoint);
        }
    }
    best.ok_or(Error::NoFeasiblePoint)
}

fn scan<F>(objective: &F, bounds: &[(f64, f64)], resolution: usize) -> Result<Option<GridOptimum>>
where
    F: Fn(&[f64]) -> Option<f64>,
{
    let dims = bounds.len();
    let mut index = vec![0usize; dims];
    let mut point = vec![0.0; dims];
    let mut best: Option<GridOptimum> = None;
    loop {
        for (d, &(lo, hi)) in bounds.iter().enumerate() {
            let t = index[d] as f64 / (resolution - 1) as f64;
            point[d] = if index[d] == resolution - 1 { hi } else { lo + t * (hi - lo) };
        }
        if let Some(value) = objective(&point) {
            if !value.is_finite() {
                return Err(Error::NonFiniteObjective {
                    point: point.clone(),
                    value,
                });
            }
            if best.as_ref().is_none_or(|b| value > b.value) {
                best = Some(GridOptimum {
                    point: point.clone(),
                    value,
                });
            }
        }
        // odometer increment, last axis fastest
        let mut d = dims;
        loop {
            if d == 0 {
                return Ok(best);
            }
            d -= 1;
            index[d] += 1;
            if index[d] < resolution {
                break;
            }
            index[d] = 0;
        }
    }
}
