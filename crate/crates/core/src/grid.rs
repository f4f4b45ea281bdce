//! Time grids.

use alloc::vec::Vec;

// Redundant once std is linked (test builds), needed under no_std.
#[allow(unused_imports)]
use num_traits::Float;

use crate::{Error, Result};

/// `count` points log-spaced from `lo` to `hi`, both ends included.
pub fn log_grid(lo: f64, hi: f64, count: usize) -> Result<Vec<f64>> {
    if !(lo > 0.0 && hi > lo && lo.is_finite() && hi.is_finite()) {
        return Err(Error::InvalidGrid("log grid needs 0 < lo < hi"));
    }
    match count {
        0 => Ok(Vec::new()),
        1 => Ok(alloc::vec![lo]),
        _ => {
            let (a, b) = (lo.ln(), hi.ln());
            let step = (b - a) / (count - 1) as f64;
            Ok((0..count)
                .map(|k| match k {
                    0 => lo,
                    k if k + 1 == count => hi,
                    k => (a + step * k as f64).exp(),
                })
                .collect())
        }
    }
}

/// Inclusive linear grid `start, start + step, …` not exceeding `stop`
/// (up to a relative slack of `1e-9` steps).
pub fn linear_grid(start: f64, stop: f64, step: f64) -> Result<Vec<f64>> {
    if !(step > 0.0 && start.is_finite() && stop.is_finite() && step.is_finite()) {
        return Err(Error::InvalidGrid("linear grid needs a positive step"));
    }
    if stop < start {
        return Err(Error::InvalidGrid("linear grid stop precedes start"));
    }
    let count = ((stop - start) / step + 1e-9).floor() as usize + 1;
    Ok((0..count).map(|k| start + step * k as f64).collect())
}

/// Default `(η, τ)` axis for the conditioning scan: 50 points, `1e-3 … 1e2`.
pub fn default_bfc_grid() -> Vec<f64> {
    log_grid(1e-3, 1e2, 50).expect("static grid")
}

/// Search grid for the finite-time stopping rule: 200 log-spaced points in `(1e-2, 1e2]`.
pub fn default_tau_star_grid() -> Vec<f64> {
    let step = 4.0 / 200.0;
    (1..=200)
        .map(|k| if k == 200 { 1e2 } else { 10f64.powf(-2.0 + step * k as f64) })
        .collect()
}

pub(crate) fn check_increasing_positive(grid: &[f64]) -> Result<()> {
    if grid.iter().any(|&t| !(t > 0.0) || !t.is_finite()) {
        return Err(Error::InvalidGrid("grid points must be positive and finite"));
    }
    if grid.windows(2).any(|w| w[1] <= w[0]) {
        return Err(Error::InvalidGrid("grid must be strictly increasing"));
    }
    Ok(())
}
