//! Observability Gramians `G(τ)` in closed form and the constants
//! `m(τ)² = λ_min(G(τ))`, `M(τ)² = λ_max(G(τ))`.
//!
//! On a finite section the computed `m(τ)²` is an upper bound for the value of
//! the full family and `M(τ)²` a lower bound, since both are extrema of a
//! Rayleigh quotient restricted to a subspace.

use alloc::vec::Vec;
use core::fmt;


use crate::matrix::CMatrix;
use crate::special::expm1;
use crate::spectral::{output_energy_density, StateVector, ValidatedSystem};
use crate::{quad, Error, Result, C64};

pub use crate::eigen::hermitian_extremal;

/// Length of the observation window `[0, τ]`, possibly infinite.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Horizon {
    Finite(f64),
    Infinite,
}

impl Horizon {
    pub fn finite(self) -> Option<f64> {
        match self {
            Horizon::Finite(t) => Some(t),
            Horizon::Infinite => None,
        }
    }
}

impl fmt::Display for Horizon {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Horizon::Finite(t) => write!(f, "{t}"),
            Horizon::Infinite => f.write_str("inf"),
        }
    }
}

/// `∫_0^τ e^{-zt} dt` split as `num / z` (or `τ` when `z = 0`) so that callers
/// can multiply by a weight before dividing.
enum Kernel {
    Ratio { num: C64, z: C64 },
    Linear(f64),
}

fn kernel_parts(z: C64, horizon: Horizon) -> Result<Kernel> {
    match horizon {
        Horizon::Infinite => {
            if z.re > 0.0 {
                Ok(Kernel::Ratio { num: C64::new(1.0, 0.0), z })
            } else {
                Err(Error::DivergentKernel)
            }
        }
        Horizon::Finite(tau) => {
            if z.re == 0.0 && z.im == 0.0 {
                Ok(Kernel::Linear(tau))
            } else {
                Ok(Kernel::Ratio { num: -expm1(-z * tau), z })
            }
        }
    }
}

fn weighted_kernel(weight: C64, z: C64, horizon: Horizon) -> Result<C64> {
    Ok(match kernel_parts(z, horizon)? {
        Kernel::Ratio { num, z } => weight * num / z,
        Kernel::Linear(tau) => weight * tau,
    })
}

/// `E(z, τ) = (1 - e^{-zτ})/z`, `τ` for `z = 0`, and `1/z` on `[0, ∞)`.
pub fn kernel_e(z: C64, horizon: Horizon) -> Result<C64> {
    weighted_kernel(C64::new(1.0, 0.0), z, horizon)
}

/// `G[m][n] = ⟨CUₙ, CUₘ⟩ · E(λₙ + conj λₘ, τ)`; `conj(α)ᵀ G α` is the output
/// energy `∫_0^τ ‖CT(t)x‖² dt`.
#[derive(Debug, Clone, PartialEq)]
pub struct GramMatrix {
    pub horizon: Horizon,
    pub matrix: CMatrix,
}

pub fn gram(sys: &ValidatedSystem, horizon: Horizon) -> Result<GramMatrix> {
    if let Horizon::Finite(t) = horizon {
        if !(t > 0.0) || !t.is_finite() {
            return Err(Error::InvalidArgument("Gramian window must be positive"));
        }
    }
    let lambda = sys.eigenvalues();
    let cg = sys.cgram();
    let n = sys.modes();
    let mut failed = None;
    let matrix = CMatrix::hermitian_from_upper(n, |m, k| {
        let z = lambda[k] + lambda[m].conj();
        match weighted_kernel(cg[(m, k)], z, horizon) {
            Ok(v) => v,
            Err(e) => {
                failed.get_or_insert(e);
                C64::new(0.0, 0.0)
            }
        }
    });
    match failed {
        Some(Error::DivergentKernel) => Err(Error::NotInfiniteTimeAdmissible),
        Some(e) => Err(e),
        None => Ok(GramMatrix { horizon, matrix }),
    }
}

/// `m(τ)²` and `M(τ)²` on the truncated span.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ObsWindow {
    pub horizon: Horizon,
    /// `λ_min(G)`, an upper bound for the untruncated `m(τ)²`.
    pub m_sq: f64,
    /// `λ_max(G)`, a lower bound for the untruncated `M(τ)²`.
    pub big_m_sq: f64,
}

pub fn obs_window(sys: &ValidatedSystem, horizon: Horizon) -> Result<ObsWindow> {
    let g = gram(sys, horizon)?;
    let (lo, hi) = hermitian_extremal(&g.matrix)?;
    // Rounding can push a singular Gramian's bottom eigenvalue just below zero.
    Ok(ObsWindow { horizon, m_sq: lo.max(0.0), big_m_sq: hi.max(0.0) })
}

/// One window per grid point; the grid must be strictly increasing and positive.
pub fn window_scan(sys: &ValidatedSystem, taus: &[f64]) -> Result<Vec<ObsWindow>> {
    crate::grid::check_increasing_positive(taus)?;
    taus.iter().map(|&t| obs_window(sys, Horizon::Finite(t))).collect()
}

/// `∫_0^τ ‖CT(t)x‖² dt` by adaptive quadrature of the output energy density.
///
/// Independent of the closed-form Gramian; exists to cross-check it.
pub fn trajectory_energy_quadrature(
    sys: &ValidatedSystem,
    x: &StateVector,
    tau: f64,
    rel_tol: f64,
) -> Result<f64> {
    if !(rel_tol > 0.0 && rel_tol <= 1e-4) {
        return Err(Error::InvalidArgument("quadrature tolerance must lie in (0, 1e-4]"));
    }
    if !(tau > 0.0) || !tau.is_finite() {
        return Err(Error::InvalidArgument("quadrature window must be positive and finite"));
    }
    if x.coeffs.len() != sys.modes() {
        return Err(Error::DimensionMismatch { expected: sys.modes(), found: x.coeffs.len() });
    }
    let (lo, hi) = sys
        .eigenvalues()
        .iter()
        .fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), l| (lo.min(l.im), hi.max(l.im)));
    let cycles = (hi - lo) * tau / (2.0 * core::f64::consts::PI);
    let panels = (16.0 + 4.0 * cycles).min(8192.0) as usize;
    let f = |t: f64| output_energy_density(sys, t, x).unwrap_or(f64::NAN);
    quad::integrate(f, 0.0, tau, rel_tol, panels).map(|v| v.max(0.0))
}
