//! Exact-observability certificates from the square-function estimate and
//! the coercivity condition `‖C A^{-(1-β)} x‖ ≥ δ ‖x‖`.
//!
//! Chaining the two estimates gives
//! `‖x‖² ≤ ln 2 · K² / (2βδ²) · ∫_0^∞ ‖CT(t)x‖² dt`, hence the certified
//! constant `m² = 2βδ² / (K² ln 2)`.

use alloc::vec::Vec;
use core::f64::consts::LN_2;

// Redundant once std is linked (test builds), needed under no_std.
#[allow(unused_imports)]
use num_traits::Float;

use crate::eigen::hermitian_extremal;
use crate::gramian::{gram, obs_window, Horizon};
use crate::matrix::CMatrix;
use crate::spectral::ValidatedSystem;
use crate::squarefn::{squarefn_report, SquareFnVerdict};
use crate::{grid, Error, Result, C64};

/// `λ_min(D) ≤ DELTA_ZERO_TOL · trace(D)` is treated as `δ = 0`.
pub const DELTA_ZERO_TOL: f64 = 1e-12;
/// Finite-time stopping rule: `M · M″ · e^{-ωτ} ≤ SAFETY_FACTOR`.
pub const SAFETY_FACTOR: f64 = 0.5;
/// Slack for the contraction renorming check, relative to `trace(G(∞))`.
pub const RENORM_TOL: f64 = 1e-10;
/// `λ_min(G(∞)) ≤ SINGULAR_TOL · trace(G(∞))` counts as singular.
pub const SINGULAR_TOL: f64 = 1e-12;

/// Which algebraic form of the certified constant is reported.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ConstantConvention {
    /// `m² = 2βδ²/(K² ln 2)`, read off the final line of the estimate chain.
    ProofChain,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum CertificateScope {
    InfiniteTime,
    FiniteTime {
        omega: f64,
        tau_star: f64,
        /// Lower bound for `m(τ*)²`.
        m_finite_sq: f64,
        /// `ln 2 · K_ω² / (2β δ_ω²)` for the shifted generator.
        big_m: f64,
        /// `M′ · sup‖T(t)‖²`, with `M′ = λ_max(G_ω(∞))`.
        m_double_prime: f64,
    },
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ObservabilityCertificate {
    pub beta: f64,
    pub delta: f64,
    pub k_sq: f64,
    /// `2βδ² / (K² ln 2)`
    pub m_cert_sq: f64,
    pub scope: CertificateScope,
    pub constant_convention: ConstantConvention,
}

/// `D[m][n] = ⟨CUₙ, CUₘ⟩ · conj(λₘ^{-(1-β)}) · λₙ^{-(1-β)}` with principal powers;
/// its quadratic form is `‖C A^{-(1-β)} x‖²`.
pub fn coercivity_matrix(sys: &ValidatedSystem, beta: f64) -> Result<CMatrix> {
    if !(beta > 0.0 && beta < 1.0) {
        return Err(Error::InvalidArgument("beta must lie in (0, 1)"));
    }
    sys.ensure_injective()?;
    let d: Vec<C64> = sys.eigenvalues().iter().map(|l| l.powf(-(1.0 - beta))).collect();
    Ok(sys.cgram().congruence_diag(&d))
}

/// Largest `δ` with `‖C A^{-(1-β)} x‖ ≥ δ ‖x‖` on the truncated span.
pub fn delta_lower(sys: &ValidatedSystem, beta: f64) -> Result<f64> {
    let d = coercivity_matrix(sys, beta)?;
    let (lo, _) = hermitian_extremal(&d)?;
    if lo <= DELTA_ZERO_TOL * d.trace() {
        return Ok(0.0);
    }
    Ok(lo.sqrt())
}

/// Certificate for `m² ‖x‖² ≤ ∫_0^∞ ‖CT(t)x‖² dt`.
pub fn certify_infinite(sys: &ValidatedSystem, beta: f64, quad_tol: f64) -> Result<ObservabilityCertificate> {
    let report = squarefn_report(sys, beta, quad_tol)?;
    let k_sq = match report.verdict {
        SquareFnVerdict::Holds { k_sq } => k_sq,
        _ => return Err(Error::SquareFunctionFails),
    };
    let delta = delta_lower(sys, beta)?;
    if delta == 0.0 {
        return Err(Error::DeltaZero);
    }
    Ok(ObservabilityCertificate {
        beta,
        delta,
        k_sq,
        m_cert_sq: 2.0 * beta * delta * delta / (k_sq * LN_2),
        scope: CertificateScope::InfiniteTime,
        constant_convention: ConstantConvention::ProofChain,
    })
}

/// Finite-time certificate via the shifted generator `ω + A`, searching the
/// default grid of 200 log-spaced times in `(1e-2, 1e2]`.
pub fn certify_finite(sys: &ValidatedSystem, beta: f64, omega: f64, quad_tol: f64) -> Result<ObservabilityCertificate> {
    certify_finite_on_grid(sys, beta, omega, &grid::default_tau_star_grid(), quad_tol)
}

pub fn certify_finite_on_grid(
    sys: &ValidatedSystem,
    beta: f64,
    omega: f64,
    taus: &[f64],
    quad_tol: f64,
) -> Result<ObservabilityCertificate> {
    if !(omega > 0.0) || !omega.is_finite() {
        return Err(Error::Precondition("finite-time certificate needs omega > 0"));
    }
    let shifted = sys.shifted(omega)?;
    let inner = certify_infinite(&shifted, beta, quad_tol)?;
    let big_m = 1.0 / inner.m_cert_sq;
    // Contractive diagonal semigroup: sup‖T(t)‖ = 1, so M″ = M′.
    let m_prime = obs_window(&shifted, Horizon::Infinite)?.big_m_sq;
    let m_double_prime = m_prime;
    let tau_star = taus
        .iter()
        .copied()
        .find(|&t| big_m * m_double_prime * (-omega * t).exp() <= SAFETY_FACTOR)
        .ok_or(Error::NoFiniteTau)?;
    let m_finite_sq = (1.0 - big_m * m_double_prime * (-omega * tau_star).exp()) / big_m;
    Ok(ObservabilityCertificate {
        scope: CertificateScope::FiniteTime { omega, tau_star, m_finite_sq, big_m, m_double_prime },
        ..inner
    })
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RenormCheck {
    pub min_eig: f64,
    pub ok: bool,
}

/// The form `⟨x, y⟩~ = ∫_0^∞ ⟨CT(t)x, CT(t)y⟩ dt` makes `T` contractive:
/// `G(∞) - S(t)* G(∞) S(t)` must be positive semidefinite.
pub fn renorm_contraction_check(sys: &ValidatedSystem, t: f64) -> Result<RenormCheck> {
    if !(t >= 0.0) || !t.is_finite() {
        return Err(Error::NegativeTime);
    }
    let g_inf = gram(sys, Horizon::Infinite)?.matrix;
    let trace = g_inf.trace();
    let (lo, _) = hermitian_extremal(&g_inf)?;
    if lo <= SINGULAR_TOL * trace {
        return Err(Error::NotExactlyObservable);
    }
    let s = sys.semigroup_diagonal(t);
    let r = g_inf.sub(&g_inf.congruence_diag(&s));
    let (min_eig, _) = hermitian_extremal(&r)?;
    Ok(RenormCheck { min_eig, ok: min_eig >= -RENORM_TOL * trace })
}
