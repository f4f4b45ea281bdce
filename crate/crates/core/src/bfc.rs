//! Backward-forward conditioning: `M(η) < m(τ)` for some `η < τ`.
//!
//! A witness pair forces `‖T(η)x‖² ≥ (m(τ)² - M(η)²) / M(τ-η)² · ‖x‖²`, i.e. a
//! positive lower norm `ε(η)`.

use alloc::collections::BTreeMap;
use alloc::vec;
use alloc::vec::Vec;

// Redundant once std is linked (test builds), needed under no_std.
#[allow(unused_imports)]
use num_traits::Float;

use crate::gramian::{obs_window, Horizon, ObsWindow};
use crate::spectral::{epsilon_lower, validate_system, SpectralSystem, ValidatedSystem};
use crate::{Error, Result};

/// Slack allowed in `bound ≤ ε(η)²`.
pub const BACKWARD_BOUND_TOL: f64 = 1e-10;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BfcCertificate {
    pub eta: f64,
    pub tau: f64,
    /// `M(η)²`
    pub big_m_sq_eta: f64,
    /// `m(τ)²`
    pub m_sq_tau: f64,
    /// `m(τ)² - M(η)² > 0`
    pub margin: f64,
    /// `margin / M(τ-η)²`, a lower bound for `ε(η)²`.
    pub backward_bound: f64,
    /// `‖Ψ_τ^{-1}‖ ‖Ψ_η‖ = sqrt(M(η)² / m(τ)²) < 1`.
    pub conditioning_product: f64,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum BfcOutcome {
    Found(BfcCertificate),
    /// No pair had a positive margin; carries the largest margin seen
    /// (`-inf` when no pair with `η < τ` exists).
    NotFound { best_margin: f64 },
}

impl BfcOutcome {
    pub fn certificate(&self) -> Option<&BfcCertificate> {
        match self {
            BfcOutcome::Found(c) => Some(c),
            BfcOutcome::NotFound { .. } => None,
        }
    }
}

fn windows_for(sys: &ValidatedSystem, points: impl Iterator<Item = f64>) -> Result<BTreeMap<u64, ObsWindow>> {
    let mut cache = BTreeMap::new();
    for t in points {
        if !(t > 0.0) || !t.is_finite() {
            return Err(Error::InvalidGrid("grid points must be positive and finite"));
        }
        if let alloc::collections::btree_map::Entry::Vacant(e) = cache.entry(t.to_bits()) {
            e.insert(obs_window(sys, Horizon::Finite(t))?);
        }
    }
    Ok(cache)
}

/// Grid search for the pair maximizing `m(τ)² - M(η)²` over `η < τ`.
///
/// Ties are broken towards the smaller `η`, then the smaller `τ`.
pub fn bfc_scan(sys: &ValidatedSystem, eta_grid: &[f64], tau_grid: &[f64]) -> Result<BfcOutcome> {
    let cache = windows_for(sys, eta_grid.iter().chain(tau_grid).copied())?;
    let mut best: Option<(f64, f64, f64)> = None;
    for &eta in eta_grid {
        let upper = cache[&eta.to_bits()].big_m_sq;
        for &tau in tau_grid {
            if tau <= eta {
                continue;
            }
            let margin = cache[&tau.to_bits()].m_sq - upper;
            let better = match best {
                None => true,
                Some((bm, be, bt)) => {
                    margin > bm || (margin == bm && (eta < be || (eta == be && tau < bt)))
                }
            };
            if better {
                best = Some((margin, eta, tau));
            }
        }
    }
    match best {
        Some((margin, eta, tau)) if margin > 0.0 => {
            let big_m_sq_eta = cache[&eta.to_bits()].big_m_sq;
            let m_sq_tau = cache[&tau.to_bits()].m_sq;
            let gap = obs_window(sys, Horizon::Finite(tau - eta))?.big_m_sq;
            Ok(BfcOutcome::Found(BfcCertificate {
                eta,
                tau,
                big_m_sq_eta,
                m_sq_tau,
                margin,
                backward_bound: margin / gap,
                conditioning_product: (big_m_sq_eta / m_sq_tau).sqrt(),
            }))
        }
        Some((margin, ..)) => Ok(BfcOutcome::NotFound { best_margin: margin }),
        None => Ok(BfcOutcome::NotFound { best_margin: f64::NEG_INFINITY }),
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BackwardBoundCheck {
    pub bound: f64,
    /// `ε(η)²`
    pub eps_sq: f64,
    pub ok: bool,
}

/// Recomputes `(m(τ)² - M(η)²) / M(τ-η)²` and compares it with `ε(η)²`.
pub fn backward_bound_check(sys: &ValidatedSystem, cert: &BfcCertificate) -> Result<BackwardBoundCheck> {
    if !(cert.eta < cert.tau) || !(cert.margin > 0.0) {
        return Err(Error::InvalidArgument("certificate needs eta < tau and a positive margin"));
    }
    let gap = obs_window(sys, Horizon::Finite(cert.tau - cert.eta))?.big_m_sq;
    let bound = (cert.m_sq_tau - cert.big_m_sq_eta) / gap;
    let eps = epsilon_lower(sys, cert.eta)?;
    let eps_sq = eps * eps;
    Ok(BackwardBoundCheck { bound, eps_sq, ok: bound <= eps_sq + BACKWARD_BOUND_TOL })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ZeroClassVerdict {
    /// `M(τ)²` stays bounded away from zero as the truncation grows.
    NotZeroClassEvidence,
    /// `M(τ)²` shrinks with `τ` uniformly over the truncations.
    ZeroClassEvidence,
    Inconclusive,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ZeroClassProbe {
    pub tau: f64,
    /// `(N, M(τ; N)²)` in the order of the requested truncations.
    pub rows: Vec<(usize, f64)>,
    /// `(t, M(t; N_max)²)` for `t = τ` and `t = τ/8`.
    pub sweep: Vec<(f64, f64)>,
    pub verdict: ZeroClassVerdict,
}

/// Decay of `M²` over an 8-fold shrink of `τ` that counts as
/// vanishing; linear decay gives `1/8`.
pub const ZERO_CLASS_DECAY_RATIO: f64 = 0.25;
const SWEEP_SHRINK: f64 = 0.125;

/// Tabulates `M(τ; N)²` for a family built at increasing truncations.
///
/// `builder(N)` must return the first `N` modes of one fixed family. Sections
/// are then nested, and by eigenvalue interlacing `M(t; N)²` is largest at the
/// largest truncation, which is the only one swept in `t`. Finite sections
/// cannot decide the limit `τ → 0⁺` of the full family, so the verdict is
/// evidence only.
pub fn zero_class_probe<F>(builder: F, tau_small: f64, n_list: &[usize]) -> Result<ZeroClassProbe>
where
    F: Fn(usize) -> Result<SpectralSystem>,
{
    if !(tau_small > 0.0) || !tau_small.is_finite() {
        return Err(Error::InvalidArgument("probe time must be positive"));
    }
    if n_list.is_empty() {
        return Err(Error::InvalidArgument("probe needs at least one truncation"));
    }
    let systems = n_list
        .iter()
        .map(|&n| validate_system(&builder(n)?))
        .collect::<Result<Vec<_>>>()?;

    let mut rows = Vec::with_capacity(systems.len());
    for (sys, &n) in systems.iter().zip(n_list) {
        rows.push((n, obs_window(sys, Horizon::Finite(tau_small))?.big_m_sq));
    }
    let largest = (0..rows.len()).max_by_key(|&i| (rows[i].0, i)).unwrap_or(0);
    let t = tau_small * SWEEP_SHRINK;
    let sweep = vec![
        (tau_small, rows[largest].1),
        (t, obs_window(&systems[largest], Horizon::Finite(t))?.big_m_sq),
    ];

    let first = sweep[0].1;
    let last = sweep[sweep.len() - 1].1;
    let nondecreasing = rows.windows(2).all(|w| w[1].1 >= w[0].1 * (1.0 - 1e-12));
    let floor = rows.iter().map(|r| r.1).fold(f64::INFINITY, f64::min);
    let verdict = if first > 0.0 && last <= ZERO_CLASS_DECAY_RATIO * first {
        ZeroClassVerdict::ZeroClassEvidence
    } else if nondecreasing && floor > 0.0 {
        ZeroClassVerdict::NotZeroClassEvidence
    } else {
        ZeroClassVerdict::Inconclusive
    };
    Ok(ZeroClassProbe { tau: tau_small, rows, sweep, verdict })
}
