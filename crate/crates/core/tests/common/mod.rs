#![allow(dead_code)]

use obslab_core::{validate_system, CMatrix, ObservedMode, SpectralSystem, StateVector, ValidatedSystem, C64};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn c(re: f64, im: f64) -> C64 {
    C64::new(re, im)
}

/// Random system with output vectors; `re_lo ≤ Re λ ≤ re_hi`, `|Im λ| ≤ im_max`.
pub fn random_system(rng: &mut ChaCha8Rng, n: usize, p: usize, re_lo: f64, re_hi: f64, im_max: f64) -> ValidatedSystem {
    let modes = (0..n)
        .map(|_| ObservedMode {
            lambda: c(rng.gen_range(re_lo..=re_hi), rng.gen_range(-im_max..=im_max)),
            obs: Some((0..p).map(|_| c(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0))).collect()),
        })
        .collect();
    validate_system(&SpectralSystem::from_modes("random", modes).unwrap()).unwrap()
}

pub fn random_state(rng: &mut ChaCha8Rng, n: usize) -> StateVector {
    StateVector::new((0..n).map(|_| c(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0))).collect())
}

pub fn validated(sys: obslab_core::Result<SpectralSystem>) -> ValidatedSystem {
    validate_system(&sys.unwrap()).unwrap()
}

/// Closed form of `∫_0^∞ |e^{-2uz} - e^{-uz}|² du/u²` for `z = e^{iθ}`:
/// expanding the square gives exponents `4c, 2c, 3c ± is` with weights
/// `1, 1, -1, -1`, whose weights and first moments both sum to zero, so the
/// second-order Frullani identity `Σ wₖ aₖ ln aₖ` applies.
pub fn angular_closed_form(theta: f64) -> f64 {
    let (s, c) = theta.sin_cos();
    let xlogx = |x: f64| if x == 0.0 { 0.0 } else { x * x.ln() };
    let a = C64::new(3.0 * c, s);
    xlogx(4.0 * c) + xlogx(2.0 * c) - 2.0 * (a * a.ln()).re
}

/// Eigenvalues of a 2×2 Hermitian matrix by the quadratic formula.
pub fn eig2(m: &CMatrix) -> (f64, f64) {
    let a = m[(0, 0)].re;
    let d = m[(1, 1)].re;
    let b = m[(0, 1)].norm();
    let mean = 0.5 * (a + d);
    let r = (0.25 * (a - d) * (a - d) + b * b).sqrt();
    (mean - r, mean + r)
}

pub fn rel_close(a: f64, b: f64, tol: f64) -> bool {
    (a - b).abs() <= tol * a.abs().max(b.abs()).max(f64::MIN_POSITIVE)
}

/// Entrywise difference relative to the larger matrix's max-abs scale.
pub fn matrix_rel_diff(a: &CMatrix, b: &CMatrix) -> f64 {
    let scale = a.max_abs().max(b.max_abs()).max(f64::MIN_POSITIVE);
    a.as_slice().iter().zip(b.as_slice()).map(|(x, y)| (x - y).norm()).fold(0.0, f64::max) / scale
}

/// Minimal eigenvalue of `a - b`.
pub fn min_eig_of_difference(a: &CMatrix, b: &CMatrix) -> f64 {
    obslab_core::eigen::hermitian_extremal(&a.sub(b)).unwrap().0
}

/// Uniform composite Simpson on `[a, b]` with at least `min_steps` panels.
pub fn simpson<F: Fn(f64) -> f64>(f: F, a: f64, b: f64, min_steps: usize) -> f64 {
    let n = min_steps + min_steps % 2;
    let h = (b - a) / n as f64;
    let mut acc = f(a) + f(b);
    for i in 1..n {
        let w = if i % 2 == 1 { 4.0 } else { 2.0 };
        acc += w * f(a + i as f64 * h);
    }
    acc * h / 3.0
}

/// `∫_0^∞ ‖(tA)^{-β} (T(2t^{2β}) - T(t^{2β})) x‖² dt/t` for a diagonal
/// generator with orthonormal eigenvectors, integrated straight in `t` on a
/// uniform grid in `x = ln t`. With a purely imaginary mode the grid stops at
/// `s = t^{2β} = S` and `∫_S^∞ (2 - 2cos(rs)) ds/s²` is added from its
/// asymptotic expansion.
pub fn raw_functional(lambdas: &[C64], alphas: &[C64], beta: f64) -> f64 {
    let r_max = lambdas.iter().map(|l| l.norm()).fold(0.0, f64::max);
    let r_min = lambdas.iter().map(|l| l.norm()).fold(f64::INFINITY, f64::min);
    let re_min = lambdas.iter().map(|l| l.re).fold(f64::INFINITY, f64::min);
    let big_s = if re_min > 0.0 { 20.0 / re_min } else { 4000.0 / r_min };
    let x_hi = big_s.ln() / (2.0 * beta);
    let x_lo = (1e-14 / r_max).ln() / (2.0 * beta);
    let integrand = |x: f64| {
        let t = x.exp();
        let s = t.powf(2.0 * beta);
        lambdas
            .iter()
            .zip(alphas)
            .map(|(l, a)| {
                let d = (-l * (2.0 * s)).exp() - (-l * s).exp();
                a.norm_sqr() * (t * l.norm()).powf(-2.0 * beta) * d.norm_sqr()
            })
            .sum::<f64>()
    };
    let phase_rate = 2.0 * beta * big_s * r_max.max(1.0);
    let h = (0.02 / phase_rate).min(1e-3);
    let steps = ((x_hi - x_lo) / h).ceil() as usize;
    let head = simpson(integrand, x_lo, x_hi, steps);
    let tail: f64 = lambdas
        .iter()
        .zip(alphas)
        .filter(|(l, _)| l.re == 0.0)
        .map(|(l, a)| {
            let r = l.norm();
            let w = r * big_s;
            // 2/S - 2r ∫_w^∞ cos(v)/v² dv, expanded to O(w⁻⁴)
            let tail = 2.0 / big_s + 2.0 * r * (w.sin() / (w * w) - 2.0 * w.cos() / (w * w * w));
            a.norm_sqr() * r.powf(-2.0 * beta) / (2.0 * beta) * tail
        })
        .sum();
    head + tail
}

pub fn raw_squarefn(lambda: C64, beta: f64) -> f64 {
    raw_functional(&[lambda], &[C64::new(1.0, 0.0)], beta)
}
