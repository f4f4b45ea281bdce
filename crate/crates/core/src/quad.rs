//! Adaptive Simpson quadrature.

use alloc::vec::Vec;


use crate::{Error, Result};

pub const MAX_DEPTH: u32 = 48;

struct Panel {
    a: f64,
    b: f64,
    fa: f64,
    fm: f64,
    fb: f64,
    whole: f64,
}

fn simpson(a: f64, b: f64, fa: f64, fm: f64, fb: f64) -> f64 {
    (b - a) / 6.0 * (fa + 4.0 * fm + fb)
}

/// Integrates `f` over `[a, b]` to relative tolerance `rel_tol`.
///
/// The interval is first cut into `panels` equal pieces; the coarse Simpson
/// sum over those sets the absolute error budget, which is then split over
/// the panels in proportion to their length.
pub fn integrate<F: Fn(f64) -> f64>(f: F, a: f64, b: f64, rel_tol: f64, panels: usize) -> Result<f64> {
    if !(rel_tol > 0.0) {
        return Err(Error::InvalidArgument("quadrature tolerance must be positive"));
    }
    if !(b > a) {
        return Ok(0.0);
    }
    let panels = panels.max(1);
    let h = (b - a) / panels as f64;
    let mut pieces = Vec::with_capacity(panels);
    let mut scale = 0.0;
    let mut fa = f(a);
    for k in 0..panels {
        let pa = a + h * k as f64;
        let pb = if k + 1 == panels { b } else { a + h * (k + 1) as f64 };
        let fm = f(0.5 * (pa + pb));
        let fb = f(pb);
        let whole = simpson(pa, pb, fa, fm, fb);
        scale += whole.abs();
        pieces.push(Panel { a: pa, b: pb, fa, fm, fb, whole });
        fa = fb;
    }
    let budget = rel_tol * scale;
    let mut total = 0.0;
    let mut ok = true;
    for p in pieces {
        let tol = budget * (p.b - p.a) / (b - a);
        let (v, good) = refine(&f, &p, tol, MAX_DEPTH);
        total += v;
        ok &= good;
    }
    if ok && total.is_finite() {
        Ok(total)
    } else {
        Err(Error::ToleranceNotMet)
    }
}

fn refine<F: Fn(f64) -> f64>(f: &F, p: &Panel, tol: f64, depth: u32) -> (f64, bool) {
    let m = 0.5 * (p.a + p.b);
    let flm = f(0.5 * (p.a + m));
    let frm = f(0.5 * (m + p.b));
    let left = simpson(p.a, m, p.fa, flm, p.fm);
    let right = simpson(m, p.b, p.fm, frm, p.fb);
    let delta = left + right - p.whole;
    let estimate = left + right + delta / 15.0;
    if delta.abs() <= 15.0 * tol {
        return (estimate, true);
    }
    // Below this width the midpoint no longer separates from the ends.
    if depth == 0 || (p.b - p.a) <= 4.0 * f64::EPSILON * m.abs().max(f64::MIN_POSITIVE) {
        return (estimate, false);
    }
    let lp = Panel { a: p.a, b: m, fa: p.fa, fm: flm, fb: p.fm, whole: left };
    let rp = Panel { a: m, b: p.b, fa: p.fm, fm: frm, fb: p.fb, whole: right };
    let (lv, lok) = refine(f, &lp, 0.5 * tol, depth - 1);
    let (rv, rok) = refine(f, &rp, 0.5 * tol, depth - 1);
    (lv + rv, lok && rok)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn polynomial_exact() {
        let v = integrate(|x| x * x * x - 2.0 * x, 0.0, 2.0, 1e-12, 1).unwrap();
        assert!((v - 0.0).abs() < 1e-14);
    }

    #[test]
    fn gaussian_bump() {
        let v = integrate(|x: f64| (-x * x).exp(), -8.0, 8.0, 1e-12, 8).unwrap();
        assert!((v - core::f64::consts::PI.sqrt()).abs() < 1e-11);
    }

    #[test]
    fn zero_integrand() {
        assert_eq!(integrate(|_| 0.0, 0.0, 3.0, 1e-9, 4).unwrap(), 0.0);
    }

    #[test]
    fn empty_interval() {
        assert_eq!(integrate(|x| x, 1.0, 1.0, 1e-9, 4).unwrap(), 0.0);
    }
}
