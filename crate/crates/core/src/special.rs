//! Complex special functions needed by the kernels and the angular integral.


use crate::C64;

const EULER_GAMMA: f64 = 0.577_215_664_901_532_9;

/// `e^w - 1` without cancellation for small `|w|`.
pub fn expm1(w: C64) -> C64 {
    if w.norm() < 0.5 {
        // Taylor series; 24 terms reach full precision for |w| < 0.5.
        let mut term = w;
        let mut sum = w;
        for k in 2..=24 {
            term = term * w / k as f64;
            sum += term;
        }
        sum
    } else {
        w.exp() - 1.0
    }
}

/// Exponential integral `E₁(w) = ∫_1^∞ e^{-wt}/t dt` for `Re w ≥ 0`, `w ≠ 0`.
///
/// Power series for `|w| ≤ 2`, modified Lentz continued fraction otherwise.
pub fn exp_integral_e1(w: C64) -> C64 {
    if w.norm() <= 2.0 {
        let mut term = C64::new(1.0, 0.0);
        let mut sum = C64::new(0.0, 0.0);
        for k in 1..200 {
            term = -term * w / k as f64;
            let add = term / k as f64;
            sum += add;
            if add.norm() <= f64::EPSILON * 1e-2 * sum.norm().max(1e-300) {
                break;
            }
        }
        -EULER_GAMMA - w.ln() - sum
    } else {
        let tiny = 1e-300;
        let mut b = w + 1.0;
        let mut c = C64::new(1.0 / tiny, 0.0);
        let mut d = b.inv();
        let mut h = d;
        for i in 1..10_000 {
            let an = -((i * i) as f64);
            b += 2.0;
            d = d * an + b;
            if d.norm() < tiny {
                d = C64::new(tiny, 0.0);
            }
            d = d.inv();
            c = b + c.inv() * an;
            if c.norm() < tiny {
                c = C64::new(tiny, 0.0);
            }
            let del = c * d;
            h *= del;
            if (del - 1.0).norm() <= f64::EPSILON {
                break;
            }
        }
        h * (-w).exp()
    }
}
