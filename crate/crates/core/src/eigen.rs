//! Cyclic Jacobi eigenvalue iteration for dense Hermitian matrices.
//!
//! Each sweep visits every index pair once in round-robin (tournament) order:
//! a round holds `⌊n/2⌋` disjoint pairs, whose rotations commute and are
//! applied together as one row pass and one column pass.

use alloc::vec::Vec;

// Redundant once std is linked (test builds), needed under no_std.
#[allow(unused_imports)]
use num_traits::Float;

use crate::matrix::CMatrix;
use crate::{Error, Result, C64};

pub const MAX_SWEEPS: usize = 100;
pub const HERMITIAN_TOL: f64 = 1e-12;
const OFF_DIAGONAL_TOL: f64 = 1e-12;

/// All eigenvalues of a Hermitian matrix in ascending order.
///
/// Iteration stops once the off-diagonal Frobenius norm falls below
/// `1e-12 · ‖G‖_F`. The rotation order is fixed, so results are bitwise
/// reproducible.
pub fn hermitian_eigenvalues(g: &CMatrix) -> Result<Vec<f64>> {
    if !g.is_hermitian(HERMITIAN_TOL) {
        return Err(Error::NotHermitian);
    }
    let n = g.dim();
    let mut a = CMatrix::hermitian_from_upper(n, |i, j| g[(i, j)]);
    let target = OFF_DIAGONAL_TOL * a.frobenius_norm();
    // Entries below this cannot push the off-diagonal norm over the target.
    let skip = target / (n.max(1) as f64);

    let schedule = round_robin(n);
    let mut rots = Vec::with_capacity(n / 2);
    let mut converged = false;
    for _ in 0..MAX_SWEEPS {
        if off_diagonal_norm(&a) <= target {
            converged = true;
            break;
        }
        for round in &schedule {
            rots.clear();
            rots.extend(round.iter().filter_map(|&(p, q)| Rotation::annihilating(&a, p, q, skip)));
            if !rots.is_empty() {
                apply(&mut a, &rots);
            }
        }
    }
    if !converged && off_diagonal_norm(&a) > target {
        return Err(Error::NoConvergence { sweeps: MAX_SWEEPS });
    }

    let mut eig: Vec<f64> = (0..n).map(|i| a[(i, i)].re).collect();
    eig.sort_by(f64::total_cmp);
    Ok(eig)
}

/// `(λ_min, λ_max)` of a Hermitian matrix.
pub fn hermitian_extremal(g: &CMatrix) -> Result<(f64, f64)> {
    if g.dim() == 0 {
        return Err(Error::EmptySystem);
    }
    let eig = hermitian_eigenvalues(g)?;
    Ok((eig[0], eig[eig.len() - 1]))
}

fn off_diagonal_norm(a: &CMatrix) -> f64 {
    let n = a.dim();
    let mut s = 0.0;
    for i in 0..n {
        for (j, z) in a.row(i).iter().enumerate() {
            if i != j {
                s += z.norm_sqr();
            }
        }
    }
    s.sqrt()
}

/// Circle-method pairings: `n - 1` rounds (`n` for odd `n`) covering every pair once.
fn round_robin(n: usize) -> Vec<Vec<(usize, usize)>> {
    if n < 2 {
        return Vec::new();
    }
    let m = n + n % 2;
    let mut seats: Vec<usize> = (0..m).collect();
    let mut rounds = Vec::with_capacity(m - 1);
    for _ in 0..m - 1 {
        let mut round = Vec::with_capacity(m / 2);
        for i in 0..m / 2 {
            let (x, y) = (seats[i], seats[m - 1 - i]);
            if x < n && y < n {
                round.push((x.min(y), x.max(y)));
            }
        }
        round.sort_unstable();
        rounds.push(round);
        seats[1..].rotate_right(1);
    }
    rounds
}

/// `U = diag(1, conj e) · R(c, s)` on coordinates `(p, q)`, with `e` the phase
/// of `a[p][q]`; `U* A U` has a zero in position `(p, q)`.
struct Rotation {
    p: usize,
    q: usize,
    c: f64,
    s: f64,
    e: C64,
    app: f64,
    aqq: f64,
}

impl Rotation {
    fn annihilating(a: &CMatrix, p: usize, q: usize, skip: f64) -> Option<Self> {
        let apq = a[(p, q)];
        let abs = apq.norm();
        if abs <= skip || abs == 0.0 {
            return None;
        }
        let app = a[(p, p)].re;
        let aqq = a[(q, q)].re;
        let theta = (aqq - app) / (2.0 * abs);
        let t = if theta.abs() > 1e150 {
            0.5 / theta
        } else {
            let t = 1.0 / (theta.abs() + (theta * theta + 1.0).sqrt());
            if theta < 0.0 {
                -t
            } else {
                t
            }
        };
        let c = 1.0 / (t * t + 1.0).sqrt();
        Some(Rotation { p, q, c, s: t * c, e: apq / abs, app: app - t * abs, aqq: aqq + t * abs })
    }
}

fn apply(a: &mut CMatrix, rots: &[Rotation]) {
    let n = a.dim();
    let data = a.as_mut_slice();
    // Rows: A ← U* A.
    for r in rots {
        let se = r.e * r.s;
        let ce = r.e * r.c;
        let (lo, hi) = data.split_at_mut(r.q * n);
        let row_p = &mut lo[r.p * n..(r.p + 1) * n];
        let row_q = &mut hi[..n];
        for (x, y) in row_p.iter_mut().zip(row_q.iter_mut()) {
            let (xp, xq) = (*x, *y);
            *x = xp * r.c - se * xq;
            *y = xp * r.s + ce * xq;
        }
    }
    // Columns: A ← A U.
    for row in data.chunks_exact_mut(n) {
        for r in rots {
            let sc = r.e.conj() * r.s;
            let cc = r.e.conj() * r.c;
            let (xp, xq) = (row[r.p], row[r.q]);
            row[r.p] = xp * r.c - sc * xq;
            row[r.q] = xp * r.s + cc * xq;
        }
    }
    for r in rots {
        a[(r.p, r.p)] = C64::new(r.app, 0.0);
        a[(r.q, r.q)] = C64::new(r.aqq, 0.0);
        a[(r.p, r.q)] = C64::new(0.0, 0.0);
        a[(r.q, r.p)] = C64::new(0.0, 0.0);
    }
}
