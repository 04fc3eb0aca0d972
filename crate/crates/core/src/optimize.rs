//! One-dimensional minimization and root bracketing.
//!
//! Objectives may return `f64::INFINITY` for rejected arguments; the grid
//! stage skips them and golden-section refinement treats them as large.

use serde::Serialize;

/// Uniform samples of the coarse stage.
pub const GRID_SAMPLES: usize = 257;

/// Termination width of the golden-section refinement.
pub const GOLDEN_TOL: f64 = 1e-12;

const INV_PHI: f64 = 0.618_033_988_749_894_9;

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct Minimum {
    pub x: f64,
    pub value: f64,
    pub evaluations: usize,
    pub iterations: usize,
}

/// Golden-section search on `[lo, hi]` until the bracket is narrower than `tol`.
pub fn golden_section<F: FnMut(f64) -> f64>(mut f: F, lo: f64, hi: f64, tol: f64) -> Minimum {
    let (mut a, mut b) = (lo, hi);
    let mut c = b - INV_PHI * (b - a);
    let mut d = a + INV_PHI * (b - a);
    let (mut fc, mut fd) = (f(c), f(d));
    let mut evaluations = 2;
    let mut iterations = 0;
    while (b - a) > tol && iterations < 200 {
        iterations += 1;
        if fc <= fd {
            b = d;
            d = c;
            fd = fc;
            c = b - INV_PHI * (b - a);
            fc = f(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + INV_PHI * (b - a);
            fd = f(d);
        }
        evaluations += 1;
    }
    let (x, value) = if fc <= fd { (c, fc) } else { (d, fd) };
    Minimum { x, value, evaluations, iterations }
}

/// Coarse uniform grid followed by golden-section refinement around the best
/// finite sample. Returns `None` when every grid sample is infinite.
pub fn grid_golden<F: FnMut(f64) -> f64>(
    mut f: F,
    lo: f64,
    hi: f64,
    samples: usize,
    tol: f64,
) -> Option<Minimum> {
    let samples = samples.max(3);
    let step = (hi - lo) / (samples - 1) as f64;
    let mut best: Option<(usize, f64)> = None;
    for i in 0..samples {
        let x = if i + 1 == samples { hi } else { lo + step * i as f64 };
        let v = f(x);
        if v.is_finite() && best.is_none_or(|(_, bv)| v < bv) {
            best = Some((i, v));
        }
    }
    let (i, grid_value) = best?;
    let a = lo + step * i.saturating_sub(1) as f64;
    let b = (lo + step * (i + 1) as f64).min(hi);
    let mut m = golden_section(&mut f, a, b, tol);
    m.evaluations += samples;
    let grid_x = if i + 1 == samples { hi } else { lo + step * i as f64 };
    // Endpoint minima are outside the golden interior points.
    if grid_value < m.value {
        m.x = grid_x;
        m.value = grid_value;
    }
    Some(m)
}

/// Bisection for a sign change of `f` on `[lo, hi]`; `None` if the endpoint
/// values share a sign.
pub fn bisect<F: FnMut(f64) -> f64>(mut f: F, lo: f64, hi: f64, tol: f64) -> Option<f64> {
    let (mut a, mut b) = (lo, hi);
    let (mut fa, fb) = (f(a), f(b));
    if fa == 0.0 {
        return Some(a);
    }
    if fb == 0.0 {
        return Some(b);
    }
    if fa.signum() == fb.signum() {
        return None;
    }
    for _ in 0..200 {
        let m = 0.5 * (a + b);
        if b - a <= tol || m == a || m == b {
            break;
        }
        let fm = f(m);
        if fm == 0.0 {
            return Some(m);
        }
        if fm.signum() == fa.signum() {
            a = m;
            fa = fm;
        } else {
            b = m;
        }
    }
    Some(0.5 * (a + b))
}
