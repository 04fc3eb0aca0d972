//! Lobachevsky function, orthoscheme volume, triangle areas and
//! hyperball-piece volumes.

use std::f64::consts::PI;
use std::sync::OnceLock;

use serde::Serialize;

use crate::lorentz::{cosh_distance, lorentz_dot, ProjPoint4};
use crate::orthoscheme::TruncatedOrthoscheme;
use crate::{Error, Result};

/// Radicand of `tan(theta)` below which parameters are rejected rather than clamped.
pub const RADICAND_TOL: f64 = 1e-14;

/// Normalized Gram determinant under which three points count as collinear.
pub const COLLINEAR_TOL: f64 = 1e-14;

const ZETA_TERMS: usize = 48;

/// `zeta(2k) / (k (2k+1) (2 pi)^(2k))` for `k = 1..ZETA_TERMS`.
fn clausen_coefficients() -> &'static [f64; ZETA_TERMS] {
    static COEFFS: OnceLock<[f64; ZETA_TERMS]> = OnceLock::new();
    COEFFS.get_or_init(|| {
        let two_pi_sq = (2.0 * PI).powi(2);
        let mut scale = 1.0;
        std::array::from_fn(|i| {
            let k = (i + 1) as f64;
            scale /= two_pi_sq;
            zeta_even(i + 1) * scale / (k * (2.0 * k + 1.0))
        })
    })
}

/// `zeta(2k)` by a partial sum with an Euler–Maclaurin tail.
fn zeta_even(k: usize) -> f64 {
    match k {
        1 => PI.powi(2) / 6.0,
        2 => PI.powi(4) / 90.0,
        3 => PI.powi(6) / 945.0,
        _ => {
            let s = 2 * k as i32;
            let n = 24;
            let mut sum = 0.0;
            for m in (1..n).rev() {
                sum += (m as f64).powi(-s);
            }
            let nf = n as f64;
            let sf = s as f64;
            sum + nf.powi(1 - s) / (sf - 1.0) + 0.5 * nf.powi(-s) + sf / 12.0 * nf.powi(-s - 1)
        }
    }
}

/// Clausen function `Cl2(t) = -∫_0^t log|2 sin(s/2)| ds` for `t` in `[-pi, pi]`.
fn clausen_reduced(t: f64) -> f64 {
    if t == 0.0 {
        return 0.0;
    }
    let coeffs = clausen_coefficients();
    let t2 = t * t;
    let mut power = t;
    let mut sum = 0.0;
    let mut comp = 0.0;
    for c in coeffs {
        power *= t2;
        let term = c * power;
        let y = term - comp;
        let next = sum + y;
        comp = (next - sum) - y;
        sum = next;
        if term.abs() < 1e-18 * sum.abs() {
            break;
        }
    }
    t - t * t.abs().ln() + sum
}

/// Lobachevsky function `L(x) = -∫_0^x log|2 sin t| dt`; odd and pi-periodic.
pub fn lobachevsky(x: f64) -> f64 {
    if !x.is_finite() {
        return f64::NAN;
    }
    // L(x) = Cl2(2x)/2, with 2x reduced into [-pi, pi].
    let two_pi = 2.0 * PI;
    let mut t = (2.0 * x) % two_pi;
    if t > PI {
        t -= two_pi;
    } else if t < -PI {
        t += two_pi;
    }
    0.5 * clausen_reduced(t)
}

/// The auxiliary angle `theta` in `[0, pi/2)` of the volume formula.
pub fn theta(u: f64, v: f64, w: f64) -> Result<f64> {
    let (a01, a12, a23) = (PI / u, PI / v, PI / w);
    let radicand = a12.cos().powi(2) - (a01.sin() * a23.sin()).powi(2);
    if radicand < -RADICAND_TOL || radicand.is_nan() {
        return Err(Error::DomainError { what: "tan(theta) radicand", value: radicand });
    }
    let numer = radicand.max(0.0).sqrt();
    Ok(numer.atan2(a01.cos() * a23.cos()))
}

/// Volume of the complete orthoscheme with essential angles `pi/u, pi/v, pi/w`.
pub fn orthoscheme_volume(u: f64, v: f64, w: f64) -> Result<f64> {
    let th = theta(u, v, w)?;
    let (a01, a12, a23) = (PI / u, PI / v, PI / w);
    let l = lobachevsky;
    let half = PI / 2.0;
    let terms = [
        l(a01 + th),
        -l(a01 - th),
        l(half + a12 - th),
        l(half - a12 - th),
        l(a23 + th),
        -l(a23 - th),
        2.0 * l(half - th),
    ];
    Ok(0.25 * terms.iter().sum::<f64>())
}

/// Area of a hyperbolic triangle from its angle defect.
pub fn triangle_area(p: &ProjPoint4, q: &ProjPoint4, r: &ProjPoint4) -> Result<f64> {
    let pts = [p, q, r];
    for x in pts {
        if !x.is_proper() {
            return Err(Error::NonProperPoint(x.norm_sq()));
        }
    }
    let units = pts.map(|x| x.unit());
    let mut g = [[0.0; 3]; 3];
    for i in 0..3 {
        for j in 0..3 {
            g[i][j] = lorentz_dot(&units[i], &units[j]);
        }
    }
    let det = g[0][0] * (g[1][1] * g[2][2] - g[1][2] * g[2][1])
        - g[0][1] * (g[1][0] * g[2][2] - g[1][2] * g[2][0])
        + g[0][2] * (g[1][0] * g[2][1] - g[1][1] * g[2][0]);
    let scale = g.iter().flatten().map(|v| v * v).sum::<f64>().sqrt();
    // A Lorentzian plane section has Gram determinant of sign -1.
    if !(-det / scale.powi(3) > COLLINEAR_TOL) {
        return Err(Error::DegenerateTriangle);
    }

    // Sides opposite p, q, r.
    let ch = [cosh_distance(q, r)?, cosh_distance(p, r)?, cosh_distance(p, q)?];
    let sh = ch.map(|c| (c * c - 1.0).max(0.0).sqrt());
    let angle = |i: usize| {
        let (j, k) = ((i + 1) % 3, (i + 2) % 3);
        let cos = (ch[j] * ch[k] - ch[i]) / (sh[j] * sh[k]);
        cos.clamp(-1.0, 1.0).acos()
    };
    let area = PI - angle(0) - angle(1) - angle(2);
    if !(area > 0.0) {
        return Err(Error::DegenerateTriangle);
    }
    Ok(area)
}

/// Volume of the hyperball piece of height `h` over a base of the given area.
pub fn hyperball_piece_volume(area: f64, h: f64) -> Result<f64> {
    if !(h >= 0.0) {
        return Err(Error::NegativeHeight(h));
    }
    if !(area >= 0.0) || !area.is_finite() {
        return Err(Error::InvalidArgument(format!("base area {area} must be nonnegative")));
    }
    Ok(0.25 * area * ((2.0 * h).sinh() + 2.0 * h))
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct VolumeReport {
    pub orthoscheme_volume: f64,
    pub theta: f64,
    pub area_qej: f64,
    pub area_hlc: f64,
}

pub fn volume_report(o: &TruncatedOrthoscheme) -> Result<VolumeReport> {
    let p = &o.params;
    let v = &o.vertices;
    Ok(VolumeReport {
        orthoscheme_volume: orthoscheme_volume(p.u, p.v, p.w)?,
        theta: theta(p.u, p.v, p.w)?,
        area_qej: triangle_area(&v.q, &v.e, &v.j)?,
        area_hlc: triangle_area(&v.h, &v.l, &v.c)?,
    })
}
