//! Lorentzian linear algebra of the projective model.
//!
//! Points and hyperplane forms are homogeneous vectors of `E^{1,n}` with the
//! bilinear form `<x,y> = -x0*y0 + x1*y1 + ... + xn*yn`. A point is proper
//! (inside the model) when `<x,x> < 0`, ideal when `<x,x> = 0` and outer when
//! `<x,x> > 0`. A form `a` meets the model iff `<a,a> > 0`; its points are the
//! `x` with `<x,a> = 0`, so the polar plane of a point has the same coordinates.
//!
//! Only `n = 2` (`N = 3`) and `n = 3` (`N = 4`) are used by the crate.

use serde::ser::{Serialize, Serializer};

use crate::interval::{Interval, IntervalSet};
use crate::{Error, Result};

/// Relative tolerance used by [`classify`] defaults: `|<x,x>| <= IDEAL_TOL * |x|^2`.
pub const IDEAL_TOL: f64 = 1e-10;

/// Largest deficit below 1 of a `cosh` argument that is treated as roundoff.
pub const ACOSH_SLACK: f64 = 1e-12;

#[derive(Clone, Copy, Debug, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
pub enum PointClass {
    Proper,
    Ideal,
    Outer,
}

/// Anything carrying homogeneous Lorentzian coordinates.
pub trait Homogeneous<const N: usize> {
    fn coords(&self) -> [f64; N];
}

/// A point of the projective model, stored with `x0 = 1` when proper.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ProjPoint<const N: usize>([f64; N]);

/// A hyperplane form, kept unnormalized.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ProjForm<const N: usize>([f64; N]);

pub type ProjPoint4 = ProjPoint<4>;
pub type ProjForm4 = ProjForm<4>;
pub type ProjPoint3 = ProjPoint<3>;
pub type ProjForm3 = ProjForm<3>;

fn validate<const N: usize>(c: &[f64; N]) -> Result<()> {
    if c.iter().any(|v| !v.is_finite()) {
        return Err(Error::NonFinite);
    }
    if c.iter().all(|&v| v == 0.0) {
        return Err(Error::ZeroVector);
    }
    Ok(())
}

fn euclid_sq<const N: usize>(c: &[f64; N]) -> f64 {
    c.iter().map(|v| v * v).sum()
}

impl<const N: usize> ProjPoint<N> {
    /// Builds a point; proper points are rescaled to `x0 = 1`.
    pub fn new(coords: [f64; N]) -> Result<Self> {
        validate(&coords)?;
        let p = Self(coords);
        if p.is_proper() {
            let x0 = coords[0];
            Ok(Self(coords.map(|v| v / x0)))
        } else {
            Ok(p)
        }
    }

    /// Builds a point keeping the given representative.
    pub fn raw(coords: [f64; N]) -> Result<Self> {
        validate(&coords)?;
        Ok(Self(coords))
    }

    pub fn norm_sq(&self) -> f64 {
        bilinear(self, self)
    }

    pub fn class(&self) -> PointClass {
        class_of(&self.0, IDEAL_TOL)
    }

    /// Strictly timelike (`<x,x> < 0`). Metric operations use this test;
    /// [`classify`] additionally treats near-null vectors as ideal.
    pub fn is_proper(&self) -> bool {
        self.norm_sq() < 0.0
    }

    /// Representative with `<x,x> = -1` (timelike, `x0 > 0`) or `+1`
    /// (spacelike). Null vectors are returned unchanged.
    pub fn unit(&self) -> [f64; N] {
        let n = self.norm_sq();
        if n < 0.0 {
            let s = (-n).sqrt() * self.0[0].signum();
            self.0.map(|v| v / s)
        } else if n > 0.0 {
            let s = n.sqrt();
            self.0.map(|v| v / s)
        } else {
            self.0
        }
    }

    /// Affine-chart coordinates (`x0 = 1`), if the point is not at infinity.
    pub fn chart(&self) -> Option<[f64; N]> {
        let x0 = self.0[0];
        if x0 == 0.0 {
            None
        } else {
            Some(self.0.map(|v| v / x0))
        }
    }

    pub fn polar(&self) -> ProjForm<N> {
        ProjForm(self.0)
    }
}

impl ProjPoint<4> {
    /// The point `(1, x, y, z)`.
    pub fn affine(x: f64, y: f64, z: f64) -> Result<Self> {
        Self::new([1.0, x, y, z])
    }
}

impl ProjPoint<3> {
    /// The point `(1, x, y)`.
    pub fn affine(x: f64, y: f64) -> Result<Self> {
        Self::new([1.0, x, y])
    }
}

impl<const N: usize> ProjForm<N> {
    pub fn new(coeffs: [f64; N]) -> Result<Self> {
        validate(&coeffs)?;
        Ok(Self(coeffs))
    }

    pub fn norm_sq(&self) -> f64 {
        bilinear(self, self)
    }

    /// Pole of the plane.
    pub fn pole(&self) -> ProjPoint<N> {
        ProjPoint(self.0)
    }

    /// Whether the point lies on the plane, `|<x,a>| <= tol * |x| |a|`.
    pub fn contains(&self, x: &ProjPoint<N>, tol: f64) -> bool {
        let scale = (euclid_sq(&x.0) * euclid_sq(&self.0)).sqrt();
        bilinear(x, self).abs() <= tol * scale
    }
}

impl<const N: usize> Homogeneous<N> for ProjPoint<N> {
    fn coords(&self) -> [f64; N] {
        self.0
    }
}

impl<const N: usize> Homogeneous<N> for ProjForm<N> {
    fn coords(&self) -> [f64; N] {
        self.0
    }
}

impl<const N: usize> Serialize for ProjPoint<N> {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_seq(self.0.iter())
    }
}

impl<const N: usize> Serialize for ProjForm<N> {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_seq(self.0.iter())
    }
}

#[inline]
fn two_prod(a: f64, b: f64) -> (f64, f64) {
    let p = a * b;
    (p, a.mul_add(b, -p))
}

#[inline]
fn two_sum(a: f64, b: f64) -> (f64, f64) {
    let s = a + b;
    let z = s - a;
    (s, (a - (s - z)) + (b - z))
}

/// Compensated evaluation of the Lorentzian form on raw coordinate arrays.
pub fn lorentz_dot<const N: usize>(x: &[f64; N], y: &[f64; N]) -> f64 {
    let (mut s, mut c) = two_prod(-x[0], y[0]);
    for i in 1..N {
        let (p, e) = two_prod(x[i], y[i]);
        let (t, q) = two_sum(s, p);
        s = t;
        c += q + e;
    }
    s + c
}

/// `<x,y> = -x0*y0 + x1*y1 + ...`, for points and forms alike.
pub fn bilinear<const N: usize>(x: &impl Homogeneous<N>, y: &impl Homogeneous<N>) -> f64 {
    lorentz_dot(&x.coords(), &y.coords())
}

fn class_of<const N: usize>(c: &[f64; N], tol: f64) -> PointClass {
    let n = lorentz_dot(c, c);
    if n.abs() <= tol * euclid_sq(c) {
        PointClass::Ideal
    } else if n < 0.0 {
        PointClass::Proper
    } else {
        PointClass::Outer
    }
}

/// Classifies a point with relative tolerance `tol` for the ideal case.
pub fn classify<const N: usize>(x: &ProjPoint<N>, tol: f64) -> Result<PointClass> {
    if !(tol > 0.0) {
        return Err(Error::InvalidArgument(format!("classification tolerance {tol}")));
    }
    Ok(class_of(&x.0, tol))
}

fn require_proper<const N: usize>(x: &ProjPoint<N>) -> Result<f64> {
    let n = x.norm_sq();
    if !(n < 0.0) {
        return Err(Error::NonProperPoint(n));
    }
    Ok(n)
}

/// `cosh` of the distance of two proper points, before clamping.
pub fn cosh_distance<const N: usize>(x: &ProjPoint<N>, y: &ProjPoint<N>) -> Result<f64> {
    let nx = require_proper(x)?;
    let ny = require_proper(y)?;
    Ok(-bilinear(x, y) / (nx * ny).sqrt())
}

/// Clamped `arccosh`: arguments within [`ACOSH_SLACK`] below 1 map to 0.
pub fn acosh_checked(c: f64, what: &'static str) -> Result<f64> {
    if c.is_nan() || c < 1.0 - ACOSH_SLACK {
        return Err(Error::DomainError { what, value: c });
    }
    Ok(c.max(1.0).acosh())
}

/// Hyperbolic distance of two proper points.
///
/// Short distances use whichever of two forms loses fewer digits: the
/// Lorentzian chord `2 asinh(|x̂ - ŷ| / 2)` of the unit representatives, which
/// suits points well inside the model, or
/// `sinh^2 d = (<x,y>^2 - <x,x><y,y>) / (<x,x><y,y>)`, which suits points
/// near the ideal boundary whose unit representatives are huge.
pub fn distance<const N: usize>(x: &ProjPoint<N>, y: &ProjPoint<N>) -> Result<f64> {
    let c = cosh_distance(x, y)?;
    acosh_checked(c, "distance")?;
    if c >= 2.0 {
        return Ok(c.acosh());
    }
    let (ux, uy) = (x.unit(), y.unit());
    let mut diff = [0.0; N];
    for i in 0..N {
        diff[i] = ux[i] - uy[i];
    }
    let chord_sq = lorentz_dot(&diff, &diff).max(0.0);
    let size = euclid_sq(&ux) + euclid_sq(&uy);
    let chord_err = size / chord_sq.max(f64::MIN_POSITIVE);
    let sinh_sq = c * c - 1.0;
    let gram_err = c * c / sinh_sq.max(f64::MIN_POSITIVE);
    if chord_err <= gram_err {
        Ok(2.0 * (chord_sq.sqrt() / 2.0).asinh())
    } else {
        let (nx, ny) = (x.norm_sq(), y.norm_sq());
        let xy = bilinear(x, y);
        let s2 = ((xy * xy - nx * ny) / (nx * ny)).max(0.0);
        Ok(s2.sqrt().asinh())
    }
}

/// Signed normalized offset `<x,a> / sqrt(-<x,x><a,a>)`, the `sinh` of the
/// signed distance from `x` to the plane `a`.
pub fn plane_offset<const N: usize>(x: &ProjPoint<N>, a: &ProjForm<N>) -> Result<f64> {
    let nx = require_proper(x)?;
    let na = a.norm_sq();
    if !(na > 0.0) {
        return Err(Error::DegeneratePlane(na));
    }
    // Proper points are stored with x0 > 0 so the sign is meaningful.
    let sign = x.0[0].signum();
    Ok(sign * bilinear(x, a) / (-nx * na).sqrt())
}

/// Distance of a proper point from a plane meeting the model.
pub fn point_plane_distance<const N: usize>(x: &ProjPoint<N>, a: &ProjForm<N>) -> Result<f64> {
    Ok(plane_offset(x, a)?.abs().asinh())
}

/// The polar plane of a point.
pub fn polar<const N: usize>(x: &ProjPoint<N>) -> ProjForm<N> {
    x.polar()
}

/// Point at parameter `t` on the affine segment from `p` (t=0) to `q` (t=1).
pub fn segment_point<const N: usize>(
    p: &ProjPoint<N>,
    q: &ProjPoint<N>,
    t: f64,
) -> Result<ProjPoint<N>> {
    if !(0.0..=1.0).contains(&t) {
        return Err(Error::InvalidArgument(format!("segment parameter {t} outside [0,1]")));
    }
    let (pc, qc) = chart_pair(p, q)?;
    let mut out = [0.0; N];
    for i in 0..N {
        out[i] = pc[i] + t * (qc[i] - pc[i]);
    }
    out[0] = 1.0;
    ProjPoint::new(out)
}

fn chart_pair<const N: usize>(p: &ProjPoint<N>, q: &ProjPoint<N>) -> Result<([f64; N], [f64; N])> {
    let pc = p
        .chart()
        .ok_or_else(|| Error::InvalidArgument("segment endpoint at infinity".into()))?;
    let qc = q
        .chart()
        .ok_or_else(|| Error::InvalidArgument("segment endpoint at infinity".into()))?;
    let gap = pc.iter().zip(&qc).map(|(a, b)| (a - b).abs()).fold(0.0, f64::max);
    let scale = pc.iter().chain(&qc).map(|v| v.abs()).fold(1.0, f64::max);
    if gap <= 4.0 * f64::EPSILON * scale {
        return Err(Error::ProjectivelyEqual);
    }
    Ok((pc, qc))
}

/// Parameters `t in [0,1]` of the segment `p -> q` whose points lie within
/// distance `h` of the plane `a`, i.e. inside the hyperball of height `h`.
///
/// Restricted to the segment, the hyperball inequality becomes the quadratic
/// `<T,a>^2 + sinh^2(h) <a,a> <T,T> <= 0` in `t`, solved in closed form.
pub fn hyperball_segment<const N: usize>(
    p: &ProjPoint<N>,
    q: &ProjPoint<N>,
    a: &ProjForm<N>,
    h: f64,
) -> Result<IntervalSet> {
    if !(h >= 0.0) {
        return Err(Error::NegativeHeight(h));
    }
    let na = a.norm_sq();
    if !(na > 0.0) {
        return Err(Error::DegeneratePlane(na));
    }
    require_proper(p)?;
    require_proper(q)?;
    let (pc, qc) = chart_pair(p, q)?;
    let mut d = [0.0; N];
    for i in 0..N {
        d[i] = qc[i] - pc[i];
    }
    let ac = a.coords();
    let alpha = lorentz_dot(&pc, &ac);
    let beta = lorentz_dot(&d, &ac);
    let pp = lorentz_dot(&pc, &pc);
    let pd = lorentz_dot(&pc, &d);
    let dd = lorentz_dot(&d, &d);
    let k = h.sinh().powi(2) * na;

    let c2 = beta * beta + k * dd;
    let c1 = 2.0 * (alpha * beta + k * pd);
    let c0 = alpha * alpha + k * pp;
    let g = |t: f64| (c2 * t + c1) * t + c0;

    let mut cuts = vec![0.0];
    cuts.extend(quadratic_roots(c2, c1, c0).into_iter().filter(|r| *r > 0.0 && *r < 1.0));
    cuts.push(1.0);
    cuts.sort_by(f64::total_cmp);

    // Scale for deciding the sign of g against cancellation noise.
    let noise = 64.0 * f64::EPSILON * (c2.abs() + c1.abs() + c0.abs());
    let mut set = IntervalSet::new();
    for w in cuts.windows(2) {
        let (lo, hi) = (w[0], w[1]);
        if hi - lo <= 0.0 {
            continue;
        }
        if g(0.5 * (lo + hi)) <= noise {
            set.insert(Interval::new(lo, hi));
        }
    }
    Ok(set)
}

/// Real roots of `c2 t^2 + c1 t + c0`, computed without cancellation.
pub fn quadratic_roots(c2: f64, c1: f64, c0: f64) -> Vec<f64> {
    let scale = c2.abs().max(c1.abs()).max(c0.abs());
    if scale == 0.0 {
        return Vec::new();
    }
    if c2.abs() <= 1e-14 * scale {
        if c1 == 0.0 {
            return Vec::new();
        }
        return vec![-c0 / c1];
    }
    let disc = c1 * c1 - 4.0 * c2 * c0;
    if disc < 0.0 {
        if disc > -1e-14 * c1 * c1 {
            return vec![-c1 / (2.0 * c2)];
        }
        return Vec::new();
    }
    let sq = disc.sqrt();
    let qv = -0.5 * (c1 + c1.signum() * sq);
    if qv == 0.0 {
        return vec![0.0];
    }
    let mut roots = vec![qv / c2, c0 / qv];
    roots.sort_by(f64::total_cmp);
    roots
}

/// Lorentzian cross product in `E^{1,2}`: the form through two points, or the
/// point common to two lines (forms).
pub fn cross3(x: &[f64; 3], y: &[f64; 3]) -> [f64; 3] {
    // Euclidean cross product, then raise the time index with diag(-1,1,1)
    // so that <cross3(x,y), x> = <cross3(x,y), y> = 0.
    let c = [
        x[1] * y[2] - x[2] * y[1],
        x[2] * y[0] - x[0] * y[2],
        x[0] * y[1] - x[1] * y[0],
    ];
    [-c[0], c[1], c[2]]
}

/// Line through two points of the hyperbolic plane.
pub fn join(p: &ProjPoint3, q: &ProjPoint3) -> Result<ProjForm3> {
    ProjForm::new(cross3(&p.0, &q.0)).map_err(|_| Error::ProjectivelyEqual)
}

/// Intersection point of two lines.
pub fn meet(a: &ProjForm3, b: &ProjForm3) -> Result<ProjPoint3> {
    ProjPoint::new(cross3(&a.0, &b.0)).map_err(|_| Error::ProjectivelyEqual)
}
