//! Hypercycle coverings of a doubly truncated planar orthoscheme.
//!
//! The right triangle `O A B` with `O = (1,0,0)`, `A = (1,0,a)`, `B = (1,b,0)`
//! has outer vertices `A`, `B` for `a, b > 1`. Their polar lines cut it down to
//! the pentagon `F C D E O`:
//!
//! ```text
//! F = OA ∩ pol(A)   C = AB ∩ pol(A)   D = AB ∩ pol(B)   E = OB ∩ pol(B)
//! ```
//!
//! All five angles are right angles. Two hypercycle bands, based on `OE` and
//! on `FC`, pass through the affine midpoint `J` of `CD`.

use std::f64::consts::PI;

use serde::Serialize;

use crate::lorentz::{
    self, cross3, hyperball_segment, segment_point, lorentz_dot, point_plane_distance, Homogeneous, ProjForm3,
    ProjPoint3,
};
use crate::{Error, Result};

/// Fan segments from `O` used to check the pentagon interior.
pub const INTERIOR_FAN: usize = 256;

/// Distance by which a point may lie outside both bands and still count as
/// covered. Near the ideal boundary the band roots carry errors of this order.
pub const COVER_TOL: f64 = 1e-7;

/// Smallest `a - 1` accepted; below it the truncating line `pol(A)` is not
/// resolved in double precision.
pub const MIN_A_OFFSET: f64 = 1e-13;

/// `sqrt(12) / pi`, the limiting density along `a -> 1`, `b -> infinity`.
pub fn limit_density() -> f64 {
    12f64.sqrt() / PI
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct Pentagon {
    pub f: ProjPoint3,
    pub c: ProjPoint3,
    pub d: ProjPoint3,
    pub e: ProjPoint3,
    pub o: ProjPoint3,
}

/// Lines of the pentagon sides, each oriented to be positive inside.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct Sides {
    pub fc: ProjForm3,
    pub cd: ProjForm3,
    pub de: ProjForm3,
    pub eo: ProjForm3,
    pub of: ProjForm3,
}

impl Sides {
    /// Sides in boundary order starting with `FC`.
    pub fn cycle(&self) -> [ProjForm3; 5] {
        [self.fc, self.cd, self.de, self.eo, self.of]
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct PlanarConfig {
    pub a: f64,
    pub b: f64,
    pub vertices: Pentagon,
    pub sides: Sides,
    pub j: ProjPoint3,
    /// Distance from `J` to the line `OE`.
    pub h1: f64,
    /// Distance from `J` to the line `FC`.
    pub h2: f64,
    /// Length of `OE`.
    pub base1: f64,
    /// Length of `FC`.
    pub base2: f64,
}

fn point(c: [f64; 3]) -> Result<ProjPoint3> {
    let p = ProjPoint3::raw(if c[0] < 0.0 { c.map(|v| -v) } else { c })?;
    if !p.is_proper() {
        return Err(Error::NonProperPoint(p.norm_sq()));
    }
    Ok(p)
}

/// Truncates the right triangle `OAB` by the polar lines of `A` and `B`.
///
/// Points are kept as exact homogeneous representatives, without dividing by
/// the time coordinate, so vertices close to the ideal boundary stay accurate.
pub fn build_pentagon(a: f64, b: f64) -> Result<PlanarConfig> {
    if !(a > 1.0 && b > 1.0) || !a.is_finite() || !b.is_finite() {
        return Err(Error::InvalidArgument(format!("need a, b > 1, got a = {a}, b = {b}")));
    }
    if a - 1.0 < MIN_A_OFFSET {
        return Err(Error::DomainError { what: "a - 1 below double-precision resolution", value: a - 1.0 });
    }
    // AB meets the disk iff 1/a^2 + 1/b^2 > 1, i.e. a^2 + b^2 > a^2 b^2.
    let a2m1 = (a - 1.0) * (a + 1.0);
    let b2m1 = (b - 1.0) * (b + 1.0);
    if !(a2m1 * b2m1 < 1.0) {
        return Err(Error::NoIntersection { a, b });
    }
    let vertices = Pentagon {
        f: point([a, 0.0, 1.0])?,
        c: point([a, b * a2m1 / a, 1.0])?,
        d: point([b, 1.0, a * b2m1 / b])?,
        e: point([b, 1.0, 0.0])?,
        o: point([1.0, 0.0, 0.0])?,
    };
    let raw_sides = [
        [1.0, 0.0, a],   // pol(A)
        [a * b, a, b],   // AB
        [1.0, b, 0.0],   // pol(B)
        [0.0, 0.0, 1.0], // OB
        [0.0, 1.0, 0.0], // OA
    ];
    // J = C/c0 + D/d0, scaled by c0 d0.
    let (cc, dc) = (vertices.c.coords(), vertices.d.coords());
    let j = point(std::array::from_fn(|i| dc[0] * cc[i] + cc[0] * dc[i]))?;
    let oriented: Vec<ProjForm3> = raw_sides
        .iter()
        .map(|s| {
            let s = if lorentz_dot(&j.coords(), s) < 0.0 { s.map(|v| -v) } else { *s };
            ProjForm3::new(s)
        })
        .collect::<Result<_>>()?;
    let sides = Sides {
        fc: oriented[0],
        cd: oriented[1],
        de: oriented[2],
        eo: oriented[3],
        of: oriented[4],
    };
    let h1 = point_plane_distance(&j, &sides.eo)?;
    let h2 = point_plane_distance(&j, &sides.fc)?;
    Ok(PlanarConfig {
        a,
        b,
        base1: lorentz::distance(&vertices.o, &vertices.e)?,
        base2: lorentz::distance(&vertices.f, &vertices.c)?,
        vertices,
        sides,
        j,
        h1,
        h2,
    })
}

/// Area between a base segment of length `s` and its equidistant at distance `h`.
pub fn hypercycle_piece_area(s: f64, h: f64) -> Result<f64> {
    if !(h >= 0.0) {
        return Err(Error::NegativeHeight(h));
    }
    if !(s >= 0.0) || !s.is_finite() {
        return Err(Error::InvalidArgument(format!("base length {s} must be nonnegative")));
    }
    Ok(s * h.sinh())
}

/// Area of a convex polygon from its inward-oriented side lines, by angle defect.
pub fn polygon_area(sides: &[ProjForm3]) -> Result<f64> {
    let n = sides.len();
    if n < 3 {
        return Err(Error::InvalidArgument("a polygon needs at least three sides".into()));
    }
    let mut angle_sum = 0.0;
    for k in 0..n {
        let (p, q) = (sides[k].coords(), sides[(k + 1) % n].coords());
        let cos = -lorentz_dot(&p, &q) / (lorentz_dot(&p, &p) * lorentz_dot(&q, &q)).sqrt();
        angle_sum += cos.clamp(-1.0, 1.0).acos();
    }
    Ok((n as f64 - 2.0) * PI - angle_sum)
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CoverageReport {
    pub covered: bool,
    /// Name of the first segment found uncovered and the uncovered parameters.
    pub failure: Option<(String, f64, f64)>,
}

fn segment_covered(cfg: &PlanarConfig, p: &ProjPoint3, q: &ProjPoint3) -> Result<Option<(f64, f64)>> {
    let band1 = hyperball_segment(p, q, &cfg.sides.eo, cfg.h1)?;
    let band2 = hyperball_segment(p, q, &cfg.sides.fc, cfg.h2)?;
    for g in band1.union(&band2).gaps(0.0, 1.0) {
        let x = segment_point(p, q, 0.5 * (g.lo + g.hi))?;
        let excess1 = point_plane_distance(&x, &cfg.sides.eo)? - cfg.h1;
        let excess2 = point_plane_distance(&x, &cfg.sides.fc)? - cfg.h2;
        if excess1.min(excess2) > COVER_TOL {
            return Ok(Some((g.lo, g.hi)));
        }
    }
    Ok(None)
}

/// Checks that the two bands cover the five sides and a fan of segments from
/// `O` to the far boundary `F C D E`.
pub fn coverage(cfg: &PlanarConfig) -> Result<CoverageReport> {
    let v = &cfg.vertices;
    let named = [("FC", v.f, v.c), ("CD", v.c, v.d), ("DE", v.d, v.e), ("EO", v.e, v.o), ("OF", v.o, v.f)];
    for (name, p, q) in named {
        if let Some((lo, hi)) = segment_covered(cfg, &p, &q)? {
            return Ok(CoverageReport { covered: false, failure: Some((name.to_string(), lo, hi)) });
        }
    }
    let far = [v.f, v.c, v.d, v.e];
    let per_side = INTERIOR_FAN / 3;
    for s in 0..3 {
        let (p, q) = (far[s].unit(), far[s + 1].unit());
        for k in 1..per_side {
            let t = k as f64 / per_side as f64;
            let x: [f64; 3] = std::array::from_fn(|i| (1.0 - t) * p[i] + t * q[i]);
            let target = ProjPoint3::raw(x)?;
            if let Some((lo, hi)) = segment_covered(cfg, &v.o, &target)? {
                return Ok(CoverageReport {
                    covered: false,
                    failure: Some((format!("O->{}{}@{t:.4}", ["F", "C", "D"][s], ["C", "D", "E"][s]), lo, hi)),
                });
            }
        }
    }
    Ok(CoverageReport { covered: true, failure: None })
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct PlanarDensity {
    pub config: PlanarConfig,
    pub pentagon_area: f64,
    pub area_h1: f64,
    pub area_h2: f64,
    pub delta: f64,
}

/// Density of the two hypercycle pieces in the pentagon.
pub fn density_2d(cfg: &PlanarConfig) -> Result<PlanarDensity> {
    let report = coverage(cfg)?;
    if let Some((name, lo, hi)) = report.failure {
        return Err(Error::NotACovering(format!("segment {name} uncovered on [{lo:.12}, {hi:.12}]")));
    }
    let pentagon_area = polygon_area(&cfg.sides.cycle())?;
    let area_h1 = hypercycle_piece_area(cfg.base1, cfg.h1)?;
    let area_h2 = hypercycle_piece_area(cfg.base2, cfg.h2)?;
    Ok(PlanarDensity {
        config: cfg.clone(),
        pentagon_area,
        area_h1,
        area_h2,
        delta: (area_h1 + area_h2) / pentagon_area,
    })
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ScanRow {
    pub a: f64,
    pub b: f64,
    pub h1: f64,
    pub h2: f64,
    pub pentagon_area: f64,
    pub delta: f64,
    pub gap_to_limit: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ScanReport {
    pub rows: Vec<ScanRow>,
    pub strictly_decreasing: bool,
    pub all_above_limit: bool,
    pub terminal_gap: f64,
}

/// Evaluates the density along a path of `(a, b)` values.
pub fn limit_scan(path: &[(f64, f64)]) -> Result<ScanReport> {
    let limit = limit_density();
    let rows = std::thread::scope(|s| {
        let handles: Vec<_> = path
            .iter()
            .map(|&(a, b)| {
                s.spawn(move || -> Result<ScanRow> {
                    let d = density_2d(&build_pentagon(a, b)?)?;
                    Ok(ScanRow {
                        a,
                        b,
                        h1: d.config.h1,
                        h2: d.config.h2,
                        pentagon_area: d.pentagon_area,
                        delta: d.delta,
                        gap_to_limit: d.delta - limit,
                    })
                })
            })
            .collect();
        handles.into_iter().map(|h| h.join().expect("scan worker panicked")).collect::<Result<Vec<_>>>()
    })?;
    let strictly_decreasing = rows.windows(2).all(|w| w[1].delta < w[0].delta);
    let all_above_limit = rows.iter().all(|r| r.delta > limit);
    let terminal_gap = rows.last().map_or(f64::NAN, |r| r.gap_to_limit);
    Ok(ScanReport { rows, strictly_decreasing, all_above_limit, terminal_gap })
}

/// The path `a = 1 + 10^-k`, `b = 10^k`.
pub fn stated_path(ks: impl IntoIterator<Item = i32>) -> Vec<(f64, f64)> {
    ks.into_iter().map(|k| (1.0 + 10f64.powi(-k), 10f64.powi(k))).collect()
}

/// The path `a = 1 + 10^-3k`, `b = 10^k`, along which `AB` keeps meeting the disk.
pub fn feasible_path(ks: impl IntoIterator<Item = i32>) -> Vec<(f64, f64)> {
    ks.into_iter().map(|k| (1.0 + 10f64.powi(-3 * k), 10f64.powi(k))).collect()
}

/// Points at signed arclength `s` (measured from the foot of `through`) on the
/// equidistant curve of `line` that passes through `through`.
pub fn hypercycle_samples(line: &ProjForm3, through: &ProjPoint3, spans: &[f64]) -> Result<Vec<ProjPoint3>> {
    let n = line.coords();
    let nn = lorentz_dot(&n, &n);
    if !(nn > 0.0) {
        return Err(Error::DegeneratePlane(nn));
    }
    let n = n.map(|v| v / nn.sqrt());
    let x = through.unit();
    let offset = lorentz_dot(&x, &n);
    let foot: [f64; 3] = std::array::from_fn(|i| x[i] - offset * n[i]);
    let cosh_h = (1.0 + offset * offset).sqrt();
    let foot_unit = foot.map(|v| v / cosh_h);
    let tangent = cross3(&foot_unit, &n);
    let tn = lorentz_dot(&tangent, &tangent).sqrt();
    let tangent = tangent.map(|v| v / tn);
    spans
        .iter()
        .map(|&s| {
            let (cs, ss) = (s.cosh(), s.sinh());
            ProjPoint3::new(std::array::from_fn(|i| {
                cosh_h * (cs * foot_unit[i] + ss * tangent[i]) + offset * n[i]
            }))
        })
        .collect()
}

/// Signed distance between the horocycles centered at the ideal point `center`
/// through `x` and through `y`.
pub fn horocycle_gap(center: &[f64; 3], x: &ProjPoint3, y: &ProjPoint3) -> f64 {
    let (xu, yu) = (x.unit(), y.unit());
    (lorentz_dot(&xu, center) / lorentz_dot(&yu, center)).ln()
}

/// Largest horocycle gap, relative to `J` and the ideal point `(0, 1)` that
/// `A` tends to as `a -> 1`, over points of the `FC`-based hypercycle at the
/// given signed arclengths from `J`'s foot, measured along the hypercycle.
pub fn horocycle_deviation(cfg: &PlanarConfig, arcs: &[f64]) -> Result<f64> {
    let stretch = cfg.h2.cosh();
    let spans: Vec<f64> = arcs.iter().map(|s| s / stretch).collect();
    let pts = hypercycle_samples(&cfg.sides.fc, &cfg.j, &spans)?;
    let ideal = [1.0, 0.0, 1.0];
    Ok(pts.iter().map(|p| horocycle_gap(&ideal, p, &cfg.j).abs()).fold(0.0, f64::max))
}
