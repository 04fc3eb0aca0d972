//! Coverings of a truncated orthoscheme by two hyperball pieces.
//!
//! `H1` is the hyperball piece of height `h1` over the triangle `QEJ` (plane
//! `pi3`) and `H2` the piece of height `h2` over `HLC` (plane `pi0`). A
//! configuration is fixed by a contact point `T` on one of the six non-polar
//! edges, lying on both hyperball surfaces.

use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::interval::{Interval, IntervalSet};
use crate::lorentz::{
    acosh_checked, hyperball_segment, lorentz_dot, point_plane_distance, segment_point,
    Homogeneous, ProjForm4, ProjPoint4,
};
use crate::optimize::{bisect, grid_golden, GOLDEN_TOL, GRID_SAMPLES};
use crate::orthoscheme::{classify_params, embed, SchlafliParams, TruncatedOrthoscheme, Vertex};
use crate::volume::{hyperball_piece_volume, orthoscheme_volume, triangle_area};
use crate::{Error, Result};

/// Grid samples of the outer search over `u` in the family optimizer.
pub const FAMILY_GRID_SAMPLES: usize = 65;

/// Termination width of the outer search over `u`.
pub const FAMILY_TOL: f64 = 1e-9;

/// Root tolerance of the equal-height solve.
pub const CONGRUENT_TOL: f64 = 1e-14;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum EdgeId {
    QA2,
    EA1,
    JH,
    LA2,
    CA1,
    A1A2,
}

impl EdgeId {
    pub const ALL: [EdgeId; 6] =
        [EdgeId::QA2, EdgeId::EA1, EdgeId::JH, EdgeId::LA2, EdgeId::CA1, EdgeId::A1A2];

    /// Endpoints at parameter `t = 0` and `t = 1`.
    pub fn endpoints(self) -> (Vertex, Vertex) {
        match self {
            EdgeId::QA2 => (Vertex::Q, Vertex::A2),
            EdgeId::EA1 => (Vertex::E, Vertex::A1),
            EdgeId::JH => (Vertex::J, Vertex::H),
            EdgeId::LA2 => (Vertex::L, Vertex::A2),
            EdgeId::CA1 => (Vertex::C, Vertex::A1),
            EdgeId::A1A2 => (Vertex::A1, Vertex::A2),
        }
    }

    /// Image under the relabeling `{u,v,w} -> {w,v,u}`, and whether the
    /// parametrization is reversed (`t -> 1 - t`).
    pub fn mirror(self) -> (EdgeId, bool) {
        match self {
            EdgeId::QA2 => (EdgeId::CA1, false),
            EdgeId::CA1 => (EdgeId::QA2, false),
            EdgeId::EA1 => (EdgeId::LA2, false),
            EdgeId::LA2 => (EdgeId::EA1, false),
            EdgeId::JH => (EdgeId::JH, true),
            EdgeId::A1A2 => (EdgeId::A1A2, true),
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            EdgeId::QA2 => "QA2",
            EdgeId::EA1 => "EA1",
            EdgeId::JH => "JH",
            EdgeId::LA2 => "LA2",
            EdgeId::CA1 => "CA1",
            EdgeId::A1A2 => "A1A2",
        }
    }
}

impl fmt::Display for EdgeId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for EdgeId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_uppercase().as_str() {
            "QA2" => Ok(EdgeId::QA2),
            "EA1" => Ok(EdgeId::EA1),
            "JH" => Ok(EdgeId::JH),
            "LA2" => Ok(EdgeId::LA2),
            "CA1" => Ok(EdgeId::CA1),
            "A1A2" => Ok(EdgeId::A1A2),
            _ => Err(Error::InvalidArgument(format!(
                "unknown edge {s:?}; expected one of QA2, EA1, JH, LA2, CA1, A1A2"
            ))),
        }
    }
}

/// Base planes of the two hyperball pieces.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Plane {
    /// `QEJ = pol(A3)`, base of `H1`.
    Qej,
    /// `HLC = pol(A0)`, base of `H2`.
    Hlc,
}

pub fn plane_form(o: &TruncatedOrthoscheme, plane: Plane) -> &ProjForm4 {
    match plane {
        Plane::Qej => &o.pi3,
        Plane::Hlc => &o.pi0,
    }
}

/// Point of `edge` at parameter `t`.
pub fn edge_point(o: &TruncatedOrthoscheme, edge: EdgeId, t: f64) -> Result<ProjPoint4> {
    let (p, q) = edge.endpoints();
    segment_point(o.vertex(p), o.vertex(q), t)
}

/// Distance from the point of `edge` at parameter `t` to `plane`.
pub fn edge_plane_distance(o: &TruncatedOrthoscheme, plane: Plane, edge: EdgeId, t: f64) -> Result<f64> {
    point_plane_distance(&edge_point(o, edge, t)?, plane_form(o, plane))
}

/// Distances of the point `(1, x, y, -t zH)` of `JH` to `HLC` and to `QEJ`,
/// written with the placement scalars only.
pub fn jh_closed_form(o: &TruncatedOrthoscheme, t: f64) -> Result<(f64, f64)> {
    let p = &o.placement;
    let r2 = 1.0 - p.x * p.x - p.y * p.y;
    let zh2 = p.z_h * p.z_h;
    let to_hlc = (r2 - t * zh2) / ((r2 - zh2) * (r2 - t * t * zh2)).sqrt();
    let to_qej = (r2 / (r2 - t * t * zh2)).sqrt();
    Ok((acosh_checked(to_hlc, "d(T,H)")?, acosh_checked(to_qej, "d(T,J)")?))
}

/// `(h1, h2)`: distances of the contact point to `QEJ` and to `HLC`.
pub fn heights_at(o: &TruncatedOrthoscheme, contact_edge: EdgeId, t: f64) -> Result<(f64, f64)> {
    let x = edge_point(o, contact_edge, t)?;
    Ok((point_plane_distance(&x, &o.pi3)?, point_plane_distance(&x, &o.pi0)?))
}

/// Largest violation of the hyperball-surface equation at the contact point,
/// `|<x,a>^2 - sinh^2(h)|` for unit `x`, `a`, over both balls.
pub fn contact_residual(o: &TruncatedOrthoscheme, edge: EdgeId, t: f64, h1: f64, h2: f64) -> Result<f64> {
    let x = edge_point(o, edge, t)?.unit();
    let mut worst: f64 = 0.0;
    for (a, h) in [(&o.pi3, h1), (&o.pi0, h2)] {
        let ac = a.coords();
        let s = lorentz_dot(&x, &ac) / lorentz_dot(&ac, &ac).sqrt();
        worst = worst.max((s * s - h.sinh().powi(2)).abs());
    }
    Ok(worst)
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct EdgeReport {
    pub edge: EdgeId,
    pub covered: bool,
    /// A maximal uncovered sub-interval, if any.
    pub witness: Option<Interval>,
    pub inside_h1: IntervalSet,
    pub inside_h2: IntervalSet,
}

/// Parts of `edge` inside `H1` (height `h1`) and `H2` (height `h2`).
pub fn edge_covered(o: &TruncatedOrthoscheme, edge: EdgeId, h1: f64, h2: f64) -> Result<EdgeReport> {
    let (p, q) = edge.endpoints();
    let (p, q) = (o.vertex(p), o.vertex(q));
    let inside_h1 = hyperball_segment(p, q, &o.pi3, h1)?;
    let inside_h2 = hyperball_segment(p, q, &o.pi0, h2)?;
    let gaps = inside_h1.union(&inside_h2).gaps(0.0, 1.0);
    let witness = gaps.into_iter().max_by(|a, b| a.len().total_cmp(&b.len()));
    Ok(EdgeReport { edge, covered: witness.is_none(), witness, inside_h1, inside_h2 })
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CoveringConfig {
    pub contact_edge: EdgeId,
    pub t: f64,
    pub h1: f64,
    pub h2: f64,
    pub feasible: bool,
    pub per_edge: Vec<EdgeReport>,
}

/// Configuration with the contact point at parameter `t` of `contact_edge`,
/// checked on all six edges.
pub fn coverage_check(o: &TruncatedOrthoscheme, contact_edge: EdgeId, t: f64) -> Result<CoveringConfig> {
    let (h1, h2) = heights_at(o, contact_edge, t)?;
    coverage_with_heights(o, contact_edge, t, h1, h2)
}

/// Coverage report for explicitly given heights.
pub fn coverage_with_heights(
    o: &TruncatedOrthoscheme,
    contact_edge: EdgeId,
    t: f64,
    h1: f64,
    h2: f64,
) -> Result<CoveringConfig> {
    let per_edge = EdgeId::ALL
        .iter()
        .map(|&e| edge_covered(o, e, h1, h2))
        .collect::<Result<Vec<_>>>()?;
    let feasible = per_edge.iter().all(|r| r.covered);
    Ok(CoveringConfig { contact_edge, t, h1, h2, feasible, per_edge })
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct HyperballPiece {
    pub base: Plane,
    pub height: f64,
    pub base_area: f64,
    pub volume: f64,
}

impl HyperballPiece {
    pub fn new(base: Plane, base_area: f64, height: f64) -> Result<Self> {
        let volume = hyperball_piece_volume(base_area, height)?;
        Ok(Self { base, height, base_area, volume })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct Volumes {
    #[serde(rename = "H1")]
    pub h1: f64,
    #[serde(rename = "H2")]
    pub h2: f64,
    #[serde(rename = "F")]
    pub f: f64,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Serialize)]
pub struct OptimizerTrace {
    pub method: &'static str,
    pub grid_samples: usize,
    pub tol: f64,
    pub evaluations: usize,
    pub iterations: usize,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct DensityResult {
    pub params: SchlafliParams,
    pub contact_edge: EdgeId,
    pub t: f64,
    pub h1: f64,
    pub h2: f64,
    pub density: f64,
    pub volumes: Volumes,
    pub feasible: bool,
    pub per_edge: Vec<EdgeReport>,
    pub optimizer: Option<OptimizerTrace>,
}

/// Precomputed volume and base areas of one orthoscheme.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct DensityContext {
    pub vol_f: f64,
    pub area_qej: f64,
    pub area_hlc: f64,
}

impl DensityContext {
    pub fn new(o: &TruncatedOrthoscheme) -> Result<Self> {
        let p = &o.params;
        let v = &o.vertices;
        Ok(Self {
            vol_f: orthoscheme_volume(p.u, p.v, p.w)?,
            area_qej: triangle_area(&v.q, &v.e, &v.j)?,
            area_hlc: triangle_area(&v.h, &v.l, &v.c)?,
        })
    }

    pub fn pieces(&self, h1: f64, h2: f64) -> Result<(HyperballPiece, HyperballPiece)> {
        Ok((
            HyperballPiece::new(Plane::Qej, self.area_qej, h1)?,
            HyperballPiece::new(Plane::Hlc, self.area_hlc, h2)?,
        ))
    }

    pub fn density(&self, h1: f64, h2: f64) -> Result<f64> {
        let (a, b) = self.pieces(h1, h2)?;
        Ok((a.volume + b.volume) / self.vol_f)
    }
}

/// Density of a configuration; feasibility is reported, not required.
pub fn density(o: &TruncatedOrthoscheme, config: &CoveringConfig) -> Result<DensityResult> {
    let ctx = DensityContext::new(o)?;
    density_in(o, &ctx, config, None)
}

fn density_in(
    o: &TruncatedOrthoscheme,
    ctx: &DensityContext,
    config: &CoveringConfig,
    optimizer: Option<OptimizerTrace>,
) -> Result<DensityResult> {
    let (a, b) = ctx.pieces(config.h1, config.h2)?;
    Ok(DensityResult {
        params: o.params,
        contact_edge: config.contact_edge,
        t: config.t,
        h1: config.h1,
        h2: config.h2,
        density: (a.volume + b.volume) / ctx.vol_f,
        volumes: Volumes { h1: a.volume, h2: b.volume, f: ctx.vol_f },
        feasible: config.feasible,
        per_edge: config.per_edge.clone(),
        optimizer,
    })
}

/// Density at `t`, or infinity when the configuration does not cover.
fn feasible_density(o: &TruncatedOrthoscheme, ctx: &DensityContext, edge: EdgeId, t: f64) -> f64 {
    let Ok((h1, h2)) = heights_at(o, edge, t) else {
        return f64::INFINITY;
    };
    let covers = EdgeId::ALL
        .iter()
        .all(|&e| edge_covered(o, e, h1, h2).map(|r| r.covered).unwrap_or(false));
    if !covers {
        return f64::INFINITY;
    }
    ctx.density(h1, h2).unwrap_or(f64::INFINITY)
}

/// Least-density covering with its contact point on `contact_edge`.
pub fn minimize_noncongruent(o: &TruncatedOrthoscheme, contact_edge: EdgeId) -> Result<DensityResult> {
    minimize_noncongruent_with(o, contact_edge, GRID_SAMPLES, GOLDEN_TOL)
}

/// [`minimize_noncongruent`] with an explicit grid size and tolerance.
pub fn minimize_noncongruent_with(
    o: &TruncatedOrthoscheme,
    contact_edge: EdgeId,
    samples: usize,
    tol: f64,
) -> Result<DensityResult> {
    let ctx = DensityContext::new(o)?;
    let m = grid_golden(|t| feasible_density(o, &ctx, contact_edge, t), 0.0, 1.0, samples, tol)
        .filter(|m| m.value.is_finite())
        .ok_or(Error::NoFeasiblePoint)?;
    let config = coverage_check(o, contact_edge, m.x)?;
    let trace = OptimizerTrace {
        method: "grid+golden",
        grid_samples: samples,
        tol,
        evaluations: m.evaluations,
        iterations: m.iterations,
    };
    density_in(o, &ctx, &config, Some(trace))
}

/// Equal-height covering: root of `d(T, HLC) - d(T, QEJ)` along `contact_edge`.
pub fn solve_congruent(o: &TruncatedOrthoscheme, contact_edge: EdgeId) -> Result<DensityResult> {
    let mut evaluations = 0;
    let gap = |t: f64| {
        evaluations += 1;
        match heights_at(o, contact_edge, t) {
            Ok((h1, h2)) => h2 - h1,
            Err(_) => f64::NAN,
        }
    };
    let t = bisect(gap, 0.0, 1.0, CONGRUENT_TOL).ok_or(Error::NoRoot)?;
    let config = coverage_check(o, contact_edge, t)?;
    let ctx = DensityContext::new(o)?;
    let trace = OptimizerTrace {
        method: "bisection",
        grid_samples: 0,
        tol: CONGRUENT_TOL,
        evaluations,
        iterations: 0,
    };
    density_in(o, &ctx, &config, Some(trace))
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct FamilyResult {
    pub u: f64,
    pub result: DensityResult,
}

/// Least `A1A2`-contact density of `{u, 3, 7}` at a fixed `u`.
pub fn family_member(u: f64) -> Result<DensityResult> {
    let o = embed(&classify_params(u, 3.0, 7.0)?)?;
    minimize_noncongruent(&o, EdgeId::A1A2)
}

/// Minimizes the `A1A2`-contact density of `{u, 3, 7}` over `u` in
/// `[u_lo, u_hi]` and `t`. For non-integer `u` the result is a local covering
/// that does not extend to a tiling.
pub fn optimize_family_u37(u_lo: f64, u_hi: f64) -> Result<FamilyResult> {
    if !(6.0 < u_lo && u_lo < u_hi && u_hi <= 7.0) {
        return Err(Error::InvalidArgument(format!(
            "u range [{u_lo}, {u_hi}] must lie in (6, 7]"
        )));
    }
    let m = grid_golden(
        |u| family_member(u).map(|r| r.density).unwrap_or(f64::INFINITY),
        u_lo,
        u_hi,
        FAMILY_GRID_SAMPLES,
        FAMILY_TOL,
    )
    .filter(|m| m.value.is_finite())
    .ok_or(Error::NoFeasiblePoint)?;
    let mut result = family_member(m.x)?;
    if let Some(trace) = result.optimizer.as_mut() {
        trace.method = "nested grid+golden";
        trace.evaluations += m.evaluations;
    }
    Ok(FamilyResult { u: m.x, result })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn o(u: f64, v: f64, w: f64) -> TruncatedOrthoscheme {
        embed(&classify_params(u, v, w).unwrap()).unwrap()
    }

    #[test]
    fn incidence_endpoints() {
        let t = o(7.0, 3.0, 7.0);
        assert!(edge_plane_distance(&t, Plane::Qej, EdgeId::JH, 0.0).unwrap() < 1e-12);
        assert!(edge_plane_distance(&t, Plane::Hlc, EdgeId::JH, 1.0).unwrap() < 1e-12);
        let (h1, _) = heights_at(&t, EdgeId::QA2, 0.0).unwrap();
        assert!(h1 < 1e-12);
    }

    #[test]
    fn jh_closed_form_matches_generic_route() {
        let t = o(7.0, 3.0, 7.0);
        for s in [0.1, 0.5, 0.9] {
            let (hlc, qej) = jh_closed_form(&t, s).unwrap();
            assert_close!(hlc, edge_plane_distance(&t, Plane::Hlc, EdgeId::JH, s).unwrap(), 1e-10);
            assert_close!(qej, edge_plane_distance(&t, Plane::Qej, EdgeId::JH, s).unwrap(), 1e-10);
        }
    }

    #[test]
    fn zero_heights_leave_a1a2_uncovered() {
        let t = o(7.0, 3.0, 7.0);
        let r = edge_covered(&t, EdgeId::A1A2, 0.0, 0.0).unwrap();
        assert!(!r.covered);
        let w = r.witness.unwrap();
        assert!(w.lo < 1e-9 && w.hi > 1.0 - 1e-9);
        let d = density(&t, &coverage_with_heights(&t, EdgeId::A1A2, 0.5, 0.0, 0.0).unwrap()).unwrap();
        assert_eq!(d.density, 0.0);
        assert!(!d.feasible);
    }

    #[test]
    fn large_heights_cover() {
        let t = o(3.0, 7.0, 3.0);
        let c = coverage_with_heights(&t, EdgeId::QA2, 0.0, 5.0, 5.0).unwrap();
        assert!(c.feasible);
    }

    #[test]
    fn edge_names_round_trip() {
        for e in EdgeId::ALL {
            assert_eq!(e.name().parse::<EdgeId>().unwrap(), e);
            let (m, _) = e.mirror();
            assert_eq!(m.mirror().0, e);
        }
        assert!("XY".parse::<EdgeId>().is_err());
    }

    #[test]
    fn congruent_contact_has_equal_heights() {
        let t = o(7.0, 3.0, 7.0);
        let r = solve_congruent(&t, EdgeId::A1A2).unwrap();
        assert_close!(r.h1, r.h2, 1e-10);
        let x = edge_point(&t, EdgeId::A1A2, r.t).unwrap();
        let d1 = crate::lorentz::distance(&t.vertices.a1, &x).unwrap();
        let d2 = crate::lorentz::distance(&x, &t.vertices.a2).unwrap();
        assert_close!(d1, d2, 1e-9);
        assert!(r.feasible);
    }

    #[test]
    fn contact_point_on_both_surfaces() {
        let t = o(4.0, 5.0, 4.0);
        for e in EdgeId::ALL {
            for s in [0.2, 0.7] {
                let (h1, h2) = heights_at(&t, e, s).unwrap();
                assert!(contact_residual(&t, e, s, h1, h2).unwrap() < 1e-10);
            }
        }
    }
}
