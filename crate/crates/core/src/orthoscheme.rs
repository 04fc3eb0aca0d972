//! Doubly truncated Coxeter orthoschemes `{u, v, w}`.
//!
//! The orthoscheme `A0 A1 A2 A3` has essential dihedral angles `pi/u`, `pi/v`,
//! `pi/w`. Its principal vertices `A0`, `A3` are outer points, cut off by their
//! polar planes `pi0 = HLC` and `pi3 = QEJ`:
//!
//! ```text
//! J = pi3 ∩ A0A3   Q = pi3 ∩ A2A3   E = pi3 ∩ A1A3
//! H = pi0 ∩ A0A3   L = pi0 ∩ A0A2   C = pi0 ∩ A0A1
//! ```
//!
//! The realization places `Q` at the model centre, `pi3` at `x3 = 0` and the
//! body in `x3 < 0`:
//! `Q=(1,0,0,0)`, `E=(1,0,y,0)`, `J=(1,x,y,0)`, `A0=(1,x,y,-z0)`,
//! `A1=(1,0,y,-z1)`, `A2=(1,0,0,-z2)`, `H=(1,x,y,-zH)`.

use std::f64::consts::PI;
use std::fmt;

use serde::Serialize;

use crate::lorentz::{self, acosh_checked, bilinear, lorentz_dot, Homogeneous, ProjForm4, ProjPoint4};
use crate::{Error, Result};

type Mat4 = [[f64; 4]; 4];

/// The four infinite integer series with two outer principal vertices.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Series {
    /// `u >= 3, v >= 7, w >= 3`
    VAtLeast7,
    /// `u >= 4, v in {5, 6}, w >= 4`
    V5Or6,
    /// `u >= 5, v = 4, w >= 5`
    V4,
    /// `u >= 7, v = 3, w >= 7`
    V3,
    /// Real parameters: a local configuration that does not extend to a tiling.
    NonExtendable,
}

impl Series {
    pub fn is_extendable(self) -> bool {
        self != Series::NonExtendable
    }
}

impl fmt::Display for Series {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Series::VAtLeast7 => "u>=3, v>=7, w>=3",
            Series::V5Or6 => "u>=4, v=5,6, w>=4",
            Series::V4 => "u>=5, v=4, w>=5",
            Series::V3 => "u>=7, v=3, w>=7",
            Series::NonExtendable => "non-extendable (real parameters)",
        })
    }
}

/// Admissible Schläfli parameters.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct SchlafliParams {
    pub u: f64,
    pub v: f64,
    pub w: f64,
    pub series: Series,
}

impl SchlafliParams {
    /// `B = det(b) = sin^2(pi/u) sin^2(pi/w) - cos^2(pi/v)`.
    pub fn determinant(&self) -> f64 {
        determinant(self.u, self.v, self.w)
    }

    /// Parameters of the mirror orthoscheme `{w, v, u}`.
    pub fn dual(&self) -> SchlafliParams {
        classify_params(self.w, self.v, self.u).expect("dual of admissible parameters")
    }

    pub fn label(&self) -> String {
        format!("F_{}^({},{})", fmt_param(self.u), fmt_param(self.v), fmt_param(self.w))
    }
}

fn fmt_param(x: f64) -> String {
    if is_integer(x) {
        format!("{}", x.round() as i64)
    } else {
        format!("{x}")
    }
}

fn is_integer(x: f64) -> bool {
    (x - x.round()).abs() < 1e-12
}

fn determinant(u: f64, v: f64, w: f64) -> f64 {
    (PI / u).sin().powi(2) * (PI / w).sin().powi(2) - (PI / v).cos().powi(2)
}

/// Checks admissibility and tags the series.
pub fn classify_params(u: f64, v: f64, w: f64) -> Result<SchlafliParams> {
    for (name, x) in [("u", u), ("v", v), ("w", w)] {
        if !x.is_finite() || x < 3.0 {
            return Err(Error::Inadmissible(format!("{name} = {x} must be a real >= 3")));
        }
    }
    let b = determinant(u, v, w);
    if !(b < 0.0) {
        return Err(Error::Inadmissible(format!(
            "not hyperbolic: B = sin^2(pi/u) sin^2(pi/w) - cos^2(pi/v) = {b:e} >= 0"
        )));
    }
    if 1.0 / u + 1.0 / v >= 0.5 {
        return Err(Error::Inadmissible(format!(
            "1/u + 1/v = {} >= 1/2: principal vertex A3 is not outer",
            1.0 / u + 1.0 / v
        )));
    }
    if 1.0 / w + 1.0 / v >= 0.5 {
        return Err(Error::Inadmissible(format!(
            "1/w + 1/v = {} >= 1/2: principal vertex A0 is not outer",
            1.0 / w + 1.0 / v
        )));
    }
    let series = if is_integer(u) && is_integer(v) && is_integer(w) {
        let v_int = v.round() as i64;
        match v_int {
            3 => Series::V3,
            4 => Series::V4,
            5 | 6 => Series::V5Or6,
            _ => Series::VAtLeast7,
        }
    } else {
        Series::NonExtendable
    };
    Ok(SchlafliParams { u, v, w, series })
}

/// Coxeter–Schläfli matrix `b` and its inverse `h`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct GramPair {
    pub b: Mat4,
    pub h: Mat4,
    /// `det(b)`
    pub det: f64,
}

impl GramPair {
    /// `max |(b h - I)_ij|`.
    pub fn inverse_residual(&self) -> f64 {
        let mut worst: f64 = 0.0;
        for i in 0..4 {
            for j in 0..4 {
                let s: f64 = (0..4).map(|k| self.b[i][k] * self.h[k][j]).sum();
                let target = if i == j { 1.0 } else { 0.0 };
                worst = worst.max((s - target).abs());
            }
        }
        worst
    }

    /// Entrywise difference between the closed-form `h` and a numeric inverse of `b`.
    pub fn numeric_inverse_gap(&self) -> f64 {
        let b = nalgebra::Matrix4::from_fn(|i, j| self.b[i][j]);
        let Some(inv) = b.try_inverse() else {
            return f64::INFINITY;
        };
        let mut worst: f64 = 0.0;
        for i in 0..4 {
            for j in 0..4 {
                worst = worst.max((inv[(i, j)] - self.h[i][j]).abs());
            }
        }
        worst
    }
}

/// Builds `b` from the dihedral angles and `h` from its closed-form inverse.
pub fn gram(params: &SchlafliParams) -> GramPair {
    let (cu, cv, cw) = ((PI / params.u).cos(), (PI / params.v).cos(), (PI / params.w).cos());
    let (su2, sw2) = ((PI / params.u).sin().powi(2), (PI / params.w).sin().powi(2));
    let cv2 = cv * cv;
    let det = params.determinant();
    let b = [
        [1.0, -cu, 0.0, 0.0],
        [-cu, 1.0, -cv, 0.0],
        [0.0, -cv, 1.0, -cw],
        [0.0, 0.0, -cw, 1.0],
    ];
    let raw = [
        [sw2 - cv2, cu * sw2, cu * cv, cu * cv * cw],
        [cu * sw2, sw2, cv, cw * cv],
        [cu * cv, cv, su2, cw * su2],
        [cu * cv * cw, cw * cv, cw * su2, su2 - cv2],
    ];
    let h = raw.map(|row| row.map(|x| x / det));
    GramPair { b, h, det }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum Vertex {
    Q,
    E,
    J,
    H,
    L,
    C,
    A1,
    A2,
}

impl Vertex {
    pub const ALL: [Vertex; 8] =
        [Vertex::Q, Vertex::E, Vertex::J, Vertex::H, Vertex::L, Vertex::C, Vertex::A1, Vertex::A2];

    /// Image under the relabeling `0<->3, 1<->2` that maps `{u,v,w}` to `{w,v,u}`.
    pub fn mirror(self) -> Vertex {
        match self {
            Vertex::Q => Vertex::C,
            Vertex::C => Vertex::Q,
            Vertex::E => Vertex::L,
            Vertex::L => Vertex::E,
            Vertex::J => Vertex::H,
            Vertex::H => Vertex::J,
            Vertex::A1 => Vertex::A2,
            Vertex::A2 => Vertex::A1,
        }
    }
}

impl fmt::Display for Vertex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

/// Proper vertices of the truncated body.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct Vertices {
    pub q: ProjPoint4,
    pub e: ProjPoint4,
    pub j: ProjPoint4,
    pub h: ProjPoint4,
    pub l: ProjPoint4,
    pub c: ProjPoint4,
    pub a1: ProjPoint4,
    pub a2: ProjPoint4,
}

/// Scalars of the coordinate pattern.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct Placement {
    pub x: f64,
    pub y: f64,
    pub z0: f64,
    pub z1: f64,
    pub z2: f64,
    pub z_h: f64,
    /// `L = (1-t1) A2 + t1 A0` in the affine chart.
    pub t1: f64,
    /// `C = (1-t2) A1 + t2 A0` in the affine chart.
    pub t2: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct TruncatedOrthoscheme {
    pub params: SchlafliParams,
    pub gram: GramPair,
    pub vertices: Vertices,
    pub a0: ProjPoint4,
    pub a3: ProjPoint4,
    /// `pol(A0)`, the plane `HLC`.
    pub pi0: ProjForm4,
    /// `pol(A3)`, the plane `QEJ`.
    pub pi3: ProjForm4,
    pub placement: Placement,
    /// Vertex vectors `a_i` with `<a_i, a_j> = h_ij` exactly (no rescaling).
    pub vertex_vectors: Mat4,
}

impl TruncatedOrthoscheme {
    pub fn vertex(&self, v: Vertex) -> &ProjPoint4 {
        let vs = &self.vertices;
        match v {
            Vertex::Q => &vs.q,
            Vertex::E => &vs.e,
            Vertex::J => &vs.j,
            Vertex::H => &vs.h,
            Vertex::L => &vs.l,
            Vertex::C => &vs.c,
            Vertex::A1 => &vs.a1,
            Vertex::A2 => &vs.a2,
        }
    }
}

fn inner(h: &Mat4, x: &[f64; 4], y: &[f64; 4]) -> f64 {
    let mut s = 0.0;
    for i in 0..4 {
        for j in 0..4 {
            s += x[i] * h[i][j] * y[j];
        }
    }
    s
}

fn axpy(a: f64, x: &[f64; 4], y: &[f64; 4]) -> [f64; 4] {
    std::array::from_fn(|i| a * x[i] + y[i])
}

fn scaled(a: f64, x: &[f64; 4]) -> [f64; 4] {
    x.map(|v| a * v)
}

fn basis(i: usize) -> [f64; 4] {
    std::array::from_fn(|k| if k == i { 1.0 } else { 0.0 })
}

/// Realizes the orthoscheme in the coordinate pattern of the module docs.
pub fn embed(params: &SchlafliParams) -> Result<TruncatedOrthoscheme> {
    let gram = gram(params);
    let h = &gram.h;
    let fail = |what: &str| Err(Error::EmbeddingFailure(what.to_string()));

    // Lorentzian Gram-Schmidt in the coefficient space of a0..a3, in the
    // order a3 (spacelike), q (timelike), a1, a0.
    if !(h[3][3] > 0.0 && h[0][0] > 0.0) {
        return fail("principal vertices are not outer");
    }
    let f3 = scaled(1.0 / h[3][3].sqrt(), &basis(3));
    let q_coef = axpy(-h[2][3], &basis(3), &scaled(h[3][3], &basis(2)));
    let nq = inner(h, &q_coef, &q_coef);
    if !(nq < 0.0) {
        return fail("truncation point Q is not proper");
    }
    let f0 = scaled(1.0 / (-nq).sqrt(), &q_coef);
    let reject = |v: [f64; 4], frame: &[([f64; 4], f64)]| {
        frame.iter().fold(v, |acc, (f, sign)| axpy(-sign * inner(h, &v, f), f, &acc))
    };
    let g = reject(basis(1), &[(f3, 1.0), (f0, -1.0)]);
    let ng = inner(h, &g, &g);
    if !(ng > 0.0) {
        return fail("Gram matrix has wrong signature (third frame vector)");
    }
    let mut f2 = scaled(1.0 / ng.sqrt(), &g);
    let k = reject(basis(0), &[(f3, 1.0), (f0, -1.0), (f2, 1.0)]);
    let nk = inner(h, &k, &k);
    if !(nk > 0.0) {
        return fail("Gram matrix has wrong signature (fourth frame vector)");
    }
    let mut f1 = scaled(1.0 / nk.sqrt(), &k);

    let e_coef = axpy(-h[1][3], &basis(3), &scaled(h[3][3], &basis(1)));
    let j_coef = axpy(-h[0][3], &basis(3), &scaled(h[3][3], &basis(0)));
    if inner(h, &e_coef, &f2) < 0.0 {
        f2 = scaled(-1.0, &f2);
    }
    if inner(h, &j_coef, &f1) < 0.0 {
        f1 = scaled(-1.0, &f1);
    }
    let coords = |c: &[f64; 4]| -> [f64; 4] {
        [-inner(h, c, &f0), inner(h, c, &f1), inner(h, c, &f2), inner(h, c, &f3)]
    };

    let vertex_vectors: Mat4 = std::array::from_fn(|i| coords(&basis(i)));
    let [a0v, a1v, a2v, a3v] = vertex_vectors;
    // Truncation points: q ~ a2 h33 - a3 h23 and its analogues.
    let comb = |x: &[f64; 4], cx: f64, y: &[f64; 4], cy: f64| -> [f64; 4] {
        std::array::from_fn(|i| cx * x[i] - cy * y[i])
    };
    let raw = [
        (Vertex::Q, comb(&a2v, h[3][3], &a3v, h[2][3])),
        (Vertex::E, comb(&a1v, h[3][3], &a3v, h[1][3])),
        (Vertex::J, comb(&a0v, h[3][3], &a3v, h[0][3])),
        (Vertex::H, comb(&a3v, h[0][0], &a0v, h[0][3])),
        (Vertex::L, comb(&a2v, h[0][0], &a0v, h[0][2])),
        (Vertex::C, comb(&a1v, h[0][0], &a0v, h[0][1])),
        (Vertex::A1, a1v),
        (Vertex::A2, a2v),
    ];
    let mut pts = Vec::with_capacity(8);
    for (name, c) in raw {
        if !(lorentz_dot(&c, &c) < 0.0) {
            return Err(Error::EmbeddingFailure(format!("vertex {name} is not proper")));
        }
        pts.push(ProjPoint4::new(c)?);
    }
    let vertices = Vertices {
        q: pts[0],
        e: pts[1],
        j: pts[2],
        h: pts[3],
        l: pts[4],
        c: pts[5],
        a1: pts[6],
        a2: pts[7],
    };

    let a0 = ProjPoint4::raw(unit_spacelike(&a0v))?;
    let mut a3c = unit_spacelike(&a3v);
    // a3 lies along f3 exactly; drop roundoff in the other components.
    a3c = [0.0, 0.0, 0.0, a3c[3].signum()];
    let a3 = ProjPoint4::raw(a3c)?;
    if !(a0.norm_sq() > 0.0) {
        return fail("A0 is not outer");
    }
    let pi0 = a0.polar();
    let pi3 = a3.polar();

    let a0_chart = a0
        .chart()
        .ok_or_else(|| Error::EmbeddingFailure("A0 lies at infinity of the chart".into()))?;
    let a1c = vertices.a1.coords();
    let a2c = vertices.a2.coords();
    let t1 = incidence_parameter(&a2c, &a0_chart, &pi0);
    let t2 = incidence_parameter(&a1c, &a0_chart, &pi0);
    let placement = Placement {
        x: vertices.j.coords()[1],
        y: vertices.e.coords()[2],
        z0: -a0_chart[3],
        z1: -a1c[3],
        z2: -a2c[3],
        z_h: -vertices.h.coords()[3],
        t1,
        t2,
    };

    Ok(TruncatedOrthoscheme {
        params: *params,
        gram,
        vertices,
        a0,
        a3,
        pi0,
        pi3,
        placement,
        vertex_vectors,
    })
}

fn unit_spacelike(c: &[f64; 4]) -> [f64; 4] {
    let n = lorentz_dot(c, c).sqrt();
    c.map(|v| v / n)
}

/// Parameter `t` with `<(1-t) p + t q, a> = 0`, both in the affine chart.
fn incidence_parameter(p: &[f64; 4], q: &[f64; 4], a: &ProjForm4) -> f64 {
    let ap = lorentz_dot(p, &a.coords());
    let aq = lorentz_dot(q, &a.coords());
    ap / (ap - aq)
}

/// Distances along the edges given in closed form by the `h_ij`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct EdgeDistances {
    pub qe: f64,
    pub qj: f64,
    pub ea1: f64,
    pub qa2: f64,
    pub jh: f64,
}

/// `d(Q,E)`, `d(Q,J)`, `d(E,A1)`, `d(Q,A2)`, `d(J,H)` from the `h_ij`.
pub fn closed_form_distances(gram: &GramPair) -> Result<EdgeDistances> {
    let h = &gram.h;
    let m22 = h[2][2] * h[3][3] - h[2][3].powi(2);
    let m11 = h[1][1] * h[3][3] - h[1][3].powi(2);
    let m00 = h[0][0] * h[3][3] - h[0][3].powi(2);
    let cosh_qe = (h[1][3] * h[2][3] - h[1][2] * h[3][3]) / (m22 * m11).sqrt();
    let cosh_qj = (h[0][3] * h[2][3] - h[0][2] * h[3][3]) / (m22 * m00).sqrt();
    let cosh_ea1 = (m11 / (h[1][1] * h[3][3])).sqrt();
    let cosh_qa2 = (m22 / (h[2][2] * h[3][3])).sqrt();
    let cosh_jh = -h[0][3] / (h[0][0] * h[3][3]).sqrt();
    Ok(EdgeDistances {
        qe: acosh_checked(cosh_qe, "d(Q,E)")?,
        qj: acosh_checked(cosh_qj, "d(Q,J)")?,
        ea1: acosh_checked(cosh_ea1, "d(E,A1)")?,
        qa2: acosh_checked(cosh_qa2, "d(Q,A2)")?,
        jh: acosh_checked(cosh_jh, "d(J,H)")?,
    })
}

/// The same five distances measured on the realized coordinates.
pub fn coordinate_distances(o: &TruncatedOrthoscheme) -> Result<EdgeDistances> {
    let v = &o.vertices;
    Ok(EdgeDistances {
        qe: lorentz::distance(&v.q, &v.e)?,
        qj: lorentz::distance(&v.q, &v.j)?,
        ea1: lorentz::distance(&v.e, &v.a1)?,
        qa2: lorentz::distance(&v.q, &v.a2)?,
        jh: lorentz::distance(&v.j, &v.h)?,
    })
}

/// Largest `|<x, a>|` over the vertices that must lie on the polar planes.
pub fn incidence_residual(o: &TruncatedOrthoscheme) -> f64 {
    let v = &o.vertices;
    let on3 = [v.q, v.e, v.j].map(|p| bilinear(&p, &o.pi3).abs());
    let on0 = [v.h, v.l, v.c].map(|p| bilinear(&p, &o.pi0).abs());
    on3.into_iter().chain(on0).fold(0.0, f64::max)
}
