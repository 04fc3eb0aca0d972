//! Hyperball coverings of doubly truncated Coxeter orthoschemes.
//!
//! The crate works in the projective (Beltrami–Cayley–Klein) model of
//! hyperbolic space, realized in the Lorentz space `E^{1,n}`:
//!
//! - [`lorentz`]: bilinear form, distances, polarity, hyperball/segment intersection.
//! - [`orthoscheme`]: admissible Schläfli parameters `{u,v,w}`, Gram matrices and the
//!   coordinate realization of the truncated orthoscheme.
//! - [`volume`]: Lobachevsky function, orthoscheme volume, triangle areas, hyperball pieces.
//! - [`covering`]: two-hyperball covering configurations, feasibility and density minimization.
//! - [`planar`]: hypercycle coverings of the planar doubly truncated orthoscheme.

#![allow(clippy::neg_cmp_op_on_partial_ord)]

#[cfg(test)]
macro_rules! assert_close {
    ($a:expr, $b:expr, $tol:expr) => {{
        let (a, b, tol): (f64, f64, f64) = ($a, $b, $tol);
        assert!((a - b).abs() <= tol, "{} vs {} (tol {:e})", a, b, tol);
    }};
}

pub mod covering;
mod error;
pub mod interval;
pub mod lorentz;
pub mod optimize;
pub mod orthoscheme;
pub mod planar;
pub mod tables;
pub mod volume;

pub use error::{Error, Result};
