mod common;

use std::f64::consts::PI;

use orthocover::covering::{contact_residual, coverage_check, density, heights_at, EdgeId};
use orthocover::lorentz::{Homogeneous, ProjPoint4};
use orthocover::orthoscheme::{
    classify_params, closed_form_distances, coordinate_distances, embed, gram, incidence_residual,
};
use orthocover::volume::{hyperball_piece_volume, lobachevsky, orthoscheme_volume, triangle_area};
use proptest::prelude::*;

use common::lobachevsky_quadrature;

/// Real parameter triples that pass admissibility and embed.
fn admissible() -> impl Strategy<Value = (f64, f64, f64)> {
    (3.0f64..12.0, 3.0f64..12.0, 3.0f64..12.0)
        .prop_filter("admissible", |&(u, v, w)| classify_params(u, v, w).is_ok())
}

fn max_gap(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| (x - y).abs()).fold(0.0, f64::max)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn closed_form_inverse_matches_numeric((u, v, w) in admissible()) {
        let g = gram(&classify_params(u, v, w).unwrap());
        prop_assert!(g.inverse_residual() <= 1e-12, "residual {}", g.inverse_residual());
        prop_assert!(g.numeric_inverse_gap() <= 1e-12, "gap {}", g.numeric_inverse_gap());
    }

    #[test]
    fn edge_lengths_agree_between_routes((u, v, w) in admissible()) {
        let p = classify_params(u, v, w).unwrap();
        let o = embed(&p).unwrap();
        let c = closed_form_distances(&o.gram).unwrap();
        let r = coordinate_distances(&o).unwrap();
        let gap = max_gap(&[c.qe, c.qj, c.ea1, c.qa2, c.jh], &[r.qe, r.qj, r.ea1, r.qa2, r.jh]);
        prop_assert!(gap <= 1e-10, "{} gap {gap:e}", p.label());
        prop_assert!(incidence_residual(&o) <= 1e-12);
    }

    #[test]
    fn volume_is_symmetric((u, v, w) in admissible()) {
        let a = orthoscheme_volume(u, v, w).unwrap();
        let b = orthoscheme_volume(w, v, u).unwrap();
        prop_assert!(a > 0.0);
        prop_assert!((a - b).abs() <= 1e-12, "{a} vs {b}");
    }

    #[test]
    fn base_areas_swap_under_reversal((u, v, w) in admissible()) {
        let o = embed(&classify_params(u, v, w).unwrap()).unwrap();
        let r = embed(&classify_params(w, v, u).unwrap()).unwrap();
        let (ov, rv) = (&o.vertices, &r.vertices);
        let qej = triangle_area(&ov.q, &ov.e, &ov.j).unwrap();
        let hlc = triangle_area(&rv.h, &rv.l, &rv.c).unwrap();
        prop_assert!((qej - hlc).abs() <= 1e-10, "{qej} vs {hlc}");
    }

    #[test]
    fn triangle_area_ignores_order_and_scale((u, v, w) in admissible(), k in 0.1f64..10.0) {
        let o = embed(&classify_params(u, v, w).unwrap()).unwrap();
        let vs = &o.vertices;
        let a = triangle_area(&vs.h, &vs.l, &vs.c).unwrap();
        let b = triangle_area(&vs.c, &vs.h, &vs.l).unwrap();
        let scaled = ProjPoint4::raw(vs.l.coords().map(|x| k * x)).unwrap();
        let c = triangle_area(&vs.h, &scaled, &vs.c).unwrap();
        prop_assert!((a - b).abs() <= 1e-12 && (a - c).abs() <= 1e-12);
    }

    #[test]
    fn lobachevsky_is_odd_and_periodic(x in -10.0f64..10.0) {
        prop_assert!((lobachevsky(-x) + lobachevsky(x)).abs() <= 1e-11);
        prop_assert!((lobachevsky(x + PI) - lobachevsky(x)).abs() <= 1e-11);
    }

    #[test]
    fn lobachevsky_matches_quadrature(x in 0.0f64..PI) {
        let gap = (lobachevsky(x) - lobachevsky_quadrature(x)).abs();
        prop_assert!(gap <= 1e-10, "x = {x}: gap {gap:e}");
    }

    #[test]
    fn piece_volume_derivative_matches_finite_differences(area in 0.01f64..2.0, h in 0.05f64..3.0) {
        let step = 1e-5;
        let fd = (hyperball_piece_volume(area, h + step).unwrap()
            - hyperball_piece_volume(area, h - step).unwrap())
            / (2.0 * step);
        let exact = area * h.cosh().powi(2);
        prop_assert!(((fd - exact) / exact).abs() <= 1e-6, "fd {fd} exact {exact}");
    }

    #[test]
    fn contact_point_lies_on_both_hyperballs(
        (u, v, w) in admissible(),
        e in 0usize..6,
        t in 0.0f64..=1.0,
    ) {
        let o = embed(&classify_params(u, v, w).unwrap()).unwrap();
        let edge = EdgeId::ALL[e];
        let (h1, h2) = heights_at(&o, edge, t).unwrap();
        prop_assert!(contact_residual(&o, edge, t, h1, h2).unwrap() <= 1e-10);
    }

    #[test]
    fn feasible_densities_exceed_one((u, v, w) in admissible(), e in 0usize..6, t in 0.0f64..=1.0) {
        let o = embed(&classify_params(u, v, w).unwrap()).unwrap();
        let cfg = coverage_check(&o, EdgeId::ALL[e], t).unwrap();
        let r = density(&o, &cfg).unwrap();
        let closure = r.density * r.volumes.f - (r.volumes.h1 + r.volumes.h2);
        prop_assert!(closure.abs() <= 1e-12 * r.volumes.f.max(1.0));
        if r.feasible {
            prop_assert!(r.density > 1.0, "{} density {}", o.params.label(), r.density);
        }
    }
}
