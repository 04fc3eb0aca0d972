mod common;

use std::f64::consts::PI;
use std::process::ExitCode;
use std::time::Instant;

use orthocover::covering::{contact_residual, coverage_check, heights_at, optimize_family_u37, EdgeId};
use orthocover::orthoscheme::{classify_params, closed_form_distances, coordinate_distances, embed, gram};
use orthocover::planar::{build_pentagon, density_2d, feasible_path, limit_density, limit_scan, stated_path};
use orthocover::tables::{table, TableKind};
use orthocover::volume::{hyperball_piece_volume, lobachevsky, orthoscheme_volume};
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

use common::*;

const TABLE_TOL: f64 = 5e-5;

type Criterion = (&'static str, fn() -> Outcome);

struct Outcome {
    pass: bool,
    detail: String,
}

fn outcome(pass: bool, detail: impl Into<String>) -> Outcome {
    Outcome { pass, detail: detail.into() }
}

fn table_criterion(kind: TableKind, reference: &[TableRow], check_equal_heights: bool) -> Outcome {
    let start = Instant::now();
    let rows = table(kind);
    let elapsed = start.elapsed().as_secs_f64();
    let mut worst: f64 = 0.0;
    let mut worst_equal: f64 = 0.0;
    let mut failures = Vec::new();
    for (got, &(uvw, delta, h1, h2)) in rows.iter().zip(reference) {
        match got {
            Ok(r) => {
                let err = (r.density - delta).abs().max((r.h1 - h1).abs()).max((r.h2 - h2).abs());
                worst = worst.max(err);
                worst_equal = worst_equal.max((r.h1 - r.h2).abs());
                if err > TABLE_TOL || !r.feasible {
                    failures.push(format!("{uvw:?} err {err:.1e} feasible {}", r.feasible));
                }
            }
            Err(e) => failures.push(format!("{uvw:?}: {e}")),
        }
    }
    let mut pass = failures.is_empty() && rows.len() == reference.len() && elapsed <= 10.0;
    let mut detail = format!("{} rows, worst error {worst:.2e}, {elapsed:.3} s", rows.len());
    if check_equal_heights {
        pass &= worst_equal <= 1e-8;
        detail.push_str(&format!(", worst |h1-h2| {worst_equal:.1e}"));
    }
    if !failures.is_empty() {
        detail.push_str(&format!("; failing: {}", failures.join(", ")));
    }
    outcome(pass, detail)
}

fn global_minimum() -> Outcome {
    let mut best: Option<((f64, f64, f64), f64, &str)> = None;
    for kind in TableKind::ALL {
        for r in table(kind).into_iter().flatten().filter(|r| r.feasible) {
            if best.is_none_or(|b| r.density < b.1) {
                best = Some(((r.params.u, r.params.v, r.params.w), r.density, kind.name()));
            }
        }
    }
    match best {
        Some((uvw, d, kind)) => outcome(
            uvw == (7.0, 3.0, 7.0) && (d - GLOBAL_MIN_DENSITY).abs() <= TABLE_TOL,
            format!("minimum {d:.6} at {uvw:?} ({kind})"),
        ),
        None => outcome(false, "no feasible row"),
    }
}

fn family_optimum() -> Outcome {
    let start = Instant::now();
    let r = optimize_family_u37(6.05, 7.0);
    let elapsed = start.elapsed().as_secs_f64();
    match r {
        Ok(f) => {
            let r = &f.result;
            let checks = [
                ("u*", f.u, FAMILY_U, 2e-4),
                ("delta*", r.density, FAMILY_DENSITY, 5e-5),
                ("h1", r.h1, FAMILY_H1, 5e-4),
                ("h2", r.h2, FAMILY_H2, 5e-4),
            ];
            let parts: Vec<_> = checks
                .iter()
                .map(|&(name, got, want, tol)| {
                    let ok = (got - want).abs() <= tol;
                    format!("{name} {got:.6} vs {want} [{}]", if ok { "ok" } else { "off" })
                })
                .collect();
            let pass = checks.iter().all(|&(_, got, want, tol)| (got - want).abs() <= tol) && elapsed <= 60.0;
            outcome(pass, format!("{}; {elapsed:.2} s", parts.join(", ")))
        }
        Err(e) => outcome(false, e.to_string()),
    }
}

fn feasibility_bullets() -> Outcome {
    let rows: Vec<_> = QA2_TABLE.iter().chain(&A1A2_TABLE).map(|r| r.0).collect();
    let grid: Vec<f64> = (0..=100).map(|i| i as f64 / 100.0).collect();
    let mut failures = Vec::new();
    for &(u, v, w) in &rows {
        let o = orthoscheme(u as f64, v as f64, w as f64);
        for edge in EdgeId::ALL {
            let expect_feasible = matches!(edge, EdgeId::A1A2 | EdgeId::QA2 | EdgeId::CA1);
            let configs: Vec<_> = grid.iter().map(|&t| coverage_check(&o, edge, t)).collect();
            if configs.iter().any(|c| c.is_err()) {
                failures.push(format!("{:?} {edge}: evaluation error", (u, v, w)));
                continue;
            }
            let configs: Vec<_> = configs.into_iter().flatten().collect();
            let ok = if expect_feasible {
                configs.iter().all(|c| c.feasible)
            } else {
                configs
                    .iter()
                    .any(|c| !c.feasible && c.per_edge.iter().any(|r| r.witness.is_some_and(|w| w.len() > 0.0)))
            };
            if !ok {
                failures.push(format!("{:?} {edge}", (u, v, w)));
            }
        }
    }
    let detail = format!("{} orthoschemes x 6 contact edges x {} t", rows.len(), grid.len());
    if failures.is_empty() {
        outcome(true, detail)
    } else {
        outcome(false, format!("{detail}; failing: {}", failures.join(", ")))
    }
}

fn property_suites() -> Outcome {
    let mut rng = StdRng::seed_from_u64(0x5eed);
    let mut triples = Vec::new();
    while triples.len() < 100 {
        let (u, v, w) = (rng.gen_range(3.0..12.0), rng.gen_range(3.0..12.0), rng.gen_range(3.0..12.0));
        if classify_params(u, v, w).is_ok() {
            triples.push((u, v, w));
        }
    }
    let mut inverse: f64 = 0.0;
    let mut routes: f64 = 0.0;
    let mut symmetry: f64 = 0.0;
    let mut contact: f64 = 0.0;
    for &(u, v, w) in &triples {
        let p = classify_params(u, v, w).unwrap();
        let g = gram(&p);
        inverse = inverse.max(g.inverse_residual()).max(g.numeric_inverse_gap());
        let o = match embed(&p) {
            Ok(o) => o,
            Err(_) => return outcome(false, format!("embedding failed for {}", p.label())),
        };
        let (Ok(c), Ok(r)) = (closed_form_distances(&o.gram), coordinate_distances(&o)) else {
            return outcome(false, format!("distance evaluation failed for {}", p.label()));
        };
        for (x, y) in [(c.qe, r.qe), (c.qj, r.qj), (c.ea1, r.ea1), (c.qa2, r.qa2), (c.jh, r.jh)] {
            routes = routes.max((x - y).abs());
        }
        let (Ok(a), Ok(b)) = (orthoscheme_volume(u, v, w), orthoscheme_volume(w, v, u)) else {
            return outcome(false, format!("volume failed for {}", p.label()));
        };
        symmetry = symmetry.max((a - b).abs());
        for edge in EdgeId::ALL {
            for t in [0.0, 0.3, 0.7, 1.0] {
                let res = heights_at(&o, edge, t).and_then(|(h1, h2)| contact_residual(&o, edge, t, h1, h2));
                contact = contact.max(res.unwrap_or(f64::INFINITY));
            }
        }
    }
    let mut series: f64 = 0.0;
    for i in 0..=200 {
        let x = PI * i as f64 / 200.0;
        series = series.max((lobachevsky(x) - lobachevsky_quadrature(x)).abs());
    }
    let mut derivative: f64 = 0.0;
    for &(area, h) in &[(0.2, 0.3), (0.5, 1.0), (1.3, 2.2), (0.05, 3.0)] {
        let step = 1e-5;
        let fd = (hyperball_piece_volume(area, h + step).unwrap() - hyperball_piece_volume(area, h - step).unwrap())
            / (2.0 * step);
        let exact = area * f64::cosh(h).powi(2);
        derivative = derivative.max(((fd - exact) / exact).abs());
    }
    let checks = [
        ("inverse", inverse, 1e-12),
        ("routes", routes, 1e-10),
        ("symmetry", symmetry, 1e-12),
        ("lobachevsky", series, 1e-10),
        ("derivative", derivative, 1e-6),
        ("contact", contact, 1e-10),
    ];
    let pass = checks.iter().all(|&(_, got, tol)| got <= tol);
    let detail: Vec<_> = checks.iter().map(|(n, got, tol)| format!("{n} {got:.1e}/{tol:.0e}")).collect();
    outcome(pass, format!("{} triples; {}", triples.len(), detail.join(", ")))
}

fn planar_limit() -> Outcome {
    let mut detail = Vec::new();
    let stated = limit_scan(&stated_path(1..=4));
    let stated_ok = match &stated {
        Ok(s) => {
            detail.push(format!(
                "stated path deltas {:?}, terminal gap {:.2e}",
                s.rows.iter().map(|r| format!("{:.6}", r.delta)).collect::<Vec<_>>(),
                s.terminal_gap
            ));
            s.strictly_decreasing && s.all_above_limit && s.terminal_gap <= 1e-2
        }
        Err(e) => {
            detail.push(format!("stated path: {e}"));
            false
        }
    };
    match limit_scan(&feasible_path(1..=4)) {
        Ok(s) => detail.push(format!(
            "companion path a=1+10^-3k: decreasing {}, above limit {}, k=4 gap {:.2e}",
            s.strictly_decreasing, s.all_above_limit, s.terminal_gap
        )),
        Err(e) => detail.push(format!("companion path: {e}")),
    }
    let mut fermi: f64 = 0.0;
    for (a, b) in [(1.2, 1.5), (1.1, 2.0), (1.001, 10.0), (1.000001, 100.0)] {
        match build_pentagon(a, b).and_then(|c| density_2d(&c)) {
            Ok(d) => {
                let c = &d.config;
                fermi = fermi
                    .max((d.area_h1 - fermi_band_area(c.base1, c.h1)).abs())
                    .max((d.area_h2 - fermi_band_area(c.base2, c.h2)).abs());
            }
            Err(_) => fermi = f64::INFINITY,
        }
    }
    detail.push(format!("limit {:.7}, Fermi quadrature gap {fermi:.1e}", limit_density()));
    outcome(stated_ok && fermi <= 1e-10, detail.join("; "))
}

fn main() -> ExitCode {
    let criteria: [Criterion; 8] = [
        ("non-congruent QA2 table", || table_criterion(TableKind::NoncongruentQa2, &QA2_TABLE, false)),
        ("non-congruent A1A2 table", || table_criterion(TableKind::NoncongruentA1a2, &A1A2_TABLE, false)),
        ("congruent table", || table_criterion(TableKind::Congruent, &CONGRUENT_TABLE, true)),
        ("least density over all tested rows", global_minimum),
        ("family {u,3,7} optimum", family_optimum),
        ("contact-edge feasibility", feasibility_bullets),
        ("property suites", property_suites),
        ("planar limit scan", planar_limit),
    ];
    let mut failed = 0;
    for (name, run) in criteria {
        let o = run();
        println!("{} {name}: {}", if o.pass { "PASS" } else { "FAIL" }, o.detail);
        failed += usize::from(!o.pass);
    }
    println!("{} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
