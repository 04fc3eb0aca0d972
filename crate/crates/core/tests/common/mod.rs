#![allow(dead_code)]

use orthocover::orthoscheme::{classify_params, embed, TruncatedOrthoscheme};

/// `(u, v, w)`, least density, `h1`, `h2`.
pub type TableRow = ((u32, u32, u32), f64, f64, f64);

pub const QA2_TABLE: [TableRow; 10] = [
    ((3, 7, 3), 1.28943, 0.92295, 1.55521),
    ((3, 8, 3), 1.34248, 0.67445, 1.35737),
    ((4, 5, 4), 1.54311, 0.73337, 1.51710),
    ((4, 6, 4), 1.66605, 0.52867, 1.37017),
    ((5, 4, 5), 1.79576, 0.77124, 1.66724),
    ((5, 5, 4), 2.00292, 0.42347, 1.79770),
    ((6, 4, 5), 2.23585, 0.53126, 1.87500),
    ((6, 5, 4), 2.60090, 0.31440, 2.00574),
    ((7, 3, 7), 2.31671, 1.08534, 2.14790),
    ((7, 4, 5), 2.77700, 0.42041, 2.04284),
];

pub const A1A2_TABLE: [TableRow; 10] = [
    ((3, 7, 3), 1.38712, 1.36405, 1.36405),
    ((3, 8, 3), 1.45345, 1.15039, 1.15039),
    ((4, 5, 4), 1.36411, 1.16974, 1.16974),
    ((4, 5, 5), 1.41055, 1.29237, 0.85103),
    ((5, 4, 5), 1.31751, 1.19095, 1.19095),
    ((5, 4, 6), 1.34255, 1.26048, 0.95234),
    ((6, 4, 5), 1.34255, 0.95234, 1.26048),
    ((6, 4, 6), 1.35938, 1.01481, 1.01481),
    ((7, 3, 7), 1.26829, 1.49903, 1.49903),
    ((7, 3, 8), 1.28228, 1.53709, 1.22995),
];

pub const CONGRUENT_TABLE: [TableRow; 10] = [
    ((3, 7, 3), 1.38712, 1.36405, 1.36405),
    ((3, 8, 3), 1.45345, 1.15039, 1.15039),
    ((4, 5, 4), 1.36411, 1.16974, 1.16974),
    ((4, 6, 4), 1.45714, 0.99583, 0.99583),
    ((5, 4, 5), 1.31751, 1.19095, 1.19095),
    ((5, 4, 6), 1.45345, 1.13375, 1.13375),
    ((6, 4, 5), 1.45345, 1.13375, 1.13375),
    ((6, 4, 6), 1.35938, 1.01481, 1.01481),
    ((7, 3, 7), 1.26829, 1.49903, 1.49903),
    ((7, 3, 8), 1.36586, 1.39916, 1.39916),
];

pub const FAMILY_U: f64 = 6.45953;
pub const FAMILY_DENSITY: f64 = 1.26454;
pub const FAMILY_H1: f64 = 1.50377;
pub const FAMILY_H2: f64 = 1.26423;
pub const GLOBAL_MIN_DENSITY: f64 = 1.26829;
pub const PLANAR_LIMIT: f64 = 1.1026578;

pub fn orthoscheme(u: f64, v: f64, w: f64) -> TruncatedOrthoscheme {
    embed(&classify_params(u, v, w).expect("admissible")).expect("embeds")
}

/// Every distinct parameter triple that appears in the tables.
pub fn table_orthoschemes() -> Vec<(u32, u32, u32)> {
    let mut all: Vec<_> = QA2_TABLE
        .iter()
        .chain(&A1A2_TABLE)
        .chain(&CONGRUENT_TABLE)
        .map(|r| r.0)
        .collect();
    all.sort_unstable();
    all.dedup();
    all
}

/// `-∫_0^x log|2 sin t| dt` by double-exponential quadrature, split at
/// multiples of `pi/2` so the log singularities sit only at interval ends.
pub fn lobachevsky_quadrature(x: f64) -> f64 {
    let f = |t: f64| -(2.0 * t.sin()).abs().ln();
    let hi = x.abs();
    let mut total = 0.0;
    let mut lo = 0.0;
    while lo < hi {
        let next = (lo + std::f64::consts::FRAC_PI_2).min(hi);
        total += quadrature::double_exponential::integrate(f, lo, next, 1e-14).integral;
        lo = next;
    }
    if x < 0.0 { -total } else { total }
}

/// `∫_0^h s cosh r dr` by double-exponential quadrature.
pub fn fermi_band_area(s: f64, h: f64) -> f64 {
    quadrature::double_exponential::integrate(|r: f64| s * r.cosh(), 0.0, h, 1e-14).integral
}
