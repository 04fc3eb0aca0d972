//! Parameter rows of the minimal-density tables and their evaluation.

use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::covering::{minimize_noncongruent_with, solve_congruent, DensityResult, EdgeId};
use crate::optimize::{GOLDEN_TOL, GRID_SAMPLES};
use crate::orthoscheme::{classify_params, embed};
use crate::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum TableKind {
    /// Least density with the contact point on `QA2`.
    NoncongruentQa2,
    /// Least density with the contact point on `A1A2`.
    NoncongruentA1a2,
    /// Equal heights, contact point on `A1A2`.
    Congruent,
}

impl TableKind {
    pub const ALL: [TableKind; 3] =
        [TableKind::NoncongruentQa2, TableKind::NoncongruentA1a2, TableKind::Congruent];

    pub fn rows(self) -> &'static [(u32, u32, u32)] {
        match self {
            TableKind::NoncongruentQa2 => &[
                (3, 7, 3),
                (3, 8, 3),
                (4, 5, 4),
                (4, 6, 4),
                (5, 4, 5),
                (5, 5, 4),
                (6, 4, 5),
                (6, 5, 4),
                (7, 3, 7),
                (7, 4, 5),
            ],
            TableKind::NoncongruentA1a2 => &[
                (3, 7, 3),
                (3, 8, 3),
                (4, 5, 4),
                (4, 5, 5),
                (5, 4, 5),
                (5, 4, 6),
                (6, 4, 5),
                (6, 4, 6),
                (7, 3, 7),
                (7, 3, 8),
            ],
            TableKind::Congruent => &[
                (3, 7, 3),
                (3, 8, 3),
                (4, 5, 4),
                (4, 6, 4),
                (5, 4, 5),
                (5, 4, 6),
                (6, 4, 5),
                (6, 4, 6),
                (7, 3, 7),
                (7, 3, 8),
            ],
        }
    }

    pub fn contact_edge(self) -> EdgeId {
        match self {
            TableKind::NoncongruentQa2 => EdgeId::QA2,
            TableKind::NoncongruentA1a2 | TableKind::Congruent => EdgeId::A1A2,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            TableKind::NoncongruentQa2 => "qa2",
            TableKind::NoncongruentA1a2 => "a1a2",
            TableKind::Congruent => "congruent",
        }
    }
}

impl fmt::Display for TableKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for TableKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "qa2" | "noncongruent-qa2" => Ok(TableKind::NoncongruentQa2),
            "a1a2" | "noncongruent-a1a2" => Ok(TableKind::NoncongruentA1a2),
            "congruent" => Ok(TableKind::Congruent),
            _ => Err(Error::InvalidArgument(format!(
                "unknown table {s:?}; expected qa2, a1a2 or congruent"
            ))),
        }
    }
}

/// Evaluates one row.
pub fn table_row(kind: TableKind, row: (u32, u32, u32)) -> Result<DensityResult> {
    table_row_with(kind, row, GRID_SAMPLES, GOLDEN_TOL)
}

/// [`table_row`] with an explicit optimizer grid and tolerance.
pub fn table_row_with(
    kind: TableKind,
    (u, v, w): (u32, u32, u32),
    samples: usize,
    tol: f64,
) -> Result<DensityResult> {
    let o = embed(&classify_params(u as f64, v as f64, w as f64)?)?;
    match kind {
        TableKind::Congruent => solve_congruent(&o, kind.contact_edge()),
        _ => minimize_noncongruent_with(&o, kind.contact_edge(), samples, tol),
    }
}

/// Evaluates every row, one thread per row, in table order.
pub fn table(kind: TableKind) -> Vec<Result<DensityResult>> {
    table_with(kind, GRID_SAMPLES, GOLDEN_TOL)
}

/// [`table`] with an explicit optimizer grid and tolerance.
pub fn table_with(kind: TableKind, samples: usize, tol: f64) -> Vec<Result<DensityResult>> {
    std::thread::scope(|s| {
        let handles: Vec<_> = kind
            .rows()
            .iter()
            .map(|&row| s.spawn(move || table_row_with(kind, row, samples, tol)))
            .collect();
        handles.into_iter().map(|h| h.join().expect("table row worker panicked")).collect()
    })
}
