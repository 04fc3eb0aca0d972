//! Closed sub-intervals of a parameter range and their unions.

use serde::Serialize;

/// Gap below which neighbouring intervals are merged.
pub const MERGE_TOL: f64 = 1e-12;

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct Interval {
    pub lo: f64,
    pub hi: f64,
}

impl Interval {
    pub fn new(lo: f64, hi: f64) -> Self {
        debug_assert!(lo <= hi, "interval [{lo}, {hi}]");
        Self { lo, hi }
    }

    pub fn len(&self) -> f64 {
        self.hi - self.lo
    }

    pub fn is_empty(&self) -> bool {
        self.hi <= self.lo
    }

    pub fn contains(&self, t: f64) -> bool {
        self.lo <= t && t <= self.hi
    }
}

/// Sorted, pairwise disjoint intervals.
#[derive(Clone, Debug, Default, PartialEq, Serialize)]
pub struct IntervalSet {
    parts: Vec<Interval>,
}

impl IntervalSet {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn parts(&self) -> &[Interval] {
        &self.parts
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    pub fn contains(&self, t: f64) -> bool {
        self.parts.iter().any(|i| i.contains(t))
    }

    /// Adds an interval, merging anything closer than [`MERGE_TOL`].
    pub fn insert(&mut self, iv: Interval) {
        self.parts.push(iv);
        self.parts.sort_by(|a, b| a.lo.total_cmp(&b.lo));
        let mut merged: Vec<Interval> = Vec::with_capacity(self.parts.len());
        for iv in self.parts.drain(..) {
            match merged.last_mut() {
                Some(last) if iv.lo <= last.hi + MERGE_TOL => last.hi = last.hi.max(iv.hi),
                _ => merged.push(iv),
            }
        }
        self.parts = merged;
    }

    pub fn union(&self, other: &IntervalSet) -> IntervalSet {
        let mut out = self.clone();
        for iv in &other.parts {
            out.insert(*iv);
        }
        out
    }

    /// Maximal open gaps of `[lo, hi]` not covered by the set, ignoring gaps
    /// shorter than [`MERGE_TOL`].
    pub fn gaps(&self, lo: f64, hi: f64) -> Vec<Interval> {
        let mut out = Vec::new();
        let mut cursor = lo;
        for iv in &self.parts {
            if iv.hi < lo || iv.lo > hi {
                continue;
            }
            if iv.lo > cursor + MERGE_TOL {
                out.push(Interval::new(cursor, iv.lo.min(hi)));
            }
            cursor = cursor.max(iv.hi);
        }
        if hi > cursor + MERGE_TOL {
            out.push(Interval::new(cursor, hi));
        }
        out
    }

    pub fn covers(&self, lo: f64, hi: f64) -> bool {
        self.gaps(lo, hi).is_empty()
    }
}
