//! Closed intervals and finite unions of closed intervals.

use serde::Serialize;

use crate::MERGE_TOL;

/// A closed interval `[lo, hi]` with `lo <= hi`.
#[derive(Copy, Clone, Debug, PartialEq, Serialize)]
pub struct Interval {
    pub lo: f64,
    pub hi: f64,
}

impl Interval {
    /// Builds `[lo, hi]`; `None` when `lo > hi` (the empty pullback case).
    pub fn new(lo: f64, hi: f64) -> Option<Interval> {
        (lo <= hi).then_some(Interval { lo, hi })
    }

    pub fn point(x: f64) -> Interval {
        Interval { lo: x, hi: x }
    }

    pub fn len(&self) -> f64 {
        self.hi - self.lo
    }

    pub fn contains(&self, x: f64) -> bool {
        self.lo <= x && x <= self.hi
    }

    pub fn intersect(&self, other: &Interval) -> Option<Interval> {
        Interval::new(self.lo.max(other.lo), self.hi.min(other.hi))
    }

    pub fn midpoint(&self) -> f64 {
        0.5 * (self.lo + self.hi)
    }

    /// Distance from `x` to this interval (0 inside).
    pub fn dist(&self, x: f64) -> f64 {
        if x < self.lo {
            self.lo - x
        } else if x > self.hi {
            x - self.hi
        } else {
            0.0
        }
    }

    /// Affine image `a*x + b` of the interval, endpoints sorted.
    pub fn affine_image(&self, a: f64, b: f64) -> Interval {
        let (u, v) = (a * self.lo + b, a * self.hi + b);
        Interval { lo: u.min(v), hi: u.max(v) }
    }
}

/// A finite union of closed intervals, kept sorted and merged: neighboring
/// parts closer than [`MERGE_TOL`] are fused into one.
#[derive(Clone, Debug, Default, PartialEq, Serialize)]
#[serde(transparent)]
pub struct IntervalSet {
    parts: Vec<Interval>,
}

impl IntervalSet {
    pub fn empty() -> IntervalSet {
        IntervalSet { parts: Vec::new() }
    }

    pub fn from_parts(mut parts: Vec<Interval>) -> IntervalSet {
        parts.retain(|p| p.lo <= p.hi);
        parts.sort_by(|a, b| a.lo.total_cmp(&b.lo));
        let mut merged: Vec<Interval> = Vec::with_capacity(parts.len());
        for p in parts {
            match merged.last_mut() {
                Some(last) if p.lo <= last.hi + MERGE_TOL => last.hi = last.hi.max(p.hi),
                _ => merged.push(p),
            }
        }
        IntervalSet { parts: merged }
    }

    pub fn parts(&self) -> &[Interval] {
        &self.parts
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    pub fn measure(&self) -> f64 {
        self.parts.iter().map(Interval::len).sum()
    }

    pub fn contains(&self, x: f64) -> bool {
        self.parts.iter().any(|p| p.contains(x))
    }

    /// Smallest closed interval containing the set; `None` when empty.
    pub fn hull(&self) -> Option<Interval> {
        match (self.parts.first(), self.parts.last()) {
            (Some(a), Some(b)) => Some(Interval { lo: a.lo, hi: b.hi }),
            _ => None,
        }
    }

    pub fn union(&self, other: &IntervalSet) -> IntervalSet {
        let mut parts = self.parts.clone();
        parts.extend_from_slice(&other.parts);
        IntervalSet::from_parts(parts)
    }

    pub fn intersect_interval(&self, window: &Interval) -> IntervalSet {
        IntervalSet::from_parts(
            self.parts.iter().filter_map(|p| p.intersect(window)).collect(),
        )
    }

    /// Lebesgue measure of `self \ other`.
    pub fn diff_measure(&self, other: &IntervalSet) -> f64 {
        let mut total = 0.0;
        for p in &self.parts {
            let mut covered = 0.0;
            for q in &other.parts {
                if let Some(i) = p.intersect(q) {
                    covered += i.len();
                }
            }
            total += (p.len() - covered).max(0.0);
        }
        total
    }

    /// Measure of the symmetric difference.
    pub fn sym_diff_measure(&self, other: &IntervalSet) -> f64 {
        self.diff_measure(other) + other.diff_measure(self)
    }

    /// Distance from a point to the set (`f64::INFINITY` when empty).
    pub fn dist(&self, x: f64) -> f64 {
        self.parts
            .iter()
            .map(|p| p.dist(x))
            .fold(f64::INFINITY, f64::min)
    }

    /// Hausdorff-type defect of `self` inside `other`:
    /// `sup_{y in self} dist(y, other)`. Zero iff `self` is contained in
    /// `other` (up to closure).
    pub fn sup_dist_to(&self, other: &IntervalSet) -> f64 {
        if self.is_empty() {
            return 0.0;
        }
        if other.is_empty() {
            return f64::INFINITY;
        }
        let mut worst = 0.0f64;
        for p in &self.parts {
            // candidate maximizers: the endpoints of p ...
            worst = worst.max(other.dist(p.lo)).max(other.dist(p.hi));
            // ... and the midpoints of gaps of `other` that p straddles.
            for pair in other.parts.windows(2) {
                let gap_mid = 0.5 * (pair[0].hi + pair[1].lo);
                if p.contains(gap_mid) {
                    worst = worst.max(other.dist(gap_mid));
                }
            }
        }
        worst
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn normalization_merges_and_sorts() {
        let s = IntervalSet::from_parts(vec![
            Interval::new(0.5, 1.0).unwrap(),
            Interval::new(-1.0, 0.1).unwrap(),
            Interval::new(0.1 + 1e-14, 0.4).unwrap(),
        ]);
        assert_eq!(s.parts().len(), 2);
        assert_eq!(s.parts()[0].lo, -1.0);
        assert_eq!(s.parts()[0].hi, 0.4);
        assert!((s.measure() - 1.9).abs() < 1e-12);
    }

    #[test]
    fn empty_pullback_is_none() {
        assert!(Interval::new(1.0, 0.0).is_none());
    }

    #[test]
    fn diff_and_sym_diff() {
        let a = IntervalSet::from_parts(vec![Interval::new(0.0, 1.0).unwrap()]);
        let b = IntervalSet::from_parts(vec![Interval::new(0.25, 0.5).unwrap()]);
        assert!((a.diff_measure(&b) - 0.75).abs() < 1e-12);
        assert_eq!(b.diff_measure(&a), 0.0);
        assert!((a.sym_diff_measure(&b) - 0.75).abs() < 1e-12);
    }

    #[test]
    fn hausdorff_defect_sees_gap_midpoints() {
        let inner = IntervalSet::from_parts(vec![
            Interval::new(0.0, 1.0).unwrap(),
            Interval::new(2.0, 3.0).unwrap(),
        ]);
        let outer = IntervalSet::from_parts(vec![Interval::new(0.0, 3.0).unwrap()]);
        // outer sticks out of inner most at the gap midpoint 1.5
        assert!((outer.sup_dist_to(&inner) - 0.5).abs() < 1e-12);
        assert_eq!(inner.sup_dist_to(&outer), 0.0);
    }

    #[test]
    fn affine_image_sorts_endpoints() {
        let i = Interval::new(-1.0, 2.0).unwrap();
        let img = i.affine_image(-1.5, 0.0);
        assert_eq!(img.lo, -3.0);
        assert_eq!(img.hi, 1.5);
    }
}
