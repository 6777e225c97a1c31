//! Closed arcs of the unit circle in angle coordinates.

use serde::{Deserialize, Deserializer, Serialize, Serializer};
use std::f64::consts::TAU;

use crate::moebius::DiskAutomorphism;

/// Default tolerance for arc membership and endpoint comparisons.
pub const EPS_ARC: f64 = 1e-10;

pub fn normalize_angle(theta: f64) -> f64 {
    let t = theta.rem_euclid(TAU);
    if t >= TAU {
        0.0
    } else {
        t
    }
}

/// Counterclockwise angular distance from `from` to `to`, in `[0, 2π)`.
pub fn ccw_distance(from: f64, to: f64) -> f64 {
    normalize_angle(to - from)
}

/// Shortest angular distance between two angles, in `[0, π]`.
pub fn angular_distance(a: f64, b: f64) -> f64 {
    let d = ccw_distance(a, b);
    d.min(TAU - d)
}

/// The arc from `start` counterclockwise through `length` radians.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BoundaryArc {
    start: f64,
    length: f64,
}

impl BoundaryArc {
    /// Arc running counterclockwise from `start` to `end`.
    pub fn new(start: f64, end: f64) -> Self {
        BoundaryArc { start: normalize_angle(start), length: ccw_distance(start, end) }
    }

    pub fn from_start_length(start: f64, length: f64) -> Self {
        BoundaryArc { start: normalize_angle(start), length: length.clamp(0.0, TAU) }
    }

    pub fn centered(mid: f64, half_width: f64) -> Self {
        Self::from_start_length(mid - half_width, 2.0 * half_width)
    }

    pub fn full_circle() -> Self {
        BoundaryArc { start: 0.0, length: TAU }
    }

    pub fn start(&self) -> f64 {
        self.start
    }

    pub fn end(&self) -> f64 {
        normalize_angle(self.start + self.length)
    }

    pub fn length(&self) -> f64 {
        self.length
    }

    pub fn mid(&self) -> f64 {
        normalize_angle(self.start + 0.5 * self.length)
    }

    pub fn is_full(&self) -> bool {
        self.length >= TAU
    }

    /// Offset of `theta` from the start, counterclockwise.
    pub fn offset(&self, theta: f64) -> f64 {
        ccw_distance(self.start, theta)
    }

    /// Closed-arc membership with slack `tol` at both ends.
    pub fn contains(&self, theta: f64, tol: f64) -> bool {
        if self.is_full() {
            return true;
        }
        let o = self.offset(theta);
        o <= self.length + tol || o >= TAU - tol
    }

    /// Strict interior membership, staying `tol` away from both endpoints.
    pub fn contains_interior(&self, theta: f64, tol: f64) -> bool {
        if self.is_full() {
            return true;
        }
        let o = self.offset(theta);
        o > tol && o < self.length - tol
    }

    /// Distance from `theta` to the nearer endpoint.
    pub fn endpoint_distance(&self, theta: f64) -> f64 {
        angular_distance(theta, self.start).min(angular_distance(theta, self.end()))
    }

    pub fn contains_arc(&self, other: &BoundaryArc, tol: f64) -> bool {
        if self.is_full() {
            return true;
        }
        if other.length > self.length + tol {
            return false;
        }
        let o = self.offset(other.start);
        let o = if o >= TAU - tol { o - TAU } else { o };
        o >= -tol && o + other.length <= self.length + tol
    }

    /// True when the closed arcs share more than a `tol`-neighbourhood of an endpoint.
    pub fn overlaps(&self, other: &BoundaryArc, tol: f64) -> bool {
        if self.is_full() || other.is_full() {
            return true;
        }
        self.contains_interior(other.start, tol)
            || self.contains_interior(other.end(), tol)
            || other.contains_interior(self.start, tol)
            || other.contains_interior(self.end(), tol)
            || (angular_distance(self.start, other.start) <= tol && angular_distance(self.end(), other.end()) <= tol)
    }

    pub fn complement(&self) -> BoundaryArc {
        BoundaryArc { start: self.end(), length: TAU - self.length }
    }

    /// Image under a disk automorphism. Orientation is preserved, so the image runs
    /// counterclockwise from the image of the start; the midpoint pins down the length.
    pub fn image(&self, g: &DiskAutomorphism) -> BoundaryArc {
        if self.is_full() {
            return *self;
        }
        let s = g.apply_angle(self.start);
        let m = g.apply_angle(self.mid());
        let e = g.apply_angle(self.end());
        // a tiny arc may round to a near-full turn; such a piece is really ~0
        let piece = |a: f64, b: f64| {
            let d = ccw_distance(a, b);
            if d > TAU - 1e-9 {
                0.0
            } else {
                d
            }
        };
        let len = piece(s, m) + piece(m, e);
        BoundaryArc { start: s, length: len.min(TAU) }
    }

    /// Sample `n ≥ 2` angles evenly from start to end inclusive.
    pub fn sample(&self, n: usize) -> Vec<f64> {
        let n = n.max(2);
        (0..n).map(|k| normalize_angle(self.start + self.length * k as f64 / (n - 1) as f64)).collect()
    }

    pub fn as_pair(&self) -> [f64; 2] {
        [self.start, self.end()]
    }
}

impl Serialize for BoundaryArc {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        if self.is_full() {
            [self.start, self.start + TAU].serialize(s)
        } else {
            self.as_pair().serialize(s)
        }
    }
}

impl<'de> Deserialize<'de> for BoundaryArc {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let [a, b] = <[f64; 2]>::deserialize(d)?;
        if !a.is_finite() || !b.is_finite() {
            return Err(serde::de::Error::custom("arc endpoints must be finite"));
        }
        if (b - a) >= TAU {
            Ok(BoundaryArc::full_circle())
        } else {
            Ok(BoundaryArc::new(a, b))
        }
    }
}

/// Complementary open arcs of a family of pairwise disjoint closed arcs, sorted by start.
/// Gaps shorter than `tol` (touching arcs) are dropped.
pub fn gaps(arcs: &[BoundaryArc], tol: f64) -> Vec<BoundaryArc> {
    if arcs.is_empty() {
        return vec![BoundaryArc::full_circle()];
    }
    let mut sorted: Vec<BoundaryArc> = arcs.to_vec();
    sorted.sort_by(|a, b| a.start.total_cmp(&b.start));
    let n = sorted.len();
    let mut out = Vec::new();
    for k in 0..n {
        let cur = sorted[k];
        let g = if n == 1 {
            TAU - cur.length
        } else {
            let g = ccw_distance(cur.end(), sorted[(k + 1) % n].start);
            // touching arcs may round to a near-full turn
            if g > TAU - tol {
                0.0
            } else {
                g
            }
        };
        if g > tol {
            out.push(BoundaryArc::from_start_length(cur.end(), g));
        }
    }
    out.sort_by(|a, b| a.start.total_cmp(&b.start));
    out
}

/// Total length of a family of arcs (no overlap handling).
pub fn total_length(arcs: &[BoundaryArc]) -> f64 {
    arcs.iter().map(|a| a.length).sum()
}
