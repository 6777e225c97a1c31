//! Hyperbolic geometry of the unit disk with density `2|dz|/(1 − |z|²)`.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use std::f64::consts::{FRAC_PI_2, PI};
use thiserror::Error;

use crate::arc::{angular_distance, normalize_angle, BoundaryArc};
use crate::moebius::DiskAutomorphism;

/// Euclidean tolerance for point-on-curve tests.
pub const EPS_CURVE: f64 = 1e-9;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum GeometryError {
    #[error("point {0} is not inside the unit disk")]
    OutsideDisk(Complex64),
    #[error("points coincide")]
    CoincidentPoints,
    #[error("invalid radius {0}")]
    InvalidRadius(f64),
    #[error("stolz sandwich could not be fitted: {0}")]
    SandwichFit(String),
}

/// A point of the open disk.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DiskPoint(Complex64);

impl DiskPoint {
    pub fn new(z: Complex64) -> Result<Self, GeometryError> {
        check_inside(z)?;
        Ok(DiskPoint(z))
    }

    pub fn z(&self) -> Complex64 {
        self.0
    }
}

/// `e^{iθ}` with θ stored in `[0, 2π)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BoundaryPoint {
    theta: f64,
}

impl BoundaryPoint {
    pub fn new(theta: f64) -> Self {
        BoundaryPoint { theta: normalize_angle(theta) }
    }

    pub fn from_complex(z: Complex64) -> Self {
        Self::new(z.arg())
    }

    pub fn theta(&self) -> f64 {
        self.theta
    }

    pub fn z(&self) -> Complex64 {
        Complex64::from_polar(1.0, self.theta)
    }
}

fn check_inside(z: Complex64) -> Result<(), GeometryError> {
    if z.is_finite() && z.norm() < 1.0 {
        Ok(())
    } else {
        Err(GeometryError::OutsideDisk(z))
    }
}

/// `1 − |z|²` without cancellation near the circle.
pub fn one_minus_sq(z: Complex64) -> f64 {
    let r = z.norm();
    (1.0 - r) * (1.0 + r)
}

/// Closed-form hyperbolic distance, `2 asinh(|z − w| / √((1 − |z|²)(1 − |w|²)))`.
pub fn hyp_distance(z: Complex64, w: Complex64) -> Result<f64, GeometryError> {
    check_inside(z)?;
    check_inside(w)?;
    Ok(2.0 * ((z - w).norm() / (one_minus_sq(z) * one_minus_sq(w)).sqrt()).asinh())
}

/// Hyperbolic density `2/(1 − |z|²)`.
pub fn density(z: Complex64) -> f64 {
    2.0 / one_minus_sq(z)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum GeodesicKind {
    /// Diameter through 0 in direction `angle` (taken mod π).
    Diameter { angle: f64 },
    /// Circle orthogonal to the unit circle: `|center|² = 1 + radius²`.
    Orthocircle { center: Complex64, radius: f64 },
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Geodesic {
    kind: GeodesicKind,
    endpoints: (BoundaryPoint, BoundaryPoint),
}

impl Geodesic {
    /// Geodesic joining `e^{iu}` to `e^{iv}`.
    pub fn from_endpoints(u: f64, v: f64) -> Result<Self, GeometryError> {
        if angular_distance(u, v) < 1e-15 {
            return Err(GeometryError::CoincidentPoints);
        }
        let p = Complex64::from_polar(1.0, u);
        let q = Complex64::from_polar(1.0, v);
        let s = p + q;
        let kind = if s.norm() < 1e-13 {
            GeodesicKind::Diameter { angle: normalize_angle(u) % PI }
        } else {
            // intersection of the tangent lines at p and q
            let center = 2.0 * s / s.norm_sqr();
            let n = center.norm();
            GeodesicKind::Orthocircle { center, radius: ((n - 1.0) * (n + 1.0)).sqrt() }
        };
        Ok(Geodesic { kind, endpoints: (BoundaryPoint::new(u), BoundaryPoint::new(v)) })
    }

    pub fn kind(&self) -> GeodesicKind {
        self.kind
    }

    pub fn endpoints(&self) -> (BoundaryPoint, BoundaryPoint) {
        self.endpoints
    }

    /// `|center|² − radius² − 1`, evaluated as `(|c| − r)(|c| + r) − 1`; zero for diameters.
    pub fn orthogonality_residual(&self) -> f64 {
        match self.kind {
            GeodesicKind::Diameter { .. } => 0.0,
            GeodesicKind::Orthocircle { center, radius } => {
                let n = center.norm();
                (n - radius) * (n + radius) - 1.0
            }
        }
    }

    /// Signed side function: negative on the side containing the shorter boundary arc for
    /// orthocircles, `Im(z e^{-iα})` for diameters.
    pub fn side(&self, z: Complex64) -> f64 {
        match self.kind {
            GeodesicKind::Diameter { angle } => (z * Complex64::from_polar(1.0, -angle)).im,
            GeodesicKind::Orthocircle { center, radius } => (z - center).norm() - radius,
        }
    }

    /// Euclidean distance from `z` to the supporting line or circle.
    pub fn euclidean_distance(&self, z: Complex64) -> f64 {
        self.side(z).abs()
    }

    pub fn contains(&self, z: Complex64, tol: f64) -> bool {
        z.norm() < 1.0 + tol && self.euclidean_distance(z) <= tol
    }

    /// Point of the geodesic nearest to 0.
    pub fn midpoint(&self) -> Complex64 {
        match self.kind {
            GeodesicKind::Diameter { .. } => Complex64::new(0.0, 0.0),
            GeodesicKind::Orthocircle { center, radius } => {
                let n = center.norm();
                center * ((n - radius) / n)
            }
        }
    }

    /// An automorphism carrying this geodesic onto the real diameter, first endpoint to −1.
    pub fn normalizing_map(&self) -> DiskAutomorphism {
        let to0 = DiskAutomorphism::moving_to_origin(self.midpoint()).expect("midpoint lies inside the disk");
        let e = to0.apply(self.endpoints.1.z());
        DiskAutomorphism::rotation(-e.arg()).compose(&to0)
    }

    /// `n` points spread along the geodesic (equally spaced in hyperbolic length over a
    /// central window of length 8).
    pub fn sample(&self, n: usize) -> Vec<Complex64> {
        let inv = self.normalizing_map().inverse();
        let n = n.max(2);
        (0..n)
            .map(|k| {
                let s = -4.0 + 8.0 * k as f64 / (n - 1) as f64;
                inv.apply(Complex64::new((s / 2.0).tanh(), 0.0))
            })
            .collect()
    }

    pub fn image(&self, g: &DiskAutomorphism) -> Geodesic {
        let u = g.apply_angle(self.endpoints.0.theta());
        let v = g.apply_angle(self.endpoints.1.theta());
        Geodesic::from_endpoints(u, v).expect("automorphisms are injective on the circle")
    }

    /// Hyperbolic distance from `z` to the whole geodesic.
    pub fn distance_to(&self, z: Complex64) -> Result<f64, GeometryError> {
        check_inside(z)?;
        let w = self.normalizing_map().apply(z);
        Ok((2.0 * w.im.abs() / one_minus_sq(w)).asinh())
    }

    /// The boundary arc cut off on the side of the geodesic containing `theta`.
    pub fn arc_toward(&self, theta: f64) -> BoundaryArc {
        let (a, b) = (self.endpoints.0.theta(), self.endpoints.1.theta());
        let arc = BoundaryArc::new(a, b);
        if arc.contains(theta, 0.0) {
            arc
        } else {
            BoundaryArc::new(b, a)
        }
    }

    /// Whether the boundary points `u`, `v` lie on different sides.
    pub fn separates_angles(&self, u: f64, v: f64) -> bool {
        let arc = BoundaryArc::new(self.endpoints.0.theta(), self.endpoints.1.theta());
        arc.contains_interior(u, 0.0) != arc.contains_interior(v, 0.0)
    }
}

/// The unique geodesic through two distinct points of the disk.
pub fn geodesic_through(z: Complex64, w: Complex64) -> Result<Geodesic, GeometryError> {
    check_inside(z)?;
    check_inside(w)?;
    if (z - w).norm() < 1e-15 {
        return Err(GeometryError::CoincidentPoints);
    }
    let t = DiskAutomorphism::moving_to_origin(z).expect("z inside");
    let wp = t.apply(w);
    let dir = wp / wp.norm();
    let inv = t.inverse();
    let u = inv.apply(dir).arg();
    let v = inv.apply(-dir).arg();
    Geodesic::from_endpoints(u, v)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct HyperbolicDisk {
    pub center: Complex64,
    pub radius: f64,
}

impl HyperbolicDisk {
    /// Euclidean `(center, radius)` of the disk `{z : dist(center, z) < radius}`.
    pub fn euclidean(&self) -> Result<(Complex64, f64), GeometryError> {
        check_inside(self.center)?;
        if !(self.radius >= 0.0) || !self.radius.is_finite() {
            return Err(GeometryError::InvalidRadius(self.radius));
        }
        let rho = (self.radius / 2.0).tanh();
        let z0 = self.center;
        let k = 1.0 - rho * rho * z0.norm_sqr();
        Ok((z0 * ((1.0 - rho * rho) / k), rho * one_minus_sq(z0) / k))
    }
}

pub fn hyperbolic_disk_euclidean(d: &HyperbolicDisk) -> Result<(Complex64, f64), GeometryError> {
    d.euclidean()
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Horodisk {
    pub base: BoundaryPoint,
    pub r: f64,
}

impl Horodisk {
    /// Euclidean disk of radius `R/(R+1)` internally tangent at the base point.
    pub fn euclidean(&self) -> Result<(Complex64, f64), GeometryError> {
        if !(self.r > 0.0) || !self.r.is_finite() {
            return Err(GeometryError::InvalidRadius(self.r));
        }
        let rad = self.r / (self.r + 1.0);
        Ok((self.base.z() * (1.0 - rad), rad))
    }

    pub fn contains(&self, z: Complex64) -> bool {
        match self.euclidean() {
            Ok((c, r)) => (z - c).norm() < r,
            Err(_) => false,
        }
    }
}

pub fn horodisk_euclidean(h: &Horodisk) -> Result<(Complex64, f64), GeometryError> {
    h.euclidean()
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum StolzKind {
    /// `A_{α,ρ}`: `|Arg e^{iθ} − Arg(e^{iθ} − z)| < α` and `|e^{iθ} − z| < ρ`.
    Euclidean { alpha: f64, rho: f64 },
    /// Points within hyperbolic distance `r` of the geodesic ray from `spine_start` to the base.
    Hyperbolic { spine_start: Complex64, r: f64 },
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct StolzAngle {
    pub base: BoundaryPoint,
    pub kind: StolzKind,
}

impl StolzAngle {
    pub fn euclidean(base: BoundaryPoint, alpha: f64, rho: f64) -> Self {
        StolzAngle { base, kind: StolzKind::Euclidean { alpha, rho } }
    }

    /// Hyperbolic Stolz angle along the radius `R_θ`.
    pub fn radial(base: BoundaryPoint, r: f64) -> Self {
        StolzAngle { base, kind: StolzKind::Hyperbolic { spine_start: Complex64::new(0.0, 0.0), r } }
    }

    pub fn contains(&self, z: Complex64) -> bool {
        if !(z.is_finite() && z.norm() < 1.0) {
            return false;
        }
        match self.kind {
            StolzKind::Euclidean { alpha, rho } => {
                let e = self.base.z();
                aperture(self.base, z).abs() < alpha && (e - z).norm() < rho
            }
            StolzKind::Hyperbolic { spine_start, r } => match distance_to_ray(spine_start, self.base, z) {
                Ok(d) => d < r,
                Err(_) => false,
            },
        }
    }
}

/// `Arg e^{iθ} − Arg(e^{iθ} − z)`, wrapped to `(−π, π]`.
pub fn aperture(base: BoundaryPoint, z: Complex64) -> f64 {
    let e = base.z();
    ((e - z) * e.conj()).arg()
}

/// Hyperbolic distance from `z` to the geodesic ray from `start` landing at `base`.
pub fn distance_to_ray(start: Complex64, base: BoundaryPoint, z: Complex64) -> Result<f64, GeometryError> {
    check_inside(start)?;
    check_inside(z)?;
    let t = DiskAutomorphism::moving_to_origin(start).expect("start inside");
    let b = t.apply(base.z());
    let w = t.apply(z) * (b / b.norm()).conj();
    if w.re >= 0.0 {
        Ok((2.0 * w.im.abs() / one_minus_sq(w)).asinh())
    } else {
        hyp_distance(Complex64::new(0.0, 0.0), w)
    }
}

/// Euclidean Stolz angles sandwiching a radial hyperbolic one on a sample grid:
/// `A_{α1, r/K} ⊂ Δ_r ⊂ A_{α2, K r}`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct StolzSandwich {
    pub alpha1: f64,
    pub alpha2: f64,
    pub k: f64,
}

/// Fit the sandwich constants on `grid` (points of the disk). `K` is an output.
pub fn fit_stolz_sandwich(base: BoundaryPoint, r: f64, grid: &[Complex64]) -> Result<StolzSandwich, GeometryError> {
    let hyp = StolzAngle::radial(base, r);
    let e = base.z();
    let inside: Vec<Complex64> = grid.iter().copied().filter(|z| hyp.contains(*z)).collect();
    if inside.is_empty() {
        return Err(GeometryError::SandwichFit("no grid point inside the hyperbolic angle".into()));
    }
    let max_ap = inside.iter().map(|z| aperture(base, *z).abs()).fold(0.0, f64::max);
    let max_dist = inside.iter().map(|z| (e - z).norm()).fold(0.0, f64::max);
    let alpha2 = max_ap * (1.0 + 1e-9) + 1e-12;
    let k = (max_dist / r).max(1.0) * (1.0 + 1e-9);
    let rho_in = r / k;
    let alpha1 = grid
        .iter()
        .filter(|z| z.norm() < 1.0 && (e - **z).norm() < rho_in && !hyp.contains(**z))
        .map(|z| aperture(base, *z).abs())
        .fold(FRAC_PI_2, f64::min);
    if !(alpha1 > 0.0) || alpha2 >= FRAC_PI_2 {
        return Err(GeometryError::SandwichFit(format!("alpha1 = {alpha1}, alpha2 = {alpha2}")));
    }
    Ok(StolzSandwich { alpha1, alpha2, k })
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Crosscut {
    Geodesic(Geodesic),
    /// Degenerate crosscut: a horocycle, both endpoints at its base.
    Horocycle(Horodisk),
}

impl Crosscut {
    pub fn endpoints(&self) -> (BoundaryPoint, BoundaryPoint) {
        match self {
            Crosscut::Geodesic(g) => g.endpoints(),
            Crosscut::Horocycle(h) => (h.base, h.base),
        }
    }

    pub fn is_degenerate(&self) -> bool {
        matches!(self, Crosscut::Horocycle(_))
    }

    /// Boundary trace of the crosscut neighbourhood on the side of `target`.
    pub fn neighbourhood_arc(&self, target: f64) -> BoundaryArc {
        match self {
            Crosscut::Geodesic(g) => g.arc_toward(target),
            Crosscut::Horocycle(h) => BoundaryArc::from_start_length(h.base.theta(), 0.0),
        }
    }

    /// Membership of `z` in the neighbourhood on the side of `target`.
    pub fn neighbourhood_contains(&self, target: f64, z: Complex64) -> bool {
        if z.norm() >= 1.0 {
            return false;
        }
        match self {
            Crosscut::Horocycle(h) => h.contains(z),
            Crosscut::Geodesic(g) => {
                let probe = Complex64::from_polar(1.0 - 1e-9, g.arc_toward(target).mid());
                (g.side(z) < 0.0) == (g.side(probe) < 0.0) && g.euclidean_distance(z) > 0.0
            }
        }
    }

    /// Euclidean diameter of the neighbourhood on the side of `target`.
    pub fn neighbourhood_diameter(&self, target: f64) -> f64 {
        match self {
            Crosscut::Horocycle(h) => 2.0 * h.r / (h.r + 1.0),
            Crosscut::Geodesic(g) => {
                let arc = g.arc_toward(target);
                if arc.length() <= PI {
                    2.0 * (arc.length() / 2.0).sin()
                } else {
                    2.0
                }
            }
        }
    }

    /// A point of the crosscut inside the disk.
    pub fn interior_point(&self) -> Complex64 {
        match self {
            Crosscut::Geodesic(g) => g.midpoint(),
            Crosscut::Horocycle(h) => {
                let (c, r) = h.euclidean().expect("valid horodisk");
                c - h.base.z() * r
            }
        }
    }

    fn circle(&self) -> Curve {
        match self {
            Crosscut::Geodesic(g) => match g.kind() {
                GeodesicKind::Diameter { angle } => Curve::Line(Complex64::from_polar(1.0, angle)),
                GeodesicKind::Orthocircle { center, radius } => Curve::Circle(center, radius),
            },
            Crosscut::Horocycle(h) => {
                let (c, r) = h.euclidean().expect("valid horodisk");
                Curve::Circle(c, r)
            }
        }
    }

    /// Whether the two crosscuts meet inside the open disk.
    pub fn intersects(&self, other: &Crosscut) -> bool {
        if let (Crosscut::Geodesic(a), Crosscut::Geodesic(b)) = (self, other) {
            let (a0, a1) = a.endpoints();
            let (b0, b1) = b.endpoints();
            let same = |x: BoundaryPoint, y: BoundaryPoint| angular_distance(x.theta(), y.theta()) < 1e-12;
            if (same(a0, b0) && same(a1, b1)) || (same(a0, b1) && same(a1, b0)) {
                return true;
            }
            let arc = BoundaryArc::new(a0.theta(), a1.theta());
            let in0 = arc.contains_interior(b0.theta(), 1e-12);
            let in1 = arc.contains_interior(b1.theta(), 1e-12);
            let on0 = arc.endpoint_distance(b0.theta()) < 1e-12;
            let on1 = arc.endpoint_distance(b1.theta()) < 1e-12;
            return !on0 && !on1 && in0 != in1;
        }
        curve_intersections(self.circle(), other.circle()).into_iter().any(|z| z.norm() < 1.0 - 1e-12)
    }
}

#[derive(Debug, Clone, Copy)]
enum Curve {
    /// Line through 0 with the given unit direction.
    Line(Complex64),
    Circle(Complex64, f64),
}

fn curve_intersections(a: Curve, b: Curve) -> Vec<Complex64> {
    match (a, b) {
        (Curve::Line(u), Curve::Line(v)) => {
            if (u * v.conj()).im.abs() < 1e-15 {
                vec![u * 0.5]
            } else {
                vec![Complex64::new(0.0, 0.0)]
            }
        }
        (Curve::Line(u), Curve::Circle(c, r)) | (Curve::Circle(c, r), Curve::Line(u)) => {
            // points t·u with |t u − c| = r
            let p = (c * u.conj()).re;
            let q = c.norm_sqr() - r * r;
            let disc = p * p - q;
            if disc < 0.0 {
                return vec![];
            }
            let s = disc.sqrt();
            vec![u * (p - s), u * (p + s)]
        }
        (Curve::Circle(c1, r1), Curve::Circle(c2, r2)) => {
            let d = (c2 - c1).norm();
            if d < 1e-15 || d > r1 + r2 || d < (r1 - r2).abs() {
                return vec![];
            }
            let a = (r1 * r1 - r2 * r2 + d * d) / (2.0 * d);
            let h2 = r1 * r1 - a * a;
            let h = h2.max(0.0).sqrt();
            let dir = (c2 - c1) / d;
            let base = c1 + dir * a;
            let perp = dir * Complex64::i();
            vec![base + perp * h, base - perp * h]
        }
    }
}

/// A finite prefix of a null-chain aimed at `target`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct NullChain {
    pub target: BoundaryPoint,
    pub crosscuts: Vec<Crosscut>,
}

impl NullChain {
    /// Materialize the first `n` crosscuts of a chain given by a generator.
    pub fn from_generator(target: BoundaryPoint, n: usize, f: impl Fn(usize) -> Crosscut) -> Self {
        NullChain { target, crosscuts: (0..n).map(f).collect() }
    }
}

/// Prefix test of the null-chain axioms on the first `n` crosscuts: pairwise disjoint with
/// disjoint endpoints, nested neighbourhoods, strictly shrinking diameters.
pub fn is_null_chain_prefix(chain: &NullChain, n: usize) -> bool {
    let n = n.min(chain.crosscuts.len());
    let cs = &chain.crosscuts[..n];
    let t = chain.target.theta();
    for (i, a) in cs.iter().enumerate() {
        let (a0, a1) = a.endpoints();
        if a.is_degenerate() {
            return false;
        }
        if !a.neighbourhood_arc(t).contains_interior(t, 0.0) {
            return false;
        }
        for b in &cs[i + 1..] {
            if a.intersects(b) {
                return false;
            }
            let (b0, b1) = b.endpoints();
            for x in [a0, a1] {
                for y in [b0, b1] {
                    if angular_distance(x.theta(), y.theta()) < 1e-12 {
                        return false;
                    }
                }
            }
        }
    }
    for w in cs.windows(2) {
        let (outer, inner) = (&w[0], &w[1]);
        if !outer.neighbourhood_arc(t).contains_arc(&inner.neighbourhood_arc(t), 0.0) {
            return false;
        }
        if !outer.neighbourhood_contains(t, inner.interior_point()) {
            return false;
        }
        if inner.neighbourhood_diameter(t) >= outer.neighbourhood_diameter(t) {
            return false;
        }
    }
    true
}

/// Standard chain of geodesic crosscuts over the arcs `θ ± w·ratio^k`.
pub fn radial_null_chain(target: BoundaryPoint, half_width: f64, ratio: f64, n: usize) -> NullChain {
    let t = target.theta();
    NullChain::from_generator(target, n, |k| {
        let w = half_width * ratio.powi(k as i32);
        Crosscut::Geodesic(Geodesic::from_endpoints(t - w, t + w).expect("distinct endpoints"))
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn distance_examples() {
        assert_eq!(hyp_distance(c(0.0, 0.0), c(0.0, 0.0)).unwrap(), 0.0);
        assert!((hyp_distance(c(0.0, 0.0), c(0.5, 0.0)).unwrap() - 1.0986122886681098).abs() < 1e-14);
        let rot = DiskAutomorphism::rotation(0.7);
        let (z, w) = (c(0.3, 0.0), c(0.0, 0.3));
        let d1 = hyp_distance(z, w).unwrap();
        let d2 = hyp_distance(rot.apply(z), rot.apply(w)).unwrap();
        assert!((d1 - d2).abs() < 1e-14);
        assert!(hyp_distance(c(1.0, 0.0), c(0.0, 0.0)).is_err());
    }

    #[test]
    fn geodesic_examples() {
        let g = geodesic_through(c(0.0, 0.0), c(0.5, 0.0)).unwrap();
        assert!(matches!(g.kind(), GeodesicKind::Diameter { .. }));
        assert!(g.contains(c(-0.9, 0.0), 1e-12));

        let g = geodesic_through(c(0.0, 0.5), c(0.0, -0.5)).unwrap();
        assert!(matches!(g.kind(), GeodesicKind::Diameter { .. }));
        assert!(g.contains(c(0.0, 0.99), 1e-12));

        let g = geodesic_through(c(0.5, 0.0), c(0.0, 0.5)).unwrap();
        match g.kind() {
            GeodesicKind::Orthocircle { center, radius } => {
                assert!(((c(0.5, 0.0) - center).norm() - radius).abs() < 1e-12);
                assert!(((c(0.0, 0.5) - center).norm() - radius).abs() < 1e-12);
                assert!((center.norm_sqr() - radius * radius - 1.0).abs() < 1e-12);
            }
            _ => panic!("expected an orthocircle"),
        }
        assert!(geodesic_through(c(0.2, 0.2), c(0.2, 0.2)).is_err());
    }

    #[test]
    fn geodesic_distance_and_sampling() {
        let g = geodesic_through(c(0.1, 0.4), c(-0.5, 0.2)).unwrap();
        for z in g.sample(11) {
            assert!(g.contains(z, 1e-12));
            assert!(g.distance_to(z).unwrap() < 1e-9);
        }
    }

    #[test]
    fn hyperbolic_disk_examples() {
        let (cen, r) = HyperbolicDisk { center: c(0.0, 0.0), radius: 1.3 }.euclidean().unwrap();
        assert!(cen.norm() < 1e-15 && (r - (0.65f64).tanh()).abs() < 1e-15);
        let (_, r0) = HyperbolicDisk { center: c(0.4, 0.1), radius: 0.0 }.euclidean().unwrap();
        assert_eq!(r0, 0.0);
    }

    #[test]
    fn horodisk_examples() {
        let h = Horodisk { base: BoundaryPoint::new(0.0), r: 1.0 };
        let (cen, r) = h.euclidean().unwrap();
        assert!((cen - c(0.5, 0.0)).norm() < 1e-15 && (r - 0.5).abs() < 1e-15);
        let (cen, _) = Horodisk { base: BoundaryPoint::new(PI), r: 1.0 }.euclidean().unwrap();
        assert!((cen - c(-0.5, 0.0)).norm() < 1e-15);
        let (_, small) = Horodisk { base: BoundaryPoint::new(0.0), r: 1e-12 }.euclidean().unwrap();
        assert!(small < 1e-11);
        assert!(Horodisk { base: BoundaryPoint::new(0.0), r: 0.0 }.euclidean().is_err());
    }

    #[test]
    fn stolz_examples() {
        let base = BoundaryPoint::new(0.8);
        let on_radius = Complex64::from_polar(0.97, 0.8);
        assert!(StolzAngle::euclidean(base, 0.01, 2.0).contains(on_radius));
        assert!(StolzAngle::radial(base, 0.01).contains(on_radius));
        assert!(!StolzAngle::euclidean(base, 1.0, 2.0).contains(base.z()));
        assert!(!StolzAngle::radial(base, 5.0).contains(base.z()));
    }

    #[test]
    fn null_chain_examples() {
        let base = BoundaryPoint::new(0.0);
        let chain = radial_null_chain(base, 0.5, 0.5, 8);
        assert!(is_null_chain_prefix(&chain, 8));

        let crossing = NullChain {
            target: base,
            crosscuts: vec![
                Crosscut::Geodesic(Geodesic::from_endpoints(-0.5, 0.5).unwrap()),
                Crosscut::Geodesic(Geodesic::from_endpoints(0.2, 0.9).unwrap()),
            ],
        };
        assert!(!is_null_chain_prefix(&crossing, 2));

        let shared = NullChain {
            target: base,
            crosscuts: vec![
                Crosscut::Geodesic(Geodesic::from_endpoints(-0.5, 0.5).unwrap()),
                Crosscut::Geodesic(Geodesic::from_endpoints(-0.5, 0.2).unwrap()),
            ],
        };
        assert!(!is_null_chain_prefix(&shared, 2));
    }

    #[test]
    fn horocycles_meet_geodesics() {
        let h = Crosscut::Horocycle(Horodisk { base: BoundaryPoint::new(0.0), r: 1.0 });
        let g = Crosscut::Geodesic(Geodesic::from_endpoints(-0.3, 0.3).unwrap());
        assert!(h.intersects(&g));
        let far = Crosscut::Geodesic(Geodesic::from_endpoints(2.0, 2.5).unwrap());
        assert!(!h.intersects(&far));
    }
}
