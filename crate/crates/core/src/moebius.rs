//! Möbius transformations of the Riemann sphere and automorphisms of the unit disk.

use num_complex::Complex64;
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use std::f64::consts::PI;
use thiserror::Error;

use crate::disk::Geodesic;

/// Tolerance on `||trace| - 2|` below which a disk automorphism is called parabolic.
pub const EPS_CLS: f64 = 1e-9;

const IDENTITY_TOL: f64 = 1e-12;
const DISK_FORM_TOL: f64 = 1e-9;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum MoebiusError {
    #[error("matrix has zero determinant")]
    ZeroDeterminant,
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("map does not preserve the unit disk")]
    NotDiskPreserving,
    #[error("identity map: every point is fixed")]
    IdentityMap,
    #[error("expected a hyperbolic map, found {0:?}")]
    NotHyperbolic(MapClass),
}

/// A point of the Riemann sphere. Infinity is an explicit value rather than a float special.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SpherePoint {
    Finite(Complex64),
    Infinity,
}

impl SpherePoint {
    pub fn finite(&self) -> Option<Complex64> {
        match self {
            SpherePoint::Finite(z) => Some(*z),
            SpherePoint::Infinity => None,
        }
    }

    /// Chordal distance on the sphere (diameter 2).
    pub fn chordal_distance(&self, other: &SpherePoint) -> f64 {
        match (self, other) {
            (SpherePoint::Infinity, SpherePoint::Infinity) => 0.0,
            (SpherePoint::Finite(z), SpherePoint::Infinity)
            | (SpherePoint::Infinity, SpherePoint::Finite(z)) => 2.0 / (1.0 + z.norm_sqr()).sqrt(),
            (SpherePoint::Finite(z), SpherePoint::Finite(w)) => {
                2.0 * (z - w).norm() / ((1.0 + z.norm_sqr()) * (1.0 + w.norm_sqr())).sqrt()
            }
        }
    }
}

impl From<Complex64> for SpherePoint {
    fn from(z: Complex64) -> Self {
        SpherePoint::Finite(z)
    }
}

/// `z ↦ (az + b)/(cz + d)`, stored with `ad - bc = 1` and the sign fixed so that the first
/// nonzero entry has nonnegative real part.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MoebiusMap {
    a: Complex64,
    b: Complex64,
    c: Complex64,
    d: Complex64,
}

impl MoebiusMap {
    pub fn new(a: Complex64, b: Complex64, c: Complex64, d: Complex64) -> Result<Self, MoebiusError> {
        let det = a * d - b * c;
        let scale = a.norm().max(b.norm()).max(c.norm()).max(d.norm());
        if !det.is_finite() || scale == 0.0 || det.norm() <= 1e-300_f64.max(1e-28 * scale * scale) {
            return Err(MoebiusError::ZeroDeterminant);
        }
        let s = det.sqrt();
        let mut m = MoebiusMap { a: a / s, b: b / s, c: c / s, d: d / s };
        m.fix_sign();
        Ok(m)
    }

    pub fn from_real(a: f64, b: f64, c: f64, d: f64) -> Result<Self, MoebiusError> {
        Self::new(a.into(), b.into(), c.into(), d.into())
    }

    fn fix_sign(&mut self) {
        let zero = Complex64::new(0.0, 0.0);
        let lead = [self.a, self.b, self.c, self.d].into_iter().find(|e| *e != zero).unwrap_or(zero);
        if lead.re < 0.0 || (lead.re == 0.0 && lead.im < 0.0) {
            self.a = -self.a;
            self.b = -self.b;
            self.c = -self.c;
            self.d = -self.d;
        }
    }

    pub fn identity() -> Self {
        MoebiusMap { a: 1.0.into(), b: 0.0.into(), c: 0.0.into(), d: 1.0.into() }
    }

    /// `z ↦ z + t`.
    pub fn translation(t: Complex64) -> Self {
        MoebiusMap { a: 1.0.into(), b: t, c: 0.0.into(), d: 1.0.into() }
    }

    /// Cayley map `z ↦ (z - i)/(z + i)` from the upper half-plane onto the disk.
    pub fn cayley() -> Self {
        let i = Complex64::i();
        Self::new(1.0.into(), -i, 1.0.into(), i).expect("cayley matrix is invertible")
    }

    /// The unique map sending `z1, z2, z3` to `w1, w2, w3` (all finite and distinct).
    pub fn from_three_points(z: [Complex64; 3], w: [Complex64; 3]) -> Result<Self, MoebiusError> {
        let to_standard = |p: [Complex64; 3]| {
            // sends p0 -> 0, p1 -> 1, p2 -> inf
            Self::new(p[1] - p[2], -p[0] * (p[1] - p[2]), p[1] - p[0], -p[2] * (p[1] - p[0]))
        };
        let a = to_standard(z)?;
        let b = to_standard(w)?;
        Ok(b.inverse().compose(&a))
    }

    pub fn entries(&self) -> [Complex64; 4] {
        [self.a, self.b, self.c, self.d]
    }

    pub fn det(&self) -> Complex64 {
        self.a * self.d - self.b * self.c
    }

    pub fn trace(&self) -> Complex64 {
        self.a + self.d
    }

    pub fn apply(&self, p: SpherePoint) -> SpherePoint {
        match p {
            SpherePoint::Infinity => {
                if self.c == Complex64::new(0.0, 0.0) {
                    SpherePoint::Infinity
                } else {
                    SpherePoint::Finite(self.a / self.c)
                }
            }
            SpherePoint::Finite(z) => {
                let num = self.a * z + self.b;
                let den = self.c * z + self.d;
                if den.norm() <= f64::MIN_POSITIVE * num.norm().max(1.0) {
                    SpherePoint::Infinity
                } else {
                    SpherePoint::Finite(num / den)
                }
            }
        }
    }

    /// Evaluation at a finite point whose image is known to be finite (e.g. inside the disk).
    pub fn apply_finite(&self, z: Complex64) -> Complex64 {
        (self.a * z + self.b) / (self.c * z + self.d)
    }

    /// `self ∘ g`.
    pub fn compose(&self, g: &MoebiusMap) -> MoebiusMap {
        let a = self.a * g.a + self.b * g.c;
        let b = self.a * g.b + self.b * g.d;
        let c = self.c * g.a + self.d * g.c;
        let d = self.c * g.b + self.d * g.d;
        MoebiusMap::new(a, b, c, d).expect("product of invertible matrices is invertible")
    }

    pub fn inverse(&self) -> MoebiusMap {
        let mut m = MoebiusMap { a: self.d, b: -self.b, c: -self.c, d: self.a };
        m.fix_sign();
        m
    }

    /// `h ∘ self ∘ h⁻¹`.
    pub fn conjugate_by(&self, h: &MoebiusMap) -> MoebiusMap {
        h.compose(self).compose(&h.inverse())
    }

    pub fn is_identity(&self, tol: f64) -> bool {
        self.b.norm() <= tol && self.c.norm() <= tol && (self.a - self.d).norm() <= tol
    }

    /// Equality as transformations (the two matrix representatives ±M are identified).
    pub fn approx_eq(&self, other: &MoebiusMap, tol: f64) -> bool {
        let close = |s: f64| {
            (self.a - s * other.a).norm() <= tol
                && (self.b - s * other.b).norm() <= tol
                && (self.c - s * other.c).norm() <= tol
                && (self.d - s * other.d).norm() <= tol
        };
        close(1.0) || close(-1.0)
    }
}

impl Serialize for MoebiusMap {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        [self.a, self.b, self.c, self.d].map(|z| [z.re, z.im]).serialize(s)
    }
}

impl<'de> Deserialize<'de> for MoebiusMap {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let e = <[[f64; 2]; 4]>::deserialize(d)?;
        let z = e.map(|p| Complex64::new(p[0], p[1]));
        MoebiusMap::new(z[0], z[1], z[2], z[3]).map_err(serde::de::Error::custom)
    }
}

/// Free-function form of [`MoebiusMap::compose`]: `(f ∘ g)(z) = f(g(z))`.
pub fn compose(f: &MoebiusMap, g: &MoebiusMap) -> MoebiusMap {
    f.compose(g)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum MapClass {
    Identity,
    Elliptic,
    Hyperbolic,
    Parabolic,
}

/// Fixed points of a non-identity Möbius map. `double` is set when the two roots coincide.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FixedPoints {
    pub points: Vec<SpherePoint>,
    pub double: bool,
}

/// Roots of `cz² + (d − a)z − b = 0` on the sphere.
pub fn fixed_points(m: &MoebiusMap) -> Result<FixedPoints, MoebiusError> {
    if m.is_identity(IDENTITY_TOL) {
        return Err(MoebiusError::IdentityMap);
    }
    let [a, b, c, d] = m.entries();
    let scale = a.norm().max(b.norm()).max(c.norm()).max(d.norm());
    if c.norm() <= 1e-14 * scale {
        // affine map z ↦ (az + b)/d, one fixed point at infinity
        if (a - d).norm() <= 1e-14 * scale {
            return Ok(FixedPoints { points: vec![SpherePoint::Infinity], double: true });
        }
        return Ok(FixedPoints {
            points: vec![SpherePoint::Finite(b / (d - a)), SpherePoint::Infinity],
            double: false,
        });
    }
    let tr = a + d;
    let disc = tr * tr - 4.0;
    if disc.norm() <= 4.0 * EPS_CLS {
        return Ok(FixedPoints { points: vec![SpherePoint::Finite((a - d) / (2.0 * c))], double: true });
    }
    let bq = d - a;
    let sq = disc.sqrt();
    let sq = if (bq.conj() * sq).re >= 0.0 { sq } else { -sq };
    let q = -0.5 * (bq + sq);
    let z1 = q / c;
    let z2 = -b / q;
    Ok(FixedPoints { points: vec![SpherePoint::Finite(z1), SpherePoint::Finite(z2)], double: false })
}

/// Parameters `(θ, a)` of `z ↦ e^{iθ}(a − z)/(1 − āz)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DiskParams {
    pub theta: f64,
    pub a: Complex64,
}

/// A Möbius map preserving the unit disk. After normalization its matrix has the form
/// `±[[α, β], [β̄, ᾱ]]` with `|α|² − |β|² = 1`, so its trace is real.
#[derive(Debug, Clone, Copy)]
pub struct DiskAutomorphism {
    map: MoebiusMap,
    params: Option<DiskParams>,
}

impl PartialEq for DiskAutomorphism {
    fn eq(&self, other: &Self) -> bool {
        self.map == other.map
    }
}

impl DiskAutomorphism {
    pub fn from_disk_params(theta: f64, a: Complex64) -> Result<Self, MoebiusError> {
        if !theta.is_finite() || !a.is_finite() {
            return Err(MoebiusError::InvalidParameter("non-finite input".into()));
        }
        if a.norm() >= 1.0 {
            return Err(MoebiusError::InvalidParameter(format!("|a| = {} is not < 1", a.norm())));
        }
        let e = Complex64::from_polar(1.0, theta);
        let m = MoebiusMap::new(-e, e * a, -a.conj(), 1.0.into())?;
        let theta = theta.rem_euclid(2.0 * PI);
        Ok(DiskAutomorphism { map: project_su11(&m), params: Some(DiskParams { theta, a }) })
    }

    /// Accepts a Möbius map if it preserves the disk, snapping round-off onto the exact form.
    pub fn from_moebius(m: MoebiusMap) -> Result<Self, MoebiusError> {
        let [a, b, c, d] = m.entries();
        let scale = a.norm().max(b.norm()).max(1.0);
        if (d - a.conj()).norm() > DISK_FORM_TOL * scale || (c - b.conj()).norm() > DISK_FORM_TOL * scale {
            return Err(MoebiusError::NotDiskPreserving);
        }
        if a.norm_sqr() - b.norm_sqr() <= 0.0 {
            return Err(MoebiusError::NotDiskPreserving);
        }
        Ok(DiskAutomorphism { map: project_su11(&m), params: None })
    }

    /// `[[α, β], [β̄, ᾱ]]` taken as already normalized. Skipping the renormalization keeps
    /// exact traces (such as 2 for a parabolic) exact when `|α|` is large.
    pub fn from_su11(alpha: Complex64, beta: Complex64) -> Result<Self, MoebiusError> {
        let det = alpha.norm_sqr() - beta.norm_sqr();
        if !det.is_finite() || (det - 1.0).abs() > 1e-6 * alpha.norm_sqr().max(1.0) {
            return Err(MoebiusError::NotDiskPreserving);
        }
        let mut map = MoebiusMap { a: alpha, b: beta, c: beta.conj(), d: alpha.conj() };
        map.fix_sign();
        Ok(DiskAutomorphism { map, params: None })
    }

    pub fn identity() -> Self {
        DiskAutomorphism { map: MoebiusMap::identity(), params: None }
    }

    /// `z ↦ e^{iφ} z`.
    pub fn rotation(phi: f64) -> Self {
        let h = Complex64::from_polar(1.0, phi / 2.0);
        let m = MoebiusMap::new(h, 0.0.into(), 0.0.into(), h.conj()).expect("rotation");
        DiskAutomorphism { map: m, params: None }
    }

    /// `z ↦ (z + c)/(1 + cz)` for real `-1 < c < 1`: hyperbolic with fixed points ±1.
    pub fn real_translation(c: f64) -> Result<Self, MoebiusError> {
        if !(c.abs() < 1.0) {
            return Err(MoebiusError::InvalidParameter(format!("|c| = {} is not < 1", c.abs())));
        }
        Self::from_moebius(MoebiusMap::from_real(1.0, c, c, 1.0)?)
    }

    /// `z ↦ (z − w)/(1 − w̄z)`, sending `w` to 0.
    pub fn moving_to_origin(w: Complex64) -> Result<Self, MoebiusError> {
        if w.norm() >= 1.0 {
            return Err(MoebiusError::InvalidParameter("point not inside the disk".into()));
        }
        Self::from_moebius(MoebiusMap::new(1.0.into(), -w, -w.conj(), 1.0.into())?)
    }

    pub fn map(&self) -> &MoebiusMap {
        &self.map
    }

    pub fn params(&self) -> Option<DiskParams> {
        self.params
    }

    pub fn apply(&self, z: Complex64) -> Complex64 {
        self.map.apply_finite(z)
    }

    /// Image of `e^{iθ}` as an angle in `[0, 2π)`.
    pub fn apply_angle(&self, theta: f64) -> f64 {
        let w = self.apply(Complex64::from_polar(1.0, theta));
        w.arg().rem_euclid(2.0 * PI)
    }

    /// Multiplies in the `[[α, β], [β̄, ᾱ]]` form directly. Renormalizing would cancel
    /// catastrophically once `|α|` is large, so it is only done for moderate entries.
    pub fn compose(&self, g: &DiskAutomorphism) -> DiskAutomorphism {
        let [a1, b1, _, _] = self.map.entries();
        let [a2, b2, _, _] = g.map.entries();
        let mut alpha = a1 * a2 + b1 * b2.conj();
        let mut beta = a1 * b2 + b1 * a2.conj();
        if alpha.norm_sqr() < 1e8 {
            let n = (alpha.norm_sqr() - beta.norm_sqr()).sqrt();
            alpha /= n;
            beta /= n;
        }
        let mut map = MoebiusMap { a: alpha, b: beta, c: beta.conj(), d: alpha.conj() };
        map.fix_sign();
        DiskAutomorphism { map, params: None }
    }

    pub fn inverse(&self) -> DiskAutomorphism {
        DiskAutomorphism { map: self.map.inverse(), params: None }
    }

    pub fn conjugate_by(&self, h: &DiskAutomorphism) -> DiskAutomorphism {
        h.compose(self).compose(&h.inverse())
    }

    /// `self^k` for any integer `k`.
    pub fn pow(&self, k: i64) -> DiskAutomorphism {
        let base = if k < 0 { self.inverse() } else { *self };
        let mut acc = DiskAutomorphism::identity();
        let mut sq = base;
        let mut n = k.unsigned_abs();
        while n > 0 {
            if n & 1 == 1 {
                acc = acc.compose(&sq);
            }
            n >>= 1;
            if n > 0 {
                sq = sq.compose(&sq);
            }
        }
        acc
    }

    pub fn classify(&self) -> MapClass {
        if self.map.is_identity(IDENTITY_TOL) {
            return MapClass::Identity;
        }
        let t = self.map.trace().re.abs();
        if (t - 2.0).abs() <= EPS_CLS {
            MapClass::Parabolic
        } else if t < 2.0 {
            MapClass::Elliptic
        } else {
            MapClass::Hyperbolic
        }
    }

    pub fn fixed_points(&self) -> Result<FixedPoints, MoebiusError> {
        fixed_points(&self.map)
    }

    /// `|m'(z)| = 1/|cz + d|²`; used to tell attracting from repelling boundary fixed points.
    pub fn derivative_modulus(&self, z: Complex64) -> f64 {
        let [_, _, c, d] = self.map.entries();
        1.0 / (c * z + d).norm_sqr()
    }

    /// Boundary fixed points of a hyperbolic map as angles `(repelling, attracting)`.
    pub fn hyperbolic_fixed_angles(&self) -> Result<(f64, f64), MoebiusError> {
        let class = self.classify();
        if class != MapClass::Hyperbolic {
            return Err(MoebiusError::NotHyperbolic(class));
        }
        let fp = self.fixed_points()?;
        let pts: Vec<Complex64> = fp.points.iter().filter_map(|p| p.finite()).collect();
        if pts.len() != 2 {
            return Err(MoebiusError::NotHyperbolic(class));
        }
        let (p, q) = (pts[0] / pts[0].norm(), pts[1] / pts[1].norm());
        let (rep, att) = if self.derivative_modulus(p) < 1.0 { (q, p) } else { (p, q) };
        Ok((rep.arg().rem_euclid(2.0 * PI), att.arg().rem_euclid(2.0 * PI)))
    }

    /// The boundary fixed point of a parabolic map, as an angle.
    pub fn parabolic_fixed_angle(&self) -> Option<f64> {
        if self.classify() != MapClass::Parabolic {
            return None;
        }
        let fp = self.fixed_points().ok()?;
        let z = fp.points.first()?.finite()?;
        Some(z.arg().rem_euclid(2.0 * PI))
    }

    /// The invariant geodesic of a hyperbolic map, oriented from repelling to attracting point.
    pub fn axis(&self) -> Result<Geodesic, MoebiusError> {
        let (r, a) = self.hyperbolic_fixed_angles()?;
        Geodesic::from_endpoints(r, a).map_err(|e| MoebiusError::InvalidParameter(e.to_string()))
    }
}

impl Serialize for DiskAutomorphism {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        self.map.serialize(s)
    }
}

impl<'de> Deserialize<'de> for DiskAutomorphism {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let m = MoebiusMap::deserialize(d)?;
        DiskAutomorphism::from_moebius(m).map_err(serde::de::Error::custom)
    }
}

/// Snap a normalized disk-preserving matrix exactly onto `[[α, β], [β̄, ᾱ]]`.
fn project_su11(m: &MoebiusMap) -> MoebiusMap {
    let [a, b, c, d] = m.entries();
    let alpha = 0.5 * (a + d.conj());
    let beta = 0.5 * (b + c.conj());
    let n = (alpha.norm_sqr() - beta.norm_sqr()).sqrt();
    let (alpha, beta) = (alpha / n, beta / n);
    let mut out = MoebiusMap { a: alpha, b: beta, c: beta.conj(), d: alpha.conj() };
    out.fix_sign();
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn params_examples() {
        let neg = DiskAutomorphism::from_disk_params(0.0, c(0.0, 0.0)).unwrap();
        let z = c(0.3, -0.2);
        assert!((neg.apply(z) + z).norm() < 1e-15);

        let id = DiskAutomorphism::from_disk_params(PI, c(0.0, 0.0)).unwrap();
        assert_eq!(id.classify(), MapClass::Identity);

        let m = DiskAutomorphism::from_disk_params(0.0, c(0.5, 0.0)).unwrap();
        assert!(m.apply(c(0.5, 0.0)).norm() < 1e-15);
        assert!((m.apply(c(0.0, 0.0)) - c(0.5, 0.0)).norm() < 1e-15);

        assert!(DiskAutomorphism::from_disk_params(0.0, c(1.0, 0.0)).is_err());
    }

    #[test]
    fn normalization_rules() {
        let m = MoebiusMap::from_real(-2.0, 1.0, 3.0, -4.0).unwrap();
        assert!((m.det() - 1.0).norm() < 1e-12);
        assert!(m.entries()[0].re >= 0.0);
        assert!(MoebiusMap::from_real(1.0, 2.0, 2.0, 4.0).is_err());
    }

    #[test]
    fn compose_examples() {
        let f = MoebiusMap::new(c(1.0, 2.0), c(0.5, 0.0), c(-0.3, 0.1), c(2.0, 0.0)).unwrap();
        assert!(compose(&MoebiusMap::identity(), &f).approx_eq(&f, 1e-14));
        assert!(compose(&f, &f.inverse()).is_identity(1e-12));
        let neg = MoebiusMap::from_real(-1.0, 0.0, 0.0, 1.0).unwrap();
        assert!(neg.compose(&neg).is_identity(1e-15));
    }

    #[test]
    fn classify_examples() {
        let neg = DiskAutomorphism::from_disk_params(0.0, c(0.0, 0.0)).unwrap();
        assert_eq!(neg.classify(), MapClass::Elliptic);

        let m = DiskAutomorphism::real_translation(0.5).unwrap();
        assert_eq!(m.classify(), MapClass::Hyperbolic);
        // trace of ((1,c),(c,1))/sqrt(1-c^2)
        assert!((m.map().trace().re - 2.0 / 0.75_f64.sqrt()).abs() < 1e-12);

        let cay = MoebiusMap::cayley();
        let t = MoebiusMap::translation(1.0.into()).conjugate_by(&cay);
        let p = DiskAutomorphism::from_moebius(t).unwrap();
        assert_eq!(p.classify(), MapClass::Parabolic);
        let fp = p.fixed_points().unwrap();
        assert!(fp.double);
        assert!((fp.points[0].finite().unwrap() - c(1.0, 0.0)).norm() < 1e-12);
    }

    #[test]
    fn non_disk_preserving_is_rejected() {
        let dilation = MoebiusMap::from_real(2.0, 0.0, 0.0, 1.0).unwrap();
        assert_eq!(DiskAutomorphism::from_moebius(dilation), Err(MoebiusError::NotDiskPreserving));
        let inversion = MoebiusMap::from_real(0.0, 1.0, 1.0, 0.0).unwrap();
        assert_eq!(DiskAutomorphism::from_moebius(inversion), Err(MoebiusError::NotDiskPreserving));
    }

    #[test]
    fn fixed_point_examples() {
        let neg = MoebiusMap::from_real(-1.0, 0.0, 0.0, 1.0).unwrap();
        let fp = fixed_points(&neg).unwrap();
        assert_eq!(fp.points.len(), 2);
        assert!(fp.points.contains(&SpherePoint::Infinity));
        assert!(fp.points.iter().any(|p| p.finite().is_some_and(|z| z.norm() < 1e-15)));

        let m = DiskAutomorphism::real_translation(0.5).unwrap();
        let fp = m.fixed_points().unwrap();
        let mut xs: Vec<f64> = fp.points.iter().map(|p| p.finite().unwrap().re).collect();
        xs.sort_by(f64::total_cmp);
        assert!((xs[0] + 1.0).abs() < 1e-14 && (xs[1] - 1.0).abs() < 1e-14);

        let t = fixed_points(&MoebiusMap::translation(1.0.into())).unwrap();
        assert_eq!(t.points, vec![SpherePoint::Infinity]);
        assert!(t.double);

        assert_eq!(fixed_points(&MoebiusMap::identity()), Err(MoebiusError::IdentityMap));
    }

    #[test]
    fn attracting_point_of_real_translation() {
        let m = DiskAutomorphism::real_translation(0.5).unwrap();
        let (r, a) = m.hyperbolic_fixed_angles().unwrap();
        assert!((r - PI).abs() < 1e-12);
        assert!(a.abs() < 1e-12 || (a - 2.0 * PI).abs() < 1e-12);
    }

    #[test]
    fn axis_examples() {
        let m = DiskAutomorphism::real_translation(0.5).unwrap();
        let ax = m.axis().unwrap();
        assert!(ax.contains(c(0.3, 0.0), 1e-12) && ax.contains(c(-0.7, 0.0), 1e-12));

        let rot = DiskAutomorphism::rotation(PI / 2.0);
        let ax = m.conjugate_by(&rot).axis().unwrap();
        assert!(ax.contains(c(0.0, 0.4), 1e-12) && ax.contains(c(0.0, -0.9), 1e-12));

        let h = DiskAutomorphism::from_disk_params(0.0, c(0.5, 0.0)).unwrap();
        let g = m.conjugate_by(&h);
        let ax = g.axis().unwrap();
        for z in ax.sample(25) {
            assert!(ax.contains(g.apply(z), 1e-9));
        }
    }

    #[test]
    fn pow_matches_repeated_composition() {
        let m = DiskAutomorphism::from_disk_params(0.3, c(0.2, 0.4)).unwrap();
        let mut acc = DiskAutomorphism::identity();
        for _ in 0..5 {
            acc = acc.compose(&m);
        }
        assert!(acc.map().approx_eq(m.pow(5).map(), 1e-10));
        assert!(m.pow(-3).compose(&m.pow(3)).map().is_identity(1e-10));
    }

    #[test]
    fn serde_round_trip() {
        let m = DiskAutomorphism::from_disk_params(1.0, c(0.1, -0.3)).unwrap();
        let s = serde_json::to_string(&m).unwrap();
        let back: DiskAutomorphism = serde_json::from_str(&s).unwrap();
        assert!(back.map().approx_eq(m.map(), 1e-15));
    }

    #[test]
    fn three_point_map() {
        let z = [c(1.0, 0.0), c(0.0, 1.0), c(-1.0, 0.0)];
        let w = [c(0.0, 1.0), c(-1.0, 0.0), c(0.0, -1.0)];
        let m = MoebiusMap::from_three_points(z, w).unwrap();
        for k in 0..3 {
            assert!((m.apply_finite(z[k]) - w[k]).norm() < 1e-14);
        }
    }
}
