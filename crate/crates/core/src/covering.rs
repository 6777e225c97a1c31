//! Explicit universal coverings `π = exp ∘ M` of the round annulus and the punctured disk.

use std::f64::consts::{FRAC_PI_2, PI, TAU};

use num_complex::Complex64;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::disk::{density, BoundaryPoint};
use crate::moebius::{DiskAutomorphism, MoebiusError};

const MAX_HALVINGS: u32 = 20;
/// Largest change of `log π` accepted in one continuation step.
const MAX_LOG_STEP: f64 = 0.25;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum CoveringError {
    #[error("annulus needs R > 1, got {0}")]
    InvalidRadius(f64),
    #[error("point {0} is outside the unit disk")]
    OutsideDisk(Complex64),
    #[error("point {0} is outside the domain")]
    OutsideDomain(Complex64),
    #[error("lift start maps to {found}, curve starts at {expected}")]
    StartMismatch { expected: Complex64, found: Complex64 },
    #[error("continuation is ambiguous at sample {0}")]
    StepTooLarge(usize),
    #[error(transparent)]
    Moebius(#[from] MoebiusError),
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", tag = "kind")]
pub enum CoveringKind {
    /// `{1/R < |z| < R}`.
    Annulus { r: f64 },
    /// `𝔻 ∖ {0}`.
    PuncturedDisk,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ExplicitCovering {
    pub kind: CoveringKind,
    pub deck_generator: DiskAutomorphism,
}

/// `M` sends 𝔻 onto the strip `|Re w| < log R` with `M(0) = 0` and `±1` to the ends
/// `±i∞`; the deck generator is `M⁻¹(M(z) + 2πi)`, the translation along `(−1, 1)` by
/// hyperbolic length `π²/log R`.
pub fn build_annulus_covering(r: f64) -> Result<ExplicitCovering, CoveringError> {
    if !(r > 1.0) || !r.is_finite() {
        return Err(CoveringError::InvalidRadius(r));
    }
    let half = PI * PI / (2.0 * r.ln());
    let deck = DiskAutomorphism::from_su11(Complex64::new(half.cosh(), 0.0), Complex64::new(half.sinh(), 0.0))?;
    Ok(ExplicitCovering { kind: CoveringKind::Annulus { r }, deck_generator: deck })
}

/// `M(z) = −(1 − z)/(1 + z)` onto the left half-plane, `M(−1) = ∞`; the deck generator is
/// the parabolic `z ↦ ((1+πi)z + πi)/(−πi z + 1 − πi)` fixing −1.
pub fn build_punctured_disk_covering() -> ExplicitCovering {
    let deck = DiskAutomorphism::from_su11(Complex64::new(1.0, PI), Complex64::new(0.0, PI)).expect("unimodular");
    ExplicitCovering { kind: CoveringKind::PuncturedDisk, deck_generator: deck }
}

impl ExplicitCovering {
    fn strip_scale(&self) -> f64 {
        match self.kind {
            CoveringKind::Annulus { r } => 2.0 * r.ln() / PI,
            CoveringKind::PuncturedDisk => 1.0,
        }
    }

    /// The map `M` onto the strip or half-plane.
    pub fn strip(&self, z: Complex64) -> Result<Complex64, CoveringError> {
        if !(z.norm() < 1.0) {
            return Err(CoveringError::OutsideDisk(z));
        }
        let one = Complex64::new(1.0, 0.0);
        Ok(match self.kind {
            CoveringKind::Annulus { .. } => {
                let zeta = ((one + z) / (one - z)).ln();
                Complex64::i() * self.strip_scale() * zeta
            }
            CoveringKind::PuncturedDisk => -(one - z) / (one + z),
        })
    }

    pub fn strip_inverse(&self, w: Complex64) -> Complex64 {
        let one = Complex64::new(1.0, 0.0);
        match self.kind {
            CoveringKind::Annulus { .. } => {
                let zeta = -Complex64::i() * w / self.strip_scale();
                (zeta / 2.0).tanh()
            }
            CoveringKind::PuncturedDisk => {
                let u = -w;
                (one - u) / (one + u)
            }
        }
    }

    pub fn eval(&self, z: Complex64) -> Result<Complex64, CoveringError> {
        Ok(self.strip(z)?.exp())
    }

    pub fn contains(&self, q: Complex64) -> bool {
        match self.kind {
            CoveringKind::Annulus { r } => q.norm() > 1.0 / r && q.norm() < r,
            CoveringKind::PuncturedDisk => q.norm() > 0.0 && q.norm() < 1.0,
        }
    }

    /// Euclidean distance from `q` to the boundary of the domain.
    pub fn boundary_distance(&self, q: Complex64) -> f64 {
        let m = q.norm();
        match self.kind {
            CoveringKind::Annulus { r } => (r - m).min(m - 1.0 / r),
            CoveringKind::PuncturedDisk => (1.0 - m).min(m),
        }
    }

    /// Density of the hyperbolic metric of the domain (curvature −1), in closed form.
    pub fn domain_density(&self, q: Complex64) -> Result<f64, CoveringError> {
        if !self.contains(q) {
            return Err(CoveringError::OutsideDomain(q));
        }
        Ok(match self.kind {
            CoveringKind::Annulus { r } => {
                let a = r.ln();
                PI / (2.0 * a * (FRAC_PI_2 * q.norm().ln() / a).cos() * q.norm())
            }
            CoveringKind::PuncturedDisk => 1.0 / (q.norm() * -q.norm().ln()),
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct RadialSample {
    pub t: f64,
    pub value: Complex64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RadialTrace {
    pub theta: BoundaryPoint,
    pub samples: Vec<RadialSample>,
}

/// Samples at `t_k = 1 − (1 − t_max)^{k/(n−1)}`, `k = 0..n`: from the origin to `t_max`,
/// with `1 − t` decreasing geometrically.
pub fn radial_trace(cov: &ExplicitCovering, theta: f64, n_samples: usize, t_max: f64) -> Result<RadialTrace, CoveringError> {
    let n = n_samples.max(2);
    let u = Complex64::from_polar(1.0, theta);
    let samples = (0..n)
        .map(|k| {
            let t = 1.0 - (1.0 - t_max).powf(k as f64 / (n - 1) as f64);
            Ok(RadialSample { t, value: cov.eval(u * t)? })
        })
        .collect::<Result<Vec<_>, CoveringError>>()?;
    Ok(RadialTrace { theta: BoundaryPoint::new(theta), samples })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum RadialClass {
    Escaping,
    Bounded,
    Undetermined,
}

/// Radius at which traces are cut off by [`classify_radial`].
pub const RADIAL_T_MAX: f64 = 1.0 - 1e-12;
const ESCAPE_TOL: f64 = 1e-3;

/// Read the radial type off a trace: the distance to the boundary must fall below `1e-3`
/// monotonically over the last quarter to be escaping, and stay comparable to its tail-start
/// value above that level to be bounded.
pub fn classify_trace(cov: &ExplicitCovering, trace: &RadialTrace) -> RadialClass {
    let d: Vec<f64> = trace.samples.iter().map(|s| cov.boundary_distance(s.value)).collect();
    let tail = &d[d.len() - d.len() / 4 - 1..];
    let last = *tail.last().expect("nonempty");
    let monotone = tail.windows(2).all(|w| w[1] <= w[0] + 1e-15);
    if last < ESCAPE_TOL && monotone {
        RadialClass::Escaping
    } else if last >= ESCAPE_TOL && tail.iter().all(|x| *x >= 0.5 * tail[0]) {
        RadialClass::Bounded
    } else {
        RadialClass::Undetermined
    }
}

pub fn classify_radial(cov: &ExplicitCovering, theta: f64, horizon: usize) -> Result<RadialClass, CoveringError> {
    Ok(classify_trace(cov, &radial_trace(cov, theta, horizon, RADIAL_T_MAX)?))
}

pub fn classify_radial_many(cov: &ExplicitCovering, thetas: &[f64], horizon: usize) -> Result<Vec<RadialClass>, CoveringError> {
    thetas.par_iter().map(|t| classify_radial(cov, *t, horizon)).collect()
}

/// Lift a sampled curve in the domain starting from `start`, by continuing `log π` along
/// the curve. Steps whose logarithmic increment is too large are halved, at most 20 times.
pub fn lift_curve(cov: &ExplicitCovering, curve: &[Complex64], start: Complex64) -> Result<Vec<Complex64>, CoveringError> {
    let Some(first) = curve.first() else { return Ok(Vec::new()) };
    let w0 = cov.strip(start)?;
    let found = w0.exp();
    if (found - first).norm() > 1e-7 * first.norm().max(1.0) {
        return Err(CoveringError::StartMismatch { expected: *first, found });
    }
    let mut w = w0 + (first / found).ln();
    let mut out = Vec::with_capacity(curve.len());
    out.push(start);
    for (i, pair) in curve.windows(2).enumerate() {
        let (a, b) = (pair[0], pair[1]);
        if !cov.contains(b) {
            return Err(CoveringError::OutsideDomain(b));
        }
        let mut pieces = 1u32;
        let mut halvings = 0;
        while (b / a).ln().norm() / pieces as f64 > MAX_LOG_STEP {
            if halvings == MAX_HALVINGS {
                return Err(CoveringError::StepTooLarge(i + 1));
            }
            pieces *= 2;
            halvings += 1;
        }
        let mut prev = a;
        for j in 1..=pieces {
            let s = j as f64 / pieces as f64;
            let q = a + (b - a) * s;
            if !cov.contains(q) {
                return Err(CoveringError::StepTooLarge(i + 1));
            }
            w += (q / prev).ln();
            prev = q;
        }
        out.push(cov.strip_inverse(w));
    }
    Ok(out)
}

/// Hyperbolic length in 𝔻 of a sampled path, by the trapezoid rule on the density.
pub fn disk_length(path: &[Complex64]) -> f64 {
    path.windows(2).map(|p| 0.5 * (density(p[0]) + density(p[1])) * (p[1] - p[0]).norm()).sum()
}

/// Hyperbolic length in the domain of a sampled path, using the closed-form density.
pub fn domain_length(cov: &ExplicitCovering, path: &[Complex64]) -> Result<f64, CoveringError> {
    let mut total = 0.0;
    for p in path.windows(2) {
        total += 0.5 * (cov.domain_density(p[0])? + cov.domain_density(p[1])?) * (p[1] - p[0]).norm();
    }
    Ok(total)
}

/// Loop around the core of the domain `k` times (negative `k` runs clockwise).
pub fn core_loop(cov: &ExplicitCovering, k: i32, samples_per_turn: usize) -> Vec<Complex64> {
    let radius = match cov.kind {
        CoveringKind::Annulus { .. } => 1.0,
        CoveringKind::PuncturedDisk => (-1.0f64).exp(),
    };
    let n = samples_per_turn * k.unsigned_abs() as usize;
    (0..=n).map(|j| Complex64::from_polar(radius, TAU * k.signum() as f64 * j as f64 / samples_per_turn as f64)).collect()
}

/// Path from `π(0)` to a point just inside the boundary at `p`: along the core circle to the
/// argument of `p`, then radially to within `eps` of `p`.
pub fn path_to_boundary(cov: &ExplicitCovering, p: Complex64, eps: f64, samples: usize) -> Vec<Complex64> {
    let core = match cov.kind {
        CoveringKind::Annulus { .. } => 1.0,
        CoveringKind::PuncturedDisk => (-1.0f64).exp(),
    };
    let phi = p.arg();
    let mut out: Vec<Complex64> = (0..=samples).map(|j| Complex64::from_polar(core, phi * j as f64 / samples as f64)).collect();
    let target = p.norm();
    let end = if target > core { target - eps } else { target + eps };
    for j in 1..=samples {
        // geometric approach in the distance to the boundary
        let s = j as f64 / samples as f64;
        let rho = target + (core - target) * ((end - target) / (core - target)).powf(s);
        out.push(Complex64::from_polar(rho, phi));
    }
    out
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CorrespondenceReport {
    pub k: i32,
    pub p: Complex64,
    pub theta1: f64,
    pub theta2: f64,
    /// `γ^k(e^{iθ₁})`, as an angle.
    pub predicted: f64,
    pub discrepancy: f64,
}

/// Lift a path from `π(0)` to `p` and the same path preceded by `k` core loops, and compare
/// the landing point of the second with the `γ^k`-image of the first.
pub fn correspondence_check(cov: &ExplicitCovering, p: Complex64, k: i32) -> Result<CorrespondenceReport, CoveringError> {
    let zero = Complex64::new(0.0, 0.0);
    let eps = 1e-10 * p.norm().max(1e-3);
    let direct = path_to_boundary(cov, p, eps, 400);
    let mut looped = core_loop(cov, k, 256);
    looped.extend_from_slice(&direct[1..]);
    let l1 = lift_curve(cov, &direct, zero)?;
    let l2 = lift_curve(cov, &looped, zero)?;
    let theta1 = l1.last().expect("nonempty").arg();
    let theta2 = l2.last().expect("nonempty").arg();
    let predicted = cov.deck_generator.pow(k as i64).apply_angle(theta1);
    let discrepancy = (Complex64::from_polar(1.0, predicted) - Complex64::from_polar(1.0, theta2)).norm();
    Ok(CorrespondenceReport { k, p, theta1, theta2, predicted, discrepancy })
}

/// Points per side of the polar grid used for the deck relation check.
pub const DECK_GRID: usize = 24;

/// Largest `|π(γ(z)) − π(z)|` over a polar grid of radii up to `max_radius`.
pub fn deck_relation_error(cov: &ExplicitCovering, max_radius: f64, n: usize) -> Result<f64, CoveringError> {
    let mut worst: f64 = 0.0;
    for i in 0..n {
        let rho = max_radius * i as f64 / (n - 1).max(1) as f64;
        for j in 0..n {
            let z = Complex64::from_polar(rho, TAU * j as f64 / n as f64);
            for g in [cov.deck_generator, cov.deck_generator.inverse()] {
                worst = worst.max((cov.eval(g.apply(z))? - cov.eval(z)?).norm());
            }
        }
    }
    Ok(worst)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::moebius::MapClass;

    #[test]
    fn annulus_basics() {
        let cov = build_annulus_covering(2.0).unwrap();
        assert!((cov.eval(Complex64::new(0.0, 0.0)).unwrap() - 1.0).norm() < 1e-15);
        assert_eq!(cov.deck_generator.classify(), MapClass::Hyperbolic);
        let (rep, att) = cov.deck_generator.hyperbolic_fixed_angles().unwrap();
        assert!((rep.cos() + 1.0).abs() < 1e-12 && (att.cos() - 1.0).abs() < 1e-12);
        assert!(deck_relation_error(&cov, 0.9, DECK_GRID).unwrap() < 1e-9);
        assert!(build_annulus_covering(1.0).is_err());
    }

    #[test]
    fn strip_round_trip() {
        for cov in [build_annulus_covering(3.0).unwrap(), build_punctured_disk_covering()] {
            for z in [Complex64::new(0.3, -0.4), Complex64::new(-0.7, 0.1)] {
                assert!((cov.strip_inverse(cov.strip(z).unwrap()) - z).norm() < 1e-14);
            }
        }
    }

    #[test]
    fn punctured_disk_basics() {
        let cov = build_punctured_disk_covering();
        let p0 = cov.eval(Complex64::new(0.0, 0.0)).unwrap();
        assert!(p0.norm() < 1.0 && p0.norm() > 0.0);
        assert_eq!(cov.deck_generator.classify(), MapClass::Parabolic);
        assert!((cov.deck_generator.parabolic_fixed_angle().unwrap().cos() + 1.0).abs() < 1e-12);
        assert!(deck_relation_error(&cov, 0.9, DECK_GRID).unwrap() < 1e-9);
        let tr = radial_trace(&cov, PI, 64, RADIAL_T_MAX).unwrap();
        assert!(tr.samples.last().unwrap().value.norm() < 1e-3);
        assert_eq!(classify_radial(&cov, PI, 64).unwrap(), RadialClass::Escaping);
    }

    #[test]
    fn radial_types_on_annulus() {
        let cov = build_annulus_covering(2.0).unwrap();
        assert_eq!(classify_radial(&cov, 0.0, 64).unwrap(), RadialClass::Bounded);
        assert_eq!(classify_radial(&cov, PI, 64).unwrap(), RadialClass::Bounded);
        assert_eq!(classify_radial(&cov, PI / 3.0, 64).unwrap(), RadialClass::Escaping);
        let tr = radial_trace(&cov, PI / 2.0, 64, RADIAL_T_MAX).unwrap();
        assert!(tr.samples.windows(2).all(|w| w[1].t > w[0].t));
    }

    #[test]
    fn core_loop_lifts_to_deck_image() {
        let cov = build_annulus_covering(2.0).unwrap();
        let lift = lift_curve(&cov, &core_loop(&cov, 1, 256), Complex64::new(0.0, 0.0)).unwrap();
        let target = cov.deck_generator.apply(Complex64::new(0.0, 0.0));
        assert!((lift.last().unwrap() - target).norm() < 1e-6);
        let constant = vec![Complex64::new(1.0, 0.0); 5];
        let lift = lift_curve(&cov, &constant, Complex64::new(0.0, 0.0)).unwrap();
        assert!(lift.iter().all(|z| z.norm() < 1e-15));
    }

    #[test]
    fn correspondence_small_k() {
        let cov = build_annulus_covering(2.0).unwrap();
        for k in 0..=3 {
            let rep = correspondence_check(&cov, Complex64::new(2.0, 0.0), k).unwrap();
            assert!(rep.discrepancy < 1e-5, "{rep:?}");
        }
    }

    #[test]
    fn local_isometry() {
        let cov = build_annulus_covering(2.0).unwrap();
        let seg: Vec<Complex64> = (0..=200).map(|j| Complex64::new(1.1, 0.2) + Complex64::new(0.05, 0.03) * (j as f64 / 200.0)).collect();
        let start = cov.strip_inverse(seg[0].ln());
        let lift = lift_curve(&cov, &seg, start).unwrap();
        let a = disk_length(&lift);
        let b = domain_length(&cov, &seg).unwrap();
        assert!((a - b).abs() < 1e-6, "{a} vs {b}");
    }
}
