//! Harmonic measure of the inner circle of a round annulus: closed form and walk-on-spheres.

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use std::f64::consts::TAU;
use thiserror::Error;

/// Walks stop once they are this close to a boundary circle.
pub const ABSORPTION_TOL: f64 = 1e-6;
/// Environment variable capping the number of worker threads.
pub const THREADS_ENV: &str = "BOUNDARY_LAB_THREADS";

#[derive(Debug, Error, Clone, PartialEq)]
pub enum HarmonicError {
    #[error("annulus needs R > 1, got {0}")]
    InvalidRadius(f64),
    #[error("point {0} is not in the annulus")]
    OutsideAnnulus(Complex64),
    #[error("Monte Carlo needs at least one walk")]
    NoWalks,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", tag = "kind")]
pub enum HarmonicMethod {
    ClosedForm,
    /// `step` is the absorption distance to the boundary circles.
    MonteCarlo { n_walks: u64, step: f64 },
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct HarmonicEstimate {
    pub value: f64,
    pub method: HarmonicMethod,
    pub stderr: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", tag = "kind")]
pub enum MethodRequest {
    ClosedForm,
    MonteCarlo { n_walks: u64, seed: u64 },
}

/// `ω(C₁; z, A)` for `A = {1/R < |z| < R}` and `C₁ = {|z| = 1/R}`. The closed form is
/// `(log R − log|z|)/(2 log R)` and also accepts points on the boundary circles.
pub fn harmonic_measure_annulus(r: f64, z: Complex64, method: MethodRequest) -> Result<HarmonicEstimate, HarmonicError> {
    if !(r > 1.0) || !r.is_finite() {
        return Err(HarmonicError::InvalidRadius(r));
    }
    let m = z.norm();
    match method {
        MethodRequest::ClosedForm => {
            if !(m >= 1.0 / r && m <= r) {
                return Err(HarmonicError::OutsideAnnulus(z));
            }
            let value = (r.ln() - m.ln()) / (2.0 * r.ln());
            Ok(HarmonicEstimate { value: value.clamp(0.0, 1.0), method: HarmonicMethod::ClosedForm, stderr: 0.0 })
        }
        MethodRequest::MonteCarlo { n_walks, seed } => {
            if !(m > 1.0 / r && m < r) {
                return Err(HarmonicError::OutsideAnnulus(z));
            }
            if n_walks == 0 {
                return Err(HarmonicError::NoWalks);
            }
            let hits = with_thread_cap(|| (0..n_walks).into_par_iter().filter(|i| walk_hits_inner(r, z, seed, *i)).count());
            let p = hits as f64 / n_walks as f64;
            Ok(HarmonicEstimate {
                value: p,
                method: HarmonicMethod::MonteCarlo { n_walks, step: ABSORPTION_TOL },
                stderr: (p * (1.0 - p) / n_walks as f64).sqrt(),
            })
        }
    }
}

/// One walk on spheres with its own stream of the master seed, so results do not depend
/// on scheduling.
fn walk_hits_inner(r: f64, z: Complex64, seed: u64, walk: u64) -> bool {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(walk);
    let inner = 1.0 / r;
    let mut p = z;
    loop {
        let m = p.norm();
        let (to_outer, to_inner) = (r - m, m - inner);
        if to_inner <= ABSORPTION_TOL {
            return true;
        }
        if to_outer <= ABSORPTION_TOL {
            return false;
        }
        let step = to_outer.min(to_inner);
        p += Complex64::from_polar(step, rng.gen::<f64>() * TAU);
    }
}

/// Run `f` on a pool limited by `BOUNDARY_LAB_THREADS` when it is set.
pub fn with_thread_cap<T: Send>(f: impl FnOnce() -> T + Send) -> T {
    match std::env::var(THREADS_ENV).ok().and_then(|v| v.parse::<usize>().ok()).filter(|n| *n > 0) {
        Some(n) => match rayon::ThreadPoolBuilder::new().num_threads(n).build() {
            Ok(pool) => pool.install(f),
            Err(_) => f(),
        },
        None => f(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn closed_form_values() {
        for r in [1.5, 2.0, 10.0] {
            let e = harmonic_measure_annulus(r, Complex64::new(1.0, 0.0), MethodRequest::ClosedForm).unwrap();
            assert_eq!(e.value, 0.5);
            let outer = harmonic_measure_annulus(r, Complex64::new(r, 0.0), MethodRequest::ClosedForm).unwrap();
            assert!(outer.value.abs() < 1e-15);
        }
        assert!(harmonic_measure_annulus(2.0, Complex64::new(3.0, 0.0), MethodRequest::ClosedForm).is_err());
    }

    #[test]
    fn monte_carlo_is_deterministic() {
        let req = MethodRequest::MonteCarlo { n_walks: 2000, seed: 7 };
        let a = harmonic_measure_annulus(2.0, Complex64::new(1.0, 0.0), req).unwrap();
        let b = harmonic_measure_annulus(2.0, Complex64::new(1.0, 0.0), req).unwrap();
        assert_eq!(a, b);
        assert!((a.value - 0.5).abs() < 5.0 * a.stderr);
    }
}
