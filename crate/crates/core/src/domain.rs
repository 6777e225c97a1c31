//! Domain descriptions read from JSON, and the named planar examples expanded into
//! explicit geometry.

use std::f64::consts::PI;
use std::path::{Path, PathBuf};

use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::covering::{build_annulus_covering, build_punctured_disk_covering, CoveringError, ExplicitCovering};
use crate::group::{families, GroupError, SchottkySystem};

#[derive(Debug, Error)]
pub enum DomainError {
    #[error("cannot read {path}: {source}")]
    Io { path: PathBuf, source: std::io::Error },
    #[error("invalid domain document: {0}")]
    Json(#[from] serde_json::Error),
    #[error(transparent)]
    Group(#[from] GroupError),
    #[error(transparent)]
    Covering(#[from] CoveringError),
    #[error("unknown name {0:?}")]
    UnknownName(String),
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", tag = "kind", deny_unknown_fields)]
pub enum DomainSpec {
    Annulus { r: f64 },
    PuncturedDisk,
    /// A pairing system, inline or in a separate file (relative to the document).
    Schottky {
        #[serde(default, skip_serializing_if = "Option::is_none")]
        file: Option<PathBuf>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        system: Option<serde_json::Value>,
    },
    /// One of the built-in pairing systems.
    Fixture {
        name: String,
        #[serde(default = "default_horizon")]
        horizon: u32,
    },
    /// `reef_point`, `reef_interval` or `fat_cantor`, truncated after `depth` pieces.
    Named {
        name: String,
        #[serde(default = "default_depth")]
        depth: usize,
        #[serde(default = "default_r")]
        r: f64,
    },
}

fn default_horizon() -> u32 {
    8
}

fn default_depth() -> usize {
    24
}

fn default_r() -> f64 {
    2.0
}

/// Circular arc `{c + ρe^{it} : |t − mid| < half}`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CircleArc {
    pub center: Complex64,
    pub radius: f64,
    pub mid: f64,
    pub half: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Segment(pub Complex64, pub Complex64);

/// Complement pieces of a planar domain: the domain is the sphere minus all of these, or
/// the annulus `{1/R < |z| < R}` minus the points when `annulus` is set.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PlanarGeometry {
    pub name: String,
    pub annulus: Option<f64>,
    pub arcs: Vec<CircleArc>,
    pub segments: Vec<Segment>,
    pub points: Vec<Complex64>,
    /// The boundary component the example is about.
    pub distinguished: Vec<Segment>,
}

#[derive(Debug, Clone)]
pub enum Domain {
    Covering(ExplicitCovering),
    Schottky(SchottkySystem),
    Planar(PlanarGeometry),
}

impl DomainSpec {
    pub fn from_path(path: &Path) -> Result<(DomainSpec, PathBuf), DomainError> {
        let text = std::fs::read_to_string(path).map_err(|source| DomainError::Io { path: path.to_owned(), source })?;
        let base = path.parent().map(Path::to_owned).unwrap_or_default();
        Ok((serde_json::from_str(&text)?, base))
    }

    pub fn expand(&self, base: &Path) -> Result<Domain, DomainError> {
        Ok(match self {
            DomainSpec::Annulus { r } => Domain::Covering(build_annulus_covering(*r)?),
            DomainSpec::PuncturedDisk => Domain::Covering(build_punctured_disk_covering()),
            DomainSpec::Schottky { file, system } => {
                let text = match (file, system) {
                    (_, Some(v)) => v.to_string(),
                    (Some(f), None) => {
                        let p = base.join(f);
                        std::fs::read_to_string(&p).map_err(|source| DomainError::Io { path: p, source })?
                    }
                    (None, None) => return Err(DomainError::UnknownName("schottky without file or system".into())),
                };
                Domain::Schottky(SchottkySystem::from_json_str(&text)?)
            }
            DomainSpec::Fixture { name, horizon } => {
                Domain::Schottky(families::by_name(name, *horizon).ok_or_else(|| DomainError::UnknownName(name.clone()))?)
            }
            DomainSpec::Named { name, depth, r } => Domain::Planar(named_example(name, *depth, *r)?),
        })
    }
}

/// Load a pairing system from either a domain document or a bare system file, or by fixture
/// name.
pub fn load_system(arg: &str, horizon: u32) -> Result<SchottkySystem, DomainError> {
    if let Some(sys) = families::by_name(arg, horizon) {
        return Ok(sys);
    }
    let path = Path::new(arg);
    let text = std::fs::read_to_string(path).map_err(|source| DomainError::Io { path: path.to_owned(), source })?;
    if let Ok(spec) = serde_json::from_str::<DomainSpec>(&text) {
        if let Domain::Schottky(s) = spec.expand(path.parent().unwrap_or(Path::new("")))? {
            return Ok(s);
        }
        return Err(DomainError::UnknownName(format!("{arg} does not describe a pairing system")));
    }
    Ok(SchottkySystem::from_json_str(&text)?)
}

pub const NAMED_EXAMPLES: [&str; 3] = ["reef_point", "reef_interval", "fat_cantor"];

pub fn named_example(name: &str, depth: usize, r: f64) -> Result<PlanarGeometry, DomainError> {
    match name {
        "reef_point" => Ok(reef_point(depth)),
        "reef_interval" => Ok(reef_interval(depth)),
        "fat_cantor" => Ok(fat_cantor(r, depth)),
        _ => Err(DomainError::UnknownName(name.to_owned())),
    }
}

/// Arcs of `|z| = 1/n` with `|Arg((−1)ⁿz)| < (n−1)π/n`, for `2 ≤ n ≤ depth + 1`, plus the
/// origin. The arc of index `n` opens toward `(−1)ⁿ⁺¹`.
pub fn reef_point(depth: usize) -> PlanarGeometry {
    let arcs = (2..=depth + 1)
        .map(|n| {
            let nf = n as f64;
            CircleArc { center: Complex64::new(0.0, 0.0), radius: 1.0 / nf, mid: if n % 2 == 0 { 0.0 } else { PI }, half: (nf - 1.0) * PI / nf }
        })
        .collect();
    let origin = Complex64::new(0.0, 0.0);
    PlanarGeometry {
        name: "reef_point".into(),
        annulus: None,
        arcs,
        segments: Vec::new(),
        points: vec![origin],
        distinguished: vec![Segment(origin, origin)],
    }
}

/// The three-segment reefs `(−1)ⁿCₙ` for `1 ≤ n ≤ depth`, plus the interval `[−1/4, 1/4]`.
pub fn reef_interval(depth: usize) -> PlanarGeometry {
    let q = 0.25;
    let mut segments = Vec::new();
    for n in 1..=depth {
        let s = if n % 2 == 0 { 1.0 } else { -1.0 };
        let k = 1.0 / n as f64;
        let p0 = Complex64::new(-q - k, -k);
        let p1 = Complex64::new(q + k, -k);
        let p2 = Complex64::new(q + k, k);
        let p3 = Complex64::new(-q - k, k);
        for (a, b) in [(p0, p1), (p1, p2), (p2, p3)] {
            segments.push(Segment(a * s, b * s));
        }
    }
    let interval = Segment(Complex64::new(-q, 0.0), Complex64::new(q, 0.0));
    segments.push(interval);
    PlanarGeometry {
        name: "reef_interval".into(),
        annulus: None,
        arcs: Vec::new(),
        segments,
        points: Vec::new(),
        distinguished: vec![interval],
    }
}

/// The annulus `{1/R < |z| < R}` with punctures accumulating at every point of `|z| = R`:
/// at stage `k` the `2^{k+1}` points `(R − (R−1)2^{−k}) e^{2πij/2^{k+1}}`.
pub fn fat_cantor(r: f64, depth: usize) -> PlanarGeometry {
    let mut points = Vec::new();
    for k in 1..=depth.min(16) {
        let rho = r - (r - 1.0) / (1u64 << k) as f64;
        let m = 1u64 << (k + 1);
        for j in 0..m {
            points.push(Complex64::from_polar(rho, 2.0 * PI * j as f64 / m as f64));
        }
    }
    PlanarGeometry {
        name: "fat_cantor".into(),
        annulus: Some(r),
        arcs: Vec::new(),
        segments: Vec::new(),
        points,
        distinguished: Vec::new(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_specs() {
        let s: DomainSpec = serde_json::from_str(r#"{"kind":"annulus","r":2.0}"#).unwrap();
        assert!(matches!(s.expand(Path::new("")).unwrap(), Domain::Covering(_)));
        let s: DomainSpec = serde_json::from_str(r#"{"kind":"fixture","name":"cyclic"}"#).unwrap();
        assert!(matches!(s.expand(Path::new("")).unwrap(), Domain::Schottky(_)));
        let s: DomainSpec = serde_json::from_str(r#"{"kind":"named","name":"reef_point","depth":5}"#).unwrap();
        match s.expand(Path::new("")).unwrap() {
            Domain::Planar(g) => assert_eq!(g.arcs.len(), 5),
            _ => panic!(),
        }
        assert!(serde_json::from_str::<DomainSpec>(r#"{"kind":"annulus","r":2.0,"x":1}"#).is_err());
    }

    #[test]
    fn reefs_are_disjoint_from_the_component() {
        let g = reef_interval(10);
        for s in &g.segments[..g.segments.len() - 1] {
            assert!(s.0.im.abs() > 0.0 || s.1.im.abs() > 0.0);
        }
        let f = fat_cantor(2.0, 6);
        assert!(f.points.iter().all(|p| p.norm() > 0.5 && p.norm() < 2.0));
    }
}
