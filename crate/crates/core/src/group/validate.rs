//! Disjointness and ping-pong certificates.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::{GeneratorKind, GroupError, SchottkySystem};
use crate::arc::{angular_distance, BoundaryArc, EPS_ARC};
use crate::disk::Geodesic;
use crate::moebius::MapClass;

const PING_PONG_SAMPLES: usize = 96;
const PING_PONG_TOL: f64 = 1e-9;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Certificate {
    pub level_horizon: u32,
    pub generators_checked: usize,
    pub arc_pairs_checked: usize,
    pub ping_pong_samples: usize,
    /// Smallest angular separation between arcs that do not share a parabolic fixed point.
    pub min_separation: f64,
}

/// Certify the Schottky conditions for every generator of level at most `level_horizon`.
pub fn validate(sys: &SchottkySystem, level_horizon: u32) -> Result<Certificate, GroupError> {
    let sub = sys.at_horizon(level_horizon);
    let gens = sub.generators();
    for (i, g) in gens.iter().enumerate() {
        let class = g.map.classify();
        match (class, g.kind) {
            (MapClass::Hyperbolic, GeneratorKind::Hyperbolic) | (MapClass::Parabolic, GeneratorKind::Parabolic) => {}
            (MapClass::Hyperbolic, _) | (MapClass::Parabolic, _) => {
                return Err(GroupError::KindMismatch { generator: i, declared: g.kind, actual: class })
            }
            _ => return Err(GroupError::NotTorsionFree { generator: i, class }),
        }
    }

    let arcs: Vec<(usize, BoundaryArc)> =
        gens.iter().enumerate().flat_map(|(i, g)| [(i, g.source_arc), (i, g.target_arc)]).collect();
    let mut pairs = 0;
    let mut min_sep = f64::INFINITY;
    for a in 0..arcs.len() {
        for b in a + 1..arcs.len() {
            let ((i, x), (j, y)) = (arcs[a], arcs[b]);
            pairs += 1;
            if x.overlaps(&y, EPS_ARC) {
                return Err(GroupError::OverlappingArcs(i, j));
            }
            let sep = separation(&x, &y);
            let shared_cusp = i == j && gens[i].kind == GeneratorKind::Parabolic;
            if !shared_cusp {
                min_sep = min_sep.min(sep);
            }
        }
    }

    let mut samples = 0;
    for (i, g) in gens.iter().enumerate() {
        let outside = g.source_arc.complement();
        for k in 1..PING_PONG_SAMPLES {
            let t = outside.start() + outside.length() * k as f64 / PING_PONG_SAMPLES as f64;
            samples += 1;
            if !g.target_arc.contains(g.map.apply_angle(t), PING_PONG_TOL) {
                return Err(GroupError::PingPongFailure { generator: i, witness: t });
            }
        }
        // interior check: points beyond the source crosscut land beyond the target crosscut
        let (src_cut, tgt_cut) = match (cut_of(&g.source_arc), cut_of(&g.target_arc)) {
            (Some(s), Some(t)) => (s, t),
            _ => continue,
        };
        let src_probe = Complex64::from_polar(1.0 - 1e-9, g.source_arc.mid());
        let tgt_probe = Complex64::from_polar(1.0 - 1e-9, g.target_arc.mid());
        for k in 0..PING_PONG_SAMPLES {
            let t = outside.start() + outside.length() * (k as f64 + 0.5) / PING_PONG_SAMPLES as f64;
            for rad in [0.0, 0.5, 0.9, 0.99] {
                let z = Complex64::from_polar(rad, t);
                if same_side(&src_cut, z, src_probe) {
                    continue;
                }
                samples += 1;
                let w = g.map.apply(z);
                if !same_side(&tgt_cut, w, tgt_probe) && tgt_cut.euclidean_distance(w) > PING_PONG_TOL {
                    return Err(GroupError::PingPongFailure { generator: i, witness: t });
                }
            }
        }
    }

    let z0 = sys.basepoint();
    for y in sub.letters() {
        let arc = sub.letter_arc(y);
        if let Some(cut) = cut_of(&arc) {
            let probe = Complex64::from_polar(1.0 - 1e-9, arc.mid());
            if same_side(&cut, z0, probe) {
                return Err(GroupError::BasepointOutsideFundamentalDomain);
            }
        }
    }

    Ok(Certificate {
        level_horizon,
        generators_checked: gens.len(),
        arc_pairs_checked: pairs,
        ping_pong_samples: samples,
        min_separation: if min_sep.is_finite() { min_sep } else { std::f64::consts::TAU },
    })
}

fn cut_of(arc: &BoundaryArc) -> Option<Geodesic> {
    if arc.is_full() || arc.length() < 1e-14 {
        return None;
    }
    Geodesic::from_endpoints(arc.start(), arc.end()).ok()
}

fn same_side(cut: &Geodesic, z: Complex64, probe: Complex64) -> bool {
    (cut.side(z) < 0.0) == (cut.side(probe) < 0.0)
}

fn separation(x: &BoundaryArc, y: &BoundaryArc) -> f64 {
    let ends = [(x.end(), y.start()), (y.end(), x.start())];
    ends.iter().map(|(a, b)| angular_distance(*a, *b)).fold(f64::INFINITY, f64::min)
}
