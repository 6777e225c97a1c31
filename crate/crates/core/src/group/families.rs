//! Fixture systems and level-scheduled infinite families.

use std::f64::consts::{FRAC_PI_2, FRAC_PI_3, PI, TAU};
use std::sync::Arc;

use super::{GeneratorFamily, GeneratorSpec, SchottkySystem};
use crate::arc::BoundaryArc;
use crate::moebius::DiskAutomorphism;

/// `⟨M_{1/2}⟩` with `M_{1/2}(z) = (z + 1/2)/(1 + z/2)` and its isometric-circle arcs
/// `[2π/3, 4π/3]`, `[−π/3, π/3]`: an annulus.
pub fn cyclic() -> SchottkySystem {
    cyclic_with(0.5)
}

pub fn cyclic_with(c: f64) -> SchottkySystem {
    let m = DiskAutomorphism::real_translation(c).expect("|c| < 1");
    SchottkySystem::new(vec![GeneratorSpec::from_isometric_circles(m, 1).expect("hyperbolic")])
}

/// `M_{0.8}` and its conjugate by a quarter turn, with interleaved isometric-circle arcs of
/// half-width `acos(0.8)` around `±1` and `±i`: a one-holed torus.
pub fn rank2_interleaved() -> SchottkySystem {
    let a = DiskAutomorphism::real_translation(0.8).expect("|c| < 1");
    let b = a.conjugate_by(&DiskAutomorphism::rotation(FRAC_PI_2));
    SchottkySystem::new(vec![
        GeneratorSpec::from_isometric_circles(a, 1).expect("hyperbolic"),
        GeneratorSpec::from_isometric_circles(b, 1).expect("hyperbolic"),
    ])
}

/// Two pairings of adjacent arcs, `[−0.9, −0.2] → [0.2, 0.9]` and the same rotated by π:
/// a pair of pants with three boundary components.
pub fn pants() -> SchottkySystem {
    let pair = |rot: f64| {
        GeneratorSpec::pairing_from_arcs(BoundaryArc::new(rot - 0.9, rot - 0.2), BoundaryArc::new(rot + 0.2, rot + 0.9), 1)
            .expect("disjoint arcs")
    };
    SchottkySystem::new(vec![pair(0.0), pair(PI)])
}

/// One parabolic generator fixing 1, pairing `[−π/3, 0]` with `[0, π/3]`: a punctured disk.
pub fn parabolic_rank1() -> SchottkySystem {
    SchottkySystem::new(vec![parabolic_at(0.0, FRAC_PI_3, 1)])
}

/// A parabolic generator at 1 together with a hyperbolic pairing on the far side.
pub fn mixed() -> SchottkySystem {
    let h = GeneratorSpec::pairing_from_arcs(BoundaryArc::new(2.0, 2.6), BoundaryArc::new(3.6, 4.2), 1).expect("disjoint");
    SchottkySystem::new(vec![parabolic_at(0.0, FRAC_PI_3, 1), h])
}

fn parabolic_at(p: f64, half: f64, level: u32) -> GeneratorSpec {
    GeneratorSpec::parabolic_from_arcs(BoundaryArc::new(p - half, p), BoundaryArc::new(p, p + half), level)
        .expect("touching arcs")
}

/// Hyperbolic pairing inside the slot `[a, a + w]`: the first and last fifth are paired.
fn slot_pairing(a: f64, w: f64, s: f64, level: u32, parent: Option<usize>) -> GeneratorSpec {
    GeneratorSpec::pairing_from_arcs(BoundaryArc::new(a, a + s * w), BoundaryArc::new(a + (1.0 - s) * w, a + w), level)
        .expect("disjoint slot arcs")
        .with_parent(parent)
}

/// Root slots `[π/20, 19π/20]` and `[21π/20, 39π/20]`.
fn root_slots() -> [(f64, f64); 2] {
    let m = PI / 20.0;
    [(m, PI - 2.0 * m), (PI + m, PI - 2.0 * m)]
}

/// Two infinite chains: each generator's paired arcs are the outer fifths of its slot and
/// its single child lives in the middle of the remaining window (slot width `0.42 w`).
#[derive(Debug, Clone, Default)]
pub struct NestedChains;

impl GeneratorFamily for NestedChains {
    fn name(&self) -> &str {
        "nested_chains"
    }

    fn generators_up_to(&self, level: u32) -> Vec<GeneratorSpec> {
        let mut out = Vec::new();
        let mut slots: Vec<(f64, f64, Option<usize>)> = root_slots().iter().map(|(a, w)| (*a, *w, None)).collect();
        for n in 1..=level {
            let mut next = Vec::new();
            for (a, w, parent) in slots {
                let idx = out.len();
                out.push(slot_pairing(a, w, 0.2, n, parent));
                let h_start = a + 0.2 * w;
                let h = 0.6 * w;
                next.push((h_start + 0.15 * h, 0.7 * h, Some(idx)));
            }
            slots = next;
        }
        out
    }
}

/// Every generator has two children in disjoint halves of its middle window.
#[derive(Debug, Clone, Default)]
pub struct BinaryTree;

impl GeneratorFamily for BinaryTree {
    fn name(&self) -> &str {
        "binary_tree"
    }

    fn generators_up_to(&self, level: u32) -> Vec<GeneratorSpec> {
        let mut out = Vec::new();
        let mut slots: Vec<(f64, f64, Option<usize>)> = root_slots().iter().map(|(a, w)| (*a, *w, None)).collect();
        for n in 1..=level {
            let mut next = Vec::new();
            for (a, w, parent) in slots {
                let idx = out.len();
                out.push(slot_pairing(a, w, 0.15, n, parent));
                let cw = 0.275 * w;
                next.push((a + 0.2 * w, cw, Some(idx)));
                next.push((a + 0.525 * w, cw, Some(idx)));
            }
            slots = next;
        }
        out
    }
}

/// Parabolic generators whose arcs exhaust ∂𝔻 up to a null set: level 1 pairs
/// `[−π/3, 0]` with `[0, π/3]` at the cusp 1, and each later level puts a parabolic pair on
/// the middle third of every remaining gap (`2^{n−2}` generators at level `n ≥ 2`).
#[derive(Debug, Clone, Default)]
pub struct DensePunctures;

impl GeneratorFamily for DensePunctures {
    fn name(&self) -> &str {
        "dense_punctures"
    }

    fn generators_up_to(&self, level: u32) -> Vec<GeneratorSpec> {
        let mut out = Vec::new();
        if level == 0 {
            return out;
        }
        out.push(parabolic_at(0.0, FRAC_PI_3, 1));
        let mut open = vec![(FRAC_PI_3, 4.0 * FRAC_PI_3)];
        for n in 2..=level {
            let mut next = Vec::new();
            for (u, len) in open {
                let third = len / 3.0;
                out.push(parabolic_at(u + 1.5 * third, 0.5 * third, n));
                next.push((u, third));
                next.push((u + 2.0 * third, third));
            }
            open = next;
        }
        out
    }
}

pub fn nested_chains_system(horizon: u32) -> SchottkySystem {
    SchottkySystem::from_family(Arc::new(NestedChains), horizon)
}

pub fn binary_tree_system(horizon: u32) -> SchottkySystem {
    SchottkySystem::from_family(Arc::new(BinaryTree), horizon)
}

pub fn dense_punctures_system(horizon: u32) -> SchottkySystem {
    SchottkySystem::from_family(Arc::new(DensePunctures), horizon)
}

/// Named fixtures accepted by the command line.
pub fn by_name(name: &str, horizon: u32) -> Option<SchottkySystem> {
    Some(match name {
        "trivial" => SchottkySystem::trivial(),
        "cyclic" => cyclic(),
        "rank2" | "rank2_interleaved" => rank2_interleaved(),
        "pants" => pants(),
        "parabolic" => parabolic_rank1(),
        "mixed" => mixed(),
        "nested_chains" => nested_chains_system(horizon),
        "binary_tree" => binary_tree_system(horizon),
        "dense_punctures" => dense_punctures_system(horizon),
        _ => return None,
    })
}

pub const FIXTURE_NAMES: [&str; 9] =
    ["trivial", "cyclic", "rank2_interleaved", "pants", "parabolic", "mixed", "nested_chains", "binary_tree", "dense_punctures"];

/// Total angle covered by the letter arcs at depth 0.
pub fn arc_coverage(sys: &SchottkySystem) -> f64 {
    TAU - sys.gaps().iter().map(|g| g.length()).sum::<f64>()
}
