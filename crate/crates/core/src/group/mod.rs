//! Free Fuchsian groups presented by levelled Schottky pairings of boundary arcs.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use std::f64::consts::TAU;
use std::fmt;
use std::sync::Arc;
use thiserror::Error;

use crate::arc::{gaps, ccw_distance, BoundaryArc, EPS_ARC};
use crate::moebius::{DiskAutomorphism, MapClass, MoebiusError, MoebiusMap};

pub mod coding;
pub mod cover;
pub mod families;
pub mod validate;
pub mod words;

pub use coding::{code_boundary_point, code_fixed_point, CodingOptions, CodingStream, StreamTail, Terminal, Truncation};
pub use cover::{limit_set_cover, nt_hit_estimate, LimitSetCover};
pub use validate::{validate, Certificate};
pub use words::{count_reduced_words, enumerate_words, orbit, GroupWord, Letter, DEFAULT_WORD_CAP};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum GroupError {
    #[error("arcs of generators {0} and {1} overlap")]
    OverlappingArcs(usize, usize),
    #[error("ping-pong fails for generator {generator} at witness angle {witness}")]
    PingPongFailure { generator: usize, witness: f64 },
    #[error("generator {generator} is {class:?}, expected hyperbolic or parabolic")]
    NotTorsionFree { generator: usize, class: MapClass },
    #[error("generator {generator} is declared {declared:?} but classifies as {actual:?}")]
    KindMismatch { generator: usize, declared: GeneratorKind, actual: MapClass },
    #[error("basepoint lies inside the crosscut neighbourhood of a generator arc")]
    BasepointOutsideFundamentalDomain,
    #[error("word enumeration needs {requested} words, above the cap of {cap}")]
    ResourceLimit { requested: f64, cap: usize },
    #[error("angle {theta} is within tolerance of an arc endpoint after {letters} letters")]
    AmbiguousAtTolerance { theta: f64, letters: usize },
    #[error("invalid generator: {0}")]
    InvalidGenerator(String),
    #[error("generator index {0} out of range")]
    UnknownGenerator(usize),
    #[error("word is not reduced")]
    NotReduced,
    #[error("malformed system: {0}")]
    Malformed(String),
    #[error(transparent)]
    Moebius(#[from] MoebiusError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum GeneratorKind {
    Hyperbolic,
    Parabolic,
}

/// One free generator together with its pair of ping-pong arcs. The map sends the complement
/// of `source_arc` into `target_arc`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GeneratorSpec {
    #[serde(rename = "matrix")]
    pub map: DiskAutomorphism,
    pub level: u32,
    pub source_arc: BoundaryArc,
    pub target_arc: BoundaryArc,
    pub kind: GeneratorKind,
    /// Index of the generator whose region contains this one in the exhaustion tree.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub parent: Option<usize>,
}

impl GeneratorSpec {
    /// The hyperbolic map taking the complement of `source = [α1, α2]` onto `target = [β1, β2]`,
    /// with `α1 ↦ β2`, `α2 ↦ β1` and midpoints of the complementary arcs matched.
    pub fn pairing_from_arcs(source: BoundaryArc, target: BoundaryArc, level: u32) -> Result<Self, GroupError> {
        if source.overlaps(&target, EPS_ARC) {
            return Err(GroupError::InvalidGenerator("source and target arcs overlap".into()));
        }
        // Solve in a frame where the two arcs are spread out; the three-point map is badly
        // conditioned when both arcs sit inside a tiny window of the circle.
        let h = spreading_frame(&source, &target);
        let (s, t) = (source.image(&h), target.image(&h));
        let e = |t: f64| Complex64::from_polar(1.0, t);
        let m = MoebiusMap::from_three_points(
            [e(s.start()), e(s.end()), e(s.complement().mid())],
            [e(t.end()), e(t.start()), e(t.mid())],
        )?;
        let map = DiskAutomorphism::from_moebius(m)?.conjugate_by(&h.inverse());
        Ok(GeneratorSpec { map, level, source_arc: source, target_arc: target, kind: GeneratorKind::Hyperbolic, parent: None })
    }

    /// Parabolic pairing of two arcs that touch at the fixed point `p`.
    pub fn parabolic_from_arcs(source: BoundaryArc, target: BoundaryArc, level: u32) -> Result<Self, GroupError> {
        let close = |a: f64, b: f64| crate::arc::angular_distance(a, b) < 1e-12;
        // C(z) = i(p + z)/(p − z) sends the disk to the upper half-plane, p to ∞, and runs
        // counterclockwise from p along increasing reals.
        let (p, x_src, x_tgt) = if close(source.end(), target.start()) {
            (source.end(), source.start(), target.end())
        } else if close(target.end(), source.start()) {
            (source.start(), source.end(), target.start())
        } else {
            return Err(GroupError::InvalidGenerator("parabolic arcs must touch at the fixed point".into()));
        };
        if source.length() + target.length() >= TAU - 1e-12 {
            return Err(GroupError::InvalidGenerator("parabolic arcs leave no gap".into()));
        }
        let to_real = |t: f64| -1.0 / (0.5 * ccw_distance(p, t)).tan();
        let shift = to_real(x_tgt) - to_real(x_src);
        // conjugate of w ↦ w + shift, rotated so the fixed point is p
        let h = Complex64::new(0.0, 0.5 * shift);
        let map = DiskAutomorphism::from_su11(1.0 + h, -h * Complex64::from_polar(1.0, p))?;
        Ok(GeneratorSpec { map, level, source_arc: source, target_arc: target, kind: GeneratorKind::Parabolic, parent: None })
    }

    /// Arcs cut out by the isometric circles of a hyperbolic map and of its inverse.
    pub fn from_isometric_circles(map: DiskAutomorphism, level: u32) -> Result<Self, GroupError> {
        let class = map.classify();
        if class != MapClass::Hyperbolic {
            return Err(GroupError::InvalidGenerator(format!("isometric-circle arcs need a hyperbolic map, got {class:?}")));
        }
        let [a, _, c, d] = map.map().entries();
        let arc_of = |center: Complex64| BoundaryArc::centered(center.arg(), (1.0 / center.norm()).acos());
        let source = arc_of(-d / c);
        let target = arc_of(a / c);
        Ok(GeneratorSpec { map, level, source_arc: source, target_arc: target, kind: GeneratorKind::Hyperbolic, parent: None })
    }

    pub fn with_parent(mut self, parent: Option<usize>) -> Self {
        self.parent = parent;
        self
    }

    /// The boundary fixed point of a parabolic generator.
    pub fn cusp(&self) -> Option<f64> {
        match self.kind {
            GeneratorKind::Parabolic => self.map.parabolic_fixed_angle(),
            GeneratorKind::Hyperbolic => None,
        }
    }
}

/// A disk automorphism blowing up the shortest arc that holds both `a` and `b`.
fn spreading_frame(a: &BoundaryArc, b: &BoundaryArc) -> DiskAutomorphism {
    let hull1 = BoundaryArc::new(a.start(), b.end());
    let hull2 = BoundaryArc::new(b.start(), a.end());
    let hull = if hull1.length() <= hull2.length() { hull1 } else { hull2 };
    if hull.length() >= std::f64::consts::PI {
        return DiskAutomorphism::identity();
    }
    let z = Complex64::from_polar(1.0 - hull.length() / std::f64::consts::PI, hull.mid());
    DiskAutomorphism::moving_to_origin(z).expect("inside the disk")
}

/// A countable generator list delivered level by level. `generators_up_to(n)` must be a
/// prefix of `generators_up_to(n + 1)` so indices are stable across horizons.
pub trait GeneratorFamily: Send + Sync + fmt::Debug {
    fn name(&self) -> &str;
    fn generators_up_to(&self, level: u32) -> Vec<GeneratorSpec>;
    /// Highest level carrying generators, when finite.
    fn max_level(&self) -> Option<u32> {
        None
    }
}

#[derive(Debug, Clone)]
enum Source {
    Finite { dropped: bool },
    Family { family: Arc<dyn GeneratorFamily>, horizon: u32 },
}

/// A Schottky pairing system, possibly a finite truncation of an infinite family.
#[derive(Debug, Clone)]
pub struct SchottkySystem {
    generators: Vec<GeneratorSpec>,
    /// `[D_g, D_{g⁻¹}]` where `D_g = g(∂𝔻 ∖ S_g)` and `D_{g⁻¹} = S_g`.
    letter_arcs: Vec<[BoundaryArc; 2]>,
    gaps: Vec<BoundaryArc>,
    basepoint: Complex64,
    source: Source,
}

impl SchottkySystem {
    pub fn new(generators: Vec<GeneratorSpec>) -> Self {
        Self::build(generators, Complex64::new(0.0, 0.0), Source::Finite { dropped: false })
    }

    pub fn trivial() -> Self {
        Self::new(Vec::new())
    }

    pub fn from_family(family: Arc<dyn GeneratorFamily>, horizon: u32) -> Self {
        let gens = family.generators_up_to(horizon);
        Self::build(gens, Complex64::new(0.0, 0.0), Source::Family { family, horizon })
    }

    fn build(generators: Vec<GeneratorSpec>, basepoint: Complex64, source: Source) -> Self {
        let letter_arcs: Vec<[BoundaryArc; 2]> = generators
            .iter()
            .map(|g| [g.source_arc.complement().image(&g.map), g.source_arc])
            .collect();
        let all: Vec<BoundaryArc> = letter_arcs.iter().flat_map(|p| p.iter().copied()).collect();
        let gaps = gaps(&all, EPS_ARC);
        SchottkySystem { generators, letter_arcs, gaps, basepoint, source }
    }

    pub fn with_basepoint(mut self, z: Complex64) -> Self {
        self.basepoint = z;
        self
    }

    pub fn generators(&self) -> &[GeneratorSpec] {
        &self.generators
    }

    pub fn rank(&self) -> usize {
        self.generators.len()
    }

    pub fn basepoint(&self) -> Complex64 {
        self.basepoint
    }

    /// Arc `D_y` of the letter `y`.
    pub fn letter_arc(&self, y: Letter) -> BoundaryArc {
        self.letter_arcs[y.generator][if y.inverse { 1 } else { 0 }]
    }

    pub fn letter_map(&self, y: Letter) -> DiskAutomorphism {
        let g = self.generators[y.generator].map;
        if y.inverse {
            g.inverse()
        } else {
            g
        }
    }

    pub fn letters(&self) -> Vec<Letter> {
        (0..self.rank()).flat_map(|i| [Letter::new(i, false), Letter::new(i, true)]).collect()
    }

    pub fn level(&self, generator: usize) -> u32 {
        self.generators[generator].level
    }

    pub fn max_level(&self) -> u32 {
        self.generators.iter().map(|g| g.level).max().unwrap_or(0)
    }

    /// Depth-0 gaps: open arcs of ∂𝔻 outside every letter arc, sorted by start.
    pub fn gaps(&self) -> &[BoundaryArc] {
        &self.gaps
    }

    /// Whether every generator of the group is present (no truncation at a level horizon).
    pub fn is_complete(&self) -> bool {
        match &self.source {
            Source::Finite { dropped } => !dropped,
            Source::Family { family, horizon } => family.max_level().is_some_and(|m| m <= *horizon),
        }
    }

    pub fn family(&self) -> Option<&Arc<dyn GeneratorFamily>> {
        match &self.source {
            Source::Family { family, .. } => Some(family),
            Source::Finite { .. } => None,
        }
    }

    /// The level horizon this system was truncated at, if it comes from a family.
    pub fn horizon(&self) -> Option<u32> {
        match &self.source {
            Source::Family { horizon, .. } => Some(*horizon),
            Source::Finite { .. } => None,
        }
    }

    /// The subsystem of generators of level at most `n`. Families are re-expanded.
    pub fn at_horizon(&self, n: u32) -> SchottkySystem {
        match &self.source {
            Source::Family { family, .. } => {
                SchottkySystem::from_family(family.clone(), n).with_basepoint(self.basepoint)
            }
            Source::Finite { dropped } => {
                let mut remap = vec![None; self.rank()];
                let mut kept = Vec::new();
                for (i, g) in self.generators.iter().enumerate() {
                    if g.level <= n {
                        remap[i] = Some(kept.len());
                        kept.push(g.clone());
                    }
                }
                let dropped = *dropped || kept.len() < self.rank();
                for g in &mut kept {
                    g.parent = g.parent.and_then(|p| remap.get(p).copied().flatten());
                }
                Self::build(kept, self.basepoint, Source::Finite { dropped })
            }
        }
    }

    /// Children of each generator in the exhaustion tree, plus the list of roots.
    pub fn tree(&self) -> (Vec<usize>, Vec<Vec<usize>>) {
        let mut roots = Vec::new();
        let mut children = vec![Vec::new(); self.rank()];
        for (i, g) in self.generators.iter().enumerate() {
            match g.parent {
                Some(p) if p < self.rank() => children[p].push(i),
                _ => roots.push(i),
            }
        }
        (roots, children)
    }

    /// Path of 1-based child indices from the roots down to `generator`.
    pub fn path_of(&self, generator: usize) -> Vec<u32> {
        let (roots, children) = self.tree();
        let mut chain = vec![generator];
        let mut cur = generator;
        while let Some(p) = self.generators[cur].parent.filter(|p| *p < self.rank()) {
            chain.push(p);
            cur = p;
        }
        chain.reverse();
        let mut digits = Vec::with_capacity(chain.len());
        let mut siblings = &roots;
        for v in chain {
            let k = siblings.iter().position(|s| *s == v).expect("tree is consistent");
            digits.push(k as u32 + 1);
            siblings = &children[v];
        }
        digits
    }

    /// The generator reached by following 1-based child digits, if any.
    pub fn node_at(&self, digits: &[u32]) -> Option<usize> {
        let (roots, children) = self.tree();
        let mut siblings = &roots;
        let mut node = None;
        for d in digits {
            let v = *siblings.get((*d as usize).checked_sub(1)?)?;
            node = Some(v);
            siblings = &children[v];
        }
        node
    }

    pub fn to_json(&self) -> SystemJson {
        SystemJson {
            generators: self.generators.clone(),
            basepoint: Some([self.basepoint.re, self.basepoint.im]),
        }
    }

    pub fn from_json_str(s: &str) -> Result<Self, GroupError> {
        let doc: SystemDocument = serde_json::from_str(s).map_err(|e| GroupError::Malformed(e.to_string()))?;
        let json = match doc {
            SystemDocument::Object(j) => j,
            SystemDocument::List(generators) => SystemJson { generators, basepoint: None },
        };
        let mut sys = SchottkySystem::new(json.generators);
        if let Some([re, im]) = json.basepoint {
            sys = sys.with_basepoint(Complex64::new(re, im));
        }
        Ok(sys)
    }
}

/// On-disk form of a system: `{generators: [...], basepoint?: [re, im]}`; a bare generator
/// list is accepted on input.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SystemJson {
    pub generators: Vec<GeneratorSpec>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub basepoint: Option<[f64; 2]>,
}

#[derive(Deserialize)]
#[serde(untagged)]
enum SystemDocument {
    Object(SystemJson),
    List(Vec<GeneratorSpec>),
}
