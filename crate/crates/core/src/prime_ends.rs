//! Admissible crosscuts, the regular/singular/parabolic trichotomy of prime ends, rectified
//! neighbourhoods, true crosscuts and the count of prime-end classes.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::arc::{angular_distance, BoundaryArc};
use crate::disk::{BoundaryPoint, Crosscut, Geodesic, Horodisk};
use crate::exhaustion::{
    alpha_image, associated_addresses_of, classify_depth, depth_of_stream, owner_of_gap, radial_type_of, AddressKind,
    BoundaryAddress, Carrier, ExhaustionError, RadialType,
};
use crate::group::{
    code_boundary_point, enumerate_words, CodingOptions, CodingStream, GroupError, GroupWord, Letter, SchottkySystem,
    StreamTail, Terminal, DEFAULT_WORD_CAP,
};
use crate::moebius::DiskAutomorphism;

const CHAIN_LINKS: usize = 12;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum PrimeEndError {
    #[error(transparent)]
    Group(#[from] GroupError),
    #[error(transparent)]
    Exhaustion(#[from] ExhaustionError),
    #[error("point {theta} is not of escaping type ({radial:?})")]
    NotEscaping { theta: f64, radial: RadialType },
    #[error("crosscut does not separate the basepoint from the target")]
    NotSeparated,
    #[error("unsupported: {0}")]
    Unsupported(String),
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Witness {
    /// Translate by `translate` of the crosscut over a letter arc of `generator` (or of its
    /// horocycle), projecting to a closed curve around a boundary component.
    NonContractibleImage { translate: GroupWord, generator: usize },
    /// The crosscut lies over the translate `translate(G_gap)` of a depth-0 gap, where the
    /// covering map is injective.
    SimplyConnectedImage { translate: GroupWord, gap: usize },
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AdmissibleCrosscut {
    pub crosscut: Crosscut,
    pub witness: Witness,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AdmissibleChain {
    pub target: BoundaryPoint,
    pub links: Vec<AdmissibleCrosscut>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum PrimeEndClass {
    Regular,
    Singular,
    Parabolic,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PrimeEnd {
    pub base: BoundaryPoint,
    pub class: PrimeEndClass,
    pub chain: AdmissibleChain,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", tag = "kind")]
pub enum Impression {
    /// Carried by the gap translate containing the base point; `alpha` is the α-image of the
    /// owning component.
    ProperSubsetOfComponent { gap_arc: BoundaryArc, component: BoundaryAddress, alpha: Carrier },
    WholeComponent { address: BoundaryAddress },
    PuncturePoint { address: BoundaryAddress, point: f64 },
}

fn stream_for(sys: &SchottkySystem, theta: f64, horizon: usize) -> Result<CodingStream, PrimeEndError> {
    let opts = CodingOptions { max_letters: horizon, ..Default::default() };
    Ok(code_boundary_point(sys, theta, &opts)?)
}

fn ensure_escaping(sys: &SchottkySystem, stream: &CodingStream) -> Result<(), PrimeEndError> {
    let radial = radial_type_of(classify_depth(&depth_of_stream(sys, stream)));
    if radial != RadialType::Escaping {
        return Err(PrimeEndError::NotEscaping { theta: stream.theta, radial });
    }
    Ok(())
}

pub fn classify_prime_end(sys: &SchottkySystem, theta: f64, horizon: usize) -> Result<PrimeEnd, PrimeEndError> {
    prime_end_of_stream(sys, &stream_for(sys, theta, horizon)?)
}

/// Prime end at the point coded by `stream`, with its primary admissible chain.
pub fn prime_end_of_stream(sys: &SchottkySystem, stream: &CodingStream) -> Result<PrimeEnd, PrimeEndError> {
    let chain = build_chain(sys, stream, ChainStyle::Primary)?;
    let class = class_of_chain(&chain);
    Ok(PrimeEnd { base: BoundaryPoint::new(stream.theta), class, chain })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ChainStyle {
    Primary,
    /// Built by a different recipe (other radii, other composition order) to cross-check
    /// that class and impression do not depend on the chain.
    Alternate,
}

pub fn build_chain(sys: &SchottkySystem, stream: &CodingStream, style: ChainStyle) -> Result<AdmissibleChain, PrimeEndError> {
    ensure_escaping(sys, stream)?;
    let theta = stream.theta;
    let target = BoundaryPoint::new(theta);
    let word = GroupWord::reduce(stream.itinerary.iter().copied());
    let links = match &stream.tail {
        StreamTail::Terminal(Terminal::Gap { gap, arc }) => {
            let room = arc.offset(theta).min(arc.length() - arc.offset(theta));
            let (left, right, ratio) = match style {
                ChainStyle::Primary => (0.5, 0.5, 0.5),
                ChainStyle::Alternate => (0.4, 0.3, 0.6),
            };
            (0..CHAIN_LINKS)
                .map(|k| {
                    let s = ratio_pow(ratio, k) * room;
                    let g = Geodesic::from_endpoints(theta - left * s, theta + right * s)
                        .map_err(|e| PrimeEndError::Unsupported(e.to_string()))?;
                    Ok(AdmissibleCrosscut {
                        crosscut: Crosscut::Geodesic(g),
                        witness: Witness::SimplyConnectedImage { translate: word.clone(), gap: *gap },
                    })
                })
                .collect::<Result<Vec<_>, PrimeEndError>>()?
        }
        StreamTail::Terminal(Terminal::Cusp { generator, point }) => {
            let w = word.to_map(sys)?;
            let p = sys.generators()[*generator].cusp().expect("cusp terminal");
            (0..CHAIN_LINKS)
                .map(|k| {
                    let h = match style {
                        ChainStyle::Primary => Horodisk { base: BoundaryPoint::new(*point), r: 0.5 * ratio_pow(0.5, k) },
                        ChainStyle::Alternate => {
                            // image under W of a horocycle at the untranslated cusp
                            let rho = 0.3 * ratio_pow(0.4, k);
                            let deep = Complex64::from_polar(1.0 - 2.0 * rho, p);
                            horodisk_through(w.apply(BoundaryPoint::new(p).z()), w.apply(deep))
                        }
                    };
                    AdmissibleCrosscut {
                        crosscut: Crosscut::Horocycle(h),
                        witness: Witness::NonContractibleImage { translate: word.clone(), generator: *generator },
                    }
                })
                .collect()
        }
        StreamTail::Periodic { .. } | StreamTail::Truncated(_) | StreamTail::Alternating { .. } => {
            return Err(PrimeEndError::Unsupported("stream has no admissible chain".into()))
        }
        StreamTail::Descent => {
            let mut links = Vec::new();
            let mut w = DiskAutomorphism::identity();
            let mut prefix = Vec::new();
            for y in &stream.itinerary {
                let arc = match style {
                    ChainStyle::Primary => sys.letter_arc(*y).image(&w),
                    ChainStyle::Alternate => sys.letter_arc(y.inv()).complement().image(&w.compose(&sys.letter_map(*y))),
                };
                if arc.length() < CodingOptions::default().min_arc || !arc.contains_interior(theta, 0.0) {
                    break;
                }
                let g = Geodesic::from_endpoints(arc.start(), arc.end()).map_err(|e| PrimeEndError::Unsupported(e.to_string()))?;
                links.push(AdmissibleCrosscut {
                    crosscut: Crosscut::Geodesic(g),
                    witness: Witness::NonContractibleImage { translate: GroupWord::reduce(prefix.clone()), generator: y.generator },
                });
                prefix.push(*y);
                w = w.compose(&sys.letter_map(*y));
            }
            links
        }
    };
    Ok(AdmissibleChain { target, links })
}

fn ratio_pow(r: f64, k: usize) -> f64 {
    r.powi(k as i32)
}

/// Horodisk based at `q` whose boundary passes through `w`.
pub fn horodisk_through(q: Complex64, w: Complex64) -> Horodisk {
    let q = q / q.norm();
    let re = (w * q.conj()).re;
    let rho = (w - q).norm_sqr() / (2.0 * (1.0 - re));
    Horodisk { base: BoundaryPoint::from_complex(q), r: rho / (1.0 - rho) }
}

pub fn class_of_chain(chain: &AdmissibleChain) -> PrimeEndClass {
    if chain.links.iter().all(|l| l.crosscut.is_degenerate()) {
        PrimeEndClass::Parabolic
    } else if chain.links.iter().all(|l| matches!(l.witness, Witness::SimplyConnectedImage { .. })) {
        PrimeEndClass::Regular
    } else {
        PrimeEndClass::Singular
    }
}

/// Impression read off from an admissible chain alone.
pub fn impression_of_chain(sys: &SchottkySystem, chain: &AdmissibleChain) -> Result<Impression, PrimeEndError> {
    let last = chain.links.last().ok_or_else(|| PrimeEndError::Unsupported("empty chain".into()))?;
    let t = chain.target.theta();
    match class_of_chain(chain) {
        PrimeEndClass::Regular => {
            let probe = last.crosscut.neighbourhood_arc(t).mid();
            let stream = stream_for(sys, probe, CodingOptions::default().max_letters)?;
            let Some(Terminal::Gap { gap, arc }) = stream.terminal().cloned() else {
                return Err(PrimeEndError::Unsupported("regular chain left its gap".into()));
            };
            let component = owner_of_gap(sys, &sys.gaps()[gap])?;
            let alpha = alpha_image(sys, &component, &[], sys.max_level() as usize + 1)?.carrier;
            Ok(Impression::ProperSubsetOfComponent { gap_arc: arc, component, alpha })
        }
        PrimeEndClass::Parabolic => {
            let Witness::NonContractibleImage { generator, .. } = &last.witness else { unreachable!() };
            let point = last.crosscut.endpoints().0.theta();
            Ok(Impression::PuncturePoint { address: BoundaryAddress::new(sys.path_of(*generator)), point })
        }
        PrimeEndClass::Singular => {
            let itinerary = chain
                .links
                .iter()
                .filter_map(|l| match &l.witness {
                    Witness::NonContractibleImage { generator, .. } => Some(Letter::new(*generator, false)),
                    _ => None,
                })
                .collect();
            let synthetic = CodingStream {
                theta: t,
                itinerary,
                tail: StreamTail::Descent,
                interval: last.crosscut.neighbourhood_arc(t),
                complete: sys.is_complete(),
                gap_final: false,
            };
            let addrs = associated_addresses_of(sys, &synthetic)?;
            let address = addrs
                .into_iter()
                .filter(|a| a.kind == AddressKind::Prefix)
                .max_by_key(|a| a.address.digits.len())
                .map(|a| a.address)
                .ok_or_else(|| PrimeEndError::Unsupported("no address along the chain".into()))?;
            Ok(Impression::WholeComponent { address })
        }
    }
}

pub fn impression(sys: &SchottkySystem, theta: f64, horizon: usize) -> Result<Impression, PrimeEndError> {
    let pe = classify_prime_end(sys, theta, horizon)?;
    impression_of_chain(sys, &pe.chain)
}

/// Translate of a crosscut together with its far boundary arc.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ExcludedArc {
    pub word: GroupWord,
    pub arc: BoundaryArc,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RectifiedNeighbourhood {
    pub base: AdmissibleCrosscut,
    pub target: BoundaryPoint,
    pub word_horizon: usize,
    /// Boundary trace of the ordinary crosscut neighbourhood.
    pub crosscut_arc: BoundaryArc,
    /// Far-side arcs of the translates `γ(C)`, `1 ≤ |γ| ≤ L`.
    pub excluded_arcs: Vec<ExcludedArc>,
    /// Boundary trace of the component of the remainder adjacent to the target.
    pub remainder: BoundaryArc,
}

fn far_arc(g: &Geodesic, z0: Complex64) -> BoundaryArc {
    let (a, b) = (g.endpoints().0.theta(), g.endpoints().1.theta());
    let arc = BoundaryArc::new(a, b);
    let probe = Complex64::from_polar(1.0 - 1e-9, arc.mid());
    if (g.side(probe) < 0.0) == (g.side(z0) < 0.0) {
        BoundaryArc::new(b, a)
    } else {
        arc
    }
}

/// Remove the translates of `crosscut` by words of length `1..=L` from its neighbourhood
/// toward `target`.
pub fn rectify(
    sys: &SchottkySystem,
    crosscut: &AdmissibleCrosscut,
    target: f64,
    word_horizon: usize,
) -> Result<RectifiedNeighbourhood, PrimeEndError> {
    let Crosscut::Geodesic(geo) = crosscut.crosscut else {
        return Err(PrimeEndError::Unsupported("rectification of horocycles".into()));
    };
    let z0 = sys.basepoint();
    if crosscut.crosscut.neighbourhood_contains(target, z0) {
        return Err(PrimeEndError::NotSeparated);
    }
    let crosscut_arc = geo.arc_toward(target);
    if !crosscut_arc.contains_interior(target, 0.0) {
        return Err(PrimeEndError::NotSeparated);
    }
    let mut excluded = Vec::new();
    let mut remainder = crosscut_arc;
    for (word, m) in enumerate_words(sys, word_horizon, DEFAULT_WORD_CAP)? {
        if word.is_empty() {
            continue;
        }
        let arc = far_arc(&geo.image(&m), z0);
        if remainder.contains_arc(&arc, 1e-13) && arc.length() < remainder.length() && arc.contains_interior(target, 0.0) {
            remainder = arc;
        }
        excluded.push(ExcludedArc { word, arc });
    }
    // cut the remainder at translates strictly inside it that avoid the target
    let mut lo = 0.0;
    let mut hi = remainder.length();
    let t_off = remainder.offset(target);
    for e in &excluded {
        if e.arc.length() < remainder.length() && remainder.contains_arc(&e.arc, 1e-13) && !e.arc.contains(target, 0.0) {
            let s = remainder.offset(e.arc.start());
            let f = s + e.arc.length();
            if f <= t_off {
                lo = f64::max(lo, f);
            } else if s >= t_off {
                hi = f64::min(hi, s);
            }
        }
    }
    let remainder = BoundaryArc::from_start_length(remainder.start() + lo, hi - lo);
    Ok(RectifiedNeighbourhood {
        base: crosscut.clone(),
        target: BoundaryPoint::new(target),
        word_horizon,
        crosscut_arc,
        excluded_arcs: excluded,
        remainder,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum LimitSetVerdict {
    CantorLimitSet,
    /// No gap survives up to `depth`: one-sided evidence that Λ = ∂𝔻.
    FullCircle,
    /// The trivial group: Λ is empty and every crosscut is true.
    EmptyLimitSet,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TrueCrosscut {
    pub gap: usize,
    pub gap_arc: BoundaryArc,
    /// Geodesic joining the points at one and two thirds of the gap.
    pub crosscut: Geodesic,
    pub component: BoundaryAddress,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TrueCrosscutReport {
    pub verdict: LimitSetVerdict,
    pub certificate: Option<TrueCrosscut>,
    /// Level horizon examined (finite systems report their top level).
    pub depth: u32,
}

fn certificate_for(sys: &SchottkySystem, gap: usize) -> Result<TrueCrosscut, PrimeEndError> {
    let arc = sys.gaps()[gap];
    let third = arc.length() / 3.0;
    let crosscut = Geodesic::from_endpoints(arc.start() + third, arc.start() + 2.0 * third)
        .map_err(|e| PrimeEndError::Unsupported(e.to_string()))?;
    let component = if sys.rank() == 0 { BoundaryAddress::outer() } else { owner_of_gap(sys, &arc)? };
    Ok(TrueCrosscut { gap, gap_arc: arc, crosscut, component })
}

/// Look for a gap whose points are regular. Families are examined at level `depth`, and a
/// gap counts only if no arc of level `depth + 1` lands inside it.
pub fn detect_true_crosscut(sys: &SchottkySystem, depth: u32) -> Result<TrueCrosscutReport, PrimeEndError> {
    if sys.rank() == 0 && sys.is_complete() {
        return Ok(TrueCrosscutReport { verdict: LimitSetVerdict::EmptyLimitSet, certificate: Some(certificate_for(sys, 0)?), depth: 0 });
    }
    if sys.is_complete() {
        let depth = sys.max_level();
        return Ok(match sys.gaps().first() {
            Some(_) => TrueCrosscutReport { verdict: LimitSetVerdict::CantorLimitSet, certificate: Some(certificate_for(sys, 0)?), depth },
            None => TrueCrosscutReport { verdict: LimitSetVerdict::FullCircle, certificate: None, depth },
        });
    }
    let at = sys.at_horizon(depth);
    let next = sys.at_horizon(depth + 1);
    let fresh: Vec<BoundaryArc> =
        next.generators().iter().filter(|g| g.level == depth + 1).flat_map(|g| [g.source_arc, g.target_arc]).collect();
    for (j, gap) in at.gaps().iter().enumerate() {
        if !fresh.iter().any(|a| gap.contains_arc(a, 0.0)) {
            return Ok(TrueCrosscutReport {
                verdict: LimitSetVerdict::CantorLimitSet,
                certificate: Some(certificate_for(&at, j)?),
                depth,
            });
        }
    }
    Ok(TrueCrosscutReport { verdict: LimitSetVerdict::FullCircle, certificate: None, depth })
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct QuotientCount {
    /// Classes of depth-0 gaps under the pairings: one per funnel boundary component.
    pub classes: usize,
    /// One gap index per class.
    pub representatives: Vec<usize>,
    /// Pairing cycles closing up at a parabolic fixed point without a gap.
    pub cusp_classes: usize,
    /// False when the system is a truncated infinite family; the count is then per level.
    pub exact: bool,
    pub horizon: u32,
}

struct UnionFind(Vec<usize>);

impl UnionFind {
    fn find(&mut self, x: usize) -> usize {
        let mut r = x;
        while self.0[r] != r {
            r = self.0[r];
        }
        let mut c = x;
        while self.0[c] != r {
            let next = self.0[c];
            self.0[c] = r;
            c = next;
        }
        r
    }

    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            self.0[ra.max(rb)] = ra.min(rb);
        }
    }
}

/// Count boundary components seen by the gaps: endpoints of letter arcs are glued by the
/// pairings, each gap joins its two endpoints, and the resulting classes are counted.
pub fn prime_end_quotient_count(sys: &SchottkySystem, horizon: u32) -> Result<QuotientCount, PrimeEndError> {
    let sys = if sys.is_complete() { sys.clone() } else { sys.at_horizon(horizon) };
    let exact = sys.is_complete();
    let horizon = if exact { sys.max_level() } else { horizon };
    if sys.rank() == 0 {
        return Ok(QuotientCount { classes: 1, representatives: vec![0], cusp_classes: 0, exact, horizon });
    }
    let tol = 1e-9;
    let mut nodes: Vec<f64> = Vec::new();
    let node_of = |theta: f64, nodes: &mut Vec<f64>| -> usize {
        match nodes.iter().position(|n| angular_distance(*n, theta) < tol) {
            Some(i) => i,
            None => {
                nodes.push(theta);
                nodes.len() - 1
            }
        }
    };
    let mut pairs: Vec<(usize, usize)> = Vec::new();
    for y in sys.letters().into_iter().filter(|y| !y.inverse) {
        let s = sys.letter_arc(y.inv());
        let g = sys.letter_map(y);
        for x in [s.start(), s.end()] {
            let a = node_of(x, &mut nodes);
            let b = node_of(g.apply_angle(x), &mut nodes);
            pairs.push((a, b));
        }
        let d = sys.letter_arc(y);
        node_of(d.start(), &mut nodes);
        node_of(d.end(), &mut nodes);
    }
    let gap_nodes: Vec<(usize, usize)> =
        sys.gaps().iter().map(|g| (node_of(g.start(), &mut nodes), node_of(g.end(), &mut nodes))).collect();
    let mut uf = UnionFind((0..nodes.len()).collect());
    for (a, b) in pairs.iter().chain(gap_nodes.iter()) {
        uf.union(*a, *b);
    }
    let mut reps: Vec<(usize, usize)> = Vec::new();
    for (j, (a, _)) in gap_nodes.iter().enumerate() {
        let root = uf.find(*a);
        if !reps.iter().any(|(r, _)| *r == root) {
            reps.push((root, j));
        }
    }
    let mut cusp_roots: Vec<usize> = Vec::new();
    for n in 0..nodes.len() {
        let root = uf.find(n);
        if !reps.iter().any(|(r, _)| *r == root) && !cusp_roots.contains(&root) {
            cusp_roots.push(root);
        }
    }
    Ok(QuotientCount {
        classes: reps.len(),
        representatives: reps.into_iter().map(|(_, j)| j).collect(),
        cusp_classes: cusp_roots.len(),
        exact,
        horizon,
    })
}
