//! Boundary addresses, depth sequences and the escaping/bounded/bungee trichotomy, read off
//! symbolically from a levelled Schottky system.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use std::fmt;
use thiserror::Error;

use crate::arc::{gaps, BoundaryArc};
use crate::disk::Geodesic;
use crate::group::{
    code_boundary_point, CodingOptions, CodingStream, GeneratorKind, GroupError, GroupWord, Letter, SchottkySystem,
    StreamTail, Terminal,
};
use crate::moebius::DiskAutomorphism;

/// Arcs shorter than this are reported as points.
pub const EPS_POINT: f64 = 1e-12;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum ExhaustionError {
    #[error(transparent)]
    Group(#[from] GroupError),
    #[error("lift choices are not nested at depth {0}")]
    NonNested(usize),
    #[error("address {0} does not exist in the exhaustion")]
    UnknownAddress(BoundaryAddress),
    #[error("unsupported: {0}")]
    Unsupported(String),
}

/// Digits `s₁ s₂ …` of 1-based child indices in the exhaustion tree. A final `0` names the
/// peripheral component of the region at that prefix; `[0]` is the outer component.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct BoundaryAddress {
    pub digits: Vec<u32>,
}

impl BoundaryAddress {
    pub fn new(digits: Vec<u32>) -> Self {
        BoundaryAddress { digits }
    }

    pub fn outer() -> Self {
        BoundaryAddress { digits: vec![0] }
    }

    pub fn is_peripheral(&self) -> bool {
        self.digits.last() == Some(&0)
    }

    pub fn is_prefix_of(&self, other: &BoundaryAddress) -> bool {
        other.digits.len() >= self.digits.len() && other.digits[..self.digits.len()] == self.digits[..]
    }
}

impl fmt::Display for BoundaryAddress {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.digits.iter().map(|d| d.to_string()).collect();
        write!(f, "[{}]", parts.join("."))
    }
}

/// Continuation of a depth sequence beyond its explicit entries.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum DepthTail {
    /// No further crosscuts.
    Terminated,
    /// The levels tend to infinity.
    Divergent,
    /// The listed levels repeat forever.
    Periodic(Vec<u32>),
    /// Level `low` recurs infinitely often while the levels are unbounded.
    Oscillating { low: u32 },
    /// A raw numeric stream cut off before its behaviour was decided.
    Horizon,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DepthSequence {
    pub d: Vec<u32>,
    pub tail: DepthTail,
}

impl DepthSequence {
    pub fn finite(d: Vec<u32>) -> Self {
        DepthSequence { d, tail: DepthTail::Terminated }
    }

    pub fn horizon(&self) -> usize {
        self.d.len()
    }

    /// `1, 2, 3, …` up to `n`, continuing to infinity.
    pub fn increasing(n: u32) -> Self {
        DepthSequence { d: (1..=n).collect(), tail: DepthTail::Divergent }
    }

    /// `low, low+1, low, low+2, …` through `n` stages, continuing the same way.
    pub fn alternating(low: u32, n: u32) -> Self {
        let d = (1..=n).flat_map(|k| [low, low + k]).collect();
        DepthSequence { d, tail: DepthTail::Oscillating { low } }
    }

    /// The same stream under a change of exhaustion given by a nondecreasing, unbounded
    /// level map `f`.
    pub fn relevel(&self, f: impl Fn(u32) -> u32) -> Self {
        let tail = match &self.tail {
            DepthTail::Periodic(p) => DepthTail::Periodic(p.iter().map(|l| f(*l)).collect()),
            DepthTail::Oscillating { low } => DepthTail::Oscillating { low: f(*low) },
            other => other.clone(),
        };
        DepthSequence { d: self.d.iter().map(|l| f(*l)).collect(), tail }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", tag = "tag")]
pub enum DepthClass {
    Finite,
    Infinite,
    Oscillating,
    /// Raw stream without a decided tail; the extremes of the last eight levels are kept as
    /// diagnostics.
    UndecidedAtHorizon { tail_min: Option<u32>, tail_max: Option<u32> },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum RadialType {
    Escaping,
    Bounded,
    Bungee,
    Undecided,
}

pub fn classify_depth(seq: &DepthSequence) -> DepthClass {
    match &seq.tail {
        DepthTail::Terminated | DepthTail::Periodic(_) => DepthClass::Finite,
        DepthTail::Divergent => DepthClass::Infinite,
        DepthTail::Oscillating { .. } => DepthClass::Oscillating,
        DepthTail::Horizon => {
            let window = &seq.d[seq.d.len().saturating_sub(8)..];
            DepthClass::UndecidedAtHorizon { tail_min: window.iter().min().copied(), tail_max: window.iter().max().copied() }
        }
    }
}

pub fn radial_type_of(class: DepthClass) -> RadialType {
    match class {
        DepthClass::Finite => RadialType::Bounded,
        DepthClass::Infinite => RadialType::Escaping,
        DepthClass::Oscillating => RadialType::Bungee,
        DepthClass::UndecidedAtHorizon { .. } => RadialType::Undecided,
    }
}

/// Depths of a coded stream. A terminal gap contributes no explicit crosscut but is followed
/// by the peripheral crosscuts of its boundary component, whose levels diverge.
pub fn depth_of_stream(sys: &SchottkySystem, stream: &CodingStream) -> DepthSequence {
    let d = stream.levels(sys);
    let tail = match &stream.tail {
        StreamTail::Terminal(Terminal::Gap { .. }) => {
            if stream.complete || stream.gap_final {
                DepthTail::Divergent
            } else {
                DepthTail::Horizon
            }
        }
        StreamTail::Terminal(Terminal::Cusp { .. }) => DepthTail::Divergent,
        StreamTail::Truncated(_) => DepthTail::Horizon,
        StreamTail::Periodic { period, .. } => DepthTail::Periodic(period.iter().map(|y| sys.level(y.generator)).collect()),
        StreamTail::Descent => DepthTail::Divergent,
        StreamTail::Alternating { low } => DepthTail::Oscillating { low: *low },
    };
    DepthSequence { d, tail }
}

pub fn depth_sequence(sys: &SchottkySystem, theta: f64, max_letters: usize) -> Result<DepthSequence, ExhaustionError> {
    let opts = CodingOptions { max_letters, ..Default::default() };
    let stream = code_boundary_point(sys, theta, &opts)?;
    Ok(depth_of_stream(sys, &stream))
}

pub fn radial_type(sys: &SchottkySystem, theta: f64, max_letters: usize) -> Result<RadialType, ExhaustionError> {
    Ok(radial_type_of(classify_depth(&depth_sequence(sys, theta, max_letters)?)))
}

/// `I_g`: for a hyperbolic generator the arc between its fixed points on the side of the axis
/// away from the basepoint (counterclockwise from attracting to repelling on a tie); for a
/// parabolic generator the fixed point itself.
pub fn fixed_point_arc(sys: &SchottkySystem, generator: usize) -> Result<BoundaryArc, ExhaustionError> {
    let g = &sys.generators()[generator];
    if g.kind == GeneratorKind::Parabolic {
        let p = g.cusp().ok_or_else(|| ExhaustionError::Unsupported("parabolic generator without a fixed point".into()))?;
        return Ok(BoundaryArc::from_start_length(p, 0.0));
    }
    let (rep, att) = g.map.hyperbolic_fixed_angles().map_err(GroupError::from)?;
    let forward = BoundaryArc::new(rep, att);
    let backward = BoundaryArc::new(att, rep);
    let axis = Geodesic::from_endpoints(rep, att).map_err(|e| ExhaustionError::Unsupported(e.to_string()))?;
    let s0 = axis.side(sys.basepoint());
    if s0.abs() < 1e-12 {
        return Ok(backward);
    }
    let probe = Complex64::from_polar(1.0 - 1e-9, forward.mid());
    if (axis.side(probe) < 0.0) == (s0 < 0.0) {
        Ok(backward)
    } else {
        Ok(forward)
    }
}

fn is_open_leaf(sys: &SchottkySystem, children: &[Vec<usize>], v: usize) -> bool {
    children[v].is_empty() && (sys.is_complete() || sys.horizon().is_none_or(|h| sys.level(v) < h))
}

/// Address of the boundary component owning a depth-0 gap.
pub fn owner_of_gap(sys: &SchottkySystem, gap: &BoundaryArc) -> Result<BoundaryAddress, ExhaustionError> {
    let (_, children) = sys.tree();
    let mut best: Option<(usize, usize)> = None;
    for v in 0..sys.rank() {
        let iv = fixed_point_arc(sys, v)?;
        if iv.length() > 0.0 && iv.contains_arc(gap, 1e-12) {
            let depth = sys.path_of(v).len();
            if best.is_none_or(|(d, _)| depth > d) {
                best = Some((depth, v));
            }
        }
    }
    Ok(match best {
        None => BoundaryAddress::outer(),
        Some((_, v)) => {
            let mut digits = sys.path_of(v);
            if !children[v].is_empty() || !is_open_leaf(sys, &children, v) {
                digits.push(0);
            }
            BoundaryAddress::new(digits)
        }
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Carrier {
    Point(f64),
    ClosedArc(f64, f64),
    OpenArc(f64, f64),
}

impl Carrier {
    pub fn length(&self) -> f64 {
        match self {
            Carrier::Point(_) => 0.0,
            Carrier::ClosedArc(a, b) | Carrier::OpenArc(a, b) => {
                let arc = BoundaryArc::new(*a, *b);
                if (b - a) >= std::f64::consts::TAU - 1e-15 {
                    std::f64::consts::TAU
                } else {
                    arc.length()
                }
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AlphaImage {
    pub carrier: Carrier,
    pub component_address: BoundaryAddress,
}

fn carrier_of(arc: BoundaryArc, open: bool) -> Carrier {
    if arc.length() < EPS_POINT {
        Carrier::Point(arc.mid())
    } else if arc.is_full() {
        Carrier::OpenArc(arc.start(), arc.start() + std::f64::consts::TAU)
    } else if open {
        Carrier::OpenArc(arc.start(), arc.end())
    } else {
        Carrier::ClosedArc(arc.start(), arc.end())
    }
}

/// Components of `base` after removing the closed arcs `holes` (all inside `base`).
fn arc_minus(base: &BoundaryArc, holes: &[BoundaryArc]) -> Vec<BoundaryArc> {
    if base.is_full() {
        return gaps(holes, EPS_POINT);
    }
    let mut cuts: Vec<(f64, f64)> = holes.iter().map(|h| (base.offset(h.start()), base.offset(h.start()) + h.length())).collect();
    cuts.sort_by(|a, b| a.0.total_cmp(&b.0));
    let mut out = Vec::new();
    let mut pos = 0.0;
    for (s, e) in cuts {
        if s - pos > EPS_POINT {
            out.push(BoundaryArc::from_start_length(base.start() + pos, s - pos));
        }
        pos = pos.max(e);
    }
    if base.length() - pos > EPS_POINT {
        out.push(BoundaryArc::from_start_length(base.start() + pos, base.length() - pos));
    }
    out
}

/// The nested arc `W_k(I_{v_k})` with `W_{n+1} = W_n g_{v_n}^{j_n}` along the address, where
/// `j_n` comes from `lift_choices` (missing entries are 0). Leaves give open arcs or points;
/// branches cut by the horizon give closed arcs.
pub fn alpha_image(
    sys: &SchottkySystem,
    address: &BoundaryAddress,
    lift_choices: &[i64],
    horizon: usize,
) -> Result<AlphaImage, ExhaustionError> {
    let sys = match sys.horizon() {
        Some(h) if (h as usize) < horizon => sys.at_horizon(horizon as u32),
        _ => sys.clone(),
    };
    let (roots, children) = sys.tree();
    let digits = &address.digits;
    if digits.is_empty() {
        return Err(ExhaustionError::UnknownAddress(address.clone()));
    }
    let choice = |n: usize| lift_choices.get(n).copied().unwrap_or(0);
    if digits[0] == 0 {
        let holes: Vec<BoundaryArc> = roots.iter().map(|r| fixed_point_arc(&sys, *r)).collect::<Result<_, _>>()?;
        let comps = arc_minus(&BoundaryArc::full_circle(), &holes);
        let arc = pick(&comps, choice(0))?;
        return Ok(AlphaImage { carrier: carrier_of(arc, true), component_address: address.clone() });
    }
    let mut w = DiskAutomorphism::identity();
    let mut current: Option<(usize, BoundaryArc)> = None;
    let mut siblings = &roots;
    for (n, d) in digits.iter().enumerate().take(horizon.max(1)) {
        if *d == 0 {
            let (v, outer) = current.ok_or_else(|| ExhaustionError::UnknownAddress(address.clone()))?;
            let holes: Vec<BoundaryArc> =
                children[v].iter().map(|c| fixed_point_arc(&sys, *c).map(|a| a.image(&w))).collect::<Result<_, _>>()?;
            let comps = arc_minus(&outer, &holes);
            let arc = pick(&comps, choice(n))?;
            return Ok(AlphaImage { carrier: carrier_of(arc, true), component_address: address.clone() });
        }
        let v = *siblings.get(*d as usize - 1).ok_or_else(|| ExhaustionError::UnknownAddress(address.clone()))?;
        if let Some((parent, outer)) = current {
            w = w.compose(&sys.generators()[parent].map.pow(choice(n - 1)));
            let arc = fixed_point_arc(&sys, v)?.image(&w);
            if !outer.contains_arc(&arc, 1e-12) {
                return Err(ExhaustionError::NonNested(n));
            }
            current = Some((v, arc));
        } else {
            current = Some((v, fixed_point_arc(&sys, v)?));
        }
        siblings = &children[v];
    }
    let (v, arc) = current.expect("at least one digit");
    let open = is_open_leaf(&sys, &children, v) && digits.len() <= horizon.max(1);
    let carrier = if sys.generators()[v].kind == GeneratorKind::Parabolic {
        Carrier::Point(arc.start())
    } else {
        carrier_of(arc, open)
    };
    Ok(AlphaImage { carrier, component_address: address.clone() })
}

fn pick(comps: &[BoundaryArc], k: i64) -> Result<BoundaryArc, ExhaustionError> {
    if comps.is_empty() {
        return Err(ExhaustionError::Unsupported("component has an empty α-image".into()));
    }
    Ok(comps[k.rem_euclid(comps.len() as i64) as usize])
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum AddressKind {
    /// The address names the component outright (gap owner or cusp).
    Full,
    /// Longest branch of the exhaustion tree seen so far along the itinerary.
    Prefix,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AssociatedAddress {
    pub address: BoundaryAddress,
    pub kind: AddressKind,
}

/// Tree branches whose generators occur, in order, as a subsequence of the itinerary.
pub fn associated_addresses_of(sys: &SchottkySystem, stream: &CodingStream) -> Result<Vec<AssociatedAddress>, ExhaustionError> {
    match &stream.tail {
        StreamTail::Terminal(Terminal::Gap { gap, .. }) => {
            let address = owner_of_gap(sys, &sys.gaps()[*gap])?;
            return Ok(vec![AssociatedAddress { address, kind: AddressKind::Full }]);
        }
        StreamTail::Terminal(Terminal::Cusp { generator, .. }) => {
            let address = BoundaryAddress::new(sys.path_of(*generator));
            return Ok(vec![AssociatedAddress { address, kind: AddressKind::Full }]);
        }
        _ => {}
    }
    let seq: Vec<usize> = stream.itinerary.iter().map(|y| y.generator).collect();
    let (roots, children) = sys.tree();
    let mut out = Vec::new();
    // depth-first over matched nodes: (node, position in seq, digits)
    let mut stack: Vec<(usize, usize, Vec<u32>)> = Vec::new();
    for (k, r) in roots.iter().enumerate() {
        if let Some(pos) = seq.iter().position(|g| g == r) {
            stack.push((*r, pos, vec![k as u32 + 1]));
        }
    }
    while let Some((v, pos, digits)) = stack.pop() {
        let mut extended = false;
        for (k, c) in children[v].iter().enumerate() {
            if let Some(off) = seq[pos + 1..].iter().position(|g| g == c) {
                let mut d = digits.clone();
                d.push(k as u32 + 1);
                stack.push((*c, pos + 1 + off, d));
                extended = true;
            }
        }
        if !extended {
            out.push(AssociatedAddress { address: BoundaryAddress::new(digits), kind: AddressKind::Prefix });
        }
    }
    out.sort_by(|a, b| a.address.cmp(&b.address));
    Ok(out)
}

pub fn associated_addresses(sys: &SchottkySystem, theta: f64, max_letters: usize) -> Result<Vec<AssociatedAddress>, ExhaustionError> {
    let opts = CodingOptions { max_letters, ..Default::default() };
    let stream = code_boundary_point(sys, theta, &opts)?;
    associated_addresses_of(sys, &stream)
}

/// Output of [`construct_bungee_point`]: the symbolic stream, plus how many of its letters
/// were realized as nested arcs before the arcs dropped below `f64` resolution.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ConstructedPoint {
    pub stream: CodingStream,
    pub realized_letters: usize,
}

/// Crossing construction along the given addresses. One address gives the straight descent
/// `a₁ a₂ a₃ …`; several addresses give stages `a¹₁ a¹ₛ₊₁ a²₁ a²ₛ₊₁ …` for `s = 1, 2, …`.
/// `choices[m]` inverts the `m`-th letter.
pub fn construct_bungee_point(
    sys: &SchottkySystem,
    addresses: &[BoundaryAddress],
    horizon: usize,
    choices: &[bool],
) -> Result<ConstructedPoint, ExhaustionError> {
    if addresses.is_empty() || horizon < 2 {
        return Err(ExhaustionError::Unsupported("need at least one address and a horizon of at least 2".into()));
    }
    let sys = match sys.horizon() {
        Some(h) if (h as usize) < horizon => sys.at_horizon(horizon as u32),
        _ => sys.clone(),
    };
    let (_, children) = sys.tree();
    let mut chains: Vec<Vec<usize>> = Vec::new();
    for a in addresses {
        let mut chain = Vec::with_capacity(horizon);
        for k in 1..=horizon {
            let digits: Vec<u32> = (0..k).map(|i| a.digits.get(i).copied().unwrap_or(1)).collect();
            match sys.node_at(&digits) {
                Some(v) => chain.push(v),
                None => {
                    return Err(ExhaustionError::Unsupported(format!("address {a} reaches an isolated component before the horizon")))
                }
            }
        }
        if chain.iter().any(|v| sys.generators()[*v].kind == GeneratorKind::Parabolic) || children[*chain.last().unwrap()].is_empty() && sys.is_complete() {
            return Err(ExhaustionError::Unsupported(format!("address {a} names an isolated component")));
        }
        chains.push(chain);
    }
    let mut gens: Vec<usize> = Vec::new();
    let tail = if chains.len() == 1 {
        gens.extend(&chains[0]);
        StreamTail::Descent
    } else {
        for s in 1..horizon {
            for chain in &chains {
                gens.push(chain[0]);
                gens.push(chain[s]);
            }
        }
        let low = chains.iter().map(|c| sys.level(c[0])).min().unwrap_or(1);
        StreamTail::Alternating { low }
    };
    let itinerary: Vec<Letter> =
        gens.iter().enumerate().map(|(m, g)| Letter::new(*g, choices.get(m).copied().unwrap_or(false))).collect();
    GroupWord::new(itinerary.clone())?;

    let floor = CodingOptions::default().min_arc;
    let mut w = DiskAutomorphism::identity();
    let mut interval = BoundaryArc::full_circle();
    let mut realized = 0;
    for y in &itinerary {
        let arc = sys.letter_arc(*y).image(&w);
        if arc.length() < floor {
            break;
        }
        interval = arc;
        w = w.compose(&sys.letter_map(*y));
        realized += 1;
    }
    let stream = CodingStream { theta: interval.mid(), itinerary, tail, interval, complete: sys.is_complete(), gap_final: false };
    Ok(ConstructedPoint { stream, realized_letters: realized })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::families;
    use std::f64::consts::PI;

    #[test]
    fn classify_depth_examples() {
        assert_eq!(classify_depth(&DepthSequence::finite(vec![])), DepthClass::Finite);
        assert_eq!(classify_depth(&DepthSequence::increasing(10)), DepthClass::Infinite);
        let alt = DepthSequence { d: vec![1, 2, 1, 3, 1, 4], tail: DepthTail::Oscillating { low: 1 } };
        assert_eq!(classify_depth(&alt), DepthClass::Oscillating);
        let raw = DepthSequence { d: vec![1, 1, 2], tail: DepthTail::Horizon };
        assert_eq!(classify_depth(&raw), DepthClass::UndecidedAtHorizon { tail_min: Some(1), tail_max: Some(2) });
    }

    #[test]
    fn depth_examples_on_cyclic() {
        let cyc = families::cyclic();
        let gap = depth_sequence(&cyc, PI / 2.0, 64).unwrap();
        assert!(gap.d.is_empty());
        assert_eq!(radial_type(&cyc, PI / 2.0, 64).unwrap(), RadialType::Escaping);
        let fixed = depth_sequence(&cyc, 0.0, 64).unwrap();
        assert!(fixed.d.iter().all(|l| *l == 1));
        assert_eq!(radial_type(&cyc, 0.0, 64).unwrap(), RadialType::Bounded);
    }

    #[test]
    fn parabolic_point_escapes() {
        let sys = families::parabolic_rank1();
        let p = sys.generators()[0].cusp().unwrap();
        assert_eq!(radial_type(&sys, p, 64).unwrap(), RadialType::Escaping);
    }

    #[test]
    fn cyclic_alpha_images() {
        let cyc = families::cyclic();
        let outer = alpha_image(&cyc, &BoundaryAddress::outer(), &[], 8).unwrap();
        match outer.carrier {
            Carrier::OpenArc(a, b) => {
                assert!((a - PI).abs() < 1e-9);
                assert!((b - 2.0 * PI).abs() < 1e-9 || b.abs() < 1e-9);
            }
            other => panic!("unexpected {other:?}"),
        }
        let inner = alpha_image(&cyc, &BoundaryAddress::new(vec![1]), &[], 8).unwrap();
        assert!(matches!(inner.carrier, Carrier::OpenArc(..)));
        let trivial = alpha_image(&SchottkySystem::trivial(), &BoundaryAddress::outer(), &[], 1).unwrap();
        assert!((trivial.carrier.length() - 2.0 * PI).abs() < 1e-12);
    }

    #[test]
    fn parabolic_alpha_image_is_point() {
        let sys = families::parabolic_rank1();
        let a = alpha_image(&sys, &BoundaryAddress::new(vec![1]), &[], 4).unwrap();
        assert!(matches!(a.carrier, Carrier::Point(_)));
    }

    #[test]
    fn alpha_images_shrink_along_infinite_branch() {
        let sys = families::nested_chains_system(2);
        let addr = BoundaryAddress::new(vec![1; 12]);
        let mut last = f64::INFINITY;
        for h in 1..=8 {
            let a = alpha_image(&sys, &addr, &[], h).unwrap();
            assert!(matches!(a.carrier, Carrier::ClosedArc(..)));
            assert!(a.carrier.length() < last);
            last = a.carrier.length();
        }
    }

    #[test]
    fn gap_owners() {
        let cyc = families::cyclic();
        let owners: Vec<BoundaryAddress> = cyc.gaps().iter().map(|g| owner_of_gap(&cyc, g).unwrap()).collect();
        assert!(owners.contains(&BoundaryAddress::new(vec![1])));
        assert!(owners.contains(&BoundaryAddress::outer()));
        let pants = families::pants();
        let mut owners: Vec<BoundaryAddress> = pants.gaps().iter().map(|g| owner_of_gap(&pants, g).unwrap()).collect();
        owners.sort();
        owners.dedup();
        assert_eq!(owners.len(), 3);
    }

    #[test]
    fn bungee_construction() {
        let sys = families::nested_chains_system(10);
        let a1 = BoundaryAddress::new(vec![1; 10]);
        let a2 = BoundaryAddress::new(vec![2, 1, 1, 1, 1, 1, 1, 1, 1, 1]);
        let pt = construct_bungee_point(&sys, &[a1.clone(), a2.clone()], 10, &[]).unwrap();
        let depths = depth_of_stream(&sys, &pt.stream);
        assert_eq!(&depths.d[..8], &[1, 2, 1, 2, 1, 3, 1, 3]);
        assert_eq!(radial_type_of(classify_depth(&depths)), RadialType::Bungee);
        let assoc = associated_addresses_of(&sys, &pt.stream).unwrap();
        assert_eq!(assoc.len(), 2);
        assert!(assoc.iter().any(|a| a.address.digits[0] == 1 && a.address.digits.len() >= 2));
        assert!(assoc.iter().any(|a| a.address.digits[0] == 2));

        let single = construct_bungee_point(&sys, &[a1], 10, &[]).unwrap();
        assert_eq!(radial_type_of(classify_depth(&depth_of_stream(&sys, &single.stream))), RadialType::Escaping);
        assert_eq!(associated_addresses_of(&sys, &single.stream).unwrap().len(), 1);
    }

    #[test]
    fn choice_sequences_give_disjoint_intervals() {
        let sys = families::nested_chains_system(8);
        let a1 = BoundaryAddress::new(vec![1; 8]);
        let a2 = BoundaryAddress::new([2].into_iter().chain([1; 7]).collect());
        let choices = [[false, false], [false, true], [true, false], [true, true]];
        let pts: Vec<_> = choices
            .iter()
            .map(|c| construct_bungee_point(&sys, &[a1.clone(), a2.clone()], 8, c).unwrap().stream.interval)
            .collect();
        for i in 0..pts.len() {
            for j in i + 1..pts.len() {
                assert!(!pts[i].overlaps(&pts[j], 0.0), "{:?} {:?}", pts[i], pts[j]);
            }
        }
    }

    #[test]
    fn bungee_recodes() {
        let sys = families::nested_chains_system(10);
        let a1 = BoundaryAddress::new(vec![1; 10]);
        let a2 = BoundaryAddress::new(vec![2; 1].into_iter().chain(vec![1; 9]).collect());
        let pt = construct_bungee_point(&sys, &[a1, a2], 10, &[]).unwrap();
        assert!(pt.realized_letters >= 4);
        let re = code_boundary_point(&sys, pt.stream.theta, &CodingOptions::default()).unwrap();
        let n = pt.realized_letters.min(re.itinerary.len());
        assert!(n >= 4);
        assert_eq!(&re.itinerary[..n], &pt.stream.itinerary[..n]);
    }
}
