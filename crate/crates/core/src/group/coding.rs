//! Itineraries of boundary points through the nested letter arcs.

use serde::{Deserialize, Serialize};

use super::{GroupError, GroupWord, Letter, SchottkySystem};
use crate::arc::{angular_distance, normalize_angle, BoundaryArc, EPS_ARC};
use crate::moebius::DiskAutomorphism;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CodingOptions {
    pub max_letters: usize,
    /// Points closer than this to an endpoint of a candidate arc are ambiguous.
    pub eps_arc: f64,
    /// Arcs shorter than this are below the resolution of `f64` angles after composition;
    /// coding stops there instead of guessing.
    pub min_arc: f64,
}

impl Default for CodingOptions {
    fn default() -> Self {
        CodingOptions { max_letters: 64, eps_arc: EPS_ARC, min_arc: 1e-7 }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Terminal {
    /// The point lies in `W(G_gap)` where `W` is the itinerary word.
    Gap { gap: usize, arc: BoundaryArc },
    /// The point is `W(p)` for the fixed point `p` of a parabolic generator.
    Cusp { generator: usize, point: f64 },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Truncation {
    MaxLetters,
    Precision,
}

/// How an itinerary continues past its explicit letters.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum StreamTail {
    /// Finite itinerary ending in a gap or at a cusp.
    Terminal(Terminal),
    /// Numeric coding stopped before the itinerary was decided.
    Truncated(Truncation),
    /// The stream is `itinerary[..start]` followed by `period` repeated forever; the
    /// explicit itinerary is a prefix of it.
    Periodic { start: usize, period: Vec<Letter> },
    /// Constructed stream whose generator levels diverge.
    Descent,
    /// Constructed stream returning to level `low` infinitely often while its other levels diverge.
    Alternating { low: u32 },
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CodingStream {
    pub theta: f64,
    pub itinerary: Vec<Letter>,
    pub tail: StreamTail,
    /// Smallest nested arc known to contain the point.
    pub interval: BoundaryArc,
    /// Whether the coding system holds every generator of the group.
    pub complete: bool,
    /// Whether a terminal gap of a truncated system stays free of higher-level arcs one
    /// level past the horizon.
    #[serde(default)]
    pub gap_final: bool,
}

impl CodingStream {
    pub fn terminal(&self) -> Option<&Terminal> {
        match &self.tail {
            StreamTail::Terminal(t) => Some(t),
            _ => None,
        }
    }

    pub fn word(&self) -> GroupWord {
        GroupWord::reduce(self.itinerary.iter().copied())
    }

    /// Levels of the explicit itinerary letters.
    pub fn levels(&self, sys: &SchottkySystem) -> Vec<u32> {
        self.itinerary.iter().map(|y| sys.level(y.generator)).collect()
    }
}

/// Code `e^{iθ}` by the letter arcs `W(D_y)` that contain it.
pub fn code_boundary_point(sys: &SchottkySystem, theta: f64, opts: &CodingOptions) -> Result<CodingStream, GroupError> {
    let theta = normalize_angle(theta);
    let letters = sys.letters();
    let cusps: Vec<(usize, f64)> =
        sys.generators().iter().enumerate().filter_map(|(i, g)| g.cusp().map(|p| (i, p))).collect();
    let mut w = DiskAutomorphism::identity();
    let mut itinerary: Vec<Letter> = Vec::new();
    let mut interval = BoundaryArc::full_circle();
    let finish = |itinerary: Vec<Letter>, tail: StreamTail, interval: BoundaryArc| {
        let tail = match tail {
            StreamTail::Truncated(t) => match snap_periodic(sys, &itinerary, theta, opts.eps_arc) {
                Some((start, period)) => StreamTail::Periodic { start, period },
                None => StreamTail::Truncated(t),
            },
            other => other,
        };
        let gap_final = matches!(tail, StreamTail::Terminal(Terminal::Gap { gap, .. }) if gap_is_final(sys, gap));
        CodingStream { theta, itinerary, tail, interval, complete: sys.is_complete(), gap_final }
    };
    loop {
        for (g, p) in &cusps {
            let q = w.apply_angle(*p);
            if angular_distance(q, theta) <= opts.eps_arc {
                let tail = StreamTail::Terminal(Terminal::Cusp { generator: *g, point: q });
                return Ok(finish(itinerary, tail, BoundaryArc::from_start_length(q, 0.0)));
            }
        }
        if itinerary.len() >= opts.max_letters {
            return Ok(finish(itinerary, StreamTail::Truncated(Truncation::MaxLetters), interval));
        }
        let prev = itinerary.last().copied();
        let mut found = None;
        for y in &letters {
            if prev == Some(y.inv()) {
                continue;
            }
            let arc = sys.letter_arc(*y).image(&w);
            if arc.length() > opts.min_arc && arc.endpoint_distance(theta) <= opts.eps_arc {
                return Err(GroupError::AmbiguousAtTolerance { theta, letters: itinerary.len() });
            }
            if found.is_none() && arc.contains(theta, 0.0) {
                found = Some((*y, arc));
            }
        }
        match found {
            Some((y, arc)) => {
                if arc.length() < opts.min_arc {
                    return Ok(finish(itinerary, StreamTail::Truncated(Truncation::Precision), interval));
                }
                itinerary.push(y);
                w = w.compose(&sys.letter_map(y));
                interval = arc;
            }
            None => {
                for (j, gap) in sys.gaps().iter().enumerate() {
                    let arc = gap.image(&w);
                    if arc.contains(theta, 0.0) {
                        return Ok(finish(itinerary, StreamTail::Terminal(Terminal::Gap { gap: j, arc }), arc));
                    }
                }
                return Ok(finish(itinerary, StreamTail::Truncated(Truncation::Precision), interval));
            }
        }
    }
}

/// Recognize a truncated itinerary `P u u u…` whose point `P(fix⁺(u))` is `theta` within `tol`.
fn snap_periodic(sys: &SchottkySystem, itinerary: &[Letter], theta: f64, tol: f64) -> Option<(usize, Vec<Letter>)> {
    let n = itinerary.len();
    for total in 1..=n {
        for q in 1..=total {
            let a = total - q;
            let u = &itinerary[a..a + q];
            if q > 1 && u[0] == u[q - 1].inv() {
                continue;
            }
            if !(a..n).all(|k| itinerary[k] == u[(k - a) % q]) {
                continue;
            }
            let Ok(word) = GroupWord::new(u.to_vec()) else { continue };
            let Ok(m) = word.to_map(sys) else { continue };
            let Ok((_, att)) = m.hyperbolic_fixed_angles() else { continue };
            let prefix = GroupWord::reduce(itinerary[..a].iter().copied()).to_map(sys).ok()?;
            if angular_distance(prefix.apply_angle(att), theta) <= tol {
                return Some((a, u.to_vec()));
            }
        }
    }
    None
}

/// A depth-0 gap of a truncated family that receives no arcs at the next level.
fn gap_is_final(sys: &SchottkySystem, gap: usize) -> bool {
    if sys.is_complete() {
        return true;
    }
    let Some(h) = sys.horizon() else { return false };
    let next = sys.at_horizon(h + 1);
    let g = sys.gaps()[gap];
    !next.generators().iter().any(|s| s.level == h + 1 && (g.contains_arc(&s.source_arc, 0.0) || g.contains_arc(&s.target_arc, 0.0)))
}

/// Symbolic coding of the attracting fixed point of a cyclically reduced word: the word
/// repeated forever. Parabolic powers `g^{±1}` code as a cusp terminal.
pub fn code_fixed_point(sys: &SchottkySystem, word: &GroupWord) -> Result<CodingStream, GroupError> {
    if word.is_empty() || !word.is_cyclically_reduced() {
        return Err(GroupError::NotReduced);
    }
    let m = word.to_map(sys)?;
    if word.len() == 1 {
        let y = word.letters()[0];
        if let Some(p) = sys.generators()[y.generator].cusp() {
            return Ok(CodingStream {
                theta: p,
                itinerary: Vec::new(),
                tail: StreamTail::Terminal(Terminal::Cusp { generator: y.generator, point: p }),
                interval: BoundaryArc::from_start_length(p, 0.0),
                complete: sys.is_complete(),
                gap_final: false,
            });
        }
    }
    let (_, att) = m.hyperbolic_fixed_angles()?;
    let last = *word.letters().last().expect("nonempty");
    let interval = sys.letter_arc(last).image(&m.compose(&sys.letter_map(last).inverse()));
    Ok(CodingStream {
        theta: att,
        itinerary: word.letters().to_vec(),
        tail: StreamTail::Periodic { start: 0, period: word.letters().to_vec() },
        interval,
        complete: sys.is_complete(),
        gap_final: false,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::families;
    use std::f64::consts::PI;

    #[test]
    fn gap_point_has_empty_itinerary() {
        let cyc = families::cyclic();
        let c = code_boundary_point(&cyc, PI / 2.0, &CodingOptions::default()).unwrap();
        assert!(c.itinerary.is_empty());
        assert!(matches!(c.terminal(), Some(Terminal::Gap { .. })));
    }

    #[test]
    fn attracting_fixed_point_repeats_its_generator() {
        let sys = families::pants();
        let g = Letter::new(0, false);
        let (_, att) = sys.generators()[0].map.hyperbolic_fixed_angles().unwrap();
        let c = code_boundary_point(&sys, att, &CodingOptions::default()).unwrap();
        assert!(c.itinerary.len() >= 3);
        assert!(c.itinerary.iter().all(|y| *y == g));
        assert_eq!(c.tail, StreamTail::Periodic { start: 0, period: vec![g] });
        let off = code_boundary_point(&sys, att + 1e-9, &CodingOptions::default()).unwrap();
        assert_eq!(off.tail, StreamTail::Truncated(Truncation::Precision));
    }

    #[test]
    fn commutator_fixed_point_codes_periodically() {
        let sys = families::rank2_interleaved();
        let (a, b) = (Letter::new(0, false), Letter::new(1, false));
        let word = GroupWord::new(vec![a, b, a.inv(), b.inv()]).unwrap();
        let (_, att) = word.to_map(&sys).unwrap().hyperbolic_fixed_angles().unwrap();
        let c = code_boundary_point(&sys, att, &CodingOptions::default()).unwrap();
        assert!(c.itinerary.len() >= 4);
        for (k, y) in c.itinerary.iter().enumerate() {
            assert_eq!(*y, word.letters()[k % 4]);
        }
    }

    #[test]
    fn endpoint_is_ambiguous() {
        let cyc = families::cyclic();
        let end = cyc.letter_arc(Letter::new(0, false)).end();
        assert!(matches!(
            code_boundary_point(&cyc, end, &CodingOptions::default()),
            Err(GroupError::AmbiguousAtTolerance { .. })
        ));
    }

    #[test]
    fn cusp_is_detected() {
        let sys = families::parabolic_rank1();
        let p = sys.generators()[0].cusp().unwrap();
        let c = code_boundary_point(&sys, p, &CodingOptions::default()).unwrap();
        assert!(matches!(c.terminal(), Some(Terminal::Cusp { generator: 0, .. })));
    }
}
