//! Finite-depth covers of the limit set and the one-sided non-tangential test.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::words::{enumerate_words, for_each_shell, shell_cap, DEFAULT_WORD_CAP};
use super::{GroupError, Letter, SchottkySystem};
use crate::arc::{total_length, BoundaryArc};
use crate::disk::{distance_to_ray, BoundaryPoint};
use crate::moebius::DiskAutomorphism;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LimitSetCover {
    pub depth: usize,
    pub arcs: Vec<BoundaryArc>,
    pub total_length: f64,
}

impl LimitSetCover {
    pub fn contains(&self, theta: f64, tol: f64) -> bool {
        self.arcs.iter().any(|a| a.contains(theta, tol))
    }
}

/// Union of `W(D_y)` over reduced words `W y` of length `depth + 1`. Depth 0 is the family
/// of letter arcs itself.
pub fn limit_set_cover(sys: &SchottkySystem, depth: usize) -> Result<LimitSetCover, GroupError> {
    shell_cap(sys, depth + 1, DEFAULT_WORD_CAP)?;
    let letters = sys.letters();
    let mut arcs: Vec<BoundaryArc> = if depth == 0 {
        letters.iter().map(|y| sys.letter_arc(*y)).collect()
    } else {
        let per_first: Vec<Vec<BoundaryArc>> = letters
            .par_iter()
            .map(|first| {
                let mut arcs = Vec::new();
                let mut prefix = vec![*first];
                let m = sys.letter_map(*first);
                for_each_shell(sys, depth, &mut prefix, &m, &mut |word: &[Letter], map: &DiskAutomorphism| {
                    let last = *word.last().expect("nonempty");
                    for y in &letters {
                        if *y != last.inv() {
                            arcs.push(sys.letter_arc(*y).image(map));
                        }
                    }
                });
                arcs
            })
            .collect();
        per_first.into_iter().flatten().collect()
    };
    arcs.sort_by(|a, b| a.start().total_cmp(&b.start()));
    let total_length = total_length(&arcs);
    Ok(LimitSetCover { depth, arcs, total_length })
}

/// True when some orbit point `γ(basepoint)` with `1 ≤ |γ| ≤ max_len` lies within hyperbolic
/// distance `r` of the radius ending at `theta`.
pub fn nt_hit_estimate(sys: &SchottkySystem, theta: f64, max_len: usize, r: f64) -> Result<bool, GroupError> {
    let base = BoundaryPoint::new(theta);
    let z0 = sys.basepoint();
    let zero = num_complex::Complex64::new(0.0, 0.0);
    for (w, m) in enumerate_words(sys, max_len, DEFAULT_WORD_CAP)? {
        if w.is_empty() {
            continue;
        }
        if let Ok(d) = distance_to_ray(zero, base, m.apply(z0)) {
            if d < r {
                return Ok(true);
            }
        }
    }
    Ok(false)
}
