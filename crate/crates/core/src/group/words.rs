//! Reduced words, breadth-first enumeration and orbits.

use num_complex::Complex64;
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use std::fmt;

use super::{GroupError, SchottkySystem};
use crate::moebius::DiskAutomorphism;

pub const DEFAULT_WORD_CAP: usize = 1_000_000;

/// A generator or its inverse. Serialized as a signed 1-based index (`-2` is `g₁⁻¹`).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Letter {
    pub generator: usize,
    pub inverse: bool,
}

impl Letter {
    pub fn new(generator: usize, inverse: bool) -> Self {
        Letter { generator, inverse }
    }

    pub fn inv(self) -> Letter {
        Letter { generator: self.generator, inverse: !self.inverse }
    }

    pub fn exponent(&self) -> i8 {
        if self.inverse {
            -1
        } else {
            1
        }
    }

    pub fn signed(&self) -> i64 {
        let k = self.generator as i64 + 1;
        if self.inverse {
            -k
        } else {
            k
        }
    }

    pub fn from_signed(k: i64) -> Option<Letter> {
        if k == 0 {
            None
        } else {
            Some(Letter::new(k.unsigned_abs() as usize - 1, k < 0))
        }
    }
}

impl fmt::Display for Letter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.inverse {
            write!(f, "g{}^-1", self.generator)
        } else {
            write!(f, "g{}", self.generator)
        }
    }
}

impl Serialize for Letter {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_i64(self.signed())
    }
}

impl<'de> Deserialize<'de> for Letter {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let k = i64::deserialize(d)?;
        Letter::from_signed(k).ok_or_else(|| serde::de::Error::custom("letter index 0 is not allowed"))
    }
}

/// A reduced word in the generators.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
#[serde(try_from = "Vec<Letter>", into = "Vec<Letter>")]
pub struct GroupWord {
    letters: Vec<Letter>,
}

impl TryFrom<Vec<Letter>> for GroupWord {
    type Error = GroupError;

    fn try_from(letters: Vec<Letter>) -> Result<Self, GroupError> {
        GroupWord::new(letters)
    }
}

impl From<GroupWord> for Vec<Letter> {
    fn from(w: GroupWord) -> Self {
        w.letters
    }
}

impl GroupWord {
    pub fn new(letters: Vec<Letter>) -> Result<Self, GroupError> {
        if letters.windows(2).any(|w| w[1] == w[0].inv()) {
            return Err(GroupError::NotReduced);
        }
        Ok(GroupWord { letters })
    }

    /// Free reduction of an arbitrary letter sequence.
    pub fn reduce(letters: impl IntoIterator<Item = Letter>) -> Self {
        let mut out: Vec<Letter> = Vec::new();
        for y in letters {
            if out.last() == Some(&y.inv()) {
                out.pop();
            } else {
                out.push(y);
            }
        }
        GroupWord { letters: out }
    }

    pub fn identity() -> Self {
        GroupWord::default()
    }

    pub fn letters(&self) -> &[Letter] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn inverse(&self) -> GroupWord {
        GroupWord { letters: self.letters.iter().rev().map(|y| y.inv()).collect() }
    }

    pub fn concat(&self, other: &GroupWord) -> GroupWord {
        GroupWord::reduce(self.letters.iter().chain(other.letters.iter()).copied())
    }

    pub fn is_cyclically_reduced(&self) -> bool {
        match (self.letters.first(), self.letters.last()) {
            (Some(a), Some(b)) => self.letters.len() == 1 || *a != b.inv(),
            _ => true,
        }
    }

    /// The automorphism `y₁ ∘ y₂ ∘ ⋯ ∘ yₖ`.
    pub fn to_map(&self, sys: &SchottkySystem) -> Result<DiskAutomorphism, GroupError> {
        let mut m = DiskAutomorphism::identity();
        for y in &self.letters {
            if y.generator >= sys.rank() {
                return Err(GroupError::UnknownGenerator(y.generator));
            }
            m = m.compose(&sys.letter_map(*y));
        }
        Ok(m)
    }
}

impl fmt::Display for GroupWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.letters.is_empty() {
            return write!(f, "e");
        }
        let parts: Vec<String> = self.letters.iter().map(|y| y.to_string()).collect();
        write!(f, "{}", parts.join(" "))
    }
}

/// `1 + Σ_{k=1}^{L} 2n(2n − 1)^{k−1}`, the number of reduced words of length at most `L`
/// in a free group of rank `n`, as a float so it never overflows.
pub fn count_reduced_words(rank: usize, max_len: usize) -> f64 {
    if rank == 0 {
        return 1.0;
    }
    let m = 2.0 * rank as f64;
    let mut total = 1.0;
    let mut shell = m;
    for _ in 0..max_len {
        total += shell;
        shell *= m - 1.0;
    }
    total
}

/// Number of reduced words of length exactly `len`.
pub fn count_shell(rank: usize, len: usize) -> f64 {
    if len == 0 {
        return 1.0;
    }
    if rank == 0 {
        return 0.0;
    }
    let m = 2.0 * rank as f64;
    m * (m - 1.0).powi(len as i32 - 1)
}

fn check_cap(requested: f64, cap: usize) -> Result<(), GroupError> {
    if requested > cap as f64 {
        Err(GroupError::ResourceLimit { requested, cap })
    } else {
        Ok(())
    }
}

/// All reduced words of length at most `max_len`, breadth-first, each shell ordered
/// lexicographically by (generator index, then `+1` before `−1`).
pub fn enumerate_words(sys: &SchottkySystem, max_len: usize, cap: usize) -> Result<Vec<(GroupWord, DiskAutomorphism)>, GroupError> {
    check_cap(count_reduced_words(sys.rank(), max_len), cap)?;
    let letters = sys.letters();
    let maps: Vec<DiskAutomorphism> = letters.iter().map(|y| sys.letter_map(*y)).collect();
    let mut out = vec![(GroupWord::identity(), DiskAutomorphism::identity())];
    let mut shell_start = 0;
    for _ in 0..max_len {
        let shell_end = out.len();
        for i in shell_start..shell_end {
            let (w, m) = out[i].clone();
            for (y, ym) in letters.iter().zip(&maps) {
                if w.letters.last() == Some(&y.inv()) {
                    continue;
                }
                let mut l = w.letters.clone();
                l.push(*y);
                out.push((GroupWord { letters: l }, m.compose(ym)));
            }
        }
        shell_start = shell_end;
    }
    Ok(out)
}

/// Orbit of the basepoint under all reduced words of length at most `max_len`.
pub fn orbit(sys: &SchottkySystem, max_len: usize) -> Result<Vec<Complex64>, GroupError> {
    let z0 = sys.basepoint();
    Ok(enumerate_words(sys, max_len, DEFAULT_WORD_CAP)?.into_iter().map(|(_, m)| m.apply(z0)).collect())
}

/// Visit every reduced word of length exactly `len` (with its map), depth first in the
/// same lexicographic order as [`enumerate_words`].
pub(crate) fn for_each_shell<F: FnMut(&[Letter], &DiskAutomorphism)>(
    sys: &SchottkySystem,
    len: usize,
    prefix: &mut Vec<Letter>,
    map: &DiskAutomorphism,
    f: &mut F,
) {
    if prefix.len() == len {
        f(prefix, map);
        return;
    }
    for y in sys.letters() {
        if prefix.last() == Some(&y.inv()) {
            continue;
        }
        let m = map.compose(&sys.letter_map(y));
        prefix.push(y);
        for_each_shell(sys, len, prefix, &m, f);
        prefix.pop();
    }
}

pub(crate) fn shell_cap(sys: &SchottkySystem, len: usize, cap: usize) -> Result<(), GroupError> {
    check_cap(count_shell(sys.rank(), len), cap)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::families;

    #[test]
    fn orbit_examples() {
        let cyc = families::cyclic();
        assert_eq!(orbit(&cyc, 0).unwrap(), vec![Complex64::new(0.0, 0.0)]);
        let pts = orbit(&cyc, 3).unwrap();
        assert_eq!(pts.len(), 7);
        assert!(pts.iter().all(|z| z.im.abs() < 1e-14));
        assert_eq!(orbit(&families::rank2_interleaved(), 2).unwrap().len(), 17);
    }

    #[test]
    fn reduction_and_serde() {
        let a = Letter::new(0, false);
        let b = Letter::new(1, false);
        assert!(GroupWord::new(vec![a, a.inv()]).is_err());
        let w = GroupWord::reduce([a, b, b.inv(), a]);
        assert_eq!(w.letters(), &[a, a]);
        let s = serde_json::to_string(&GroupWord::new(vec![a, b.inv()]).unwrap()).unwrap();
        assert_eq!(s, "[1,-2]");
        assert!(serde_json::from_str::<GroupWord>("[1,-1]").is_err());
    }

    #[test]
    fn cap_is_enforced() {
        let sys = families::rank2_interleaved();
        assert!(matches!(enumerate_words(&sys, 20, 1000), Err(GroupError::ResourceLimit { .. })));
    }
}
