//! Freely reduced words over an indexed generating set.

use serde::{Deserialize, Serialize};
use std::fmt;

/// A freely reduced word: a sequence of (generator index, nonzero exponent)
/// pairs in which adjacent pairs never share a generator index.  The empty
/// sequence is the identity.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize, Default)]
pub struct Word {
    letters: Vec<(usize, i64)>,
}

impl Word {
    pub fn identity() -> Self {
        Word { letters: Vec::new() }
    }

    /// Single generator to a power.
    pub fn generator(idx: usize, exp: i64) -> Self {
        if exp == 0 {
            Word::identity()
        } else {
            Word { letters: vec![(idx, exp)] }
        }
    }

    /// Builds a word from an arbitrary (possibly unreduced) letter sequence.
    pub fn from_letters<I: IntoIterator<Item = (usize, i64)>>(letters: I) -> Self {
        let mut w = Word::identity();
        for (g, e) in letters {
            w.push(g, e);
        }
        w
    }

    fn push(&mut self, gen: usize, exp: i64) {
        if exp == 0 {
            return;
        }
        if let Some(last) = self.letters.last_mut() {
            if last.0 == gen {
                last.1 += exp;
                if last.1 == 0 {
                    self.letters.pop();
                }
                return;
            }
        }
        self.letters.push((gen, exp));
    }

    pub fn is_identity(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn letters(&self) -> &[(usize, i64)] {
        &self.letters
    }

    /// Total letter length counted with exponent multiplicity.
    pub fn len(&self) -> usize {
        self.letters.iter().map(|&(_, e)| e.unsigned_abs() as usize).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    /// Number of syllables (maximal generator powers).
    pub fn syllables(&self) -> usize {
        self.letters.len()
    }

    pub fn inverse(&self) -> Word {
        Word {
            letters: self.letters.iter().rev().map(|&(g, e)| (g, -e)).collect(),
        }
    }

    pub fn mul(&self, other: &Word) -> Word {
        let mut w = self.clone();
        for &(g, e) in &other.letters {
            w.push(g, e);
        }
        w
    }

    pub fn pow(&self, n: i64) -> Word {
        if n == 0 {
            return Word::identity();
        }
        let base = if n < 0 { self.inverse() } else { self.clone() };
        let mut out = Word::identity();
        for _ in 0..n.unsigned_abs() {
            out = out.mul(&base);
        }
        out
    }

    /// Conjugate `self` by `g`: g^-1 * self * g.
    pub fn conjugate(&self, g: &Word) -> Word {
        g.inverse().mul(self).mul(g)
    }

    /// Commutator `[self, other] = self^-1 other^-1 self other`.
    pub fn commutator(&self, other: &Word) -> Word {
        self.inverse().mul(&other.inverse()).mul(self).mul(other)
    }

    /// Exponent sum of a single generator.
    pub fn exponent_sum(&self, gen: usize) -> i64 {
        self.letters.iter().filter(|&&(g, _)| g == gen).map(|&(_, e)| e).sum()
    }

    /// Largest generator index occurring, if any.
    pub fn max_generator(&self) -> Option<usize> {
        self.letters.iter().map(|&(g, _)| g).max()
    }

    /// Applies a substitution sending generator i to `images[i]`.
    pub fn substitute(&self, images: &[Word]) -> Word {
        let mut out = Word::identity();
        for &(g, e) in &self.letters {
            out = out.mul(&images[g].pow(e));
        }
        out
    }

    /// Re-indexes generators through `map`.
    pub fn map_generators(&self, map: impl Fn(usize) -> usize) -> Word {
        Word::from_letters(self.letters.iter().map(|&(g, e)| (map(g), e)))
    }

    /// Expands into single letters with exponent +-1.
    pub fn single_letters(&self) -> impl Iterator<Item = (usize, i64)> + '_ {
        self.letters.iter().flat_map(|&(g, e)| {
            let sign = e.signum();
            (0..e.unsigned_abs()).map(move |_| (g, sign))
        })
    }

    /// Renders with the given generator names.
    pub fn display(&self, names: &[String]) -> String {
        if self.letters.is_empty() {
            return "1".to_string();
        }
        let mut parts = Vec::new();
        for &(g, e) in &self.letters {
            let name = names.get(g).cloned().unwrap_or_else(|| format!("g{}", g));
            if e == 1 {
                parts.push(name);
            } else {
                parts.push(format!("{}^{}", name, e));
            }
        }
        parts.join(" ")
    }
}

/// Free reduction of an arbitrary letter sequence; the constructor invariant
/// makes this idempotent and length-nonincreasing.
pub fn free_reduce(w: &Word) -> Word {
    Word::from_letters(w.letters.iter().copied())
}

impl fmt::Debug for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.letters.is_empty() {
            return write!(f, "1");
        }
        let parts: Vec<String> = self
            .letters
            .iter()
            .map(|&(g, e)| if e == 1 { format!("g{}", g) } else { format!("g{}^{}", g, e) })
            .collect();
        write!(f, "{}", parts.join(" "))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(letters: &[(usize, i64)]) -> Word {
        Word::from_letters(letters.iter().copied())
    }

    #[test]
    fn cancellation() {
        // x y y^-1 x -> x^2
        let v = w(&[(0, 1), (1, 1), (1, -1), (0, 1)]);
        assert_eq!(v, w(&[(0, 2)]));
    }

    #[test]
    fn empty_is_identity() {
        assert!(Word::identity().is_identity());
        assert_eq!(free_reduce(&Word::identity()), Word::identity());
    }

    #[test]
    fn self_commutator_trivial() {
        let x = Word::generator(0, 1);
        assert!(x.commutator(&x).is_identity());
    }

    #[test]
    fn commutator_expansion() {
        let x = Word::generator(0, 1);
        let y = Word::generator(1, 1);
        // [x,y] = x^-1 y^-1 x y
        assert_eq!(x.commutator(&y), w(&[(0, -1), (1, -1), (0, 1), (1, 1)]));
    }

    #[test]
    fn inverse_and_pow() {
        let v = w(&[(0, 2), (1, -1)]);
        assert!(v.mul(&v.inverse()).is_identity());
        assert_eq!(v.pow(-2), v.inverse().mul(&v.inverse()));
    }

    #[test]
    fn substitution() {
        let v = w(&[(0, 1), (1, 1)]);
        let img = vec![Word::generator(0, 2), Word::generator(0, -2)];
        assert!(v.substitute(&img).is_identity());
    }
}
