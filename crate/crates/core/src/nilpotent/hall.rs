//! Lyndon-word basis of the free nilpotent group of class c: basic
//! commutators indexed by Lyndon words ordered by (weight, lex), with the
//! exponent-vector normal form recovered from the Magnus expansion by
//! triangular elimination on lowest monomials.

use super::magnus::{magnus_of_word, Mono, Series};
use crate::word::Word;
use num_bigint::BigInt;
use num_traits::Zero;
use std::collections::HashMap;

#[derive(Debug)]
pub struct HallBasis {
    pub num_gens: usize,
    pub class: usize,
    /// Lyndon words sorted by (length, lex)
    pub words: Vec<Mono>,
    index: HashMap<Mono, usize>,
    /// group word (bracketing) of each basis element, in the ambient generators
    pub bracket_words: Vec<Word>,
    /// Magnus expansion of each bracket word
    mu: Vec<Series>,
    /// first basis index of each weight (1-based weight; entry [0] unused)
    weight_start: Vec<usize>,
}

/// All Lyndon words over `n` letters with length in 1..=c (Duval's algorithm),
/// returned sorted by (length, lex).
pub fn lyndon_words(n: usize, c: usize) -> Vec<Mono> {
    let mut out: Vec<Mono> = Vec::new();
    if n == 0 || c == 0 {
        return out;
    }
    let mut w: Vec<u16> = vec![0];
    loop {
        out.push(w.clone());
        // extend periodically to length c
        let mut next = Vec::with_capacity(c);
        while next.len() < c {
            next.push(w[next.len() % w.len()]);
        }
        // chop trailing maximal letters, then increment
        while let Some(&last) = next.last() {
            if last as usize == n - 1 {
                next.pop();
            } else {
                break;
            }
        }
        if next.is_empty() {
            break;
        }
        *next.last_mut().unwrap() += 1;
        w = next;
    }
    out.sort_by(|a, b| (a.len(), a.as_slice()).cmp(&(b.len(), b.as_slice())));
    out
}

/// Standard factorization bracketing of a Lyndon word as a group word:
/// a single letter is a generator; otherwise w = uv with v the longest proper
/// Lyndon suffix and the bracketing is the group commutator of the parts.
fn bracket_word(w: &[u16], is_lyndon: &dyn Fn(&[u16]) -> bool) -> Word {
    if w.len() == 1 {
        return Word::generator(w[0] as usize, 1);
    }
    // longest proper suffix that is Lyndon
    for i in 1..w.len() {
        if is_lyndon(&w[i..]) {
            let u = bracket_word(&w[..i], is_lyndon);
            let v = bracket_word(&w[i..], is_lyndon);
            return u.commutator(&v);
        }
    }
    unreachable!("every Lyndon word of length >= 2 has a proper Lyndon suffix");
}

impl HallBasis {
    pub fn new(num_gens: usize, class: usize) -> Self {
        let words = lyndon_words(num_gens, class);
        let index: HashMap<Mono, usize> =
            words.iter().enumerate().map(|(i, w)| (w.clone(), i)).collect();
        let idx = index.clone();
        let is_lyndon = move |w: &[u16]| idx.contains_key(w);
        let bracket_words: Vec<Word> =
            words.iter().map(|w| bracket_word(w, &is_lyndon)).collect();
        let mu: Vec<Series> =
            bracket_words.iter().map(|bw| magnus_of_word(class, bw)).collect();
        let mut weight_start = vec![0usize; class + 2];
        for d in 1..=class + 1 {
            weight_start[d] = words.iter().position(|w| w.len() >= d).unwrap_or(words.len());
        }
        HallBasis { num_gens, class, words, index, bracket_words, mu, weight_start }
    }

    pub fn len(&self) -> usize {
        self.words.len()
    }

    pub fn weight(&self, i: usize) -> usize {
        self.words[i].len()
    }

    /// First basis index of the given weight (= basis length when none).
    pub fn weight_start(&self, d: usize) -> usize {
        if d > self.class {
            self.words.len()
        } else {
            self.weight_start[d]
        }
    }

    pub fn mu(&self, i: usize) -> &Series {
        &self.mu[i]
    }

    /// Exponent vector of a group element given by its Magnus expansion.
    /// Panics if the series is not the expansion of a group element.
    pub fn extract(&self, series: &Series) -> Vec<BigInt> {
        let mut v = series.clone();
        let mut exps = vec![BigInt::zero(); self.words.len()];
        for d in 1..=self.class {
            loop {
                let hd = v.homogeneous(d);
                let Some((mono, coeff)) = hd.into_iter().next() else { break };
                let idx = *self
                    .index
                    .get(&mono)
                    .unwrap_or_else(|| panic!("leading monomial {:?} is not Lyndon", mono));
                v = self.mu[idx].pow_int(&(-coeff.clone())).mul(&v);
                exps[idx] = coeff;
            }
        }
        assert!(v.is_one(), "residual after extraction; not a group element");
        exps
    }
}

/// Witt's necklace formula: rank of the degree-d layer of the free Lie ring
/// on n generators.
pub fn witt_rank(n: usize, d: usize) -> usize {
    fn mobius(mut m: usize) -> i64 {
        let mut result = 1i64;
        let mut p = 2;
        while p * p <= m {
            if m.is_multiple_of(p) {
                m /= p;
                if m.is_multiple_of(p) {
                    return 0;
                }
                result = -result;
            }
            p += 1;
        }
        if m > 1 {
            result = -result;
        }
        result
    }
    let mut sum = 0i64;
    for e in 1..=d {
        if d.is_multiple_of(e) {
            sum += mobius(e) * (n as i64).pow((d / e) as u32);
        }
    }
    (sum / d as i64) as usize
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn lyndon_counts_match_witt() {
        for n in 1..=4 {
            for c in 1..=4 {
                let words = lyndon_words(n, c);
                for d in 1..=c {
                    let count = words.iter().filter(|w| w.len() == d).count();
                    assert_eq!(count, witt_rank(n, d), "n={} d={}", n, d);
                }
            }
        }
    }

    #[test]
    fn rank_two_layers() {
        // free group on two generators: section ranks 2, 1, 2, 3, 6
        assert_eq!(witt_rank(2, 1), 2);
        assert_eq!(witt_rank(2, 2), 1);
        assert_eq!(witt_rank(2, 3), 2);
        assert_eq!(witt_rank(2, 4), 3);
        assert_eq!(witt_rank(2, 5), 6);
    }

    #[test]
    fn extraction_round_trip() {
        let basis = HallBasis::new(2, 4);
        // g = x^2 [x,y] y^-1-ish scrambled word
        let w = Word::from_letters([(0, 1), (1, 1), (0, -1), (1, 2), (0, 1), (1, -3)]);
        let s = magnus_of_word(4, &w);
        let exps = basis.extract(&s);
        // rebuild from the collected form and compare series
        let mut rebuilt = Series::one(4);
        for (i, e) in exps.iter().enumerate() {
            if !e.is_zero() {
                rebuilt = rebuilt.mul(&basis.mu(i).pow_int(e));
            }
        }
        assert_eq!(rebuilt, s);
    }

    #[test]
    fn commutator_has_unit_exponent() {
        let basis = HallBasis::new(2, 3);
        let x = Word::generator(0, 1);
        let y = Word::generator(1, 1);
        let c = x.commutator(&y);
        let exps = basis.extract(&magnus_of_word(3, &c));
        let idx = basis.words.iter().position(|w| w == &vec![0u16, 1u16]).unwrap();
        assert_eq!(exps[idx], BigInt::from(1));
        for (i, e) in exps.iter().enumerate() {
            if i != idx {
                assert!(e.is_zero());
            }
        }
    }
}
