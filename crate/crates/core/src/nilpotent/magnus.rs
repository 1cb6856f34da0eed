//! Truncated free associative algebra over Z: noncommutative polynomials in
//! n letters with all monomials of degree > c discarded.  Sending each group
//! generator x_i to 1 + X_i identifies the free nilpotent group of class c
//! with a subgroup of the units, which gives an exact normal-form oracle.

use crate::word::Word;
use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use std::collections::BTreeMap;

pub type Mono = Vec<u16>;

/// Sparse truncated polynomial: monomial (letter sequence) -> coefficient.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Series {
    pub class: usize,
    terms: BTreeMap<Mono, BigInt>,
}

impl Series {
    pub fn zero(class: usize) -> Self {
        Series { class, terms: BTreeMap::new() }
    }

    pub fn one(class: usize) -> Self {
        let mut s = Series::zero(class);
        s.terms.insert(Vec::new(), BigInt::one());
        s
    }

    pub fn letter(class: usize, idx: usize) -> Self {
        let mut s = Series::zero(class);
        if class >= 1 {
            s.terms.insert(vec![idx as u16], BigInt::one());
        }
        s
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms.get(&Vec::new()).is_some_and(|c| c.is_one())
    }

    pub fn coeff(&self, m: &[u16]) -> BigInt {
        self.terms.get(m).cloned().unwrap_or_else(BigInt::zero)
    }

    pub fn add_term(&mut self, m: Mono, c: BigInt) {
        if m.len() > self.class || c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
        }
    }

    pub fn add(&self, other: &Series) -> Series {
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }

    pub fn neg(&self) -> Series {
        let mut out = Series::zero(self.class);
        for (m, c) in &self.terms {
            out.terms.insert(m.clone(), -c.clone());
        }
        out
    }

    pub fn mul(&self, other: &Series) -> Series {
        let mut out = Series::zero(self.class);
        for (m1, c1) in &self.terms {
            for (m2, c2) in &other.terms {
                if m1.len() + m2.len() > self.class {
                    continue;
                }
                let mut m = m1.clone();
                m.extend_from_slice(m2);
                out.add_term(m, c1 * c2);
            }
        }
        out
    }

    /// Multiplicative inverse of a unit with constant term 1.
    pub fn inv(&self) -> Series {
        assert!(self.coeff(&[]).is_one(), "inverse requires constant term 1");
        // (1 + u)^-1 = 1 - u + u^2 - ...
        let u = {
            let mut v = self.clone();
            v.terms.remove(&Vec::new());
            v
        };
        let mut out = Series::one(self.class);
        let mut pow = Series::one(self.class);
        for k in 1..=self.class {
            pow = pow.mul(&u);
            if pow.terms.is_empty() {
                break;
            }
            let signed = if k % 2 == 0 { pow.clone() } else { pow.neg() };
            out = out.add(&signed);
        }
        out
    }

    /// Integer power of a unit with constant term 1, via the binomial series
    /// (1 + u)^e = sum binom(e, k) u^k; exact for any integer e.
    pub fn pow_int(&self, e: &BigInt) -> Series {
        assert!(self.coeff(&[]).is_one(), "power requires constant term 1");
        let u = {
            let mut v = self.clone();
            v.terms.remove(&Vec::new());
            v
        };
        let mut out = Series::one(self.class);
        let mut pow = Series::one(self.class);
        let mut binom = BigInt::one();
        for k in 1..=self.class {
            pow = pow.mul(&u);
            if pow.terms.is_empty() {
                break;
            }
            // binom(e, k) = binom(e, k-1) * (e - k + 1) / k
            binom = binom * (e - BigInt::from(k as i64 - 1)) / BigInt::from(k as i64);
            if binom.is_zero() {
                // e nonnegative and k > e: all further binomials vanish
                if !e.is_negative() {
                    break;
                }
            }
            let mut scaled = Series::zero(self.class);
            for (m, c) in &pow.terms {
                scaled.terms.insert(m.clone(), c * &binom);
            }
            out = out.add(&scaled);
        }
        out
    }

    /// Homogeneous part of the given degree.
    pub fn homogeneous(&self, degree: usize) -> Vec<(Mono, BigInt)> {
        self.terms
            .iter()
            .filter(|(m, _)| m.len() == degree)
            .map(|(m, c)| (m.clone(), c.clone()))
            .collect()
    }

    /// Lowest degree with a nonzero term among degrees >= 1, if any.
    pub fn lowest_positive_degree(&self) -> Option<usize> {
        self.terms.iter().filter(|(m, _)| !m.is_empty()).map(|(m, _)| m.len()).min()
    }
}

/// Magnus expansion of a group word: product over letters of (1 + X)^{±1}.
pub fn magnus_of_word(class: usize, w: &Word) -> Series {
    let mut out = Series::one(class);
    for &(g, e) in w.letters() {
        let gen = {
            let mut s = Series::one(class);
            s = s.add(&Series::letter(class, g));
            s
        };
        out = out.mul(&gen.pow_int(&BigInt::from(e)));
    }
    out
}
