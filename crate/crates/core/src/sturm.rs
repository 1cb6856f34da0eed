//! Exact real root isolation for rational polynomials by Sturm sequences.

use crate::laurent::Rat;
use num_traits::{One, Signed, Zero};

/// Dense polynomial over Q, coefficients ascending; no trailing zeros.
#[derive(Clone, Debug, PartialEq)]
pub struct QPoly {
    coeffs: Vec<Rat>,
}

impl QPoly {
    pub fn new(mut coeffs: Vec<Rat>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        QPoly { coeffs }
    }

    pub fn zero() -> Self {
        QPoly { coeffs: Vec::new() }
    }

    pub fn from_i64(coeffs: &[i64]) -> Self {
        QPoly::new(coeffs.iter().map(|&c| Rat::from_integer(c.into())).collect())
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn coeffs(&self) -> &[Rat] {
        &self.coeffs
    }

    pub fn eval(&self, x: &Rat) -> Rat {
        let mut acc = Rat::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }

    pub fn derivative(&self) -> QPoly {
        if self.coeffs.len() <= 1 {
            return QPoly::zero();
        }
        QPoly::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c * Rat::from_integer((i as i64).into()))
                .collect(),
        )
    }

    pub fn neg(&self) -> QPoly {
        QPoly { coeffs: self.coeffs.iter().map(|c| -c.clone()).collect() }
    }

    pub fn mul(&self, other: &QPoly) -> QPoly {
        if self.is_zero() || other.is_zero() {
            return QPoly::zero();
        }
        let mut out = vec![Rat::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        QPoly::new(out)
    }

    /// Polynomial remainder.
    pub fn rem(&self, other: &QPoly) -> QPoly {
        assert!(!other.is_zero());
        let mut r = self.clone();
        let d = other.degree().unwrap();
        let lead = other.coeffs.last().unwrap().clone();
        while let Some(rd) = r.degree() {
            if rd < d {
                break;
            }
            let f = r.coeffs.last().unwrap() / &lead;
            let shift = rd - d;
            let mut coeffs = r.coeffs.clone();
            for (i, c) in other.coeffs.iter().enumerate() {
                coeffs[i + shift] -= &f * c;
            }
            r = QPoly::new(coeffs);
            if r.degree() == Some(rd) {
                // force the cancellation of the leading term
                r.coeffs.pop();
                r = QPoly::new(r.coeffs);
            }
        }
        r
    }

    pub fn gcd(&self, other: &QPoly) -> QPoly {
        let mut a = self.clone();
        let mut b = other.clone();
        while !b.is_zero() {
            let r = a.rem(&b);
            a = b;
            b = r;
        }
        // monic normalization
        if let Some(lead) = a.coeffs.last().cloned() {
            QPoly::new(a.coeffs.iter().map(|c| c / &lead).collect())
        } else {
            a
        }
    }

    pub fn square_free_part(&self) -> QPoly {
        if self.degree().unwrap_or(0) == 0 {
            return self.clone();
        }
        let g = self.gcd(&self.derivative());
        if g.degree() == Some(0) {
            return self.clone();
        }
        self.div_exact(&g)
    }

    fn div_exact(&self, other: &QPoly) -> QPoly {
        // long division, remainder known zero
        let mut r = self.clone();
        let d = other.degree().unwrap();
        let lead = other.coeffs.last().unwrap().clone();
        let mut q = vec![Rat::zero(); self.coeffs.len().saturating_sub(other.coeffs.len()) + 1];
        while let Some(rd) = r.degree() {
            if rd < d {
                break;
            }
            let f = r.coeffs.last().unwrap() / &lead;
            let shift = rd - d;
            q[shift] = f.clone();
            let mut coeffs = r.coeffs.clone();
            for (i, c) in other.coeffs.iter().enumerate() {
                coeffs[i + shift] -= &f * c;
            }
            coeffs.pop();
            r = QPoly::new(coeffs);
        }
        QPoly::new(q)
    }
}

/// Sturm chain of the square-free part.
pub struct SturmChain {
    chain: Vec<QPoly>,
}

impl SturmChain {
    pub fn new(p: &QPoly) -> Self {
        let p = p.square_free_part();
        let mut chain = vec![p.clone(), p.derivative()];
        while !chain.last().unwrap().is_zero() {
            let n = chain.len();
            let r = chain[n - 2].rem(&chain[n - 1]).neg();
            if r.is_zero() {
                break;
            }
            chain.push(r);
        }
        SturmChain { chain }
    }

    fn sign_changes(&self, x: &Rat) -> usize {
        let signs: Vec<i8> = self
            .chain
            .iter()
            .map(|p| {
                let v = p.eval(x);
                if v.is_zero() {
                    0
                } else if v.is_positive() {
                    1
                } else {
                    -1
                }
            })
            .filter(|&s| s != 0)
            .collect();
        signs.windows(2).filter(|w| w[0] != w[1]).count()
    }

    /// Number of distinct real roots in (lo, hi].
    pub fn count_roots(&self, lo: &Rat, hi: &Rat) -> usize {
        self.sign_changes(lo) - self.sign_changes(hi)
    }

    /// Disjoint isolating intervals (lo, hi], one per distinct root in the
    /// given range, in increasing order.
    pub fn isolate(&self, lo: &Rat, hi: &Rat) -> Vec<(Rat, Rat)> {
        let n = self.count_roots(lo, hi);
        if n == 0 {
            return Vec::new();
        }
        if n == 1 {
            return vec![(lo.clone(), hi.clone())];
        }
        let two = Rat::one() + Rat::one();
        let mid = (lo + hi) / two;
        let mut out = self.isolate(lo, &mid);
        out.extend(self.isolate(&mid, hi));
        out
    }

    /// Bisects an isolating interval until its width is at most `width`.
    pub fn refine(&self, interval: (Rat, Rat), width: &Rat) -> (Rat, Rat) {
        let two = Rat::one() + Rat::one();
        let (mut lo, mut hi) = interval;
        while &(&hi - &lo) > width {
            let mid = (&lo + &hi) / &two;
            if self.count_roots(&lo, &mid) == 1 {
                hi = mid;
            } else {
                lo = mid;
            }
        }
        (lo, hi)
    }
}

/// Isolates the distinct real roots of `p` in the open interval (lo, hi),
/// refined until each isolating interval is disjoint from both endpoints and
/// from the others.
pub fn isolate_roots_in_open(p: &QPoly, lo: &Rat, hi: &Rat, width: &Rat) -> Vec<(Rat, Rat)> {
    if p.degree().unwrap_or(0) == 0 {
        return Vec::new();
    }
    let chain = SturmChain::new(p);
    // exclude exact roots at the endpoints by nudging inward when necessary
    let mut intervals = chain.isolate(lo, hi);
    // (lo, hi] counts a root at hi; drop it if hi is an exact root
    if p.eval(hi).is_zero() {
        intervals.pop();
    }
    intervals
        .into_iter()
        .map(|iv| {
            let mut iv = chain.refine(iv, width);
            // shrink until the interval avoids the range endpoints
            let two = Rat::one() + Rat::one();
            while &iv.0 < lo || &iv.1 > hi {
                let w = (&iv.1 - &iv.0) / &two;
                iv = chain.refine(iv, &w);
            }
            iv
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;

    fn rat(n: i64, d: i64) -> Rat {
        Rat::new(BigInt::from(n), BigInt::from(d))
    }

    #[test]
    fn count_and_isolate_quadratic() {
        // x^2 - 2: roots +-sqrt(2)
        let p = QPoly::from_i64(&[-2, 0, 1]);
        let chain = SturmChain::new(&p);
        assert_eq!(chain.count_roots(&rat(-2, 1), &rat(2, 1)), 2);
        let roots = chain.isolate(&rat(-2, 1), &rat(2, 1));
        assert_eq!(roots.len(), 2);
        for iv in &roots {
            let refined = chain.refine(iv.clone(), &rat(1, 1024));
            // sqrt(2) ~ 1.41421: one interval brackets -sqrt2, the other +sqrt2
            let val_lo = p.eval(&refined.0);
            let val_hi = p.eval(&refined.1);
            assert!((val_lo * val_hi).is_negative() || p.eval(&refined.1).is_zero());
        }
    }

    #[test]
    fn trefoil_symmetrized_root() {
        // q(x) = x - 1 has the single root x = 1 (cos theta = 1/2)
        let p = QPoly::from_i64(&[-1, 1]);
        let roots = isolate_roots_in_open(&p, &rat(-2, 1), &rat(2, 1), &rat(1, 64));
        assert_eq!(roots.len(), 1);
        assert!(roots[0].0 < rat(1, 1) && rat(1, 1) <= roots[0].1);
    }

    #[test]
    fn repeated_roots_counted_once() {
        // (x-1)^2 (x+1)
        let p = QPoly::from_i64(&[1, -1, -1, 1]);
        let roots = isolate_roots_in_open(&p, &rat(-2, 1), &rat(2, 1), &rat(1, 16));
        assert_eq!(roots.len(), 2);
    }

    #[test]
    fn endpoint_roots_excluded() {
        // x^2 - 4: roots exactly at +-2 are excluded from the open interval
        let p = QPoly::from_i64(&[-4, 0, 1]);
        let roots = isolate_roots_in_open(&p, &rat(-2, 1), &rat(2, 1), &rat(1, 16));
        assert!(roots.is_empty());
    }

    #[test]
    fn dense_degree_six() {
        // Chebyshev-like with roots between -2 and 2: x^3 - 3x has roots
        // 0, +-sqrt(3)
        let p = QPoly::from_i64(&[0, -3, 0, 1]);
        let roots = isolate_roots_in_open(&p, &rat(-2, 1), &rat(2, 1), &rat(1, 128));
        assert_eq!(roots.len(), 3);
        // intervals pairwise disjoint and ordered
        for w in roots.windows(2) {
            assert!(w[0].1 <= w[1].0);
        }
    }
}
