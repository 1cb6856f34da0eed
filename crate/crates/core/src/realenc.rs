//! Certified real arithmetic on rational intervals: enclosures of pi and
//! cosine by alternating series with explicit tails, arccosine by bisection,
//! and canonical algebraic numbers for symbolic angle bookkeeping.

use crate::laurent::Rat;
use crate::sturm::{QPoly, SturmChain};
use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};
use std::cmp::Ordering;

fn rat(n: i64, d: i64) -> Rat {
    Rat::new(BigInt::from(n), BigInt::from(d))
}

/// Closed rational interval [lo, hi].
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RatInterval {
    pub lo: Rat,
    pub hi: Rat,
}

impl RatInterval {
    pub fn point(x: Rat) -> Self {
        RatInterval { lo: x.clone(), hi: x }
    }

    pub fn new(lo: Rat, hi: Rat) -> Self {
        assert!(lo <= hi, "inverted interval");
        RatInterval { lo, hi }
    }

    pub fn width(&self) -> Rat {
        &self.hi - &self.lo
    }

    pub fn add(&self, other: &Self) -> Self {
        RatInterval { lo: &self.lo + &other.lo, hi: &self.hi + &other.hi }
    }

    pub fn sub(&self, other: &Self) -> Self {
        RatInterval { lo: &self.lo - &other.hi, hi: &self.hi - &other.lo }
    }

    pub fn scale(&self, c: &Rat) -> Self {
        if c.is_negative() {
            RatInterval { lo: &self.hi * c, hi: &self.lo * c }
        } else {
            RatInterval { lo: &self.lo * c, hi: &self.hi * c }
        }
    }

    pub fn contains(&self, x: &Rat) -> bool {
        &self.lo <= x && x <= &self.hi
    }

    pub fn intersects(&self, other: &Self) -> bool {
        self.lo <= other.hi && other.lo <= self.hi
    }

    pub fn midpoint(&self) -> Rat {
        (&self.lo + &self.hi) / rat(2, 1)
    }
}

/// Enclosure of pi to within `eps`, by the two-term arctangent formula with
/// alternating partial sums.
pub fn pi_interval(eps: &Rat) -> RatInterval {
    // pi = 16 arctan(1/5) - 4 arctan(1/239)
    let e = eps / rat(32, 1);
    let a = arctan_recip_interval(5, &e);
    let b = arctan_recip_interval(239, &e);
    a.scale(&rat(16, 1)).sub(&b.scale(&rat(4, 1)))
}

/// Enclosure of arctan(1/n) by its alternating series.
fn arctan_recip_interval(n: i64, eps: &Rat) -> RatInterval {
    let x = rat(1, n);
    let x2 = &x * &x;
    let mut term = x.clone();
    let mut sum = Rat::zero();
    let mut k = 0i64;
    loop {
        let contrib = &term / rat(2 * k + 1, 1);
        if k % 2 == 0 {
            sum += &contrib;
        } else {
            sum -= &contrib;
        }
        term *= &x2;
        k += 1;
        let next = &term / rat(2 * k + 1, 1);
        if next < *eps {
            // alternating: truncation error bounded by the next term
            return if k % 2 == 0 {
                RatInterval::new(sum.clone(), sum + next)
            } else {
                RatInterval::new(&sum - &next, sum)
            };
        }
    }
}

/// Enclosure of cos(x) for rational x with |x| <= 4, by the Taylor series
/// with an alternating tail bound.
pub fn cos_interval(x: &Rat, eps: &Rat) -> RatInterval {
    let x2 = x * x;
    let mut term = Rat::one(); // x^{2k} / (2k)!
    let mut sum = Rat::zero();
    let mut k: i64 = 0;
    loop {
        if k % 2 == 0 {
            sum += &term;
        } else {
            sum -= &term;
        }
        // next term
        let next = &term * &x2 / rat((2 * k + 1) * (2 * k + 2), 1);
        k += 1;
        // once terms decrease (guaranteed when (2k)(2k-1) > x^2 <= 16) the
        // remainder is bounded by the next term
        if k >= 3 && next < *eps {
            return if k % 2 == 0 {
                RatInterval::new(sum.clone(), sum + next)
            } else {
                RatInterval::new(&sum - &next, sum)
            };
        }
        term = next;
    }
}

/// Enclosure of arccos(c)/pi for rational c in [-1, 1], exact on the
/// rational-angle values and by bisection elsewhere; the width of the result
/// is at most `eps`.
pub fn arccos_over_pi(c: &Rat, eps: &Rat) -> RatInterval {
    // rational cosines of rational multiples of pi
    if c == &rat(1, 1) {
        return RatInterval::point(Rat::zero());
    }
    if c == &rat(1, 2) {
        return RatInterval::point(rat(1, 3));
    }
    if c.is_zero() {
        return RatInterval::point(rat(1, 2));
    }
    if c == &rat(-1, 2) {
        return RatInterval::point(rat(2, 3));
    }
    if c == &rat(-1, 1) {
        return RatInterval::point(Rat::one());
    }
    assert!(c.abs() < Rat::one(), "arccos argument out of range");
    // bisection on u = theta/pi in (0, 1): cos(u pi) decreasing in u;
    // midpoints are rounded to dyadics so denominators stay proportional to
    // the requested precision
    let mut lo = Rat::zero();
    let mut hi = Rat::one();
    let mut cos_eps = rat(1, 1024);
    let mut pi_eps = rat(1, 1 << 20);
    let mut pi = pi_interval(&pi_eps);
    while &(&hi - &lo) > eps {
        let mid = dyadic_between(&lo, &hi);
        loop {
            // theta = mid * pi, enclosed; cos decreasing on [0, pi]
            let theta = pi.scale(&mid);
            let c_lo = cos_interval(&theta.hi, &cos_eps);
            let c_hi = cos_interval(&theta.lo, &cos_eps);
            let enclosure = RatInterval::new(c_lo.lo.clone(), c_hi.hi.clone());
            if &enclosure.lo > c {
                // cos(mid pi) > c: angle too small
                lo = mid;
                break;
            }
            if &enclosure.hi < c {
                hi = mid;
                break;
            }
            // undecided: sharpen both enclosures (c is rational while
            // cos(mid pi) is irrational here, so this terminates)
            cos_eps /= rat(16, 1);
            pi_eps /= rat(16, 1);
            pi = pi_interval(&pi_eps);
        }
    }
    RatInterval::new(lo, hi)
}

/// A dyadic rational strictly between lo and hi, with denominator bounded by
/// a small multiple of 1/(hi - lo); falls back to the exact midpoint on very
/// thin intervals.
pub fn dyadic_between(lo: &Rat, hi: &Rat) -> Rat {
    let width = hi - lo;
    let mut k: u32 = 2;
    let mut pow = rat(4, 1); // 2^k
    while pow < rat(4, 1) / &width {
        k += 1;
        pow *= rat(2, 1);
        if k > 4096 {
            return (lo + hi) / rat(2, 1);
        }
    }
    let two_k = BigInt::from(1u8) << k;
    let mid = (lo + hi) / rat(2, 1);
    let rounded = (mid * Rat::from_integer(two_k.clone())).round().to_integer();
    let candidate = Rat::new(rounded, two_k);
    if &candidate > lo && &candidate < hi {
        candidate
    } else {
        (lo + hi) / rat(2, 1)
    }
}

/// A real algebraic number: the unique root of a square-free rational
/// polynomial inside an isolating interval.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct AlgebraicNumber {
    coeffs: Vec<Rat>,
    pub interval: (Rat, Rat),
}

impl AlgebraicNumber {
    pub fn new(poly: &QPoly, interval: (Rat, Rat)) -> Self {
        let sf = poly.square_free_part();
        let monic = {
            let lead = sf.coeffs().last().cloned().unwrap_or_else(Rat::one);
            QPoly::new(sf.coeffs().iter().map(|c| c / &lead).collect())
        };
        AlgebraicNumber { coeffs: monic.coeffs().to_vec(), interval }
    }

    pub fn rational(x: &Rat) -> Self {
        AlgebraicNumber {
            coeffs: vec![-x.clone(), Rat::one()],
            interval: (x.clone(), x.clone()),
        }
    }

    pub fn poly(&self) -> QPoly {
        QPoly::new(self.coeffs.clone())
    }

    /// Exact rational value when the defining polynomial is linear.
    pub fn as_rational(&self) -> Option<Rat> {
        if self.coeffs.len() == 2 {
            Some(-&self.coeffs[0] / &self.coeffs[1])
        } else if self.interval.0 == self.interval.1 {
            Some(self.interval.0.clone())
        } else {
            None
        }
    }

    pub fn refine(&mut self, width: &Rat) {
        if &(&self.interval.1 - &self.interval.0) <= width {
            return;
        }
        let chain = SturmChain::new(&self.poly());
        self.interval = chain.refine(self.interval.clone(), width);
    }

    /// Exact equality: the two numbers agree when a common root of both
    /// defining polynomials lies in the intersection of the isolating
    /// intervals.
    pub fn equals(&self, other: &AlgebraicNumber) -> bool {
        let g = self.poly().gcd(&other.poly());
        if g.degree().unwrap_or(0) == 0 {
            return false;
        }
        let lo = if self.interval.0 >= other.interval.0 {
            self.interval.0.clone()
        } else {
            other.interval.0.clone()
        };
        let hi = if self.interval.1 <= other.interval.1 {
            self.interval.1.clone()
        } else {
            other.interval.1.clone()
        };
        if lo > hi {
            return false;
        }
        let chain = SturmChain::new(&g);
        chain.count_roots(&lo, &hi) >= 1 || g.eval(&lo).is_zero()
    }

    /// Total order by refining the isolating intervals until they separate.
    pub fn compare(&self, other: &AlgebraicNumber) -> Ordering {
        if self.equals(other) {
            return Ordering::Equal;
        }
        let mut a = self.clone();
        let mut b = other.clone();
        let mut width = rat(1, 16);
        loop {
            if a.interval.1 < b.interval.0 {
                return Ordering::Less;
            }
            if b.interval.1 < a.interval.0 {
                return Ordering::Greater;
            }
            a.refine(&width);
            b.refine(&width);
            width /= rat(16, 1);
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn pi_enclosure() {
        let eps = rat(1, 1_000_000);
        let pi = pi_interval(&eps);
        assert!(pi.width() <= eps);
        // the enclosure brackets pi = 3.14159265...
        assert!(pi.lo > rat(3141592, 1000000));
        assert!(pi.hi < rat(3141593, 1000000));
        assert!(pi.contains(&rat(314159265, 100000000)));
    }

    #[test]
    fn cos_enclosure() {
        let eps = rat(1, 100_000);
        let c = cos_interval(&rat(1, 1), &eps);
        // cos 1 = 0.5403023...
        assert!(c.lo < rat(54031, 100000) && c.hi > rat(54030, 100000));
        assert!(c.width() <= eps);
        let c0 = cos_interval(&Rat::zero(), &eps);
        assert!(c0.contains(&Rat::one()));
    }

    #[test]
    fn arccos_rational_points() {
        let eps = rat(1, 1000);
        assert_eq!(arccos_over_pi(&rat(1, 2), &eps), RatInterval::point(rat(1, 3)));
        assert_eq!(arccos_over_pi(&rat(-1, 2), &eps), RatInterval::point(rat(2, 3)));
        assert_eq!(arccos_over_pi(&Rat::zero(), &eps), RatInterval::point(rat(1, 2)));
    }

    #[test]
    fn arccos_bisection() {
        // arccos(3/4)/pi = 0.2301...
        let eps = rat(1, 4096);
        let u = arccos_over_pi(&rat(3, 4), &eps);
        assert!(u.width() <= eps);
        assert!(u.lo < rat(2302, 10000) && u.hi > rat(2300, 10000));
    }

    #[test]
    fn algebraic_equality_and_order() {
        // sqrt(2) as a root of x^2 - 2 in [1, 2], and of x^4 - 4 in [1.3, 1.5]
        let a = AlgebraicNumber::new(&QPoly::from_i64(&[-2, 0, 1]), (rat(1, 1), rat(2, 1)));
        let b = AlgebraicNumber::new(
            &QPoly::from_i64(&[-4, 0, 0, 0, 1]),
            (rat(13, 10), rat(3, 2)),
        );
        assert!(a.equals(&b));
        let c = AlgebraicNumber::rational(&rat(3, 2));
        assert!(!a.equals(&c));
        assert_eq!(a.compare(&c), Ordering::Less);
        assert_eq!(c.compare(&a), Ordering::Greater);
    }
}
