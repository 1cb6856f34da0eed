//! Exact signatures of Hermitian matrices over the Gaussian rationals by
//! congruence diagonalization: leading pivots when available, symmetric
//! pivoting on a zero diagonal, and the off-diagonal basis trick when the
//! whole diagonal vanishes.

use crate::error::CkError;
use crate::laurent::Rat;
use num_traits::{One, Signed, Zero};

/// Gaussian rational a + b i.
#[derive(Clone, Debug, PartialEq)]
pub struct GaussRat {
    pub re: Rat,
    pub im: Rat,
}

impl GaussRat {
    pub fn new(re: Rat, im: Rat) -> Self {
        GaussRat { re, im }
    }

    pub fn zero() -> Self {
        GaussRat { re: Rat::zero(), im: Rat::zero() }
    }

    pub fn from_rat(re: Rat) -> Self {
        GaussRat { re, im: Rat::zero() }
    }

    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    pub fn conj(&self) -> Self {
        GaussRat { re: self.re.clone(), im: -self.im.clone() }
    }

    pub fn add(&self, o: &Self) -> Self {
        GaussRat { re: &self.re + &o.re, im: &self.im + &o.im }
    }

    pub fn sub(&self, o: &Self) -> Self {
        GaussRat { re: &self.re - &o.re, im: &self.im - &o.im }
    }

    pub fn mul(&self, o: &Self) -> Self {
        GaussRat {
            re: &self.re * &o.re - &self.im * &o.im,
            im: &self.re * &o.im + &self.im * &o.re,
        }
    }

    pub fn div(&self, o: &Self) -> Self {
        let n = &o.re * &o.re + &o.im * &o.im;
        assert!(!n.is_zero(), "division by zero");
        let num = self.mul(&o.conj());
        GaussRat { re: num.re / &n, im: num.im / &n }
    }
}

/// Signature data of a Hermitian matrix: positive and negative inertia plus
/// the nullity.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Inertia {
    pub positive: usize,
    pub negative: usize,
    pub nullity: usize,
}

impl Inertia {
    pub fn signature(&self) -> i64 {
        self.positive as i64 - self.negative as i64
    }
}

/// Inertia by congruence reduction; the input must be Hermitian.
pub fn hermitian_inertia(mut m: Vec<Vec<GaussRat>>) -> Result<Inertia, CkError> {
    let n = m.len();
    for row in &m {
        if row.len() != n {
            return Err(CkError::Domain("matrix must be square".into()));
        }
    }
    for i in 0..n {
        if !m[i][i].im.is_zero() {
            return Err(CkError::Domain("diagonal of a Hermitian matrix must be real".into()));
        }
        for j in i + 1..n {
            if m[i][j] != m[j][i].conj() {
                return Err(CkError::Domain("matrix is not Hermitian".into()));
            }
        }
    }
    let mut live: Vec<usize> = (0..n).collect();
    let mut inertia = Inertia { positive: 0, negative: 0, nullity: 0 };
    while !live.is_empty() {
        // prefer the leading diagonal entry; otherwise symmetric-pivot to any
        // nonzero diagonal entry
        let pivot = live.iter().position(|&i| !m[i][i].re.is_zero());
        if let Some(p) = pivot {
            let k = live[p];
            let d = m[k][k].re.clone();
            if d.is_positive() {
                inertia.positive += 1;
            } else {
                inertia.negative += 1;
            }
            live.remove(p);
            // congruence elimination of row/column k on the remaining block
            let dk = GaussRat::from_rat(d);
            for &i in &live {
                if m[i][k].is_zero() {
                    continue;
                }
                let f = m[i][k].div(&dk);
                for &j in live.iter() {
                    let sub = f.mul(&m[k][j]);
                    m[i][j] = m[i][j].sub(&sub);
                }
            }
            for &i in &live {
                m[i][k] = GaussRat::zero();
                m[k][i] = GaussRat::zero();
            }
            continue;
        }
        // zero diagonal: find an off-diagonal entry in the live block
        let mut found = None;
        'search: for (a, &i) in live.iter().enumerate() {
            for &j in live.iter().skip(a + 1) {
                if !m[i][j].is_zero() {
                    found = Some((i, j));
                    break 'search;
                }
            }
        }
        let Some((i, j)) = found else {
            // zero block: everything left is nullity
            inertia.nullity += live.len();
            break;
        };
        // replace e_i by e_i + u e_j with u chosen so the new diagonal entry
        // 2 Re(u * m[j][i]) is nonzero
        let u = if !m[i][j].re.is_zero() {
            GaussRat::from_rat(Rat::one())
        } else {
            GaussRat::new(Rat::zero(), Rat::one())
        };
        // row/col update: row_i += u * row_j ; col_i += conj(u) * col_j
        let all: Vec<usize> = live.clone();
        for &c in &all {
            let add = u.mul(&m[j][c]);
            m[i][c] = m[i][c].add(&add);
        }
        for &r in &all {
            let add = m[r][j].mul(&u.conj());
            m[r][i] = m[r][i].add(&add);
        }
    }
    Ok(inertia)
}
