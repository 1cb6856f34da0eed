//! Laurent polynomials over Q with exact arithmetic, Laurent matrices, and
//! Smith normal form over Q[t, t^-1] (a PID, so invariant factors exist).

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;
use std::fmt;

pub type Rat = BigRational;

/// Laurent polynomial with exact rational coefficients; zero coefficients
/// are never stored.
#[derive(Clone, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct LaurentPoly {
    coeffs: BTreeMap<i64, Rat>,
}

impl LaurentPoly {
    pub fn zero() -> Self {
        LaurentPoly { coeffs: BTreeMap::new() }
    }

    pub fn one() -> Self {
        LaurentPoly::monomial(0, Rat::one())
    }

    pub fn monomial(deg: i64, coeff: Rat) -> Self {
        let mut p = LaurentPoly::zero();
        if !coeff.is_zero() {
            p.coeffs.insert(deg, coeff);
        }
        p
    }

    pub fn t() -> Self {
        LaurentPoly::monomial(1, Rat::one())
    }

    pub fn from_int_coeffs(lowest_deg: i64, coeffs: &[i64]) -> Self {
        let mut p = LaurentPoly::zero();
        for (i, &c) in coeffs.iter().enumerate() {
            p.add_term(lowest_deg + i as i64, Rat::from_integer(BigInt::from(c)));
        }
        p
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs.len() == 1 && self.coeffs.get(&0).is_some_and(|c| c.is_one())
    }

    /// Nonzero constant times a power of t.
    pub fn is_unit(&self) -> bool {
        self.coeffs.len() == 1
    }

    pub fn coeff(&self, deg: i64) -> Rat {
        self.coeffs.get(&deg).cloned().unwrap_or_else(Rat::zero)
    }

    pub fn terms(&self) -> impl Iterator<Item = (&i64, &Rat)> {
        self.coeffs.iter()
    }

    pub fn min_deg(&self) -> Option<i64> {
        self.coeffs.keys().next().copied()
    }

    pub fn max_deg(&self) -> Option<i64> {
        self.coeffs.keys().next_back().copied()
    }

    /// Degree span (max - min); 0 for units and zero.
    pub fn span(&self) -> i64 {
        match (self.min_deg(), self.max_deg()) {
            (Some(a), Some(b)) => b - a,
            _ => 0,
        }
    }

    pub fn add_term(&mut self, deg: i64, c: Rat) {
        if c.is_zero() {
            return;
        }
        match self.coeffs.entry(deg) {
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

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (&d, c) in &other.coeffs {
            out.add_term(d, c.clone());
        }
        out
    }

    pub fn neg(&self) -> Self {
        let mut out = LaurentPoly::zero();
        for (&d, c) in &self.coeffs {
            out.coeffs.insert(d, -c.clone());
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut out = LaurentPoly::zero();
        for (&d1, c1) in &self.coeffs {
            for (&d2, c2) in &other.coeffs {
                out.add_term(d1 + d2, c1 * c2);
            }
        }
        out
    }

    pub fn scale(&self, c: &Rat) -> Self {
        if c.is_zero() {
            return LaurentPoly::zero();
        }
        let mut out = LaurentPoly::zero();
        for (&d, v) in &self.coeffs {
            out.coeffs.insert(d, v * c);
        }
        out
    }

    pub fn shift(&self, by: i64) -> Self {
        let mut out = LaurentPoly::zero();
        for (&d, v) in &self.coeffs {
            out.coeffs.insert(d + by, v.clone());
        }
        out
    }

    /// Substitutes t -> t^-1.
    pub fn invert_t(&self) -> Self {
        let mut out = LaurentPoly::zero();
        for (&d, v) in &self.coeffs {
            out.coeffs.insert(-d, v.clone());
        }
        out
    }

    pub fn eval(&self, x: &Rat) -> Rat {
        let mut acc = Rat::zero();
        for (&d, c) in &self.coeffs {
            acc += c * pow_rat(x, d);
        }
        acc
    }

    /// Unit normalization: minimal degree 0 and positive leading coefficient.
    pub fn unit_normalized(&self) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        let shifted = self.shift(-self.min_deg().unwrap());
        let lead = shifted.coeff(shifted.max_deg().unwrap());
        if lead.is_negative() {
            shifted.scale(&-Rat::one())
        } else {
            shifted
        }
    }

    /// Monic unit normalization: minimal degree 0 and leading coefficient 1.
    pub fn monic_normalized(&self) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        let shifted = self.shift(-self.min_deg().unwrap());
        let lead = shifted.coeff(shifted.max_deg().unwrap());
        shifted.scale(&lead.recip())
    }

    /// Centered symmetric form: degrees split evenly around zero (requires
    /// even span).
    pub fn symmetric_normalized(&self) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        let mid = (self.min_deg().unwrap() + self.max_deg().unwrap()) / 2;
        self.shift(-mid)
    }

    /// True when p(t) equals a unit times p(t^-1).
    pub fn is_palindromic_up_to_units(&self) -> bool {
        if self.is_zero() {
            return true;
        }
        let a = self.unit_normalized();
        let b = self.invert_t().unit_normalized();
        a == b || a == b.scale(&-Rat::one()).unit_normalized()
    }

    /// Division with remainder by degree span: self = q * other + r with
    /// span(r) < span(other) or r = 0.  Valid because units are invertible.
    pub fn div_rem(&self, other: &Self) -> (Self, Self) {
        assert!(!other.is_zero(), "division by zero");
        let mut r = self.clone();
        let mut q = LaurentPoly::zero();
        let d_span = other.span();
        let d_lead = other.coeff(other.max_deg().unwrap());
        let d_max = other.max_deg().unwrap();
        while !r.is_zero() && r.span() >= d_span {
            let r_max = r.max_deg().unwrap();
            let c = r.coeff(r_max) / &d_lead;
            let mono = LaurentPoly::monomial(r_max - d_max, c);
            q = q.add(&mono);
            r = r.sub(&mono.mul(other));
            if r.is_zero() {
                break;
            }
            // guard: span must strictly decrease via cancellation of the top
            debug_assert!(r.is_zero() || r.max_deg().unwrap() < r_max || r.span() < d_span);
        }
        (q, r)
    }

    pub fn gcd(&self, other: &Self) -> Self {
        let mut a = self.clone();
        let mut b = other.clone();
        while !b.is_zero() {
            let (_, r) = a.div_rem(&b);
            a = b;
            b = r;
        }
        a.unit_normalized()
    }

    /// Derivative with respect to t.
    pub fn derivative(&self) -> Self {
        let mut out = LaurentPoly::zero();
        for (&d, c) in &self.coeffs {
            if d != 0 {
                out.add_term(d - 1, c * Rat::from_integer(BigInt::from(d)));
            }
        }
        out
    }

    /// Serialization format: {"deg": "coeff"} with exact rationals as text.
    pub fn to_coeff_map(&self) -> BTreeMap<String, String> {
        self.coeffs.iter().map(|(d, c)| (d.to_string(), c.to_string())).collect()
    }

    pub fn from_coeff_map(map: &BTreeMap<String, String>) -> Result<Self, crate::CkError> {
        let mut p = LaurentPoly::zero();
        for (d, c) in map {
            let deg: i64 = d
                .parse()
                .map_err(|_| crate::CkError::Domain(format!("bad degree '{}'", d)))?;
            let coeff: Rat = c
                .parse()
                .map_err(|_| crate::CkError::Domain(format!("bad coefficient '{}'", c)))?;
            p.add_term(deg, coeff);
        }
        Ok(p)
    }
}

fn pow_rat(x: &Rat, e: i64) -> Rat {
    if e == 0 {
        return Rat::one();
    }
    let base = if e < 0 { x.recip() } else { x.clone() };
    let mut acc = Rat::one();
    for _ in 0..e.unsigned_abs() {
        acc *= &base;
    }
    acc
}

fn fmt_poly(p: &LaurentPoly, f: &mut fmt::Formatter<'_>) -> fmt::Result {
    if p.is_zero() {
        return write!(f, "0");
    }
    let mut first = true;
    for (&d, c) in p.coeffs.iter().rev() {
        let sign = if c.is_negative() { "-" } else { "+" };
        let mag = c.abs();
        if first {
            if c.is_negative() {
                write!(f, "-")?;
            }
            first = false;
        } else {
            write!(f, " {} ", sign)?;
        }
        let show_coeff = !mag.is_one() || d == 0;
        if show_coeff {
            write!(f, "{}", mag)?;
        }
        match d {
            0 => {}
            1 => write!(f, "{}t", if show_coeff { "*" } else { "" })?,
            _ => write!(f, "{}t^{}", if show_coeff { "*" } else { "" }, d)?,
        }
    }
    Ok(())
}

impl fmt::Debug for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt_poly(self, f)
    }
}

impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt_poly(self, f)
    }
}

/// Dense matrix of Laurent polynomials.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct LaurentMatrix {
    pub rows: usize,
    pub cols: usize,
    data: Vec<LaurentPoly>,
}

impl LaurentMatrix {
    pub fn zero(rows: usize, cols: usize) -> Self {
        LaurentMatrix { rows, cols, data: vec![LaurentPoly::zero(); rows * cols] }
    }

    pub fn from_rows(rows: Vec<Vec<LaurentPoly>>) -> Self {
        let r = rows.len();
        let c = rows.first().map(|x| x.len()).unwrap_or(0);
        let mut m = LaurentMatrix::zero(r, c);
        for (i, row) in rows.into_iter().enumerate() {
            assert_eq!(row.len(), c);
            for (j, p) in row.into_iter().enumerate() {
                m[(i, j)] = p;
            }
        }
        m
    }

    pub fn row(&self, i: usize) -> &[LaurentPoly] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }
}

impl std::ops::Index<(usize, usize)> for LaurentMatrix {
    type Output = LaurentPoly;
    fn index(&self, (i, j): (usize, usize)) -> &LaurentPoly {
        &self.data[i * self.cols + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for LaurentMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut LaurentPoly {
        &mut self.data[i * self.cols + j]
    }
}

/// Finitely generated module over Q[t, t^-1] presented by a matrix of
/// relations: free part plus a divisibility chain of monic torsion divisors.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ModuleDecomposition {
    pub free_rank: usize,
    pub torsion_invariants: Vec<LaurentPoly>,
}

/// Smith normal form over Q[t, t^-1] of a presentation matrix whose rows are
/// relations on `cols` generators.
pub fn laurent_snf(m: &LaurentMatrix) -> ModuleDecomposition {
    let mut a = m.clone();
    let n = a.rows.min(a.cols);
    let mut diag: Vec<LaurentPoly> = Vec::new();
    let mut pivot = 0usize;
    while pivot < n {
        let mut best: Option<(usize, usize)> = None;
        for i in pivot..a.rows {
            for j in pivot..a.cols {
                if !a[(i, j)].is_zero()
                    && best.is_none_or(|(bi, bj)| a[(i, j)].span() < a[(bi, bj)].span())
                {
                    best = Some((i, j));
                }
            }
        }
        let Some((bi, bj)) = best else { break };
        a.swap_rows(pivot, bi);
        a.swap_cols(pivot, bj);
        loop {
            let mut dirty = false;
            for i in pivot + 1..a.rows {
                if !a[(i, pivot)].is_zero() {
                    let (q, r) = a[(i, pivot)].div_rem(&a[(pivot, pivot)]);
                    a.row_sub_mul(i, pivot, &q);
                    debug_assert_eq!(a[(i, pivot)], r);
                    if !a[(i, pivot)].is_zero() {
                        a.swap_rows(i, pivot);
                        dirty = true;
                    }
                }
            }
            for j in pivot + 1..a.cols {
                if !a[(pivot, j)].is_zero() {
                    let (q, _) = a[(pivot, j)].div_rem(&a[(pivot, pivot)]);
                    a.col_sub_mul(j, pivot, &q);
                    if !a[(pivot, j)].is_zero() {
                        a.swap_cols(j, pivot);
                        dirty = true;
                    }
                }
            }
            if !dirty {
                break;
            }
        }
        diag.push(a[(pivot, pivot)].clone());
        pivot += 1;
    }
    // divisibility chain
    let k = diag.len();
    loop {
        let mut fixed = true;
        for i in 0..k {
            for j in i + 1..k {
                let (_, r) = diag[j].div_rem(&diag[i]);
                if !r.is_zero() {
                    let g = diag[i].gcd(&diag[j]);
                    let l = {
                        let (q, rr) = diag[i].mul(&diag[j]).div_rem(&g);
                        debug_assert!(rr.is_zero());
                        q
                    };
                    diag[i] = g;
                    diag[j] = l;
                    fixed = false;
                }
            }
        }
        if fixed {
            break;
        }
    }
    let nonzero = diag.iter().filter(|d| !d.is_zero()).count();
    let torsion_invariants: Vec<LaurentPoly> = diag
        .iter()
        .filter(|d| !d.is_zero() && !d.is_unit())
        .map(|d| d.monic_normalized())
        .collect();
    ModuleDecomposition { free_rank: m.cols - nonzero, torsion_invariants }
}

/// Decides membership of a row vector in the Q[t,t^-1]-row span of `m`:
/// the vector lies in the span exactly when adjoining it as a relation does
/// not change the cokernel.  (Quotienting a finitely generated module over a
/// noetherian ring by a nonzero submodule always changes the isomorphism
/// type, so comparing decompositions is exact.)
pub fn in_row_span(m: &LaurentMatrix, v: &[LaurentPoly]) -> bool {
    assert_eq!(m.cols, v.len());
    let mut rows: Vec<Vec<LaurentPoly>> = (0..m.rows).map(|i| m.row(i).to_vec()).collect();
    let base = laurent_snf(m);
    rows.push(v.to_vec());
    let aug = laurent_snf(&LaurentMatrix::from_rows(rows));
    base == aug
}

impl LaurentMatrix {
    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for i in 0..self.rows {
            self.data.swap(i * self.cols + a, i * self.cols + b);
        }
    }

    /// row[i] -= q * row[p]
    fn row_sub_mul(&mut self, i: usize, p: usize, q: &LaurentPoly) {
        for j in 0..self.cols {
            let v = self[(p, j)].mul(q);
            self[(i, j)] = self[(i, j)].sub(&v);
        }
    }

    fn col_sub_mul(&mut self, j: usize, p: usize, q: &LaurentPoly) {
        for i in 0..self.rows {
            let v = self[(i, p)].mul(q);
            self[(i, j)] = self[(i, j)].sub(&v);
        }
    }
}
