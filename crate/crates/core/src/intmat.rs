//! Exact integer matrices: Smith normal form, kernels, and invariants of
//! finitely generated abelian groups.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

pub type Int = BigInt;

/// Dense integer matrix, row major.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntMat {
    pub rows: usize,
    pub cols: usize,
    data: Vec<Int>,
}

impl IntMat {
    pub fn zero(rows: usize, cols: usize) -> Self {
        IntMat { rows, cols, data: vec![Int::zero(); rows * cols] }
    }

    pub fn from_rows(rows: Vec<Vec<Int>>) -> Self {
        let r = rows.len();
        let c = rows.first().map(|x| x.len()).unwrap_or(0);
        let mut m = IntMat::zero(r, c);
        for (i, row) in rows.into_iter().enumerate() {
            assert_eq!(row.len(), c, "ragged rows");
            for (j, v) in row.into_iter().enumerate() {
                m[(i, j)] = v;
            }
        }
        m
    }

    pub fn from_i64(rows: &[Vec<i64>]) -> Self {
        IntMat::from_rows(rows.iter().map(|r| r.iter().map(|&x| Int::from(x)).collect()).collect())
    }

    pub fn row(&self, i: usize) -> &[Int] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

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

    /// row[a] += q * row[b]
    fn add_row(&mut self, a: usize, b: usize, q: &Int) {
        for j in 0..self.cols {
            let v = &self.data[b * self.cols + j] * q;
            self.data[a * self.cols + j] += v;
        }
    }

    fn add_col(&mut self, a: usize, b: usize, q: &Int) {
        for i in 0..self.rows {
            let v = &self.data[i * self.cols + b] * q;
            self.data[i * self.cols + a] += v;
        }
    }

}

impl std::ops::Index<(usize, usize)> for IntMat {
    type Output = Int;
    fn index(&self, (i, j): (usize, usize)) -> &Int {
        &self.data[i * self.cols + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for IntMat {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Int {
        &mut self.data[i * self.cols + j]
    }
}

/// Diagonal of the Smith normal form, with the divisibility chain
/// d_1 | d_2 | ... and nonnegative entries (zeros trail).
pub fn smith_normal_form(m: &IntMat) -> Vec<Int> {
    let mut a = m.clone();
    let n = a.rows.min(a.cols);
    let mut diag: Vec<Int> = Vec::new();
    let mut pivot = 0usize;
    while pivot < n {
        // find a nonzero entry in the remaining block, smallest |.| first
        let mut best: Option<(usize, usize)> = None;
        for i in pivot..a.rows {
            for j in pivot..a.cols {
                if !a[(i, j)].is_zero()
                    && best.is_none_or(|(bi, bj)| a[(i, j)].abs() < a[(bi, bj)].abs())
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
                    let q = -a[(i, pivot)].div_floor(&a[(pivot, pivot)]);
                    a.add_row(i, pivot, &q);
                    if !a[(i, pivot)].is_zero() {
                        a.swap_rows(i, pivot);
                        dirty = true;
                    }
                }
            }
            for j in pivot + 1..a.cols {
                if !a[(pivot, j)].is_zero() {
                    let q = -a[(pivot, j)].div_floor(&a[(pivot, pivot)]);
                    a.add_col(j, pivot, &q);
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
        diag.push(a[(pivot, pivot)].abs());
        pivot += 1;
    }
    // enforce divisibility chain
    let k = diag.len();
    loop {
        let mut fixed = true;
        for i in 0..k {
            for j in i + 1..k {
                if diag[i].is_zero() && diag[j].is_zero() {
                    continue;
                }
                if !(diag[j].clone() % &diag[i]).is_zero() {
                    let g = diag[i].gcd(&diag[j]);
                    let l = diag[i].lcm(&diag[j]);
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
    diag.retain(|d| !d.is_zero());
    let zeros = k - diag.len();
    diag.extend(std::iter::repeat_n(Int::zero(), zeros));
    diag
}

/// Invariants of the abelian group Z^cols / (row span): free rank plus the
/// torsion coefficients > 1 in a divisibility chain.
pub fn abelian_invariants(m: &IntMat) -> (usize, Vec<Int>) {
    let diag = smith_normal_form(m);
    let nonzero: Vec<&Int> = diag.iter().filter(|d| !d.is_zero()).collect();
    let rank = m.cols - nonzero.len();
    let torsion: Vec<Int> = nonzero.into_iter().filter(|d| !d.is_one()).cloned().collect();
    (rank, torsion)
}

/// Rank over Q of the row span.
pub fn rational_rank(m: &IntMat) -> usize {
    smith_normal_form(m).iter().filter(|d| !d.is_zero()).count()
}

/// True when `v` lies in the Q-span of the rows of `m`.
pub fn in_rational_row_span(m: &IntMat, v: &[Int]) -> bool {
    assert_eq!(m.cols, v.len());
    let r0 = rational_rank(m);
    let mut rows: Vec<Vec<Int>> = (0..m.rows).map(|i| m.row(i).to_vec()).collect();
    rows.push(v.to_vec());
    rational_rank(&IntMat::from_rows(rows)) == r0
}

/// Hermite-style reduction used for lattice membership: echelon basis of the
/// row lattice, pivots positive, stored sparsely by pivot column.
#[derive(Clone, Debug, Default)]
pub struct RowLattice {
    pub cols: usize,
    /// rows indexed by pivot column
    rows: Vec<Option<Vec<Int>>>,
}

impl RowLattice {
    pub fn new(cols: usize) -> Self {
        RowLattice { cols, rows: vec![None; cols] }
    }

    pub fn from_rows(cols: usize, rows: impl IntoIterator<Item = Vec<Int>>) -> Self {
        let mut l = RowLattice::new(cols);
        for r in rows {
            l.insert(r);
        }
        l
    }

    pub fn basis(&self) -> Vec<Vec<Int>> {
        self.rows.iter().flatten().cloned().collect()
    }

    fn lead(v: &[Int]) -> Option<usize> {
        v.iter().position(|x| !x.is_zero())
    }

    /// Inserts a vector, maintaining the echelon property.
    pub fn insert(&mut self, mut v: Vec<Int>) {
        assert_eq!(v.len(), self.cols);
        loop {
            let Some(l) = Self::lead(&v) else { return };
            if v[l].is_negative() {
                for x in v.iter_mut() {
                    *x = -x.clone();
                }
            }
            match &mut self.rows[l] {
                slot @ None => {
                    *slot = Some(v);
                    return;
                }
                Some(b) => {
                    let (g, s, t) = extended_gcd(&b[l], &v[l]);
                    if g == b[l] {
                        // v reduces directly
                        let q = -(&v[l] / &b[l]);
                        for (x, y) in v.iter_mut().zip(b.iter()) {
                            *x += &q * y;
                        }
                    } else {
                        // combine to the gcd, re-insert the leftover
                        let new: Vec<Int> =
                            b.iter().zip(v.iter()).map(|(x, y)| &s * x + &t * y).collect();
                        let qb = -(&b[l] / &g);
                        let leftover: Vec<Int> =
                            b.iter().zip(new.iter()).map(|(x, y)| x + &qb * y).collect();
                        let qv = -(&v[l] / &g);
                        for (x, y) in v.iter_mut().zip(new.iter()) {
                            *x += &qv * y;
                        }
                        let rest = v;
                        self.rows[l] = Some(new);
                        self.insert(leftover);
                        v = rest;
                    }
                }
            }
        }
    }

    /// Reduces `v` modulo the lattice; the result is zero iff `v` is a member.
    pub fn reduce(&self, v: &[Int]) -> Vec<Int> {
        let mut v = v.to_vec();
        for l in 0..self.cols {
            if v[l].is_zero() {
                continue;
            }
            if let Some(b) = &self.rows[l] {
                let q = -v[l].div_floor(&b[l]);
                for (x, y) in v.iter_mut().zip(b.iter()) {
                    *x += &q * y;
                }
            }
        }
        v
    }

    pub fn contains(&self, v: &[Int]) -> bool {
        self.reduce(v).iter().all(|x| x.is_zero())
    }
}

/// Returns (g, s, t) with g = gcd(a,b) >= 0 and s*a + t*b = g.
pub fn extended_gcd(a: &Int, b: &Int) -> (Int, Int, Int) {
    let e = a.extended_gcd(b);
    (e.gcd, e.x, e.y)
}

/// Basis of the left kernel {x : x * M = 0} as rows, computed by integer row
/// reduction with a unimodular transform.
pub fn left_kernel(m: &IntMat) -> Vec<Vec<Int>> {
    let rows = m.rows;
    let mut a = m.clone();
    let mut u = IntMat::zero(rows, rows);
    for i in 0..rows {
        u[(i, i)] = Int::one();
    }
    let mut pivot_row = 0usize;
    for col in 0..a.cols {
        // clear column `col` below/at pivot_row by gcd row operations
        loop {
            let mut nonzero: Vec<usize> =
                (pivot_row..rows).filter(|&r| !a[(r, col)].is_zero()).collect();
            if nonzero.is_empty() {
                break;
            }
            if nonzero.len() == 1 {
                let r = nonzero[0];
                a.swap_rows(pivot_row, r);
                u.swap_rows(pivot_row, r);
                pivot_row += 1;
                break;
            }
            nonzero.sort_by_key(|&r| a[(r, col)].abs());
            let base = nonzero[0];
            for &r in &nonzero[1..] {
                let q = -a[(r, col)].div_floor(&a[(base, col)]);
                a.add_row(r, base, &q);
                u.add_row(r, base, &q);
            }
        }
    }
    (pivot_row..rows).map(|r| u.row(r).to_vec()).collect()
}

/// Invariants (rank, torsion) of sup-lattice / sub-lattice, where both are
/// given by spanning rows and sub is contained in sup.
pub fn lattice_quotient_invariants(
    sup: &[Vec<Int>],
    sub: &[Vec<Int>],
    cols: usize,
) -> Option<(usize, Vec<Int>)> {
    use num_rational::BigRational;
    // echelonize the sup lattice to get an independent basis
    let lat = RowLattice::from_rows(cols, sup.iter().cloned());
    let basis = lat.basis();
    if basis.is_empty() {
        return if sub.iter().all(|r| r.iter().all(|x| x.is_zero())) {
            Some((0, Vec::new()))
        } else {
            None
        };
    }
    // express each sub row in the basis; solutions must be integral
    let k = basis.len();
    let mut rel_rows: Vec<Vec<Int>> = Vec::new();
    for r in sub {
        // solve c * basis = r by forward substitution on the echelon basis
        let mut residue = r.clone();
        let mut coeffs = vec![Int::zero(); k];
        for (bi, b) in basis.iter().enumerate() {
            let lead = b.iter().position(|x| !x.is_zero()).unwrap();
            if residue[lead].is_zero() {
                continue;
            }
            let q = BigRational::new(residue[lead].clone(), b[lead].clone());
            if !q.is_integer() {
                return None;
            }
            let q = q.to_integer();
            for (x, y) in residue.iter_mut().zip(b.iter()) {
                *x -= &q * y;
            }
            coeffs[bi] = q;
        }
        if residue.iter().any(|x| !x.is_zero()) {
            return None; // sub not contained in sup
        }
        rel_rows.push(coeffs);
    }
    let rel = if rel_rows.is_empty() {
        IntMat::zero(0, k)
    } else {
        IntMat::from_rows(rel_rows)
    };
    Some(abelian_invariants(&rel))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn snf_diagonal_chain() {
        // [[2,0],[0,3]] has SNF 1,6
        let m = IntMat::from_i64(&[vec![2, 0], vec![0, 3]]);
        let d = smith_normal_form(&m);
        assert_eq!(d, vec![Int::from(1), Int::from(6)]);
    }

    #[test]
    fn snf_trefoil_relator_row() {
        // exponent matrix of the trefoil relator: rank 1, no torsion
        let m = IntMat::from_i64(&[vec![1, -1]]);
        let (rank, torsion) = abelian_invariants(&m);
        assert_eq!(rank, 1);
        assert!(torsion.is_empty());
    }

    #[test]
    fn snf_cyclic() {
        let m = IntMat::from_i64(&[vec![3]]);
        let (rank, torsion) = abelian_invariants(&m);
        assert_eq!(rank, 0);
        assert_eq!(torsion, vec![Int::from(3)]);
    }

    #[test]
    fn snf_empty_rows() {
        let m = IntMat::zero(0, 2);
        let (rank, torsion) = abelian_invariants(&m);
        assert_eq!(rank, 2);
        assert!(torsion.is_empty());
    }

    #[test]
    fn lattice_membership() {
        let mut lat = RowLattice::new(2);
        lat.insert(vec![Int::from(2), Int::from(0)]);
        lat.insert(vec![Int::from(3), Int::from(1)]);
        // lattice is {(a, b): a ≡ b mod 2}? basis (1,1),(0,2)
        assert!(lat.contains(&[Int::from(1), Int::from(1)]));
        assert!(lat.contains(&[Int::from(0), Int::from(2)]));
        assert!(!lat.contains(&[Int::from(0), Int::from(1)]));
        assert!(!lat.contains(&[Int::from(1), Int::from(0)]));
    }

    #[test]
    fn rational_span() {
        let m = IntMat::from_i64(&[vec![2, 4]]);
        assert!(in_rational_row_span(&m, &[Int::from(1), Int::from(2)]));
        assert!(!in_rational_row_span(&m, &[Int::from(1), Int::from(0)]));
    }

    #[test]
    fn snf_random_vs_diag_products() {
        // determinant magnitude of a square nonsingular matrix equals product of SNF entries
        let m = IntMat::from_i64(&[vec![2, 1, 0], vec![1, 2, 1], vec![0, 1, 2]]);
        let d = smith_normal_form(&m);
        let prod: Int = d.iter().product();
        assert_eq!(prod, Int::from(4)); // det = 4
    }
}
