//! Integer Seifert matrices with the unimodularity witness, block sums,
//! mirrors, and the associated symmetrized polynomial.

use crate::error::CkError;
use crate::laurent::{LaurentPoly, Rat};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

/// Square integer matrix V with det(V - V^T) = +-1 (0x0 allowed, det 1 by
/// convention); the skew form forces even size and determinant +1.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SeifertMatrix {
    pub name: String,
    matrix: Vec<Vec<BigInt>>,
}

impl SeifertMatrix {
    pub fn new(name: &str, matrix: Vec<Vec<i64>>) -> Result<Self, CkError> {
        let m: Vec<Vec<BigInt>> =
            matrix.into_iter().map(|r| r.into_iter().map(BigInt::from).collect()).collect();
        Self::from_bigint(name, m)
    }

    pub fn from_bigint(name: &str, matrix: Vec<Vec<BigInt>>) -> Result<Self, CkError> {
        let n = matrix.len();
        for row in &matrix {
            if row.len() != n {
                return Err(CkError::Domain("Seifert matrix must be square".into()));
            }
        }
        let v = SeifertMatrix { name: name.to_string(), matrix };
        let d = v.skew_det();
        if !d.abs().is_one() && !(v.size() == 0 && d.is_one()) {
            return Err(CkError::Domain(format!(
                "det(V - V^T) = {} is not a unit; '{}' is not a Seifert matrix",
                d, v.name
            )));
        }
        Ok(v)
    }

    pub fn empty(name: &str) -> Self {
        SeifertMatrix { name: name.to_string(), matrix: Vec::new() }
    }

    /// Trefoil form [[-1, 1], [0, -1]].
    pub fn trefoil() -> Self {
        SeifertMatrix::new("trefoil", vec![vec![-1, 1], vec![0, -1]]).unwrap()
    }

    /// Figure-eight form [[1, 1], [0, -1]].
    pub fn figure_eight() -> Self {
        SeifertMatrix::new("figure-eight", vec![vec![1, 1], vec![0, -1]]).unwrap()
    }

    /// Twist-knot family [[-1, 1], [0, m]]; m = -1 recovers the trefoil.
    pub fn twist_knot(m: i64) -> Result<Self, CkError> {
        SeifertMatrix::new(&format!("twist({})", m), vec![vec![-1, 1], vec![0, m]])
    }

    /// Seifert form of the (2, 2k+1) torus knot: 2k x 2k lower bidiagonal.
    pub fn torus_2n(k: usize) -> Self {
        let n = 2 * k;
        let mut m = vec![vec![0i64; n]; n];
        for i in 0..n {
            m[i][i] = -1;
            if i + 1 < n {
                m[i][i + 1] = 1;
            }
        }
        SeifertMatrix::new(&format!("torus(2,{})", 2 * k + 1), m).unwrap()
    }

    pub fn size(&self) -> usize {
        self.matrix.len()
    }

    pub fn entry(&self, i: usize, j: usize) -> &BigInt {
        &self.matrix[i][j]
    }

    pub fn rows(&self) -> &[Vec<BigInt>] {
        &self.matrix
    }

    fn skew_det(&self) -> BigInt {
        let n = self.size();
        let mut m: Vec<Vec<BigRational>> = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| BigRational::from_integer(&self.matrix[i][j] - &self.matrix[j][i]))
                    .collect()
            })
            .collect();
        let d = det_rat(&mut m);
        debug_assert!(d.is_integer());
        d.to_integer()
    }

    /// Block sum; the form of a connected sum of the underlying knots.
    pub fn connected_sum(&self, other: &SeifertMatrix) -> SeifertMatrix {
        let n = self.size();
        let m = other.size();
        let mut out = vec![vec![BigInt::zero(); n + m]; n + m];
        for i in 0..n {
            for j in 0..n {
                out[i][j] = self.matrix[i][j].clone();
            }
        }
        for i in 0..m {
            for j in 0..m {
                out[n + i][n + j] = other.matrix[i][j].clone();
            }
        }
        SeifertMatrix {
            name: format!("{}#{}", self.name, other.name),
            matrix: out,
        }
    }

    /// Mirror image form -V^T.
    pub fn mirror(&self) -> SeifertMatrix {
        let n = self.size();
        let matrix =
            (0..n).map(|i| (0..n).map(|j| -self.matrix[j][i].clone()).collect()).collect();
        SeifertMatrix { name: format!("mirror({})", self.name), matrix }
    }

    /// det(V - t V^T), computed by evaluation and Lagrange interpolation,
    /// returned without unit normalization; degree at most size.
    pub fn alexander_raw(&self) -> LaurentPoly {
        let n = self.size();
        if n == 0 {
            return LaurentPoly::one();
        }
        let points: Vec<BigRational> =
            (0..=n as i64).map(|k| BigRational::from_integer(BigInt::from(k))).collect();
        let values: Vec<BigRational> = points
            .iter()
            .map(|t| {
                let mut m: Vec<Vec<BigRational>> = (0..n)
                    .map(|i| {
                        (0..n)
                            .map(|j| {
                                BigRational::from_integer(self.matrix[i][j].clone())
                                    - t * BigRational::from_integer(self.matrix[j][i].clone())
                            })
                            .collect()
                    })
                    .collect();
                det_rat(&mut m)
            })
            .collect();
        interpolate(&points, &values)
    }

    /// Symmetrized form: degrees centered about zero, value 1 at t = 1.
    pub fn alexander_polynomial(&self) -> LaurentPoly {
        let raw = self.alexander_raw();
        debug_assert!(raw.is_palindromic_up_to_units());
        let sym = raw.symmetric_normalized();
        debug_assert_eq!(sym.eval(&Rat::one()).abs(), Rat::one());
        sym
    }
}

/// Determinant by fraction-free-enough Gaussian elimination over Q.
pub fn det_rat(m: &mut Vec<Vec<BigRational>>) -> BigRational {
    let n = m.len();
    let mut det = BigRational::one();
    for col in 0..n {
        let Some(p) = (col..n).find(|&r| !m[r][col].is_zero()) else {
            return BigRational::zero();
        };
        if p != col {
            m.swap(p, col);
            det = -det;
        }
        let pivot = m[col][col].clone();
        det *= &pivot;
        for r in col + 1..n {
            if m[r][col].is_zero() {
                continue;
            }
            let f = &m[r][col] / &pivot;
            for c in col..n {
                let sub = &f * &m[col][c];
                m[r][c] -= sub;
            }
        }
    }
    det
}

fn interpolate(points: &[BigRational], values: &[BigRational]) -> LaurentPoly {
    // Lagrange interpolation, assembled in coefficient form
    let mut acc = LaurentPoly::zero();
    for (i, (xi, yi)) in points.iter().zip(values).enumerate() {
        if yi.is_zero() {
            continue;
        }
        let mut basis = LaurentPoly::monomial(0, yi.clone());
        for (j, xj) in points.iter().enumerate() {
            if i == j {
                continue;
            }
            let denom = xi - xj;
            // (t - xj) / (xi - xj)
            let mut lin = LaurentPoly::monomial(1, denom.recip());
            lin.add_term(0, -xj / &denom);
            basis = basis.mul(&lin);
        }
        acc = acc.add(&basis);
    }
    acc
}
