//! Class-c nilpotent quotients of finitely presented groups: the free
//! nilpotent cover on the presentation's generators modulo the normal
//! closure of the relators, with total normal forms by canonical coset
//! representatives.

use super::pcgroup::{PcGroup, PcWord};
use super::subgroup::Subgroup;
use crate::error::CkError;
use crate::intmat::{abelian_invariants, in_rational_row_span, IntMat};
use crate::presentation::GroupPresentation;
use crate::word::Word;
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use std::sync::Arc;

/// Hard ceiling on the nilpotency class accepted by the engine.
pub const MAX_CLASS: usize = 5;

/// Structure of one lower-central section as a f.g. abelian group.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SectionInvariants {
    pub rank: usize,
    pub torsion: Vec<BigInt>,
}

#[derive(Clone, Debug)]
pub struct NilpotentQuotient {
    pub pres: GroupPresentation,
    pub class: usize,
    pub pc: Arc<PcGroup>,
    /// normal closure of the relator images
    pub rel: Subgroup,
}

impl NilpotentQuotient {
    pub fn new(pres: &GroupPresentation, class: usize) -> Result<Self, CkError> {
        if class == 0 || class > MAX_CLASS {
            return Err(CkError::ClassBound { requested: class, bound: MAX_CLASS });
        }
        pres.validate()?;
        let pc = Arc::new(PcGroup::new(pres.rank(), class));
        let rel_gens: Vec<PcWord> = pres.relators.iter().map(|r| pc.eval_word(r)).collect();
        let rel = Subgroup::normal_closure(pc.clone(), &rel_gens);
        Ok(NilpotentQuotient { pres: pres.clone(), class, pc, rel })
    }

    /// Process-wide memoized construction, keyed by presentation and class;
    /// quotients are immutable, so sharing is safe.
    pub fn shared(pres: &GroupPresentation, class: usize) -> Result<Arc<Self>, CkError> {
        use std::collections::HashMap;
        use std::sync::{Mutex, OnceLock};
        static CACHE: OnceLock<Mutex<HashMap<(String, usize), Arc<NilpotentQuotient>>>> =
            OnceLock::new();
        let key = (format!("{:?}", pres), class);
        let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
        if let Some(hit) = cache.lock().unwrap().get(&key) {
            return Ok(hit.clone());
        }
        let fresh = Arc::new(NilpotentQuotient::new(pres, class)?);
        cache.lock().unwrap().insert(key, fresh.clone());
        Ok(fresh)
    }

    /// Total normal form: canonical representative of the coset of `w`.
    pub fn eval(&self, w: &Word) -> PcWord {
        self.rel.reduce(&self.pc.eval_word(w))
    }

    pub fn eval_pc(&self, g: &PcWord) -> PcWord {
        self.rel.reduce(g)
    }

    pub fn is_trivial(&self, w: &Word) -> bool {
        self.eval(w).is_identity()
    }

    pub fn equal(&self, u: &Word, v: &Word) -> bool {
        self.is_trivial(&u.mul(&v.inverse()))
    }

    /// Invariants of the weight-d lower-central section of the quotient,
    /// for d = 1..=class.
    pub fn lcs_sections(&self) -> Vec<SectionInvariants> {
        (1..=self.class)
            .map(|d| {
                let h = self.rel.extend_with_min_weight(d + 1);
                let m = h.section_relations(d);
                let (rank, torsion) = abelian_invariants(&m);
                SectionInvariants { rank, torsion }
            })
            .collect()
    }

    /// Decides whether the image of `g` has infinite order in the quotient
    /// of the ambient free nilpotent group by `modulus` (a subgroup closed
    /// enough to be normal).  Exact: descends the weight filtration, raising
    /// to the torsion order of each section class until either a section
    /// class of infinite order is found (true) or the element dies (false).
    pub fn has_infinite_order_mod(&self, modulus: &Subgroup, g: &PcWord) -> bool {
        let mut power = g.clone();
        for d in 1..=self.class {
            let h = modulus.extend_with_min_weight(d + 1);
            let r = h.reduce(&power);
            if r.is_identity() {
                // power lies in gamma_{d+1} * modulus; nothing visible here
                continue;
            }
            let lo = self.pc.basis.weight_start(d);
            let hi = self.pc.basis.weight_start(d + 1);
            debug_assert!(r.exps[..lo].iter().all(|e| e.is_zero()));
            let class_vec: Vec<BigInt> = r.exps[lo..hi].to_vec();
            if class_vec.iter().all(|e| e.is_zero()) {
                continue;
            }
            let lattice = h.section_relations(d);
            if !in_rational_row_span(&lattice, &class_vec) {
                return true;
            }
            let m = smallest_multiple_in_lattice(&lattice, &class_vec);
            power = self.pc.pow(&power, &m);
        }
        false
    }

    /// Order test against the relator subgroup itself.
    pub fn has_infinite_order(&self, w: &Word) -> bool {
        let g = self.pc.eval_word(w);
        self.has_infinite_order_mod(&self.rel, &g)
    }
}

/// Least m >= 1 with m*v in the row lattice; caller guarantees v lies in the
/// rational row span.
fn smallest_multiple_in_lattice(lattice: &IntMat, v: &[BigInt]) -> BigInt {
    // solve x * lattice = v over Q by Gaussian elimination on the transposed
    // system; rows of `lattice` are independent (echelon leads)
    let rows = lattice.rows;
    let cols = lattice.cols;
    let mut aug: Vec<Vec<BigRational>> = (0..cols)
        .map(|j| {
            let mut row: Vec<BigRational> = (0..rows)
                .map(|i| BigRational::from_integer(lattice[(i, j)].clone()))
                .collect();
            row.push(BigRational::from_integer(v[j].clone()));
            row
        })
        .collect();
    // eliminate
    let mut pivot_row = 0usize;
    let mut pivots: Vec<(usize, usize)> = Vec::new();
    for col in 0..rows {
        let Some(pr) = (pivot_row..cols).find(|&r| !aug[r][col].is_zero()) else { continue };
        aug.swap(pivot_row, pr);
        let inv = aug[pivot_row][col].recip();
        for x in aug[pivot_row].iter_mut() {
            *x = &*x * &inv;
        }
        for r in 0..cols {
            if r != pivot_row && !aug[r][col].is_zero() {
                let f = aug[r][col].clone();
                for j in 0..=rows {
                    let sub = &aug[pivot_row][j] * &f;
                    aug[r][j] -= sub;
                }
            }
        }
        pivots.push((pivot_row, col));
        pivot_row += 1;
    }
    // consistency is guaranteed; read off the solution and take the lcm of
    // the denominators
    let mut m = BigInt::one();
    for &(r, _) in &pivots {
        let denom = aug[r][rows].denom().clone();
        m = num_integer::lcm(m, denom.abs());
    }
    m
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::presentation::parse_presentation;

    #[test]
    fn free_group_sections_match_witt() {
        use crate::nilpotent::hall::witt_rank;
        let f2 = GroupPresentation::new("F2", &["x", "y"], vec![]).unwrap();
        for c in 1..=4 {
            let q = NilpotentQuotient::new(&f2, c).unwrap();
            let secs = q.lcs_sections();
            for (d, s) in secs.iter().enumerate() {
                assert_eq!(s.rank, witt_rank(2, d + 1));
                assert!(s.torsion.is_empty());
            }
        }
    }

    #[test]
    fn cyclic_of_order_two() {
        let p = parse_presentation("group C2\ngens a\nrel a^2").unwrap();
        let q = NilpotentQuotient::new(&p, 1).unwrap();
        let secs = q.lcs_sections();
        assert_eq!(secs.len(), 1);
        assert_eq!(secs[0].rank, 0);
        assert_eq!(secs[0].torsion, vec![BigInt::from(2)]);
        assert!(q.is_trivial(&Word::generator(0, 2)));
        assert!(!q.is_trivial(&Word::generator(0, 1)));
    }

    #[test]
    fn heisenberg_presentation_is_class_two() {
        let p = parse_presentation("group H\ngens x y\nrel [[x,y],x]\nrel [[x,y],y]").unwrap();
        let q = NilpotentQuotient::new(&p, 3).unwrap();
        let secs = q.lcs_sections();
        assert_eq!(secs[0], SectionInvariants { rank: 2, torsion: vec![] });
        assert_eq!(secs[1], SectionInvariants { rank: 1, torsion: vec![] });
        assert_eq!(secs[2], SectionInvariants { rank: 0, torsion: vec![] });
        // [x,y] is nontrivial and central
        let c = Word::generator(0, 1).commutator(&Word::generator(1, 1));
        assert!(!q.is_trivial(&c));
        assert!(q.is_trivial(&c.commutator(&Word::generator(0, 1))));
    }

    #[test]
    fn direct_product_relators() {
        // F x Z: [x,t], [y,t]
        let p = parse_presentation("group A\ngens x y t\nrel [x,t]\nrel [y,t]").unwrap();
        let q = NilpotentQuotient::new(&p, 3).unwrap();
        let x = Word::generator(0, 1);
        let t = Word::generator(2, 1);
        assert!(q.is_trivial(&x.commutator(&t)));
        assert!(!q.is_trivial(&x.commutator(&Word::generator(1, 1))));
    }

    #[test]
    fn infinite_order_detection() {
        let p = parse_presentation("group A\ngens x y\nrel x^2").unwrap();
        let q = NilpotentQuotient::new(&p, 2).unwrap();
        assert!(!q.has_infinite_order(&Word::generator(0, 1)));
        assert!(q.has_infinite_order(&Word::generator(1, 1)));
        // [x,y] has x of order 2: [x,y]^2 = [x^2, y] mod higher = trivial at class 2
        let c = Word::generator(0, 1).commutator(&Word::generator(1, 1));
        assert!(!q.has_infinite_order(&c));
    }

    #[test]
    fn torsion_descent() {
        // <x, y | x^2 [x,y]>: x^2 = [y,x] is central, so x^4 = [y, x^2] = 1
        // at class 2; the descent must follow x through both weight levels.
        let p = parse_presentation("group A\ngens x y\nrel x^2 [x,y]").unwrap();
        let q = NilpotentQuotient::new(&p, 2).unwrap();
        let x = Word::generator(0, 1);
        assert!(!q.has_infinite_order(&x));
        assert!(!q.is_trivial(&x.pow(2)));
        assert!(q.is_trivial(&x.pow(4)));
        assert!(q.has_infinite_order(&Word::generator(1, 1)));
    }

    #[test]
    fn class_bound_enforced() {
        let p = parse_presentation("group A\ngens x").unwrap();
        assert!(NilpotentQuotient::new(&p, 6).is_err());
        assert!(NilpotentQuotient::new(&p, 0).is_err());
    }
}
