//! Subgroups of a free nilpotent group as echelonized generating sequences:
//! one stored element per leading basis index, pivot exponents positive.
//! Saturation closes the sequence under pairwise commutators (subgroup
//! completeness) and optionally under commutation with the ambient
//! generators (normal closure).

use super::pcgroup::{PcGroup, PcWord};
use crate::intmat::{extended_gcd, IntMat};
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};
use std::sync::Arc;

#[derive(Clone, Debug)]
pub struct Subgroup {
    pub pc: Arc<PcGroup>,
    slots: Vec<Option<PcWord>>,
}

impl Subgroup {
    pub fn new(pc: Arc<PcGroup>) -> Self {
        let n = pc.rank();
        Subgroup { pc, slots: vec![None; n] }
    }

    /// Subgroup generated by the given elements.
    pub fn generated_by(pc: Arc<PcGroup>, gens: &[PcWord]) -> Self {
        let mut s = Subgroup::new(pc);
        for g in gens {
            s.insert(g.clone());
        }
        s.saturate(false);
        s
    }

    /// Normal closure of the given elements in the ambient group.
    pub fn normal_closure(pc: Arc<PcGroup>, gens: &[PcWord]) -> Self {
        let mut s = Subgroup::new(pc);
        for g in gens {
            s.insert(g.clone());
        }
        s.saturate(true);
        s
    }

    pub fn elements(&self) -> impl Iterator<Item = &PcWord> {
        self.slots.iter().flatten()
    }

    pub fn is_trivial(&self) -> bool {
        self.slots.iter().all(|s| s.is_none())
    }

    pub fn pivot(&self, lead: usize) -> Option<&PcWord> {
        self.slots[lead].as_ref()
    }

    /// Echelon insertion; returns true when the stored sequence changed.
    pub fn insert(&mut self, elem: PcWord) -> bool {
        let mut v = self.reduce(&elem);
        let mut changed = false;
        loop {
            let Some(l) = v.leading() else { return changed };
            if v.exps[l].is_negative() {
                v = self.pc.inv(&v);
            }
            match self.slots[l].clone() {
                None => {
                    self.slots[l] = Some(v);
                    return true;
                }
                Some(b) => {
                    let eb = b.exps[l].clone();
                    let ev = v.exps[l].clone();
                    if (&ev % &eb).is_zero() {
                        let q = -(ev / &eb);
                        v = self.pc.mul(&self.pc.pow(&b, &q), &v);
                        // leading exponent now vanishes at l; continue deeper
                        debug_assert!(v.exps[l].is_zero());
                    } else {
                        let (g, s, t) = extended_gcd(&eb, &ev);
                        // new pivot with exponent g at l
                        let new = self.pc.mul(&self.pc.pow(&b, &s), &self.pc.pow(&v, &t));
                        debug_assert_eq!(new.exps[l], g);
                        let qb = -(&eb / &g);
                        let leftover_b = self.pc.mul(&self.pc.pow(&new, &qb), &b);
                        let qv = -(&ev / &g);
                        let leftover_v = self.pc.mul(&self.pc.pow(&new, &qv), &v);
                        self.slots[l] = Some(new);
                        changed = true;
                        self.insert(leftover_b);
                        v = leftover_v;
                    }
                }
            }
        }
    }

    /// Canonical coset representative: pivot-position exponents reduced into
    /// [0, pivot).
    pub fn reduce(&self, elem: &PcWord) -> PcWord {
        let mut v = elem.clone();
        for l in 0..self.slots.len() {
            if v.exps[l].is_zero() {
                continue;
            }
            if let Some(b) = &self.slots[l] {
                let q = -v.exps[l].div_floor(&b.exps[l]);
                if !q.is_zero() {
                    v = self.pc.mul(&self.pc.pow(b, &q), &v);
                }
            }
        }
        v
    }

    pub fn contains(&self, elem: &PcWord) -> bool {
        self.reduce(elem).is_identity()
    }

    /// Closes the sequence under pairwise commutators and, when `normal`,
    /// under commutation with the ambient generators and their inverses.
    pub fn saturate(&mut self, normal: bool) {
        loop {
            let stored: Vec<PcWord> = self.elements().cloned().collect();
            let mut pending: Vec<PcWord> = Vec::new();
            for (i, g) in stored.iter().enumerate() {
                for h in stored.iter().skip(i + 1) {
                    pending.push(self.pc.commutator(g, h));
                }
                if normal {
                    for k in 0..self.pc.basis.num_gens {
                        let x = self.pc.generator(k);
                        pending.push(self.pc.commutator(g, &x));
                        pending.push(self.pc.commutator(g, &self.pc.inv(&x)));
                    }
                }
            }
            let mut changed = false;
            for p in pending {
                if self.insert(p) {
                    changed = true;
                }
            }
            if !changed {
                return;
            }
        }
    }

    /// Smallest subgroup containing both operands (with the stated closure).
    pub fn join(&self, other: &Subgroup, normal: bool) -> Subgroup {
        let mut s = self.clone();
        for g in other.elements() {
            s.insert(g.clone());
        }
        s.saturate(normal);
        s
    }

    /// Derived subgroup [S, S], computed as the closure of the pairwise
    /// commutators of the stored sequence under commutation with it.
    pub fn derived(&self) -> Subgroup {
        let stored: Vec<PcWord> = self.elements().cloned().collect();
        let mut d = Subgroup::new(self.pc.clone());
        for (i, g) in stored.iter().enumerate() {
            for h in stored.iter().skip(i + 1) {
                d.insert(self.pc.commutator(g, h));
            }
        }
        d.saturate(false);
        // close under conjugation by the parent's generators
        loop {
            let current: Vec<PcWord> = d.elements().cloned().collect();
            let mut changed = false;
            for g in &current {
                for r in &stored {
                    if d.insert(self.pc.commutator(g, r)) {
                        changed = true;
                    }
                    if d.insert(self.pc.commutator(g, &self.pc.inv(r))) {
                        changed = true;
                    }
                }
            }
            if !changed {
                break;
            }
            d.saturate(false);
        }
        d
    }

    /// Extension by every basis element of weight >= d; used for the
    /// lower-central sections of the quotient by this subgroup.
    pub fn extend_with_min_weight(&self, d: usize) -> Subgroup {
        let start = self.pc.basis.weight_start(d);
        let mut s = Subgroup::new(self.pc.clone());
        for l in start..self.pc.rank() {
            let mut w = self.pc.identity();
            w.exps[l] = BigInt::from(1);
            s.slots[l] = Some(w);
        }
        for (l, slot) in self.slots.iter().enumerate() {
            if l < start {
                if let Some(b) = slot {
                    s.slots[l] = Some(b.clone());
                }
            }
        }
        s
    }

    /// Weight-d coordinate rows of stored elements whose lead lies in the
    /// weight-d block; these present the relations of the weight-d section of
    /// the quotient by this subgroup.
    pub fn section_relations(&self, d: usize) -> IntMat {
        let lo = self.pc.basis.weight_start(d);
        let hi = self.pc.basis.weight_start(d + 1);
        let rows: Vec<Vec<BigInt>> = (lo..hi)
            .filter_map(|l| self.slots[l].as_ref())
            .map(|b| b.exps[lo..hi].to_vec())
            .collect();
        if rows.is_empty() {
            IntMat::zero(0, hi - lo)
        } else {
            IntMat::from_rows(rows)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::word::Word;

    fn pc(n: usize, c: usize) -> Arc<PcGroup> {
        Arc::new(PcGroup::new(n, c))
    }

    #[test]
    fn membership_of_random_products() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand::rngs::StdRng::seed_from_u64(23);
        let pc = pc(2, 4);
        let g1 = pc.eval_word(&Word::from_letters([(0, 2)]));
        let g2 = pc.eval_word(&Word::from_letters([(0, -1), (1, 1), (0, 1), (1, -1)]));
        let sub = Subgroup::generated_by(pc.clone(), &[g1.clone(), g2.clone()]);
        for _ in 0..25 {
            let mut h = pc.identity();
            for _ in 0..6 {
                let pick = if rng.gen_bool(0.5) { &g1 } else { &g2 };
                let pick = if rng.gen_bool(0.5) { pick.clone() } else { pc.inv(pick) };
                h = pc.mul(&h, &pick);
            }
            assert!(sub.contains(&h));
        }
        // x itself is not in <x^2, x^-1 y x y^-1>: its image in the
        // abelianization is (1,0) but the subgroup's images are (2,0), (0,0)
        assert!(!sub.contains(&pc.generator(0)));
    }

    #[test]
    fn normal_closure_of_central_element() {
        let pc = pc(2, 2);
        let c = pc.commutator(&pc.generator(0), &pc.generator(1));
        let n = Subgroup::normal_closure(pc.clone(), &[c.clone()]);
        assert!(n.contains(&c));
        assert!(!n.contains(&pc.generator(0)));
    }

    #[test]
    fn normal_closure_picks_up_commutators() {
        // <<x>> in the free class-2 group contains [x,y]
        let pc = pc(2, 2);
        let x = pc.generator(0);
        let y = pc.generator(1);
        let n = Subgroup::normal_closure(pc.clone(), &[x.clone()]);
        assert!(n.contains(&pc.commutator(&x, &y)));
        assert!(n.contains(&pc.conjugate(&x, &y)));
        assert!(!n.contains(&y));
    }

    #[test]
    fn gcd_pivot_combination() {
        let pc = pc(1, 1);
        let a = pc.pow(&pc.generator(0), &BigInt::from(6));
        let b = pc.pow(&pc.generator(0), &BigInt::from(10));
        let s = Subgroup::generated_by(pc.clone(), &[a, b]);
        assert!(s.contains(&pc.pow(&pc.generator(0), &BigInt::from(2))));
        assert!(!s.contains(&pc.generator(0)));
    }

    #[test]
    fn derived_of_normal_closure() {
        // R = <<x>> in free class-3 on x,y; [R,R] contains [x, x^y] but not x
        let pc = pc(2, 3);
        let x = pc.generator(0);
        let y = pc.generator(1);
        let r = Subgroup::normal_closure(pc.clone(), &[x.clone()]);
        let d = r.derived();
        let xy = pc.conjugate(&x, &y);
        assert!(d.contains(&pc.commutator(&x, &xy)));
        assert!(!d.contains(&x));
    }
}
