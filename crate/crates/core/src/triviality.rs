//! Certified three-valued word-problem answers.  Triviality in a presented
//! group is reported True only when derivable from the relators (free
//! reduction, a budgeted insertion search, or an exact engine on a group
//! certified nilpotent), False only on a nontrivial image in a nilpotent
//! quotient, and Unknown otherwise.

use crate::budget::{Budget, VerifyConfig};
use crate::nilpotent::{NilpotentQuotient, MAX_CLASS};
use crate::presentation::GroupPresentation;
use crate::word::Word;
use serde::{Deserialize, Serialize};
use std::cmp::Reverse;
use std::collections::{BinaryHeap, HashMap, HashSet};
use std::sync::Mutex;

/// A certified answer: True and False are backed by a checkable derivation,
/// Unknown is an honest refusal.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub enum Claim {
    True,
    False,
    Unknown,
}

impl Claim {
    pub fn and(self, other: Claim) -> Claim {
        match (self, other) {
            (Claim::False, _) | (_, Claim::False) => Claim::False,
            (Claim::True, Claim::True) => Claim::True,
            _ => Claim::Unknown,
        }
    }

    pub fn is_true(self) -> bool {
        self == Claim::True
    }
}

/// Word-problem oracle for one presentation, with cached nilpotent quotients
/// and cached nilpotency certificates.
#[derive(Debug)]
pub struct TrivialityChecker {
    pub pres: GroupPresentation,
    quotients: Mutex<HashMap<usize, std::sync::Arc<NilpotentQuotient>>>,
    nilpotency: Mutex<HashMap<usize, bool>>,
}

impl TrivialityChecker {
    pub fn new(pres: &GroupPresentation) -> Self {
        TrivialityChecker {
            pres: pres.clone(),
            quotients: Mutex::new(HashMap::new()),
            nilpotency: Mutex::new(HashMap::new()),
        }
    }

    pub fn quotient(&self, class: usize) -> std::sync::Arc<NilpotentQuotient> {
        let class = class.clamp(1, MAX_CLASS);
        let mut cache = self.quotients.lock().unwrap();
        cache
            .entry(class)
            .or_insert_with(|| {
                std::sync::Arc::new(NilpotentQuotient::new(&self.pres, class).unwrap())
            })
            .clone()
    }

    /// Is `w` trivial in the presented group?
    pub fn is_trivial(&self, w: &Word, cfg: &VerifyConfig) -> Claim {
        self.in_normal_closure(w, &[], cfg)
    }

    pub fn equal(&self, u: &Word, v: &Word, cfg: &VerifyConfig) -> Claim {
        self.is_trivial(&u.mul(&v.inverse()), cfg)
    }

    /// Is `w` in the normal closure of `extra` within the presented group?
    /// With `extra` empty this is the word problem.
    pub fn in_normal_closure(&self, w: &Word, extra: &[Word], cfg: &VerifyConfig) -> Claim {
        if w.is_identity() {
            return Claim::True;
        }
        let mut closure_rels = self.pres.relators.clone();
        closure_rels.extend_from_slice(extra);
        if closure_rels.is_empty() {
            // free group: the word problem is free reduction
            return Claim::False;
        }
        // refutation in a nilpotent quotient
        let quotient_pres = GroupPresentation {
            name: format!("{}/closure", self.pres.name),
            generators: self.pres.generators.clone(),
            relators: closure_rels.clone(),
            marked: Default::default(),
        };
        let q = if extra.is_empty() {
            self.quotient(cfg.depth0_class)
        } else {
            std::sync::Arc::new(
                NilpotentQuotient::new(&quotient_pres, cfg.depth0_class.clamp(1, MAX_CLASS))
                    .unwrap(),
            )
        };
        if !q.is_trivial(w) {
            return Claim::False;
        }
        // derivation by insertion search
        if insertion_search(w, &closure_rels, &cfg.budget) {
            return Claim::True;
        }
        // exact answer when the group (with the extra relators) is certified
        // nilpotent of class <= the engine class
        for class in 1..=cfg.depth0_class.clamp(1, MAX_CLASS) {
            if self.certified_nilpotent_pres(&quotient_pres, class, cfg) {
                return if q_is_trivial_at(&quotient_pres, class, w) {
                    Claim::True
                } else {
                    Claim::False
                };
            }
        }
        Claim::Unknown
    }

    /// Certifies that the presented group is nilpotent of class <= `class` by
    /// deriving every left-normed commutator of weight class + 1 from the
    /// relators with the insertion search alone.
    pub fn certified_nilpotent(&self, class: usize, cfg: &VerifyConfig) -> bool {
        if let Some(&hit) = self.nilpotency.lock().unwrap().get(&class) {
            return hit;
        }
        let out = self.certified_nilpotent_pres(&self.pres, class, cfg);
        self.nilpotency.lock().unwrap().insert(class, out);
        out
    }

    fn certified_nilpotent_pres(
        &self,
        pres: &GroupPresentation,
        class: usize,
        cfg: &VerifyConfig,
    ) -> bool {
        let n = pres.rank();
        if n == 0 {
            return true;
        }
        if pres.relators.is_empty() {
            return false;
        }
        // every left-normed commutator [x_{i0}, x_{i1}, ..., x_{i_class}]
        let mut indices = vec![0usize; class + 1];
        loop {
            if indices[0] != indices[1] {
                let mut c = Word::generator(indices[0], 1);
                for &i in &indices[1..] {
                    c = c.commutator(&Word::generator(i, 1));
                }
                if !c.is_identity() && !insertion_search(&c, &pres.relators, &cfg.budget) {
                    return false;
                }
            }
            // next multi-index
            let mut pos = indices.len();
            loop {
                if pos == 0 {
                    return true;
                }
                pos -= 1;
                indices[pos] += 1;
                if indices[pos] < n {
                    break;
                }
                indices[pos] = 0;
            }
        }
    }
}

fn q_is_trivial_at(pres: &GroupPresentation, class: usize, w: &Word) -> bool {
    NilpotentQuotient::new(pres, class).map(|q| q.is_trivial(w)).unwrap_or(false)
}

/// Best-first search for membership of `w` in the normal closure of `gens`
/// inside the free group: states are freely reduced words, moves insert a
/// generator or its inverse at any position.
pub fn insertion_search(w: &Word, gens: &[Word], budget: &Budget) -> bool {
    let target = w.clone();
    if target.is_identity() {
        return true;
    }
    let movers: Vec<Word> = gens
        .iter()
        .filter(|g| !g.is_identity())
        .flat_map(|g| [g.clone(), g.inverse()])
        .collect();
    if movers.is_empty() {
        return false;
    }
    let cap = budget.max_word_len.max(target.len() + 2);
    let mut heap: BinaryHeap<(Reverse<usize>, Word)> = BinaryHeap::new();
    let mut seen: HashSet<Word> = HashSet::new();
    heap.push((Reverse(target.len()), target.clone()));
    seen.insert(target);
    let mut nodes = 0usize;
    while let Some((_, cur)) = heap.pop() {
        nodes += 1;
        if nodes > budget.max_nodes || budget.cancelled() {
            return false;
        }
        // split cur into prefix/suffix at every letter boundary
        let letters: Vec<(usize, i64)> = cur.single_letters().collect();
        for split in 0..=letters.len() {
            let prefix = Word::from_letters(letters[..split].iter().copied());
            let suffix = Word::from_letters(letters[split..].iter().copied());
            for m in &movers {
                let cand = prefix.mul(m).mul(&suffix);
                if cand.is_identity() {
                    return true;
                }
                if cand.len() > cap {
                    continue;
                }
                if seen.insert(cand.clone()) {
                    heap.push((Reverse(cand.len()), cand));
                }
            }
        }
    }
    false
}
