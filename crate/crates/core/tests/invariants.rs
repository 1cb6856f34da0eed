//! Property suites for the structural invariants: free reduction, pushout
//! inclusions, series monotonicity/normality/functoriality, module
//! invariance under unimodular changes, and signature symmetries.

use ck_core::budget::VerifyConfig;
use ck_core::groupops::{kernel_normal_generators_of_epi, pushout};
use ck_core::laurent::{laurent_snf, LaurentMatrix, LaurentPoly, Rat};
use ck_core::localization::{parse_equation_system, solve_nilpotent};
use ck_core::nilpotent::NilpotentQuotient;
use ck_core::presentation::{parse_grp_file, EpiOverG, GroupPresentation, MorphismOverG};
use ck_core::seifert::SeifertMatrix;
use ck_core::series::{gamma_membership, rational_series_membership, Membership};
use ck_core::sigfn::{lt_signature_at, signature_function, CirclePoint};
use ck_core::word::{free_reduce, Word};
use num_traits::{One, Signed, Zero};
use proptest::prelude::*;
use rand::{Rng, SeedableRng};

fn rat(n: i64, d: i64) -> Rat {
    Rat::new(n.into(), d.into())
}

proptest! {
    #[test]
    fn free_reduce_idempotent_and_nonincreasing(letters in prop::collection::vec((0usize..4, -3i64..=3), 0..24)) {
        let raw_len: usize = letters.iter().map(|&(_, e)| e.unsigned_abs() as usize).sum();
        let w = Word::from_letters(letters);
        prop_assert!(w.len() <= raw_len);
        prop_assert_eq!(free_reduce(&w), w.clone());
    }

    #[test]
    fn laurent_snf_invariant_under_row_ops(seed in 0u64..500) {
        let mut rng = rand::rngs::StdRng::seed_from_u64(seed);
        let rows = 3usize;
        let cols = 3usize;
        let mut entries = Vec::new();
        for _ in 0..rows {
            let mut row = Vec::new();
            for _ in 0..cols {
                row.push(LaurentPoly::from_int_coeffs(
                    rng.gen_range(-1..=1),
                    &[rng.gen_range(-2..=2), rng.gen_range(-2..=2)],
                ));
            }
            entries.push(row);
        }
        let m = LaurentMatrix::from_rows(entries.clone());
        let base = laurent_snf(&m);
        // random elementary row operation: row_i += q * row_j
        let i = rng.gen_range(0..rows);
        let mut j = rng.gen_range(0..rows);
        if i == j { j = (j + 1) % rows; }
        let q = LaurentPoly::from_int_coeffs(rng.gen_range(-1..=1), &[rng.gen_range(-2..=2)]);
        for c in 0..cols {
            let add = entries[j][c].mul(&q);
            entries[i][c] = entries[i][c].add(&add);
        }
        // and a unit column scaling
        let c = rng.gen_range(0..cols);
        for r in entries.iter_mut() {
            r[c] = r[c].mul(&LaurentPoly::monomial(1, Rat::one()));
        }
        let m2 = LaurentMatrix::from_rows(entries);
        prop_assert_eq!(base, laurent_snf(&m2));
    }
}

fn heisenberg() -> (GroupPresentation, EpiOverG) {
    let f = parse_grp_file(
        "group G\ngens x y\nrel [[x,y],x]\nrel [[x,y],y]\n\
         group A\ngens x y t\nrel [x,t]\nrel [y,t]\nepi G : x -> x, y -> y, t -> [x,y]",
    )
    .unwrap();
    let epi = f.resolve_epi(&f.epis[0]).unwrap();
    (f.group("A").unwrap().clone(), epi)
}

fn kernel_word() -> Word {
    Word::generator(0, 1).commutator(&Word::generator(1, 1)).mul(&Word::generator(2, -1))
}

#[test]
fn pushout_inclusions_and_identifications() {
    let f = parse_grp_file(
        "group Z\ngens t\n\ngroup T\ngens x y\nrel x y x y^-1 x^-1 y^-1\nmark meridian x\nmark longitude (x y)^3 x^-6\nepi Z : x -> t, y -> t",
    )
    .unwrap();
    let gamma = f.resolve_epi(&f.epis[0]).unwrap();
    let t = f.group("T").unwrap().clone();
    let torus = parse_grp_file("group C\ngens m l\nrel [m,l]").unwrap().groups[0].clone();
    let mu = t.marked_word(ck_core::presentation::MarkRole::Meridian).unwrap().clone();
    let la = t.marked_word(ck_core::presentation::MarkRole::Longitude).unwrap().clone();
    let gamma_c = EpiOverG::new(
        torus.clone(),
        gamma.target.clone(),
        vec![gamma.apply(&mu), gamma.apply(&la)],
    )
    .unwrap();
    let f1 = MorphismOverG::new(gamma_c.clone(), gamma.clone(), vec![mu.clone(), la.clone()])
        .unwrap();
    let f2 = MorphismOverG::new(gamma_c, gamma.clone(), vec![mu.inverse(), la]).unwrap();
    let po = pushout(&f1, &f2).unwrap();
    // the two inclusions are valid morphisms over the base
    assert_eq!(po.include_left.gamma_b.source, po.presentation);
    assert_eq!(po.include_right.gamma_b.source, po.presentation);
    // identification relators die in every nilpotent quotient up to class 3
    for class in 1..=3 {
        let q = NilpotentQuotient::new(&po.presentation, class).unwrap();
        for r in &po.identification_relators {
            assert!(q.is_trivial(r));
        }
    }
}

#[test]
fn abelianization_divisibility_chain() {
    let mut rng = rand::rngs::StdRng::seed_from_u64(11);
    for _ in 0..30 {
        let gens = rng.gen_range(1..=4usize);
        let rels = rng.gen_range(0..=4usize);
        let relators: Vec<Word> = (0..rels)
            .map(|_| {
                Word::from_letters(
                    (0..rng.gen_range(1..6)).map(|_| (rng.gen_range(0..gens), rng.gen_range(-3..=3i64))),
                )
            })
            .collect();
        let names: Vec<&str> = ["a", "b", "c", "d"][..gens].to_vec();
        let p = GroupPresentation::new("R", &names, relators).unwrap();
        let (rank, torsion) = p.abelianization();
        assert!(rank + torsion.len() <= gens);
        for w in torsion.windows(2) {
            assert!((w[1].clone() % w[0].clone()).is_zero(), "chain broken: {:?}", torsion);
        }
    }
}

#[test]
fn kernel_generator_words_die_in_quotients() {
    let f = parse_grp_file(
        "group Z\ngens t\n\ngroup T\ngens x y\nrel x y x y^-1 x^-1 y^-1\nepi Z : x -> t, y -> t",
    )
    .unwrap();
    let gamma = f.resolve_epi(&f.epis[0]).unwrap();
    let gens = kernel_normal_generators_of_epi(&gamma, &VerifyConfig::default()).unwrap();
    for class in 1..=3 {
        let q = NilpotentQuotient::new(&gamma.target, class).unwrap();
        for k in &gens {
            assert!(q.is_trivial(&gamma.apply(k)));
        }
    }
}

#[test]
fn series_monotonicity_and_normality() {
    let (_, gamma) = heisenberg();
    let cfg = VerifyConfig::default();
    let mut rng = rand::rngs::StdRng::seed_from_u64(29);
    let k = kernel_word();
    let words: Vec<Word> = vec![
        k.clone(),
        k.commutator(&k.conjugate(&Word::generator(0, 1))),
        Word::identity(),
        k.conjugate(&Word::generator(1, -1)),
    ];
    for w in &words {
        let d0 = gamma_membership(&gamma, w, &cfg);
        let d1 = rational_series_membership(&gamma, w, 1, &cfg);
        // monotonicity: In at depth 1 implies In at depth 0
        if let Ok(m1) = &d1 {
            if m1.status == Membership::In {
                assert_eq!(d0.status, Membership::In);
            }
        }
        // normality: conjugates of depth-0 members stay members
        if d0.status == Membership::In {
            for _ in 0..5 {
                let g = Word::from_letters([
                    (rng.gen_range(0..3usize), rng.gen_range(-2..=2i64)),
                    (rng.gen_range(0..3usize), rng.gen_range(-2..=2i64)),
                ]);
                let conj = w.conjugate(&g);
                assert_eq!(gamma_membership(&gamma, &conj, &cfg).status, Membership::In);
            }
        }
    }
}

#[test]
fn series_functoriality_never_contradicts() {
    // f: A -> A conjugation by t is a morphism over the base; images of
    // depth-n members are never NotIn at depth n
    let (_, gamma) = heisenberg();
    let cfg = VerifyConfig::default();
    let conj = |w: &Word| w.conjugate(&Word::generator(2, 1));
    let k = kernel_word();
    for w in [k.clone(), k.commutator(&k.conjugate(&Word::generator(0, 1)))] {
        for depth in 0..=1 {
            let before = rational_series_membership(&gamma, &w, depth, &cfg);
            let after = rational_series_membership(&gamma, &conj(&w), depth, &cfg);
            if let (Ok(b), Ok(a)) = (before, after) {
                if b.status == Membership::In {
                    assert_ne!(a.status, Membership::NotIn);
                }
            }
        }
    }
}

#[test]
fn commutator_containment_one_level_deeper() {
    let (_, gamma) = heisenberg();
    let cfg = VerifyConfig::default();
    let k1 = kernel_word();
    let k2 = kernel_word().conjugate(&Word::generator(0, 1));
    let w = k1.commutator(&k2);
    let m = rational_series_membership(&gamma, &w, 1, &cfg).unwrap();
    assert_ne!(m.status, Membership::NotIn);
}

#[test]
fn solution_entries_lie_in_the_kernel() {
    let f = parse_grp_file("group Z\ngens t\n\ngroup A\ngens a b\nepi Z : a -> t, b -> 1")
        .unwrap();
    let gamma = f.resolve_epi(&f.epis[0]).unwrap();
    let cfg = VerifyConfig::default();
    let sys = parse_equation_system(
        "var z w ; eq z = [a,b] [z,b] ; eq w = [w,b] z^-1 [a,b] z",
        gamma.clone(),
    )
    .unwrap();
    let (sol, _) = solve_nilpotent(&sys, 3, &cfg).unwrap();
    for v in &sol.values {
        assert_eq!(gamma_membership(&gamma, v, &cfg).status, Membership::In);
    }
}

#[test]
fn signature_symmetry_even_and_bounded() {
    let mut rng = rand::rngs::StdRng::seed_from_u64(3);
    for _ in 0..20 {
        let genus = rng.gen_range(1..=3);
        let v = random_seifert(&mut rng, genus);
        let s = rat(rng.gen_range(1..=7), rng.gen_range(1..=7));
        let plus = CirclePoint::TanHalf(s.clone());
        let minus = CirclePoint::TanHalf(-s);
        let a = lt_signature_at(&v, &plus).unwrap();
        let b = lt_signature_at(&v, &minus).unwrap();
        assert_eq!(a, b, "conjugation symmetry");
        assert_eq!(a.rem_euclid(2), 0);
        assert!(a.unsigned_abs() as usize <= v.size());
    }
}

#[test]
fn signature_function_vanishes_near_one() {
    let mut rng = rand::rngs::StdRng::seed_from_u64(17);
    for _ in 0..10 {
        let genus = rng.gen_range(1..=3);
        let v = random_seifert(&mut rng, genus);
        let f = signature_function(&v).unwrap();
        assert_eq!(f.values[0], 0);
        // mirror negates
        let g = signature_function(&v.mirror()).unwrap();
        let neg: Vec<i64> = f.values.iter().map(|x| -x).collect();
        assert_eq!(g.values, neg);
    }
}

#[test]
fn seifert_polynomial_unit_and_palindromic() {
    let mut rng = rand::rngs::StdRng::seed_from_u64(23);
    for _ in 0..25 {
        let genus = rng.gen_range(0..=3);
        let v = random_seifert(&mut rng, genus);
        let p = v.alexander_polynomial();
        assert_eq!(p.eval(&Rat::one()).abs(), Rat::one());
        assert!(p.is_palindromic_up_to_units());
    }
}

pub fn random_seifert(rng: &mut impl Rng, genus: usize) -> SeifertMatrix {
    let n = 2 * genus;
    let mut m = vec![vec![0i64; n]; n];
    for k in 0..genus {
        m[2 * k][2 * k + 1] = 1;
    }
    for i in 0..n {
        for j in i..n {
            let w = rng.gen_range(-2..=2);
            m[i][j] += w;
            if i != j {
                m[j][i] += w;
            }
        }
    }
    SeifertMatrix::new("random", m).unwrap()
}
