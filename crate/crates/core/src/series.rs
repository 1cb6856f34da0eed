//! The rational derived series relative to a coefficient system: membership
//! certificates at supported depths, and verification of
//! poly-torsion-free-abelian chains for the base group.
//!
//! Depth 0 is kernel membership.  Depth 1 over an infinite cyclic base is
//! decided exactly through the coefficient module; over other bases the
//! engine certifies non-membership by an infinite-order argument in a
//! nilpotent quotient modulo the derived subgroup of the kernel's closure,
//! and membership by vanishing of all Fox derivatives in the base group
//! ring.  Deeper answers propagate monotonicity or return Unknown.

use crate::alexander::{fox_derivative_terms, fox_jacobian, fox_vector};
use crate::budget::VerifyConfig;
use crate::error::CkError;
use crate::groupops::kernel_normal_generators_of_epi;
use crate::intmat::{lattice_quotient_invariants, left_kernel, IntMat};
use crate::laurent::in_row_span;
use crate::nilpotent::{NilpotentQuotient, Subgroup, MAX_CLASS};
use crate::presentation::{EpiOverG, GroupPresentation};
use crate::triviality::{Claim, TrivialityChecker};
use crate::word::Word;
use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub enum Membership {
    In,
    NotIn,
    Unknown,
}

/// Membership answer with an auditable certificate description.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct SeriesMembership {
    pub element: Word,
    pub depth: usize,
    pub status: Membership,
    pub certificate: String,
}

/// Kernel membership: depth 0 of the series.
pub fn gamma_membership(gamma: &EpiOverG, w: &Word, cfg: &VerifyConfig) -> SeriesMembership {
    let image = gamma.apply(w);
    let checker = TrivialityChecker::new(&gamma.target);
    let (status, certificate) = match checker.is_trivial(&image, cfg) {
        Claim::True => (
            Membership::In,
            format!(
                "image {} certified trivial in '{}'",
                gamma.target.display_word(&image),
                gamma.target.name
            ),
        ),
        Claim::False => (
            Membership::NotIn,
            format!(
                "image {} survives in a nilpotent quotient of '{}' (class <= {})",
                gamma.target.display_word(&image),
                gamma.target.name,
                cfg.depth0_class
            ),
        ),
        Claim::Unknown => (
            Membership::Unknown,
            "kernel membership undecided within the search budget".to_string(),
        ),
    };
    SeriesMembership { element: w.clone(), depth: 0, status, certificate }
}

/// Membership of `w` in the depth-`n` stage of the rational derived series
/// of the coefficient system.
pub fn rational_series_membership(
    gamma: &EpiOverG,
    w: &Word,
    n: usize,
    cfg: &VerifyConfig,
) -> Result<SeriesMembership, CkError> {
    if n == 0 {
        return Ok(gamma_membership(gamma, w, cfg));
    }
    // precondition: w must lie in the kernel
    let depth0 = gamma_membership(gamma, w, cfg);
    match depth0.status {
        Membership::NotIn => {
            return Err(CkError::Precondition(format!(
                "depth {} membership requires kernel membership; {}",
                n, depth0.certificate
            )))
        }
        Membership::Unknown => {
            return Ok(SeriesMembership {
                element: w.clone(),
                depth: n,
                status: Membership::Unknown,
                certificate: "kernel membership itself is undecided".to_string(),
            })
        }
        Membership::In => {}
    }
    let depth1 = depth_one_membership(gamma, w, cfg)?;
    if n == 1 {
        return Ok(depth1);
    }
    // monotonicity: not in a stage means not in any deeper stage
    if depth1.status == Membership::NotIn {
        return Ok(SeriesMembership {
            element: w.clone(),
            depth: n,
            status: Membership::NotIn,
            certificate: format!("excluded at depth 1: {}", depth1.certificate),
        });
    }
    Ok(SeriesMembership {
        element: w.clone(),
        depth: n,
        status: Membership::Unknown,
        certificate: format!(
            "depth {} is beyond the engine's decided range; supply a certificate",
            n
        ),
    })
}

fn is_cyclic_free(p: &GroupPresentation) -> bool {
    p.rank() == 1 && p.relators.is_empty()
}

fn depth_one_membership(
    gamma: &EpiOverG,
    w: &Word,
    cfg: &VerifyConfig,
) -> Result<SeriesMembership, CkError> {
    if is_cyclic_free(&gamma.target) {
        // exact: the class of w in the coefficient module over Q[t, t^-1]
        let j = fox_jacobian(&gamma.source, gamma)?;
        let v = fox_vector(gamma, w)?;
        let status = if in_row_span(&j, &v) { Membership::In } else { Membership::NotIn };
        let certificate = match status {
            Membership::In => {
                "class vanishes in the rationalized kernel abelianization over Q[t,t^-1]"
                    .to_string()
            }
            _ => "nonzero class in the rationalized kernel abelianization over Q[t,t^-1]"
                .to_string(),
        };
        return Ok(SeriesMembership { element: w.clone(), depth: 1, status, certificate });
    }
    // general base: engine certificate for NotIn
    if let Some(cert) = engine_not_in_depth_one(gamma, w, cfg)? {
        return Ok(SeriesMembership {
            element: w.clone(),
            depth: 1,
            status: Membership::NotIn,
            certificate: cert,
        });
    }
    // membership certificate: all Fox derivatives vanish in the base group
    // ring, so the word is a product of commutators of kernel elements
    match fox_vanishing_certificate(gamma, w, cfg) {
        Claim::True => Ok(SeriesMembership {
            element: w.clone(),
            depth: 1,
            status: Membership::In,
            certificate: "all Fox derivatives vanish in the base group ring".to_string(),
        }),
        _ => Ok(SeriesMembership {
            element: w.clone(),
            depth: 1,
            status: Membership::Unknown,
            certificate: "no depth-1 certificate found".to_string(),
        }),
    }
}

/// Certifies w not in the depth-1 stage: if w had a power inside the derived
/// subgroup of the kernel, its image would have finite order in the ambient
/// nilpotent quotient modulo [R, R]; an infinite-order image refutes that.
fn engine_not_in_depth_one(
    gamma: &EpiOverG,
    w: &Word,
    cfg: &VerifyConfig,
) -> Result<Option<String>, CkError> {
    let kernel_gens = match kernel_normal_generators_of_epi(gamma, cfg) {
        Ok(g) => g,
        Err(_) => return Ok(None),
    };
    let class = cfg.depth0_class.clamp(1, MAX_CLASS);
    let q = NilpotentQuotient::new(&gamma.source, class)?;
    let kernel_images: Vec<_> = kernel_gens.iter().map(|k| q.pc.eval_word(k)).collect();
    let mut closure_gens = kernel_images;
    closure_gens.extend(gamma.source.relators.iter().map(|r| q.pc.eval_word(r)));
    let r = Subgroup::normal_closure(q.pc.clone(), &closure_gens);
    let d = q.rel.join(&r.derived(), false);
    let g = q.pc.eval_word(w);
    if q.has_infinite_order_mod(&d, &g) {
        Ok(Some(format!(
            "image has infinite order in the class-{} quotient modulo the derived subgroup of the kernel closure",
            class
        )))
    } else {
        Ok(None)
    }
}

/// Fox criterion for membership in the derived subgroup of the kernel's
/// free preimage: the word maps into the kernel and every Fox derivative
/// vanishes in the integral group ring of the base.
fn fox_vanishing_certificate(gamma: &EpiOverG, w: &Word, cfg: &VerifyConfig) -> Claim {
    let checker = TrivialityChecker::new(&gamma.target);
    for j in 0..gamma.source.rank() {
        let terms = fox_derivative_terms(w, j);
        let images: Vec<Word> = terms.iter().map(|(p, _)| gamma.apply(p)).collect();
        // partition the prefix images by certified equality
        let mut classes: Vec<(Word, i64)> = Vec::new();
        for (img, &sign) in images.iter().zip(terms.iter().map(|(_, s)| s)) {
            let mut placed = false;
            for (rep, coeff) in classes.iter_mut() {
                match checker.equal(img, rep, cfg) {
                    Claim::True => {
                        *coeff += sign;
                        placed = true;
                        break;
                    }
                    Claim::False => continue,
                    Claim::Unknown => return Claim::Unknown,
                }
            }
            if !placed {
                classes.push((img.clone(), sign));
            }
        }
        if classes.iter().any(|(_, c)| *c != 0) {
            return Claim::False;
        }
    }
    Claim::True
}

// ---------------------------------------------------------------------------
// PTFA certificates
// ---------------------------------------------------------------------------

/// Chain of surjections G = P_0 -> P_1 -> ... -> P_m = 1 with abelian
/// torsion-free kernels, certifying the base group poly-torsion-free-abelian.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct PtfaCertificate {
    pub base: GroupPresentation,
    pub levels: Vec<PtfaLevel>,
}

/// One step of the chain: the next quotient, the map onto it (generator
/// images), and words of the current level generating the kernel section.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct PtfaLevel {
    pub quotient: GroupPresentation,
    pub images: Vec<Word>,
    pub section_gens: Vec<Word>,
}

/// Verifies a PTFA chain: each level map is a homomorphism whose declared
/// section generators commute, the kernel of the abelianized map is torsion
/// free, and the chain ends at the trivial presentation.
pub fn ptfa_check(cert: &PtfaCertificate, cfg: &VerifyConfig) -> Result<Claim, CkError> {
    let mut current = cert.base.clone();
    if cert.levels.is_empty() {
        return if current.rank() == 0 { Ok(Claim::True) } else {
            Err(CkError::Domain("chain does not reach the trivial group".into()))
        };
    }
    let mut verdict = Claim::True;
    for level in &cert.levels {
        if level.images.len() != current.rank() {
            return Err(CkError::Domain(format!(
                "level map from '{}' needs {} generator images",
                current.name,
                current.rank()
            )));
        }
        for img in &level.images {
            if let Some(g) = img.max_generator() {
                if g >= level.quotient.rank() {
                    return Err(CkError::Domain("level image uses undeclared generators".into()));
                }
            }
        }
        // the map must kill the relators
        let checker = TrivialityChecker::new(&level.quotient);
        for r in &current.relators {
            verdict = verdict.and(checker.is_trivial(&r.substitute(&level.images), cfg));
            if verdict == Claim::False {
                return Ok(Claim::False);
            }
        }
        // declared section generators commute in the current level
        let cur_checker = TrivialityChecker::new(&current);
        for (i, a) in level.section_gens.iter().enumerate() {
            // section generators must die in the quotient
            let dies = checker.is_trivial(&a.substitute(&level.images), cfg);
            verdict = verdict.and(dies);
            for b in level.section_gens.iter().skip(i + 1) {
                verdict = verdict.and(cur_checker.is_trivial(&a.commutator(b), cfg));
            }
            if verdict == Claim::False {
                return Ok(Claim::False);
            }
        }
        // torsion-freeness of the abelianized kernel
        if !abelianized_kernel_torsion_free(&current, &level.quotient, &level.images) {
            return Ok(Claim::False);
        }
        current = level.quotient.clone();
    }
    if current.rank() != 0 {
        return Err(CkError::Domain("chain does not reach the trivial group".into()));
    }
    Ok(verdict)
}

/// Kernel of H_1(P) -> H_1(Q) computed on integral lattices; true when it
/// has no torsion.
fn abelianized_kernel_torsion_free(
    p: &GroupPresentation,
    q: &GroupPresentation,
    images: &[Word],
) -> bool {
    let gp = p.rank();
    let gq = q.rank();
    let lp = p.relator_exponent_matrix();
    let lq = q.relator_exponent_matrix();
    // stacked matrix [Phi; L_Q]: left-kernel rows give x with x Phi in L_Q-span
    let mut rows: Vec<Vec<BigInt>> = Vec::new();
    for i in 0..gp {
        rows.push((0..gq).map(|j| BigInt::from(images[i].exponent_sum(j))).collect());
    }
    for i in 0..lq.rows {
        rows.push(lq.row(i).to_vec());
    }
    let stacked = if rows.is_empty() {
        IntMat::zero(0, gq.max(1))
    } else {
        IntMat::from_rows(rows)
    };
    let kernel = left_kernel(&stacked);
    // project kernel vectors onto the first gp coordinates
    let sup: Vec<Vec<BigInt>> = kernel.iter().map(|v| v[..gp].to_vec()).collect();
    let sub: Vec<Vec<BigInt>> = (0..lp.rows).map(|i| lp.row(i).to_vec()).collect();
    if gp == 0 {
        return true;
    }
    match lattice_quotient_invariants(&sup, &sub, gp) {
        Some((_, torsion)) => torsion.iter().all(|t| t.is_one() || t.is_zero()),
        None => false,
    }
}
