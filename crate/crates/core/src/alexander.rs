//! Fox calculus: Jacobians of presentations with cyclic coefficients,
//! Alexander modules over Q[t, t^-1], and comparison of the modules induced
//! by a morphism.

use crate::budget::VerifyConfig;
use crate::error::CkError;
use crate::laurent::{laurent_snf, LaurentMatrix, LaurentPoly, ModuleDecomposition, Rat};
use crate::presentation::{EpiOverG, GroupPresentation, MorphismOverG};
use crate::seifert::SeifertMatrix;
use crate::triviality::{Claim, TrivialityChecker};
use crate::word::Word;

use serde::{Deserialize, Serialize};

/// Symbolic Fox derivative: the derivative of `w` with respect to generator
/// `gen` as a signed sum of group-word prefixes.
pub fn fox_derivative_terms(w: &Word, gen: usize) -> Vec<(Word, i64)> {
    let mut out = Vec::new();
    let mut prefix = Word::identity();
    for (g, e) in w.single_letters() {
        if g == gen {
            if e == 1 {
                out.push((prefix.clone(), 1));
            } else {
                // d(g^-1) = -g^-1
                out.push((prefix.mul(&Word::generator(g, -1)), -1));
            }
        }
        prefix = prefix.mul(&Word::generator(g, e));
    }
    out
}

/// Exponent of t assigned to a source word by a coefficient system onto the
/// infinite cyclic group.
fn t_exponent(gamma: &EpiOverG, w: &Word) -> i64 {
    w.letters().iter().map(|&(g, e)| e * gamma.images[g].exponent_sum(0)).sum()
}

fn require_cyclic_target(gamma: &EpiOverG) -> Result<(), CkError> {
    if gamma.target.rank() == 1 && gamma.target.relators.is_empty() {
        Ok(())
    } else {
        Err(CkError::Domain(format!(
            "coefficient target '{}' is not infinite cyclic",
            gamma.target.name
        )))
    }
}

/// Fox derivative of `w` with respect to `gen`, pushed into Q[t, t^-1].
pub fn fox_derivative_z(gamma: &EpiOverG, w: &Word, gen: usize) -> LaurentPoly {
    let mut p = LaurentPoly::zero();
    for (prefix, sign) in fox_derivative_terms(w, gen) {
        p.add_term(t_exponent(gamma, &prefix), Rat::from_integer(sign.into()));
    }
    p
}

/// (#relators x #generators) matrix of Fox derivatives of the relators,
/// evaluated through the cyclic coefficient system.
pub fn fox_jacobian(p: &GroupPresentation, gamma: &EpiOverG) -> Result<LaurentMatrix, CkError> {
    require_cyclic_target(gamma)?;
    if gamma.source != *p {
        return Err(CkError::Domain("coefficient system is not on this presentation".into()));
    }
    let mut m = LaurentMatrix::zero(p.relators.len(), p.rank());
    for (i, r) in p.relators.iter().enumerate() {
        for j in 0..p.rank() {
            m[(i, j)] = fox_derivative_z(gamma, r, j);
        }
    }
    Ok(m)
}

/// Fox row vector of a single word (its class in the module presented by the
/// Jacobian).
pub fn fox_vector(gamma: &EpiOverG, w: &Word) -> Result<Vec<LaurentPoly>, CkError> {
    require_cyclic_target(gamma)?;
    Ok((0..gamma.source.rank()).map(|j| fox_derivative_z(gamma, w, j)).collect())
}

/// Decomposition of the module presented by the Fox Jacobian.
pub fn alexander_module(p: &GroupPresentation, gamma: &EpiOverG) -> Result<ModuleDecomposition, CkError> {
    Ok(laurent_snf(&fox_jacobian(p, gamma)?))
}

/// Product of the torsion divisors of the Fox-Jacobian module: the
/// polynomial invariant of the presentation, unit-normalized.
pub fn alexander_polynomial_of_presentation(
    p: &GroupPresentation,
    gamma: &EpiOverG,
) -> Result<LaurentPoly, CkError> {
    let dec = alexander_module(p, gamma)?;
    let mut poly = LaurentPoly::one();
    for d in &dec.torsion_invariants {
        poly = poly.mul(d);
    }
    Ok(poly.unit_normalized())
}

/// Symmetrized polynomial of a Seifert matrix: det(V - t V^T) centered, with
/// value +-1 at t = 1 witnessed by the unimodularity of V - V^T.
pub fn alexander_poly_from_seifert(v: &SeifertMatrix) -> LaurentPoly {
    v.alexander_polynomial()
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub enum H1Comparison {
    Iso,
    NotIso(String),
    Unknown(String),
}

/// Compares the coefficient-module decompositions of source and target of a
/// morphism over the infinite cyclic base, together with the induced map's
/// cokernel.  Iso requires equal decompositions and a certified surjection;
/// a decomposition mismatch certifies NotIso; anything less is Unknown.
pub fn h1_compare(f: &MorphismOverG, cfg: &VerifyConfig) -> H1Comparison {
    if f.is_syntactic_identity() {
        return H1Comparison::Iso;
    }
    if require_cyclic_target(&f.gamma_a).is_err() || require_cyclic_target(&f.gamma_b).is_err() {
        return H1Comparison::Unknown("coefficients are only computed over an infinite cyclic base".into());
    }
    // the morphism must be well-defined: relators of the source die in the target
    let checker = TrivialityChecker::new(&f.gamma_b.source);
    for r in &f.gamma_a.source.relators {
        match checker.is_trivial(&f.apply(r), cfg) {
            Claim::True => {}
            Claim::False => {
                return H1Comparison::Unknown(format!(
                    "not a homomorphism: relator {} maps to a nontrivial word",
                    f.gamma_a.source.display_word(r)
                ))
            }
            Claim::Unknown => {
                return H1Comparison::Unknown(format!(
                    "could not certify that relator {} maps to a trivial word",
                    f.gamma_a.source.display_word(r)
                ))
            }
        }
    }
    // compatibility over the base (exact over Z): gamma_B(f(a)) = gamma_A(a)
    for w in f.compatibility_words() {
        if w.exponent_sum(0) != 0 {
            return H1Comparison::Unknown("morphism does not commute with the coefficient systems".into());
        }
    }
    let ja = match fox_jacobian(&f.gamma_a.source, &f.gamma_a) {
        Ok(m) => m,
        Err(e) => return H1Comparison::Unknown(e.to_string()),
    };
    let jb = match fox_jacobian(&f.gamma_b.source, &f.gamma_b) {
        Ok(m) => m,
        Err(e) => return H1Comparison::Unknown(e.to_string()),
    };
    let da = laurent_snf(&ja);
    let db = laurent_snf(&jb);
    if da != db {
        return H1Comparison::NotIso(format!(
            "module decompositions differ: free rank {} torsion {:?} vs free rank {} torsion {:?}",
            da.free_rank, da.torsion_invariants, db.free_rank, db.torsion_invariants
        ));
    }
    // surjectivity certificate: the images of the source generators, together
    // with the target relations, must present the zero module
    let mut rows: Vec<Vec<LaurentPoly>> = (0..jb.rows).map(|i| jb.row(i).to_vec()).collect();
    for i in 0..f.gamma_a.source.rank() {
        match fox_vector(&f.gamma_b, &f.images[i]) {
            Ok(v) => rows.push(v),
            Err(e) => return H1Comparison::Unknown(e.to_string()),
        }
    }
    let coker = laurent_snf(&LaurentMatrix::from_rows(rows));
    if coker.free_rank == 0 && coker.torsion_invariants.is_empty() {
        H1Comparison::Iso
    } else {
        H1Comparison::Unknown("equal decompositions but no surjectivity certificate".into())
    }
}
