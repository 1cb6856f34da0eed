//! Per-condition report for membership of a morphism in the localizing
//! class: finite presentation data, finitely normally generated kernels, a
//! normal surjection between the kernels, and the coefficient-homology
//! conditions (isomorphism in degree one, epimorphism in degree two).

use crate::alexander::{h1_compare, H1Comparison};
use crate::budget::VerifyConfig;
use crate::groupops::kernel_normal_generators_of_epi;
use crate::presentation::MorphismOverG;
use crate::triviality::{Claim, TrivialityChecker};
use crate::word::Word;
use serde::{Deserialize, Serialize};

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub enum ConditionStatus {
    Certified(String),
    Refuted(String),
    Unknown(String),
}

impl ConditionStatus {
    pub fn is_certified(&self) -> bool {
        matches!(self, ConditionStatus::Certified(_))
    }

    pub fn is_refuted(&self) -> bool {
        matches!(self, ConditionStatus::Refuted(_))
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub enum OmegaVerdict {
    InOmega,
    NotInOmega(String),
    Unknown,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct OmegaReport {
    pub finitely_presented: ConditionStatus,
    pub kernels_normally_generated: ConditionStatus,
    pub normal_surjection: ConditionStatus,
    pub h1_isomorphism: ConditionStatus,
    pub h2_epimorphism: ConditionStatus,
    pub verdict: OmegaVerdict,
}

/// Opaque degree-two surjectivity witness supplied by the caller; the check
/// is recorded as certified-by-assertion, never derived.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct H2Witness {
    pub justification: String,
}

pub fn omega_check(
    f: &MorphismOverG,
    h2_witness: Option<&H2Witness>,
    cfg: &VerifyConfig,
) -> OmegaReport {
    let identity = f.is_syntactic_identity();

    // (1) structural: both sides carry finite presentations by construction
    let finitely_presented = ConditionStatus::Certified(format!(
        "'{}' has {} generators; '{}' is finitely presented with {} relators",
        f.gamma_a.source.name,
        f.gamma_a.source.rank(),
        f.gamma_b.source.name,
        f.gamma_b.source.relators.len()
    ));

    // (2) constructive kernel generators on both coefficient systems
    let gens_a = kernel_normal_generators_of_epi(&f.gamma_a, cfg);
    let gens_b = kernel_normal_generators_of_epi(&f.gamma_b, cfg);
    let kernels_normally_generated = match (&gens_a, &gens_b) {
        (Ok(a), Ok(b)) => ConditionStatus::Certified(format!(
            "kernels normally generated by {} and {} lifted words",
            a.len(),
            b.len()
        )),
        (Err(e), _) | (_, Err(e)) => ConditionStatus::Unknown(e.to_string()),
    };

    // (3) each kernel generator of the target in the normal closure of the
    // images of the source kernel generators
    let normal_surjection = if identity {
        ConditionStatus::Certified("identity map".to_string())
    } else {
        match (&gens_a, &gens_b) {
            (Ok(a), Ok(b)) => {
                let images: Vec<Word> = a.iter().map(|k| f.apply(k)).collect();
                let checker = TrivialityChecker::new(&f.gamma_b.source);
                let mut status =
                    ConditionStatus::Certified("all kernel generators reached".to_string());
                'outer: for k in b {
                    match checker.in_normal_closure(k, &images, cfg) {
                        Claim::True => {}
                        Claim::False => {
                            status = ConditionStatus::Refuted(format!(
                                "kernel generator {} is outside the closure of the images",
                                f.gamma_b.source.display_word(k)
                            ));
                            break 'outer;
                        }
                        Claim::Unknown => {
                            status = ConditionStatus::Unknown(format!(
                                "no derivation found for kernel generator {} within budget",
                                f.gamma_b.source.display_word(k)
                            ));
                            break 'outer;
                        }
                    }
                }
                status
            }
            _ => ConditionStatus::Unknown("kernel generators unavailable".to_string()),
        }
    };

    // (4) homology with coefficients in the base
    let h1_isomorphism = match h1_compare(f, cfg) {
        H1Comparison::Iso => ConditionStatus::Certified(
            "equal module decompositions with a surjectivity certificate".to_string(),
        ),
        H1Comparison::NotIso(w) => ConditionStatus::Refuted(w),
        H1Comparison::Unknown(w) => ConditionStatus::Unknown(w),
    };
    let h2_epimorphism = if identity {
        ConditionStatus::Certified("identity map".to_string())
    } else {
        match h2_witness {
            Some(w) => ConditionStatus::Certified(format!(
                "user-supplied chain-level witness: {}",
                w.justification
            )),
            None => ConditionStatus::Unknown(
                "degree-two surjectivity requires a chain-level witness".to_string(),
            ),
        }
    };

    let all = [
        &finitely_presented,
        &kernels_normally_generated,
        &normal_surjection,
        &h1_isomorphism,
        &h2_epimorphism,
    ];
    let verdict = if let Some(r) = all.iter().find(|c| c.is_refuted()) {
        let reason = match r {
            ConditionStatus::Refuted(w) => w.clone(),
            _ => unreachable!(),
        };
        OmegaVerdict::NotInOmega(reason)
    } else if all.iter().all(|c| c.is_certified()) {
        OmegaVerdict::InOmega
    } else {
        OmegaVerdict::Unknown
    };

    OmegaReport {
        finitely_presented,
        kernels_normally_generated,
        normal_surjection,
        h1_isomorphism,
        h2_epimorphism,
        verdict,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::presentation::{parse_grp_file, parse_presentation, EpiOverG};

    fn trefoil_over_z() -> MorphismOverG {
        let f = parse_grp_file(
            "group Z\ngens t\n\ngroup T\ngens x y\nrel x y x y^-1 x^-1 y^-1\nepi Z : x -> t, y -> t",
        )
        .unwrap();
        let gamma = f.resolve_epi(&f.epis[0]).unwrap();
        MorphismOverG::identity(&gamma)
    }

    #[test]
    fn identity_passes_all_conditions() {
        let f = trefoil_over_z();
        let report = omega_check(&f, None, &VerifyConfig::default());
        assert!(report.finitely_presented.is_certified());
        assert!(report.kernels_normally_generated.is_certified());
        assert!(report.normal_surjection.is_certified());
        assert!(report.h1_isomorphism.is_certified());
        assert!(report.h2_epimorphism.is_certified());
        assert_eq!(report.verdict, OmegaVerdict::InOmega);
    }

    #[test]
    fn meridian_inclusion_fails_h1() {
        let f = parse_grp_file(
            "group Z\ngens t\n\ngroup T\ngens x y\nrel x y x y^-1 x^-1 y^-1\nepi Z : x -> t, y -> t",
        )
        .unwrap();
        let gamma_b = f.resolve_epi(&f.epis[0]).unwrap();
        let z = parse_presentation("group A\ngens s").unwrap();
        let gamma_a = EpiOverG::new(
            z,
            gamma_b.target.clone(),
            vec![Word::generator(0, 1)],
        )
        .unwrap();
        let m = MorphismOverG::new(gamma_a, gamma_b, vec![Word::generator(0, 1)]).unwrap();
        let report = omega_check(&m, None, &VerifyConfig::default());
        assert!(report.h1_isomorphism.is_refuted());
        assert!(matches!(report.verdict, OmegaVerdict::NotInOmega(_)));
    }

    #[test]
    fn starved_budget_yields_unknown_verdict() {
        let f = parse_grp_file(
            "group Z\ngens t\n\ngroup T\ngens x y\nrel x y x y^-1 x^-1 y^-1\nepi Z : x -> t, y -> t",
        )
        .unwrap();
        let gamma = f.resolve_epi(&f.epis[0]).unwrap();
        // non-identity endomorphism: conjugation by the image of x
        let images = vec![
            Word::generator(0, 1).conjugate(&Word::generator(1, 1)),
            Word::generator(1, 1).conjugate(&Word::generator(1, 1)),
        ];
        let m = MorphismOverG::new(gamma.clone(), gamma, images).unwrap();
        let mut cfg = VerifyConfig::default();
        cfg.budget.max_nodes = 0;
        let report = omega_check(&m, None, &cfg);
        assert_eq!(report.verdict, OmegaVerdict::Unknown);
    }
}
