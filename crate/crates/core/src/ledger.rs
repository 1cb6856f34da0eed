//! Bookkeeping for surgery groups, infection, depth certificates, and
//! differences of rho-invariants: exact zeros below the infection depth and
//! certified signature integrals at the first interesting index, assembled
//! into non-concordance reports.

use crate::budget::VerifyConfig;
use crate::error::CkError;
use crate::groupops::{double_base_presentation, j_surgery_group, Orientation, SurgeryGroup};
use crate::laurent::Rat;
use crate::presentation::{EpiOverG, GroupPresentation, MarkRole};
use crate::seifert::SeifertMatrix;
use crate::series::{gamma_membership, rational_series_membership, Membership, SeriesMembership};
use crate::sigfn::{signature_integral, CertifiedReal};
use crate::word::Word;
use serde::{Deserialize, Serialize};

/// A knot presented by its exterior group with marked boundary words and a
/// coefficient system; the meridian must be certified null-homologous
/// (kernel membership).
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct KnotData {
    pub label: String,
    pub exterior: GroupPresentation,
    pub gamma: EpiOverG,
    /// infections carried only at the signature level
    pub stored_infections: Vec<(Word, SeifertMatrix)>,
    /// set when the group data is a symbolic stand-in after an infection
    /// without an explicit companion group
    pub symbolic_group: bool,
    pub notes: Vec<String>,
}

impl KnotData {
    pub fn new(
        label: &str,
        exterior: GroupPresentation,
        gamma: EpiOverG,
        cfg: &VerifyConfig,
    ) -> Result<Self, CkError> {
        if gamma.verify(cfg) == crate::triviality::Claim::False {
            return Err(CkError::Domain(format!(
                "coefficient system of '{}' does not kill the relators",
                label
            )));
        }
        let mu = exterior
            .marked_word(MarkRole::Meridian)
            .ok_or_else(|| CkError::Domain(format!("knot '{}' has no marked meridian", label)))?;
        match gamma_membership(&gamma, mu, cfg).status {
            Membership::In => {}
            Membership::NotIn => {
                return Err(CkError::Domain(format!(
                    "meridian of '{}' is not null-homologous over the base",
                    label
                )))
            }
            Membership::Unknown => {
                return Err(CkError::NoCertificate(format!(
                    "meridian kernel membership for '{}' undecided",
                    label
                )))
            }
        }
        Ok(KnotData {
            label: label.to_string(),
            exterior,
            gamma,
            stored_infections: Vec::new(),
            symbolic_group: false,
            notes: Vec::new(),
        })
    }
}

/// Surgery assembly: the glued group over the base, plus the doubled-base
/// coefficient bookkeeping.
#[derive(Clone, Debug)]
pub struct SurgeryAssembly {
    pub group: SurgeryGroup,
    /// presentation of the doubled base amalgamated over the meridian image
    pub double_base: GroupPresentation,
    /// images of the surgery-group generators in the doubled base
    pub double_images: Vec<Word>,
}

/// Glues the exteriors of K and J along the boundary torus and records both
/// coefficient systems.
pub fn build_mk(k: &KnotData, j: &KnotData) -> Result<SurgeryAssembly, CkError> {
    if k.gamma.target != j.gamma.target {
        return Err(CkError::Domain("mismatched base groups".into()));
    }
    let group = j_surgery_group(
        &k.exterior,
        &j.exterior,
        &k.gamma,
        &j.gamma,
        Orientation::Standard,
    )?;
    let mu_k = k.exterior.marked_word(MarkRole::Meridian).unwrap();
    let mu_image = k.gamma.apply(mu_k);
    let double_base = double_base_presentation(&k.gamma.target, &mu_image);
    // generators of the surgery group: K-side then J-side; K maps into the
    // first copy, J into the second
    let offset = k.gamma.target.rank();
    let mut double_images: Vec<Word> = Vec::new();
    for img in &k.gamma.images {
        double_images.push(img.clone());
    }
    for img in &j.gamma.images {
        double_images.push(img.map_generators(|g| g + offset));
    }
    Ok(SurgeryAssembly { group, double_base, double_images })
}

/// Infection along a curve: re-ties the strands through the disk bounded by
/// `eta` into the companion knot.  With a companion group the exterior is
/// the amalgam over the torus (companion meridian to the inverse longitude
/// of eta, companion longitude to the meridian of eta); without one, only
/// the Seifert matrix is stored and the group is marked symbolic.
pub fn infect(
    k: &KnotData,
    eta: &Word,
    l: &SeifertMatrix,
    l_group: Option<&GroupPresentation>,
    cfg: &VerifyConfig,
) -> Result<KnotData, CkError> {
    let mut out = k.clone();
    out.label = format!("{}({})", k.label, l.name);
    if eta.is_identity() {
        out.notes.push("infection along a trivial curve: pass-through".to_string());
        return Ok(out);
    }
    out.stored_infections.push((eta.clone(), l.clone()));
    let Some(lg) = l_group else {
        out.symbolic_group = true;
        out.notes.push(format!(
            "companion '{}' carried at the signature level only",
            l.name
        ));
        return Ok(out);
    };
    let mu_l = lg
        .marked_word(MarkRole::Meridian)
        .ok_or_else(|| CkError::Domain("companion group needs a marked meridian".into()))?
        .clone();
    let la_l = lg
        .marked_word(MarkRole::Longitude)
        .ok_or_else(|| CkError::Domain("companion group needs a marked longitude".into()))?
        .clone();
    let ek = &k.exterior;
    let base_rank = ek.rank();
    let meta = base_rank; // index of the new meridian-of-eta generator
    let shift = base_rank + 1;
    let mut generators = ek.generators.clone();
    let mut m_eta_name = "m_eta".to_string();
    while generators.contains(&m_eta_name) {
        m_eta_name.push('\'');
    }
    generators.push(m_eta_name);
    for g in &lg.generators {
        let mut name = g.clone();
        while generators.contains(&name) {
            name.push('\'');
        }
        generators.push(name);
    }
    let mut relators = ek.relators.clone();
    relators.extend(lg.relators.iter().map(|r| r.map_generators(|g| g + shift)));
    // companion meridian ~ inverse longitude of eta (the untwisted framing
    // reads the longitude of eta as eta itself)
    relators.push(mu_l.map_generators(|g| g + shift).mul(eta));
    // companion longitude ~ meridian of eta
    relators.push(la_l.map_generators(|g| g + shift).mul(&Word::generator(meta, -1)));
    let exterior = GroupPresentation {
        name: format!("E({})", out.label),
        generators,
        relators,
        marked: ek.marked.clone(),
    };
    exterior.validate()?;
    // coefficient system: old generators keep their images; the meridian of
    // eta bounds a disk, and the companion side is normally generated by its
    // meridian, so everything new maps trivially
    let mut images = k.gamma.images.clone();
    images.push(Word::identity());
    for _ in 0..lg.rank() {
        images.push(Word::identity());
    }
    let gamma = EpiOverG::new(exterior.clone(), k.gamma.target.clone(), images)?
        .with_witnesses(k.gamma.witnesses.clone())?;
    out.exterior = exterior;
    out.gamma = gamma;
    out.symbolic_group = false;
    let _ = cfg;
    Ok(out)
}

#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub enum SeriesKind {
    Rational,
    LocalUserSupplied,
}

/// Evidence that an infection curve sits at exact depth n of the series:
/// membership at depth n and certified non-membership at depth n + 1.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct DepthCertificate {
    pub eta: Word,
    pub depth: usize,
    pub in_evidence: SeriesMembership,
    pub notin_evidence: SeriesMembership,
    pub series_kind: SeriesKind,
}

impl DepthCertificate {
    /// Accepts caller-supplied evidence (for series data outside the
    /// engine's decided range); statuses must still be In and NotIn.
    pub fn from_user_evidence(
        eta: Word,
        depth: usize,
        in_evidence: SeriesMembership,
        notin_evidence: SeriesMembership,
    ) -> Result<Self, CkError> {
        if in_evidence.status != Membership::In || notin_evidence.status != Membership::NotIn {
            return Err(CkError::Domain(
                "certificate evidence must be In at depth n and NotIn at depth n+1".into(),
            ));
        }
        if in_evidence.depth != depth || notin_evidence.depth != depth + 1 {
            return Err(CkError::Domain(
                "evidence depths must match the certified depth and its successor".into(),
            ));
        }
        Ok(DepthCertificate {
            eta,
            depth,
            in_evidence,
            notin_evidence,
            series_kind: SeriesKind::LocalUserSupplied,
        })
    }
}

/// Builds a depth certificate from the engine's series answers; fails closed
/// on any Unknown.
pub fn certify_eta(
    gamma_p: &EpiOverG,
    eta: &Word,
    n: usize,
    cfg: &VerifyConfig,
) -> Result<DepthCertificate, CkError> {
    let in_evidence = rational_series_membership(gamma_p, eta, n, cfg)?;
    let notin_evidence = rational_series_membership(gamma_p, eta, n + 1, cfg)?;
    let mut undecided = Vec::new();
    if in_evidence.status != Membership::In {
        undecided.push(format!(
            "depth {}: expected In, engine reports {:?} ({})",
            n, in_evidence.status, in_evidence.certificate
        ));
    }
    if notin_evidence.status != Membership::NotIn {
        undecided.push(format!(
            "depth {}: expected NotIn, engine reports {:?} ({})",
            n + 1,
            notin_evidence.status,
            notin_evidence.certificate
        ));
    }
    if !undecided.is_empty() {
        return Err(CkError::NoCertificate(undecided.join("; ")));
    }
    Ok(DepthCertificate {
        eta: eta.clone(),
        depth: n,
        in_evidence,
        notin_evidence,
        series_kind: SeriesKind::Rational,
    })
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub enum RhoValue {
    ExactZero,
    Certified(CertifiedReal),
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct RhoLedgerEntry {
    pub label: String,
    pub index: usize,
    pub value: RhoValue,
    pub provenance: String,
}

/// Differences of rho-invariants of an infected knot against the base:
/// exactly zero up to the certificate depth, the normalized signature
/// integral of the companion at the next index; deeper indices are refused.
pub fn rho_differences(
    cert: &DepthCertificate,
    l: &SeifertMatrix,
    i_max: usize,
    tol: &Rat,
) -> Result<Vec<RhoLedgerEntry>, CkError> {
    let n = cert.depth;
    if i_max > n + 1 {
        return Err(CkError::Domain(format!(
            "the difference formula says nothing above index {}; requested {}",
            n + 1,
            i_max
        )));
    }
    let mut out = Vec::new();
    for i in 0..=i_max {
        if i <= n {
            out.push(RhoLedgerEntry {
                label: l.name.clone(),
                index: i,
                value: RhoValue::ExactZero,
                provenance: format!(
                    "difference vanishes for indices up to the infection depth {}",
                    n
                ),
            });
        } else {
            let integral = signature_integral(l, tol)?;
            out.push(RhoLedgerEntry {
                label: l.name.clone(),
                index: i,
                value: RhoValue::Certified(integral),
                provenance:
                    "difference equals the normalized signature integral of the companion at depth n+1"
                        .to_string(),
            });
        }
    }
    Ok(out)
}

#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub enum TauImage {
    Trivial,
    InfiniteCyclic,
}

/// Image of the companion's group in the coefficient quotients: trivial up
/// to the certificate depth, infinite cyclic at the next index; anything
/// deeper is outside the recorded statement and refused.
pub fn tau_image(cert: &DepthCertificate, i: usize) -> Result<TauImage, CkError> {
    if i <= cert.depth {
        Ok(TauImage::Trivial)
    } else if i == cert.depth + 1 {
        Ok(TauImage::InfiniteCyclic)
    } else {
        Err(CkError::Domain(format!(
            "index {} exceeds the recorded range {}",
            i,
            cert.depth + 1
        )))
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct FamilyEntry {
    pub label: String,
    pub eta: String,
    pub depth: usize,
    #[serde(rename = "L")]
    pub companion: String,
    pub rho: Vec<RhoLedgerEntry>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct Verdict {
    pub a: String,
    pub b: String,
    pub status: String,
    pub gap: Option<String>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct DistinguishReport {
    pub base: String,
    pub family: Vec<FamilyEntry>,
    pub verdicts: Vec<Verdict>,
    pub characteristic_note: Option<String>,
}

/// Pairwise comparison of the certified rho-differences of a family of
/// infections sharing one depth certificate level: disjoint intervals prove
/// the knots non-concordant; overlapping intervals yield no verdict.
pub fn distinguish_report(
    base: &KnotData,
    family: &[(String, DepthCertificate, SeifertMatrix)],
    tol: &Rat,
    eta_bounds_disk: bool,
) -> Result<DistinguishReport, CkError> {
    if family.is_empty() {
        return Err(CkError::Domain("empty family".into()));
    }
    let depth = family[0].1.depth;
    for (label, cert, _) in family {
        if cert.depth != depth {
            return Err(CkError::Domain(format!(
                "depth mismatch in the family: '{}' has depth {}, expected {}",
                label, cert.depth, depth
            )));
        }
    }
    let mut entries = Vec::new();
    let mut intervals: Vec<(String, CertifiedReal)> = Vec::new();
    for (label, cert, l) in family {
        let rho = rho_differences(cert, l, depth + 1, tol)?;
        let top = match &rho[depth + 1].value {
            RhoValue::Certified(c) => c.clone(),
            RhoValue::ExactZero => CertifiedReal::exact(Rat::from_integer(0.into())),
        };
        intervals.push((label.clone(), top));
        entries.push(FamilyEntry {
            label: label.clone(),
            eta: base.exterior.display_word(&cert.eta),
            depth,
            companion: l.name.clone(),
            rho,
        });
    }
    let mut verdicts = Vec::new();
    for i in 0..intervals.len() {
        for j in i + 1..intervals.len() {
            let (la, ia) = &intervals[i];
            let (lb, ib) = &intervals[j];
            if ia.disjoint(ib) {
                let gap = if ia.hi < ib.lo {
                    &ib.lo - &ia.hi
                } else {
                    &ia.lo - &ib.hi
                };
                verdicts.push(Verdict {
                    a: la.clone(),
                    b: lb.clone(),
                    status: "not concordant".to_string(),
                    gap: Some(gap.to_string()),
                });
            } else {
                verdicts.push(Verdict {
                    a: la.clone(),
                    b: lb.clone(),
                    status: "no verdict (intervals overlap)".to_string(),
                    gap: None,
                });
            }
        }
    }
    let characteristic_note = eta_bounds_disk.then(|| {
        format!(
            "each member is characteristic for '{}' by construction (infection along a curve asserted to bound a disk)",
            base.label
        )
    });
    Ok(DistinguishReport {
        base: base.label.clone(),
        family: entries,
        verdicts,
        characteristic_note,
    })
}

/// Plain-text table of a report.
pub fn render_report(report: &DistinguishReport) -> String {
    let mut out = String::new();
    out.push_str(&format!("base: {}\n", report.base));
    out.push_str("family:\n");
    for e in &report.family {
        let top = e
            .rho
            .last()
            .map(|r| match &r.value {
                RhoValue::ExactZero => "0".to_string(),
                RhoValue::Certified(c) => format!("[{}, {}]", c.lo, c.hi),
            })
            .unwrap_or_default();
        out.push_str(&format!(
            "  {:20} eta = {:16} depth = {}  companion = {:12} rho[{}] = {}\n",
            e.label,
            e.eta,
            e.depth,
            e.companion,
            e.depth + 1,
            top
        ));
    }
    out.push_str("verdicts:\n");
    for v in &report.verdicts {
        match &v.gap {
            Some(g) => out.push_str(&format!(
                "  {} vs {}: {} (gap >= {})\n",
                v.a, v.b, v.status, g
            )),
            None => out.push_str(&format!("  {} vs {}: {}\n", v.a, v.b, v.status)),
        }
    }
    if let Some(n) = &report.characteristic_note {
        out.push_str(&format!("note: {}\n", n));
    }
    out
}


#[cfg(test)]
mod refusal_tests {
    use super::*;
    use crate::presentation::parse_grp_file;

    #[test]
    fn deep_certificates_need_user_evidence() {
        let f = parse_grp_file(
            "group G\ngens x y\nrel [[x,y],x]\nrel [[x,y],y]\n\
             group A\ngens x y t\nrel [x,t]\nrel [y,t]\nepi G : x -> x, y -> y, t -> [x,y]",
        )
        .unwrap();
        let gamma = f.resolve_epi(&f.epis[0]).unwrap();
        let k1 = Word::generator(0, 1)
            .commutator(&Word::generator(1, 1))
            .mul(&Word::generator(2, -1));
        let k2 = k1.conjugate(&Word::generator(0, 1));
        // [k1, k2] is In at depth 1 but depths beyond are undecided
        let err = certify_eta(&gamma, &k1.commutator(&k2), 3, &VerifyConfig::default());
        assert!(matches!(err, Err(CkError::NoCertificate(_))));
    }

    #[test]
    fn mismatched_surgery_targets_refused() {
        let f = parse_grp_file(
            "group G\ngens x y\nrel [[x,y],x]\nrel [[x,y],y]\n\
             group A\ngens x y t\nrel [x,t]\nrel [y,t]\nmark meridian [x,y] t^-1\nmark longitude t\nepi G : x -> x, y -> y, t -> [x,y]\n\
             group Z\ngens s\n\n\
             group B\ngens p\nmark meridian p\nmark longitude 1\nepi Z : p -> 1",
        )
        .unwrap();
        let ga = f.resolve_epi(&f.epis[0]).unwrap();
        let gb = f.resolve_epi(&f.epis[1]).unwrap();
        let cfg = VerifyConfig::default();
        let ka = KnotData::new("a", f.group("A").unwrap().clone(), ga, &cfg).unwrap();
        let kb = KnotData::new("b", f.group("B").unwrap().clone(), gb, &cfg).unwrap();
        assert!(build_mk(&ka, &kb).is_err());
    }
}
