//! Amalgamated products, surgery-group assembly, constructive kernel
//! generation, and presentation cleanup.

use crate::budget::VerifyConfig;
use crate::error::CkError;
use crate::presentation::{EpiOverG, GroupPresentation, MarkRole, MorphismOverG};
use crate::triviality::{Claim, TrivialityChecker};
use crate::word::Word;
use serde::{Deserialize, Serialize};

/// Result of an amalgamated pushout along C -> A, C -> B.
#[derive(Clone, Debug)]
pub struct Pushout {
    pub presentation: GroupPresentation,
    pub epi: EpiOverG,
    pub include_left: MorphismOverG,
    pub include_right: MorphismOverG,
    /// relators identifying the two images of each C-generator
    pub identification_relators: Vec<Word>,
}

/// Disambiguates generator names of the right factor against the left.
fn primed_names(left: &[String], right: &[String]) -> Vec<String> {
    right
        .iter()
        .map(|name| {
            let mut candidate = name.clone();
            while left.contains(&candidate) {
                candidate.push('\'');
            }
            candidate
        })
        .collect()
}

/// Amalgamated product of the sources of f1 and f2 over their shared source,
/// with the induced coefficient system onto the shared base group.
pub fn pushout(f1: &MorphismOverG, f2: &MorphismOverG) -> Result<Pushout, CkError> {
    if f1.gamma_a.source != f2.gamma_a.source {
        return Err(CkError::Domain(
            "pushout legs must share their source group".into(),
        ));
    }
    if f1.gamma_b.target != f2.gamma_b.target {
        return Err(CkError::Domain(format!(
            "mismatched base groups: '{}' vs '{}'",
            f1.gamma_b.target.name, f2.gamma_b.target.name
        )));
    }
    let a = &f1.gamma_b.source;
    let b = &f2.gamma_b.source;
    let c = &f1.gamma_a.source;
    let offset = a.rank();
    let b_names = primed_names(&a.generators, &b.generators);

    let mut generators = a.generators.clone();
    generators.extend(b_names);
    let mut relators = a.relators.clone();
    relators.extend(b.relators.iter().map(|r| r.map_generators(|g| g + offset)));
    let mut identification_relators = Vec::new();
    for cg in 0..c.rank() {
        let left = f1.images[cg].clone();
        let right = f2.images[cg].map_generators(|g| g + offset);
        let rel = left.mul(&right.inverse());
        if !rel.is_identity() {
            identification_relators.push(rel.clone());
            relators.push(rel);
        }
    }
    let presentation = GroupPresentation {
        name: format!("{}*{}", a.name, b.name),
        generators,
        relators,
        marked: Default::default(),
    };
    presentation.validate()?;

    let mut images = f1.gamma_b.images.clone();
    images.extend(f2.gamma_b.images.iter().cloned());
    let mut epi = EpiOverG::new(presentation.clone(), f1.gamma_b.target.clone(), images)?;
    // surjectivity witnesses come through the left factor
    let wits: Vec<Word> = f1.gamma_b.witnesses.clone();
    epi = epi.with_witnesses(wits)?;
    epi.ptfa = f1.gamma_b.ptfa.clone().or_else(|| f2.gamma_b.ptfa.clone());

    let include_left = MorphismOverG::new(
        f1.gamma_b.clone(),
        epi.clone(),
        (0..a.rank()).map(|i| Word::generator(i, 1)).collect(),
    )?;
    let include_right = MorphismOverG::new(
        f2.gamma_b.clone(),
        epi.clone(),
        (0..b.rank()).map(|i| Word::generator(i + offset, 1)).collect(),
    )?;
    Ok(Pushout { presentation, epi, include_left, include_right, identification_relators })
}

/// Gluing convention for the boundary torus.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub enum Orientation {
    /// meridian to inverse meridian, longitude to longitude
    Standard,
    /// meridian to meridian (orientation swapped), flagged in the output
    Swapped,
}

#[derive(Clone, Debug)]
pub struct SurgeryGroup {
    pub presentation: GroupPresentation,
    pub epi: EpiOverG,
    pub orientation: Orientation,
    pub identification_relators: Vec<Word>,
}

/// Fundamental group of the closed manifold obtained by gluing two marked
/// knot exteriors along their boundary tori.
pub fn j_surgery_group(
    ek: &GroupPresentation,
    ej: &GroupPresentation,
    gamma_k: &EpiOverG,
    gamma_j: &EpiOverG,
    orientation: Orientation,
) -> Result<SurgeryGroup, CkError> {
    if gamma_k.target != gamma_j.target {
        return Err(CkError::Domain("mismatched base groups for surgery".into()));
    }
    let need = |p: &GroupPresentation, role: MarkRole| {
        p.marked_word(role).cloned().ok_or_else(|| {
            CkError::Domain(format!("presentation '{}' is missing a marked {}", p.name, role))
        })
    };
    let mu_k = need(ek, MarkRole::Meridian)?;
    let la_k = need(ek, MarkRole::Longitude)?;
    let mu_j = need(ej, MarkRole::Meridian)?;
    let la_j = need(ej, MarkRole::Longitude)?;

    // C = Z^2 = <m, l | [m, l]>
    let torus = GroupPresentation::new(
        "T2",
        &["m", "l"],
        vec![Word::generator(0, 1).commutator(&Word::generator(1, 1))],
    )?;
    // coefficient system on the torus; not surjective in general, so the
    // witness slots stay empty
    let torus_in_k = EpiOverG {
        source: torus.clone(),
        target: gamma_k.target.clone(),
        images: vec![gamma_k.apply(&mu_k), gamma_k.apply(&la_k)],
        witnesses: vec![Word::identity(); gamma_k.target.rank()],
        ptfa: None,
    };
    let f1 = MorphismOverG::new(torus_in_k.clone(), gamma_k.clone(), vec![mu_k, la_k])?;
    let mu_j_image = match orientation {
        Orientation::Standard => mu_j.inverse(),
        Orientation::Swapped => mu_j,
    };
    let f2 = MorphismOverG::new(torus_in_k, gamma_j.clone(), vec![mu_j_image, la_j])?;
    let po = pushout(&f1, &f2)?;
    let mut presentation = po.presentation;
    presentation.name = format!("M({})", ek.name);
    Ok(SurgeryGroup {
        presentation,
        epi: po.epi,
        orientation,
        identification_relators: po.identification_relators,
    })
}

/// Presentation of the free product of the base group with itself
/// amalgamated over the image of the meridian direction; carried as
/// bookkeeping alongside a surgery group.
pub fn double_base_presentation(
    target: &GroupPresentation,
    meridian_image: &Word,
) -> GroupPresentation {
    let offset = target.rank();
    let names = primed_names(&target.generators, &target.generators);
    let mut generators = target.generators.clone();
    generators.extend(names);
    let mut relators = target.relators.clone();
    relators.extend(target.relators.iter().map(|r| r.map_generators(|g| g + offset)));
    let ident = meridian_image.mul(&meridian_image.map_generators(|g| g + offset));
    if !ident.is_identity() {
        relators.push(ident);
    }
    GroupPresentation {
        name: format!("{}*Z*{}", target.name, target.name),
        generators,
        relators,
        marked: Default::default(),
    }
}

/// Constructive finite normal generating set for the kernel of a verified
/// epimorphism given by generator images and surjectivity witnesses: lifts
/// the target's relators and the generator/witness discrepancies.
pub fn kernel_normal_generators(
    source: &GroupPresentation,
    target: &GroupPresentation,
    images: &[Word],
    witnesses: &[Word],
    cfg: &VerifyConfig,
) -> Result<Vec<Word>, CkError> {
    if images.len() != source.rank() || witnesses.len() != target.rank() {
        return Err(CkError::Domain("images/witnesses arity mismatch".into()));
    }
    // verify witnesses: witness_i must map onto target generator i
    let checker = TrivialityChecker::new(target);
    for (i, wit) in witnesses.iter().enumerate() {
        let image_of_witness = wit.substitute(images);
        let discrepancy = image_of_witness.mul(&Word::generator(i, 1).inverse());
        match checker.is_trivial(&discrepancy, cfg) {
            Claim::True => {}
            Claim::False => {
                return Err(CkError::Domain(format!(
                    "witness for target generator '{}' fails verification",
                    target.generators[i]
                )))
            }
            Claim::Unknown => {
                return Err(CkError::NoCertificate(format!(
                    "witness for target generator '{}' could not be certified",
                    target.generators[i]
                )))
            }
        }
    }
    let mut out = Vec::new();
    // s_j: target relators pulled back through the witnesses
    for r in &target.relators {
        let s = r.substitute(witnesses);
        if !s.is_identity() {
            out.push(s);
        }
    }
    // w_k: source generator a_k against the witness expression of its image
    for k in 0..source.rank() {
        let v = images[k].substitute(witnesses);
        let w = Word::generator(k, 1).inverse().mul(&v);
        if !w.is_identity() {
            out.push(w);
        }
    }
    Ok(out)
}

pub fn kernel_normal_generators_of_epi(
    epi: &EpiOverG,
    cfg: &VerifyConfig,
) -> Result<Vec<Word>, CkError> {
    kernel_normal_generators(&epi.source, &epi.target, &epi.images, &epi.witnesses, cfg)
}

pub fn kernel_normal_generators_of_morphism(
    f: &MorphismOverG,
    witnesses: &[Word],
    cfg: &VerifyConfig,
) -> Result<Vec<Word>, CkError> {
    kernel_normal_generators(&f.gamma_a.source, &f.gamma_b.source, &f.images, witnesses, cfg)
}

/// Eliminates generators that a relator expresses in terms of the others
/// (the collapse half of a Tietze transformation); applied repeatedly.
pub fn tietze_collapse(pres: &GroupPresentation) -> GroupPresentation {
    let mut p = pres.clone();
    loop {
        let Some((gen, rel_idx, replacement)) = find_eliminable(&p) else {
            return p;
        };
        let mut relators = Vec::new();
        for (i, r) in p.relators.iter().enumerate() {
            if i == rel_idx {
                continue;
            }
            relators.push(substitute_gen(r, gen, &replacement));
        }
        relators.retain(|r| !r.is_identity());
        // drop the generator, shifting indices above it
        let generators: Vec<String> = p
            .generators
            .iter()
            .enumerate()
            .filter(|(i, _)| *i != gen)
            .map(|(_, n)| n.clone())
            .collect();
        let shift = |g: usize| if g < gen { g } else { g - 1 };
        let marked = p
            .marked
            .iter()
            .map(|(role, w)| (*role, substitute_gen(w, gen, &replacement).map_generators(shift)))
            .collect();
        p = GroupPresentation {
            name: p.name.clone(),
            generators,
            relators: relators.iter().map(|r| r.map_generators(shift)).collect(),
            marked,
        };
    }
}

/// Finds a relator of the shape g = w with w not involving g, scanning
/// cyclic rotations of each relator.
fn find_eliminable(p: &GroupPresentation) -> Option<(usize, usize, Word)> {
    for (i, r) in p.relators.iter().enumerate() {
        let letters: Vec<(usize, i64)> = r.single_letters().collect();
        for (pos, &(g, e)) in letters.iter().enumerate() {
            // rotate so this letter is first: r ~ g^e * rest
            let mut rest: Vec<(usize, i64)> = Vec::new();
            rest.extend_from_slice(&letters[pos + 1..]);
            rest.extend_from_slice(&letters[..pos]);
            if rest.iter().any(|&(h, _)| h == g) {
                continue;
            }
            // g^e * rest = 1 with |e| = 1 => g = rest^{-e}
            let rest_word = Word::from_letters(rest.iter().copied());
            let replacement = if e == 1 { rest_word.inverse() } else { rest_word };
            return Some((g, i, replacement));
        }
    }
    None
}

fn substitute_gen(w: &Word, gen: usize, replacement: &Word) -> Word {
    let mut out = Word::identity();
    for &(g, e) in w.letters() {
        if g == gen {
            out = out.mul(&replacement.pow(e));
        } else {
            out = out.mul(&Word::generator(g, e));
        }
    }
    out
}


#[cfg(test)]
mod surgery_edge_tests {
    use super::*;
    use crate::presentation::parse_presentation;

    fn marked_trefoil() -> GroupPresentation {
        parse_presentation(
            "group T\ngens x y\nrel x y x y^-1 x^-1 y^-1\nmark meridian x\nmark longitude (x y)^3 x^-6",
        )
        .unwrap()
    }

    fn unknot_exterior() -> GroupPresentation {
        let mut p = GroupPresentation::infinite_cyclic("U");
        p.mark(MarkRole::Meridian, Word::generator(0, 1)).unwrap();
        p.mark(MarkRole::Longitude, Word::identity()).unwrap();
        p
    }

    #[test]
    fn filling_with_an_unknot_exterior() {
        let t = marked_trefoil();
        let u = unknot_exterior();
        let z = GroupPresentation::infinite_cyclic("Z");
        let gk = EpiOverG::new(t.clone(), z.clone(), vec![Word::generator(0, 1); 2]).unwrap();
        let gj = EpiOverG::new(u.clone(), z, vec![Word::generator(0, 1)]).unwrap();
        let sg = j_surgery_group(&t, &u, &gk, &gj, Orientation::Standard).unwrap();
        // relators: the trefoil relator, mu_K mu_J, and the framed filling
        // relator lambda_K (the companion longitude is empty)
        assert_eq!(sg.presentation.rank(), 3);
        assert_eq!(sg.presentation.relators.len(), 3);
        let lam = crate::presentation::parse_word_in("(x y)^3 x^-6", &t.generators, 0).unwrap();
        assert!(sg.identification_relators.contains(&lam));
    }

    #[test]
    fn swapped_orientation_changes_the_relators() {
        let t = marked_trefoil();
        let z = GroupPresentation::infinite_cyclic("Z");
        let g = EpiOverG::new(t.clone(), z, vec![Word::generator(0, 1); 2]).unwrap();
        let std = j_surgery_group(&t, &t, &g, &g, Orientation::Standard).unwrap();
        let swp = j_surgery_group(&t, &t, &g, &g, Orientation::Swapped).unwrap();
        assert_eq!(swp.orientation, Orientation::Swapped);
        assert_ne!(std.identification_relators, swp.identification_relators);
        // mu_K mu_J vs mu_K mu_J^-1
        assert_eq!(std.identification_relators[0], Word::from_letters([(0, 1), (2, 1)]));
        assert_eq!(swp.identification_relators[0], Word::from_letters([(0, 1), (2, -1)]));
    }

    #[test]
    fn mismatched_base_groups_refused() {
        let t = marked_trefoil();
        let z = GroupPresentation::infinite_cyclic("Z");
        let z2 = parse_presentation("group Z2\ngens u v\nrel [u,v]").unwrap();
        let gk = EpiOverG::new(t.clone(), z, vec![Word::generator(0, 1); 2]).unwrap();
        let gj =
            EpiOverG::new(t.clone(), z2, vec![Word::generator(0, 1); 2]).unwrap();
        assert!(j_surgery_group(&t, &t, &gk, &gj, Orientation::Standard).is_err());
    }
}
