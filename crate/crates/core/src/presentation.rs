//! Finite group presentations, the line-oriented input grammar, and
//! coefficient systems (epimorphisms onto a fixed base group).

use crate::error::CkError;
use crate::word::Word;
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;
use std::fmt;

#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Debug, Serialize, Deserialize)]
pub enum MarkRole {
    Meridian,
    Longitude,
}

impl fmt::Display for MarkRole {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            MarkRole::Meridian => write!(f, "meridian"),
            MarkRole::Longitude => write!(f, "longitude"),
        }
    }
}

/// A finitely presented group with optional marked boundary words.
#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct GroupPresentation {
    pub name: String,
    pub generators: Vec<String>,
    pub relators: Vec<Word>,
    pub marked: BTreeMap<MarkRole, Word>,
}

impl GroupPresentation {
    pub fn new(name: &str, generators: &[&str], relators: Vec<Word>) -> Result<Self, CkError> {
        let p = GroupPresentation {
            name: name.to_string(),
            generators: generators.iter().map(|s| s.to_string()).collect(),
            relators,
            marked: BTreeMap::new(),
        };
        p.validate()?;
        Ok(p)
    }

    /// Free group of the given rank with generator names g0, g1, ...
    pub fn free(name: &str, rank: usize) -> Self {
        GroupPresentation {
            name: name.to_string(),
            generators: (0..rank).map(|i| format!("g{}", i)).collect(),
            relators: Vec::new(),
            marked: BTreeMap::new(),
        }
    }

    /// The one-generator free group ⟨t⟩.
    pub fn infinite_cyclic(name: &str) -> Self {
        GroupPresentation {
            name: name.to_string(),
            generators: vec!["t".to_string()],
            relators: Vec::new(),
            marked: BTreeMap::new(),
        }
    }

    pub fn trivial(name: &str) -> Self {
        GroupPresentation {
            name: name.to_string(),
            generators: Vec::new(),
            relators: Vec::new(),
            marked: BTreeMap::new(),
        }
    }

    pub fn rank(&self) -> usize {
        self.generators.len()
    }

    pub fn gen_index(&self, name: &str) -> Option<usize> {
        self.generators.iter().position(|g| g == name)
    }

    pub fn mark(&mut self, role: MarkRole, w: Word) -> Result<(), CkError> {
        self.check_word(&w)?;
        self.marked.insert(role, w);
        Ok(())
    }

    pub fn marked_word(&self, role: MarkRole) -> Option<&Word> {
        self.marked.get(&role)
    }

    fn check_word(&self, w: &Word) -> Result<(), CkError> {
        if let Some(g) = w.max_generator() {
            if g >= self.generators.len() {
                return Err(CkError::Domain(format!(
                    "word uses generator index {} but '{}' has only {} generators",
                    g,
                    self.name,
                    self.generators.len()
                )));
            }
        }
        Ok(())
    }

    pub fn validate(&self) -> Result<(), CkError> {
        for r in &self.relators {
            self.check_word(r)?;
        }
        for w in self.marked.values() {
            self.check_word(w)?;
        }
        Ok(())
    }

    /// Exponent-sum matrix of the relators (rows) against generators (cols).
    pub fn relator_exponent_matrix(&self) -> crate::intmat::IntMat {
        let mut m = crate::intmat::IntMat::zero(self.relators.len(), self.generators.len());
        for (i, r) in self.relators.iter().enumerate() {
            for j in 0..self.generators.len() {
                m[(i, j)] = crate::intmat::Int::from(r.exponent_sum(j));
            }
        }
        m
    }

    /// Rank and torsion chain of the abelianization.
    pub fn abelianization(&self) -> (usize, Vec<crate::intmat::Int>) {
        crate::intmat::abelian_invariants(&self.relator_exponent_matrix())
    }

    pub fn display_word(&self, w: &Word) -> String {
        w.display(&self.generators)
    }
}

/// A coefficient system γ: source ↠ target, given by generator images,
/// with surjectivity witnesses (one source word per target generator) and an
/// optional chain certifying the target poly-torsion-free-abelian.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct EpiOverG {
    pub source: GroupPresentation,
    pub target: GroupPresentation,
    /// image of each source generator, as a word in the target
    pub images: Vec<Word>,
    /// witness for each target generator, as a word in the source
    pub witnesses: Vec<Word>,
    pub ptfa: Option<crate::series::PtfaCertificate>,
}

impl EpiOverG {
    pub fn new(
        source: GroupPresentation,
        target: GroupPresentation,
        images: Vec<Word>,
    ) -> Result<Self, CkError> {
        if images.len() != source.generators.len() {
            return Err(CkError::Domain(format!(
                "epimorphism {} -> {} needs {} generator images, got {}",
                source.name,
                target.name,
                source.generators.len(),
                images.len()
            )));
        }
        for w in &images {
            target.check_word(w)?;
        }
        let witnesses = derive_witnesses(&target, &images);
        Ok(EpiOverG { source, target, images, witnesses, ptfa: None })
    }

    pub fn with_witnesses(mut self, witnesses: Vec<Word>) -> Result<Self, CkError> {
        if witnesses.len() != self.target.generators.len() {
            return Err(CkError::Domain(
                "one surjectivity witness per target generator required".into(),
            ));
        }
        for w in &witnesses {
            self.source.check_word(w)?;
        }
        self.witnesses = witnesses;
        Ok(self)
    }

    /// Identity coefficient system on a group.
    pub fn identity(p: &GroupPresentation) -> Self {
        let images: Vec<Word> = (0..p.rank()).map(|i| Word::generator(i, 1)).collect();
        EpiOverG {
            source: p.clone(),
            target: p.clone(),
            images: images.clone(),
            witnesses: images,
            ptfa: None,
        }
    }

    /// Image of a source word in the target.
    pub fn apply(&self, w: &Word) -> Word {
        w.substitute(&self.images)
    }

    /// True when every target generator has a nonempty witness slot.
    pub fn has_witnesses(&self) -> bool {
        self.witnesses.len() == self.target.generators.len()
    }

    /// Certifies the defining invariant: every source relator maps to a word
    /// trivial in the target, checked by the class-bounded engine and the
    /// derivation search.
    pub fn verify(&self, cfg: &crate::budget::VerifyConfig) -> crate::triviality::Claim {
        let checker = crate::triviality::TrivialityChecker::new(&self.target);
        let mut out = crate::triviality::Claim::True;
        for r in &self.source.relators {
            out = out.and(checker.is_trivial(&self.apply(r), cfg));
            if out == crate::triviality::Claim::False {
                return out;
            }
        }
        out
    }
}

/// Witness derivation for the common case: a target generator that appears
/// verbatim as the image of some source generator.
fn derive_witnesses(target: &GroupPresentation, images: &[Word]) -> Vec<Word> {
    let mut out = Vec::new();
    for t in 0..target.generators.len() {
        let goal = Word::generator(t, 1);
        let goal_inv = goal.inverse();
        let mut found = Word::identity();
        for (s, img) in images.iter().enumerate() {
            if *img == goal {
                found = Word::generator(s, 1);
                break;
            }
            if *img == goal_inv {
                found = Word::generator(s, -1);
                break;
            }
        }
        out.push(found);
    }
    out
}

/// A morphism f: A → B over the shared base group, given on generators.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct MorphismOverG {
    pub images: Vec<Word>,
    pub gamma_a: EpiOverG,
    pub gamma_b: EpiOverG,
}

impl MorphismOverG {
    pub fn new(gamma_a: EpiOverG, gamma_b: EpiOverG, images: Vec<Word>) -> Result<Self, CkError> {
        if gamma_a.target != gamma_b.target {
            return Err(CkError::Domain(format!(
                "morphism endpoints live over different base groups: '{}' vs '{}'",
                gamma_a.target.name, gamma_b.target.name
            )));
        }
        if images.len() != gamma_a.source.generators.len() {
            return Err(CkError::Domain("one image per source generator required".into()));
        }
        for w in &images {
            gamma_b.source.check_word(w)?;
        }
        Ok(MorphismOverG { images, gamma_a, gamma_b })
    }

    pub fn identity(gamma: &EpiOverG) -> Self {
        let images = (0..gamma.source.rank()).map(|i| Word::generator(i, 1)).collect();
        MorphismOverG { images, gamma_a: gamma.clone(), gamma_b: gamma.clone() }
    }

    pub fn apply(&self, w: &Word) -> Word {
        w.substitute(&self.images)
    }

    pub fn is_syntactic_identity(&self) -> bool {
        self.gamma_a.source == self.gamma_b.source
            && self.images.iter().enumerate().all(|(i, w)| *w == Word::generator(i, 1))
    }

    /// Certifies that the map commutes with the coefficient systems and
    /// kills the source relators in the target group.
    pub fn verify(&self, cfg: &crate::budget::VerifyConfig) -> crate::triviality::Claim {
        let base = crate::triviality::TrivialityChecker::new(&self.gamma_a.target);
        let mut out = crate::triviality::Claim::True;
        for w in self.compatibility_words() {
            out = out.and(base.is_trivial(&w, cfg));
            if out == crate::triviality::Claim::False {
                return out;
            }
        }
        let target = crate::triviality::TrivialityChecker::new(&self.gamma_b.source);
        for r in &self.gamma_a.source.relators {
            out = out.and(target.is_trivial(&self.apply(r), cfg));
            if out == crate::triviality::Claim::False {
                return out;
            }
        }
        out
    }

    /// Words whose triviality in the base certifies γ_B ∘ f = γ_A on generators.
    pub fn compatibility_words(&self) -> Vec<Word> {
        (0..self.gamma_a.source.rank())
            .map(|i| {
                let lhs = self.gamma_b.apply(&self.images[i]);
                let rhs = &self.gamma_a.images[i];
                lhs.mul(&rhs.inverse())
            })
            .collect()
    }
}

// ---------------------------------------------------------------------------
// Input grammar
// ---------------------------------------------------------------------------

/// One parsed `.grp` file: named presentations plus epimorphism declarations.
#[derive(Clone, Debug, Default)]
pub struct GrpFile {
    pub groups: Vec<GroupPresentation>,
    /// (source group name, target group name, generator images, explicit witnesses)
    pub epis: Vec<EpiDecl>,
}

#[derive(Clone, Debug)]
pub struct EpiDecl {
    pub source: String,
    pub target: String,
    pub images: Vec<(String, Word)>,
    pub witnesses: Vec<(String, Word)>,
}

impl GrpFile {
    pub fn group(&self, name: &str) -> Option<&GroupPresentation> {
        self.groups.iter().find(|g| g.name == name)
    }

    /// Resolves the i-th epimorphism declaration into an `EpiOverG`.
    pub fn resolve_epi(&self, decl: &EpiDecl) -> Result<EpiOverG, CkError> {
        let source = self
            .group(&decl.source)
            .ok_or_else(|| CkError::Domain(format!("unknown group '{}'", decl.source)))?
            .clone();
        let target = self
            .group(&decl.target)
            .ok_or_else(|| CkError::Domain(format!("unknown group '{}'", decl.target)))?
            .clone();
        let mut images = vec![Word::identity(); source.rank()];
        for (g, w) in &decl.images {
            let idx = source
                .gen_index(g)
                .ok_or_else(|| CkError::Domain(format!("unknown generator '{}'", g)))?;
            images[idx] = w.clone();
        }
        let mut epi = EpiOverG::new(source, target, images)?;
        if !decl.witnesses.is_empty() {
            let mut wits = epi.witnesses.clone();
            for (g, w) in &decl.witnesses {
                let idx = epi
                    .target
                    .gen_index(g)
                    .ok_or_else(|| CkError::Domain(format!("unknown target generator '{}'", g)))?;
                wits[idx] = w.clone();
            }
            epi = epi.with_witnesses(wits)?;
        }
        Ok(epi)
    }
}

#[derive(Clone, Debug)]
struct RawEpi {
    source: String,
    target: String,
    images: Vec<(String, String, usize)>,
    witnesses: Vec<(String, String, usize)>,
}

/// Parses a whole file of group/epi blocks.
pub fn parse_grp_file(text: &str) -> Result<GrpFile, CkError> {
    let mut file = GrpFile::default();
    let mut raw_epis: Vec<RawEpi> = Vec::new();
    let mut current: Option<GroupPresentation> = None;
    for (lineno, raw) in text.lines().enumerate() {
        let line = strip_comment(raw).trim().to_string();
        if line.is_empty() {
            continue;
        }
        let ln = lineno + 1;
        let (head, rest) = match line.split_once(char::is_whitespace) {
            Some((h, r)) => (h, r.trim()),
            None => (line.as_str(), ""),
        };
        match head {
            "group" => {
                if let Some(g) = current.take() {
                    finish_group(&mut file, g, ln)?;
                }
                if rest.is_empty() {
                    return Err(CkError::syntax(ln, 1, "group declaration needs a name"));
                }
                current = Some(GroupPresentation {
                    name: rest.to_string(),
                    generators: Vec::new(),
                    relators: Vec::new(),
                    marked: BTreeMap::new(),
                });
            }
            "gens" => {
                let g = current
                    .as_mut()
                    .ok_or_else(|| CkError::syntax(ln, 1, "gens before any group"))?;
                for name in rest.split_whitespace() {
                    if name == "1" {
                        return Err(CkError::syntax(ln, 1, "'1' is reserved for the identity"));
                    }
                    if g.generators.iter().any(|x| x == name) {
                        return Err(CkError::syntax(ln, 1, &format!("duplicate generator '{}'", name)));
                    }
                    g.generators.push(name.to_string());
                }
            }
            "rel" => {
                let g = current
                    .as_mut()
                    .ok_or_else(|| CkError::syntax(ln, 1, "rel before any group"))?;
                let w = parse_word_in(rest, &g.generators, ln)?;
                g.relators.push(w);
            }
            "mark" => {
                let g = current
                    .as_mut()
                    .ok_or_else(|| CkError::syntax(ln, 1, "mark before any group"))?;
                let (role, word_text) = rest
                    .split_once(char::is_whitespace)
                    .ok_or_else(|| CkError::syntax(ln, 1, "mark needs a role and a word"))?;
                let role = match role {
                    "meridian" => MarkRole::Meridian,
                    "longitude" => MarkRole::Longitude,
                    other => {
                        return Err(CkError::syntax(ln, 1, &format!("unknown mark role '{}'", other)))
                    }
                };
                let w = parse_word_in(word_text.trim(), &g.generators, ln)?;
                g.marked.insert(role, w);
            }
            "epi" => {
                let g = current
                    .as_ref()
                    .ok_or_else(|| CkError::syntax(ln, 1, "epi before any group"))?;
                let (target, assignments) = rest
                    .split_once(':')
                    .ok_or_else(|| CkError::syntax(ln, 1, "epi needs 'TARGET : images'"))?;
                let mut decl = RawEpi {
                    source: g.name.clone(),
                    target: target.trim().to_string(),
                    images: Vec::new(),
                    witnesses: Vec::new(),
                };
                for part in split_outside_brackets(assignments, ',') {
                    let part = part.trim();
                    if part.is_empty() {
                        continue;
                    }
                    let (gen, img) = part
                        .split_once("->")
                        .ok_or_else(|| CkError::syntax(ln, 1, "image needs 'gen -> WORD'"))?;
                    let gen = gen.trim().to_string();
                    if g.gen_index(&gen).is_none() {
                        return Err(CkError::UndeclaredGenerator { line: ln, name: gen });
                    }
                    decl.images.push((gen, img.trim().to_string(), ln));
                }
                raw_epis.push(decl);
            }
            "wit" => {
                let (gen, word_text) = rest
                    .split_once(char::is_whitespace)
                    .ok_or_else(|| CkError::syntax(ln, 1, "wit needs 'TARGETGEN WORD'"))?;
                let decl = raw_epis
                    .last_mut()
                    .ok_or_else(|| CkError::syntax(ln, 1, "wit before any epi"))?;
                decl.witnesses.push((gen.trim().to_string(), word_text.trim().to_string(), ln));
            }
            other => {
                return Err(CkError::syntax(ln, 1, &format!("unknown directive '{}'", other)));
            }
        }
    }
    if let Some(g) = current.take() {
        finish_group(&mut file, g, text.lines().count())?;
    }
    // second pass: resolve epi image words against target alphabets
    for raw in raw_epis {
        let target = file
            .groups
            .iter()
            .find(|g| g.name == raw.target)
            .ok_or_else(|| CkError::Domain(format!("epi target '{}' not defined", raw.target)))?;
        let source = file
            .groups
            .iter()
            .find(|g| g.name == raw.source)
            .ok_or_else(|| CkError::Domain(format!("epi source '{}' not defined", raw.source)))?;
        let mut decl = EpiDecl {
            source: raw.source.clone(),
            target: raw.target.clone(),
            images: Vec::new(),
            witnesses: Vec::new(),
        };
        for (gen, text, ln) in &raw.images {
            let w = parse_word_in(text, &target.generators, *ln)?;
            decl.images.push((gen.clone(), w));
        }
        for (gen, text, ln) in &raw.witnesses {
            let w = parse_word_in(text, &source.generators, *ln)?;
            decl.witnesses.push((gen.clone(), w));
        }
        file.epis.push(decl);
    }
    Ok(file)
}

fn finish_group(file: &mut GrpFile, g: GroupPresentation, line: usize) -> Result<(), CkError> {
    if g.generators.is_empty() {
        return Err(CkError::syntax(line, 1, &format!("group '{}' has an empty generator list", g.name)));
    }
    if file.groups.iter().any(|x| x.name == g.name) {
        return Err(CkError::Domain(format!("duplicate group name '{}'", g.name)));
    }
    file.groups.push(g);
    Ok(())
}

/// Parses a single-group presentation text (errors if the text declares more
/// than one group).
pub fn parse_presentation(text: &str) -> Result<GroupPresentation, CkError> {
    let file = parse_grp_file(text)?;
    match file.groups.len() {
        0 => Err(CkError::syntax(1, 1, "no group declared")),
        1 => Ok(file.groups.into_iter().next().unwrap()),
        n => Err(CkError::Domain(format!("expected one group, found {}", n))),
    }
}

/// Splits on a separator character, ignoring occurrences nested inside
/// brackets or parentheses.
fn split_outside_brackets(text: &str, sep: char) -> Vec<&str> {
    let mut parts = Vec::new();
    let mut depth = 0usize;
    let mut start = 0usize;
    for (i, c) in text.char_indices() {
        match c {
            '[' | '(' => depth += 1,
            ']' | ')' => depth = depth.saturating_sub(1),
            c if c == sep && depth == 0 => {
                parts.push(&text[start..i]);
                start = i + c.len_utf8();
            }
            _ => {}
        }
    }
    parts.push(&text[start..]);
    parts
}

fn strip_comment(line: &str) -> &str {
    match line.find('#') {
        Some(i) => &line[..i],
        None => line,
    }
}

// word tokenizer/parser ------------------------------------------------------

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Name(String),
    Pow(i64),
    LBracket,
    RBracket,
    LParen,
    RParen,
    Comma,
    One,
}

fn tokenize_word(text: &str, line: usize) -> Result<Vec<Tok>, CkError> {
    let mut toks = Vec::new();
    let chars: Vec<char> = text.chars().collect();
    let mut i = 0usize;
    while i < chars.len() {
        let c = chars[i];
        match c {
            c if c.is_whitespace() => i += 1,
            '[' => {
                toks.push(Tok::LBracket);
                i += 1;
            }
            ']' => {
                toks.push(Tok::RBracket);
                i += 1;
            }
            '(' => {
                toks.push(Tok::LParen);
                i += 1;
            }
            ')' => {
                toks.push(Tok::RParen);
                i += 1;
            }
            ',' => {
                toks.push(Tok::Comma);
                i += 1;
            }
            '^' => {
                i += 1;
                let start = i;
                if i < chars.len() && (chars[i] == '-' || chars[i] == '+') {
                    i += 1;
                }
                while i < chars.len() && chars[i].is_ascii_digit() {
                    i += 1;
                }
                let s: String = chars[start..i].iter().collect();
                let n: i64 = s
                    .parse()
                    .map_err(|_| CkError::syntax(line, start + 1, "malformed exponent"))?;
                toks.push(Tok::Pow(n));
            }
            '1' => {
                toks.push(Tok::One);
                i += 1;
            }
            c if c.is_alphabetic() || c == '_' => {
                let start = i;
                while i < chars.len()
                    && (chars[i].is_alphanumeric() || chars[i] == '_' || chars[i] == '\'')
                {
                    i += 1;
                }
                toks.push(Tok::Name(chars[start..i].iter().collect()));
            }
            other => {
                return Err(CkError::syntax(line, i + 1, &format!("unexpected character '{}'", other)))
            }
        }
    }
    Ok(toks)
}

struct WordParser<'a> {
    toks: &'a [Tok],
    pos: usize,
    gens: &'a [String],
    line: usize,
}

impl<'a> WordParser<'a> {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos)
    }

    fn parse_word(&mut self) -> Result<Word, CkError> {
        let mut w = Word::identity();
        loop {
            match self.peek() {
                None | Some(Tok::RBracket) | Some(Tok::RParen) | Some(Tok::Comma) => break,
                _ => {
                    let t = self.parse_term()?;
                    w = w.mul(&t);
                }
            }
        }
        Ok(w)
    }

    fn parse_term(&mut self) -> Result<Word, CkError> {
        let tok = self
            .peek()
            .cloned()
            .ok_or_else(|| CkError::syntax(self.line, self.pos + 1, "unexpected end of word"))?;
        let base = match tok {
            Tok::One => {
                self.pos += 1;
                Word::identity()
            }
            Tok::Name(name) => {
                self.pos += 1;
                let idx = self
                    .gens
                    .iter()
                    .position(|g| *g == name)
                    .ok_or(CkError::UndeclaredGenerator { line: self.line, name })?;
                Word::generator(idx, 1)
            }
            Tok::LBracket => {
                self.pos += 1;
                let a = self.parse_word()?;
                self.expect(Tok::Comma)?;
                let b = self.parse_word()?;
                self.expect(Tok::RBracket)?;
                a.commutator(&b)
            }
            Tok::LParen => {
                self.pos += 1;
                let a = self.parse_word()?;
                self.expect(Tok::RParen)?;
                a
            }
            other => {
                return Err(CkError::syntax(
                    self.line,
                    self.pos + 1,
                    &format!("unexpected token {:?}", other),
                ))
            }
        };
        if let Some(Tok::Pow(n)) = self.peek().cloned() {
            self.pos += 1;
            Ok(base.pow(n))
        } else {
            Ok(base)
        }
    }

    fn expect(&mut self, t: Tok) -> Result<(), CkError> {
        if self.peek() == Some(&t) {
            self.pos += 1;
            Ok(())
        } else {
            Err(CkError::syntax(self.line, self.pos + 1, &format!("expected {:?}", t)))
        }
    }
}

/// Parses a word in the grammar `term+` with
/// `term := gen | gen^INT | [WORD,WORD] | (WORD) | 1` (powers are also
/// accepted on bracketed subwords).
pub fn parse_word_in(text: &str, gens: &[String], line: usize) -> Result<Word, CkError> {
    let toks = tokenize_word(text, line)?;
    let mut p = WordParser { toks: &toks, pos: 0, gens, line };
    let w = p.parse_word()?;
    if p.pos != p.toks.len() {
        return Err(CkError::syntax(line, p.pos + 1, "trailing tokens after word"));
    }
    Ok(w)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_trefoil() {
        let p = parse_presentation("group T\ngens x y\nrel x y x y^-1 x^-1 y^-1").unwrap();
        assert_eq!(p.name, "T");
        assert_eq!(p.generators, vec!["x", "y"]);
        assert_eq!(p.relators.len(), 1);
        // the relator is the commutation xyx = yxy rewritten
        let x = Word::generator(0, 1);
        let y = Word::generator(1, 1);
        let xyx = x.mul(&y).mul(&x);
        let yxy = y.mul(&x).mul(&y);
        assert_eq!(p.relators[0], xyx.mul(&yxy.inverse()));
    }

    #[test]
    fn parse_free_rank_one() {
        let p = parse_presentation("group Z\ngens t").unwrap();
        assert_eq!(p.generators, vec!["t"]);
        assert!(p.relators.is_empty());
    }

    #[test]
    fn commutator_sugar() {
        let p = parse_presentation("group C\ngens x y\nrel [x,y]").unwrap();
        // [x,y] = x^-1 y^-1 x y
        let expect = Word::from_letters([(0, -1), (1, -1), (0, 1), (1, 1)]);
        assert_eq!(p.relators[0], expect);
    }

    #[test]
    fn undeclared_generator() {
        let err = parse_presentation("group C\ngens x\nrel x z").unwrap_err();
        match err {
            CkError::UndeclaredGenerator { name, .. } => assert_eq!(name, "z"),
            other => panic!("wrong error: {:?}", other),
        }
    }

    #[test]
    fn empty_generator_list_rejected() {
        assert!(parse_presentation("group C\nrel x").is_err());
        assert!(parse_presentation("group C").is_err());
    }

    #[test]
    fn marks_and_powers() {
        let p = parse_presentation(
            "group T\ngens x y\nrel x y x y^-1 x^-1 y^-1\nmark meridian x\nmark longitude (x y)^3 x^-6",
        )
        .unwrap();
        let lam = p.marked_word(MarkRole::Longitude).unwrap();
        assert_eq!(lam.exponent_sum(0), -3);
        assert_eq!(lam.exponent_sum(1), 3);
    }

    #[test]
    fn epi_block_resolution() {
        let text = "group G\ngens x y\nrel [[x,y],x]\nrel [[x,y],y]\n\
                    group A\ngens x y t\nrel [x,t]\nrel [y,t]\nepi G : x -> x, y -> y, t -> [x,y]";
        let f = parse_grp_file(text).unwrap();
        assert_eq!(f.groups.len(), 2);
        let epi = f.resolve_epi(&f.epis[0]).unwrap();
        assert_eq!(epi.source.name, "A");
        assert_eq!(epi.target.name, "G");
        let t_img = &epi.images[2];
        assert_eq!(*t_img, Word::from_letters([(0, -1), (1, -1), (0, 1), (1, 1)]));
        // auto witnesses: x <- x, y <- y
        assert_eq!(epi.witnesses[0], Word::generator(0, 1));
        assert_eq!(epi.witnesses[1], Word::generator(1, 1));
    }

    #[test]
    fn syntax_error_position() {
        let err = parse_presentation("group C\ngens x\nrel x ^@").unwrap_err();
        match err {
            CkError::Syntax { line, .. } => assert_eq!(line, 3),
            other => panic!("wrong error: {:?}", other),
        }
    }
}
