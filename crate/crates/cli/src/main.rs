//! Command-line front end: group assembly, coefficient modules, series
//! membership, equation solving, signature functions and integrals, and the
//! rho-difference ledger.  All certified numbers print as exact rationals or
//! intervals; output for identical inputs is byte-identical.

mod io;

use anyhow::{anyhow, bail, Context, Result};
use ck_core::budget::VerifyConfig;
use ck_core::groupops::{self, Orientation};
use ck_core::laurent::laurent_snf;
use ck_core::ledger;
use ck_core::localization::{self, PiPerfectCandidate, RewritingTerm};
use ck_core::nilpotent::NilpotentQuotient;
use ck_core::omega::{omega_check, H2Witness};
use ck_core::presentation::{
    parse_grp_file, parse_word_in, EpiOverG, GroupPresentation, GrpFile, MorphismOverG,
};
use ck_core::seifert::SeifertMatrix;
use ck_core::series::{gamma_membership, ptfa_check, rational_series_membership, PtfaCertificate};
use ck_core::sigfn::{
    dense_family, lt_signature_at, signature_function, signature_integral, CirclePoint,
    FamilyRequest,
};
use ck_core::word::Word;
use clap::{Args, Parser, Subcommand};
use serde::Serialize;
use std::path::{Path, PathBuf};

const GRAMMAR: &str = "\
FILE GRAMMAR (.grp, UTF-8, line oriented; '#' starts a comment):\n\
  group NAME\n\
  gens g1 g2 ...\n\
  rel WORD                  (repeatable)\n\
  mark meridian WORD | mark longitude WORD\n\
  epi TARGET : g1 -> WORD|1 , g2 -> WORD|1 , ...\n\
  wit TARGETGEN WORD        (optional explicit surjectivity witness)\n\
WORD := term+ ; term := gen | gen^INT | [WORD,WORD] | (WORD) | 1 ;\n\
powers are also accepted on bracketed subwords; juxtaposition is\n\
multiplication and whitespace separates terms.\n\
\n\
Seifert matrices (.json): {\"name\": str, \"matrix\": [[int]]}.\n\
Laurent data (.json): coefficient maps {\"deg\": \"coeff\"}.\n\
Equation systems (.txt): 'var x1 x2 ; eq x1 = [a,b][x1,b] ; ...'\n\
Certified reals: {\"lo\": rational, \"hi\": rational, \"symbolic\": str}.";

#[derive(Parser)]
#[command(name = "ck", about = "exact knot-concordance computations", version, after_help = GRAMMAR)]
struct Cli {
    #[command(subcommand)]
    command: Top,
}

#[derive(Args, Clone)]
struct Common {
    /// nilpotent verification class
    #[arg(long, global = true)]
    class: Option<usize>,
    /// search budget (nodes) for derivations
    #[arg(long, global = true)]
    budget: Option<usize>,
    /// tolerance for certified intervals (rational or decimal)
    #[arg(long, global = true, default_value = "1/1000000")]
    tol: String,
    /// output format: text, json, csv, svg
    #[arg(long, global = true, default_value = "text")]
    format: String,
    /// write output to a file instead of stdout
    #[arg(long, global = true)]
    out: Option<PathBuf>,
}

#[derive(Subcommand)]
enum Top {
    /// presentations: parsing, abelianization, nilpotent quotients, gluing
    #[command(after_help = GRAMMAR)]
    Group {
        #[command(subcommand)]
        cmd: GroupCmd,
        #[command(flatten)]
        common: Common,
    },
    /// coefficient modules over the infinite cyclic base
    #[command(after_help = GRAMMAR)]
    Alex {
        #[command(subcommand)]
        cmd: AlexCmd,
        #[command(flatten)]
        common: Common,
    },
    /// derived-series membership and base-group chains
    #[command(after_help = GRAMMAR)]
    Series {
        #[command(subcommand)]
        cmd: SeriesCmd,
        #[command(flatten)]
        common: Common,
    },
    /// equation systems and perfect-subgroup certification
    #[command(after_help = GRAMMAR)]
    Loc {
        #[command(subcommand)]
        cmd: LocCmd,
        #[command(flatten)]
        common: Common,
    },
    /// signature functions and integrals
    #[command(after_help = GRAMMAR)]
    Sig {
        #[command(subcommand)]
        cmd: SigCmd,
        #[command(flatten)]
        common: Common,
    },
    /// infection, depth certificates, and rho-difference reports
    #[command(after_help = GRAMMAR)]
    Ledger {
        #[command(subcommand)]
        cmd: LedgerCmd,
        #[command(flatten)]
        common: Common,
    },
}

#[derive(Subcommand)]
#[command(after_help = GRAMMAR)]
enum GroupCmd {
    /// parse a presentation file and echo its structure
    #[command(after_help = GRAMMAR)]
    Parse { file: PathBuf },
    /// rank and torsion of the abelianization
    #[command(after_help = GRAMMAR)]
    Abelianize {
        file: PathBuf,
        #[arg(long)]
        group: Option<String>,
    },
    /// lower-central section invariants of the class-c quotient
    #[command(after_help = GRAMMAR)]
    Nq {
        file: PathBuf,
        #[arg(long)]
        group: Option<String>,
    },
    /// amalgamated product of two groups over a shared source
    #[command(after_help = GRAMMAR)]
    Pushout {
        file: PathBuf,
        /// shared source group
        #[arg(long)]
        over: String,
        #[arg(long)]
        left: String,
        #[arg(long)]
        right: String,
        /// images of the shared generators in the left factor: "c -> WORD, ..."
        #[arg(long)]
        left_images: String,
        #[arg(long)]
        right_images: String,
    },
    /// glue two marked exteriors along the boundary torus
    #[command(after_help = GRAMMAR)]
    Jsurgery {
        file: PathBuf,
        #[arg(long)]
        knot: String,
        #[arg(long)]
        companion: String,
        /// identify the meridians without the orientation reversal
        #[arg(long)]
        swapped: bool,
    },
}

#[derive(Subcommand)]
#[command(after_help = GRAMMAR)]
enum AlexCmd {
    /// Fox Jacobian of a presentation through its declared epimorphism
    #[command(after_help = GRAMMAR)]
    Fox {
        file: PathBuf,
        #[arg(long)]
        group: Option<String>,
    },
    /// invariant factors of a Laurent matrix over Q[t, 1/t]
    #[command(after_help = GRAMMAR)]
    Snf { file: PathBuf },
    /// symmetrized polynomial of a Seifert matrix
    #[command(after_help = GRAMMAR)]
    Poly { file: PathBuf },
}

#[derive(Subcommand)]
#[command(after_help = GRAMMAR)]
enum SeriesCmd {
    /// membership of a word at a depth of the rational derived series
    #[command(after_help = GRAMMAR)]
    Member {
        file: PathBuf,
        #[arg(long)]
        word: String,
        #[arg(long, default_value_t = 0)]
        depth: usize,
        #[arg(long)]
        group: Option<String>,
    },
    /// verify a poly-torsion-free-abelian chain certificate
    #[command(after_help = GRAMMAR)]
    Ptfa { file: PathBuf },
}

#[derive(Subcommand)]
#[command(after_help = GRAMMAR)]
enum LocCmd {
    /// kernel condition of an equation system
    #[command(after_help = GRAMMAR)]
    Validate {
        file: PathBuf,
        #[arg(long)]
        system: PathBuf,
        #[arg(long)]
        group: Option<String>,
    },
    /// unique solution in the class-c quotient, with the iteration step
    #[command(after_help = GRAMMAR)]
    Solve {
        file: PathBuf,
        #[arg(long)]
        system: PathBuf,
        #[arg(long)]
        group: Option<String>,
    },
    /// check a perfect-subgroup candidate
    #[command(after_help = GRAMMAR)]
    PpCheck {
        file: PathBuf,
        #[arg(long)]
        candidate: PathBuf,
        #[arg(long)]
        group: Option<String>,
    },
    /// candidate -> system -> two solutions -> candidate round trip
    #[command(after_help = GRAMMAR)]
    PpRoundtrip {
        file: PathBuf,
        #[arg(long)]
        candidate: PathBuf,
        #[arg(long)]
        group: Option<String>,
    },
    /// per-condition membership report for a morphism
    #[command(after_help = GRAMMAR)]
    Omega {
        file: PathBuf,
        #[arg(long)]
        source: String,
        #[arg(long)]
        target: String,
        /// generator images "x -> WORD, ..."; identity when omitted
        #[arg(long)]
        map: Option<String>,
        /// user-asserted degree-two surjectivity justification
        #[arg(long)]
        h2_witness: Option<String>,
    },
}

#[derive(Subcommand)]
#[command(after_help = GRAMMAR)]
enum SigCmd {
    /// signature at a circle point: -1 or a rational tangent half-angle
    #[command(after_help = GRAMMAR)]
    At {
        file: PathBuf,
        /// "-1" or "s=P/Q"
        #[arg(long, allow_hyphen_values = true)]
        omega: String,
    },
    /// full jump/value data
    #[command(after_help = GRAMMAR)]
    Function { file: PathBuf },
    /// normalized integral over the circle
    #[command(after_help = GRAMMAR)]
    Integral { file: PathBuf },
    /// block sum of Seifert matrices
    #[command(after_help = GRAMMAR)]
    Sum { files: Vec<PathBuf> },
    /// family whose integrals approximate targets or cover a range
    #[command(after_help = GRAMMAR)]
    Dense {
        /// comma-separated rational targets
        #[arg(long, allow_hyphen_values = true)]
        targets: Option<String>,
        /// LO..HI
        #[arg(long, allow_hyphen_values = true)]
        range: Option<String>,
        #[arg(long, default_value = "1/10")]
        epsilon: String,
    },
}

#[derive(Subcommand)]
#[command(after_help = GRAMMAR)]
enum LedgerCmd {
    /// infect a knot along a curve with a companion
    #[command(after_help = GRAMMAR)]
    Infect {
        file: PathBuf,
        #[arg(long)]
        knot: String,
        #[arg(long)]
        eta: String,
        #[arg(long)]
        seifert: PathBuf,
        #[arg(long)]
        companion_group: Option<String>,
    },
    /// depth certificate for a curve
    #[command(after_help = GRAMMAR)]
    Certify {
        file: PathBuf,
        #[arg(long)]
        knot: String,
        #[arg(long)]
        eta: String,
        #[arg(long, default_value_t = 0)]
        depth: usize,
    },
    /// rho-difference entries for one companion
    #[command(after_help = GRAMMAR)]
    Rho {
        file: PathBuf,
        #[arg(long)]
        knot: String,
        #[arg(long)]
        eta: String,
        #[arg(long, default_value_t = 0)]
        depth: usize,
        #[arg(long)]
        seifert: PathBuf,
    },
    /// pairwise non-concordance report across companions
    #[command(after_help = GRAMMAR)]
    Report {
        file: PathBuf,
        #[arg(long)]
        knot: String,
        #[arg(long)]
        eta: String,
        #[arg(long, default_value_t = 0)]
        depth: usize,
        /// comma-separated Seifert JSON paths
        #[arg(long)]
        family: String,
        /// record the user's assertion that the curve bounds a disk
        #[arg(long)]
        bounds_disk: bool,
    },
}

fn main() {
    let cli = Cli::parse();
    let code = match run(cli) {
        Ok(()) => 0,
        Err(e) => {
            eprintln!("error: {:#}", e);
            1
        }
    };
    std::process::exit(code);
}

fn config(common: &Common) -> VerifyConfig {
    let mut cfg = VerifyConfig::default();
    if let Some(c) = common.class {
        cfg = cfg.with_class(c);
    }
    if let Some(b) = common.budget {
        cfg.budget.max_nodes = b;
    }
    cfg
}

fn emit(common: &Common, text: String) -> Result<()> {
    match &common.out {
        Some(path) => std::fs::write(path, text).context("writing output"),
        None => {
            print!("{}", text);
            if !text.ends_with('\n') {
                println!();
            }
            Ok(())
        }
    }
}

fn emit_json<T: Serialize>(common: &Common, value: &T) -> Result<()> {
    let mut text = serde_json::to_string_pretty(value)?;
    text.push('\n');
    emit(common, text)
}

fn load_grp(path: &Path) -> Result<GrpFile> {
    let text =
        std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    Ok(parse_grp_file(&text)?)
}

fn pick_group<'a>(file: &'a GrpFile, name: &Option<String>) -> Result<&'a GroupPresentation> {
    match name {
        Some(n) => file.group(n).ok_or_else(|| anyhow!("no group named '{}'", n)),
        None => file.groups.first().ok_or_else(|| anyhow!("file declares no groups")),
    }
}

/// The first declared epimorphism out of the named group.
fn epi_of(file: &GrpFile, source: &str) -> Result<EpiOverG> {
    let decl = file
        .epis
        .iter()
        .find(|d| d.source == source)
        .ok_or_else(|| anyhow!("no epimorphism declared for group '{}'", source))?;
    Ok(file.resolve_epi(decl)?)
}

fn parse_images(
    text: &str,
    source: &GroupPresentation,
    target: &GroupPresentation,
) -> Result<Vec<Word>> {
    let mut images = vec![Word::identity(); source.rank()];
    let mut seen = vec![false; source.rank()];
    for part in split_top(text) {
        let part = part.trim();
        if part.is_empty() {
            continue;
        }
        let (gen, word) =
            part.split_once("->").ok_or_else(|| anyhow!("image needs 'gen -> WORD'"))?;
        let idx = source
            .gen_index(gen.trim())
            .ok_or_else(|| anyhow!("unknown generator '{}'", gen.trim()))?;
        images[idx] = parse_word_in(word.trim(), &target.generators, 0)?;
        seen[idx] = true;
    }
    if !seen.iter().all(|&s| s) {
        bail!("every generator needs an image");
    }
    Ok(images)
}

fn split_top(text: &str) -> Vec<&str> {
    let mut parts = Vec::new();
    let mut depth = 0usize;
    let mut start = 0usize;
    for (i, c) in text.char_indices() {
        match c {
            '[' | '(' => depth += 1,
            ']' | ')' => depth = depth.saturating_sub(1),
            ',' if depth == 0 => {
                parts.push(&text[start..i]);
                start = i + 1;
            }
            _ => {}
        }
    }
    parts.push(&text[start..]);
    parts
}

fn knot_from_file(file: &GrpFile, name: &str, cfg: &VerifyConfig) -> Result<ledger::KnotData> {
    let exterior = file.group(name).ok_or_else(|| anyhow!("no group named '{}'", name))?;
    let gamma = epi_of(file, name)?;
    Ok(ledger::KnotData::new(name, exterior.clone(), gamma, cfg)?)
}

fn run(cli: Cli) -> Result<()> {
    match cli.command {
        Top::Group { cmd, common } => group_cmd(cmd, &common),
        Top::Alex { cmd, common } => alex_cmd(cmd, &common),
        Top::Series { cmd, common } => series_cmd(cmd, &common),
        Top::Loc { cmd, common } => loc_cmd(cmd, &common),
        Top::Sig { cmd, common } => sig_cmd(cmd, &common),
        Top::Ledger { cmd, common } => ledger_cmd(cmd, &common),
    }
}

fn group_cmd(cmd: GroupCmd, common: &Common) -> Result<()> {
    let cfg = config(common);
    match cmd {
        GroupCmd::Parse { file } => {
            let f = load_grp(&file)?;
            if common.format == "json" {
                emit_json(common, &f.groups)
            } else {
                let mut out = String::new();
                for g in &f.groups {
                    out.push_str(&render_presentation(g));
                }
                for e in &f.epis {
                    out.push_str(&format!("epi {} -> {}\n", e.source, e.target));
                }
                emit(common, out)
            }
        }
        GroupCmd::Abelianize { file, group } => {
            let f = load_grp(&file)?;
            let g = pick_group(&f, &group)?;
            let (rank, torsion) = g.abelianization();
            #[derive(Serialize)]
            struct Ab {
                rank: usize,
                torsion: Vec<String>,
            }
            let ab = Ab { rank, torsion: torsion.iter().map(|t| t.to_string()).collect() };
            if common.format == "json" {
                emit_json(common, &ab)
            } else {
                emit(common, format!("rank {} torsion {:?}\n", ab.rank, ab.torsion))
            }
        }
        GroupCmd::Nq { file, group } => {
            let f = load_grp(&file)?;
            let g = pick_group(&f, &group)?;
            let class = common.class.unwrap_or(cfg.class);
            let q = NilpotentQuotient::new(g, class)?;
            let secs = q.lcs_sections();
            #[derive(Serialize)]
            struct Sec {
                weight: usize,
                rank: usize,
                torsion: Vec<String>,
            }
            let rows: Vec<Sec> = secs
                .iter()
                .enumerate()
                .map(|(i, s)| Sec {
                    weight: i + 1,
                    rank: s.rank,
                    torsion: s.torsion.iter().map(|t| t.to_string()).collect(),
                })
                .collect();
            if common.format == "json" {
                emit_json(common, &rows)
            } else {
                let mut out = String::new();
                for s in rows {
                    out.push_str(&format!(
                        "weight {}: rank {} torsion {:?}\n",
                        s.weight, s.rank, s.torsion
                    ));
                }
                emit(common, out)
            }
        }
        GroupCmd::Pushout { file, over, left, right, left_images, right_images } => {
            let f = load_grp(&file)?;
            let c = f.group(&over).ok_or_else(|| anyhow!("no group '{}'", over))?;
            let a_epi = epi_of(&f, &left)?;
            let b_epi = epi_of(&f, &right)?;
            let c_images_a = parse_images(&left_images, c, &a_epi.source)?;
            let c_images_b = parse_images(&right_images, c, &b_epi.source)?;
            let gamma_c = EpiOverG::new(
                c.clone(),
                a_epi.target.clone(),
                c_images_a.iter().map(|w| a_epi.apply(w)).collect(),
            )?;
            let f1 = MorphismOverG::new(gamma_c.clone(), a_epi, c_images_a)?;
            let f2 = MorphismOverG::new(gamma_c, b_epi, c_images_b)?;
            let po = groupops::pushout(&f1, &f2)?;
            if common.format == "json" {
                emit_json(common, &po.presentation)
            } else {
                emit(common, render_presentation(&po.presentation))
            }
        }
        GroupCmd::Jsurgery { file, knot, companion, swapped } => {
            let f = load_grp(&file)?;
            let ek = f.group(&knot).ok_or_else(|| anyhow!("no group '{}'", knot))?;
            let ej = f.group(&companion).ok_or_else(|| anyhow!("no group '{}'", companion))?;
            let gk = epi_of(&f, &knot)?;
            let gj = epi_of(&f, &companion)?;
            let orientation = if swapped { Orientation::Swapped } else { Orientation::Standard };
            let sg = groupops::j_surgery_group(ek, ej, &gk, &gj, orientation)?;
            if common.format == "json" {
                #[derive(Serialize)]
                struct Out {
                    presentation: GroupPresentation,
                    orientation: String,
                }
                emit_json(
                    common,
                    &Out {
                        presentation: sg.presentation,
                        orientation: format!("{:?}", sg.orientation),
                    },
                )
            } else {
                let mut out = render_presentation(&sg.presentation);
                out.push_str(&format!("orientation: {:?}\n", sg.orientation));
                emit(common, out)
            }
        }
    }
}

fn render_presentation(g: &GroupPresentation) -> String {
    let mut out = format!("group {}\ngens {}\n", g.name, g.generators.join(" "));
    for r in &g.relators {
        out.push_str(&format!("rel {}\n", g.display_word(r)));
    }
    for (role, w) in &g.marked {
        out.push_str(&format!("mark {} {}\n", role, g.display_word(w)));
    }
    out
}

fn alex_cmd(cmd: AlexCmd, common: &Common) -> Result<()> {
    match cmd {
        AlexCmd::Fox { file, group } => {
            let f = load_grp(&file)?;
            let g = pick_group(&f, &group)?;
            let gamma = epi_of(&f, &g.name)?;
            let j = ck_core::alexander::fox_jacobian(g, &gamma)?;
            emit_json(common, &io::laurent_matrix_to_dto(&j))
        }
        AlexCmd::Snf { file } => {
            let text = std::fs::read_to_string(&file)?;
            let dto: io::LaurentMatrixDto = serde_json::from_str(&text)?;
            let m = io::laurent_matrix_from_dto(&dto)?;
            let dec = laurent_snf(&m);
            #[derive(Serialize)]
            struct Out {
                free_rank: usize,
                torsion_invariants: Vec<std::collections::BTreeMap<String, String>>,
            }
            let out = Out {
                free_rank: dec.free_rank,
                torsion_invariants: dec
                    .torsion_invariants
                    .iter()
                    .map(|p| p.to_coeff_map())
                    .collect(),
            };
            if common.format == "json" {
                emit_json(common, &out)
            } else {
                let mut s = format!("free rank {}\n", out.free_rank);
                for t in &dec.torsion_invariants {
                    s.push_str(&format!("torsion divisor {}\n", t));
                }
                emit(common, s)
            }
        }
        AlexCmd::Poly { file } => {
            let v = io::read_seifert(&file)?;
            let p = ck_core::alexander::alexander_poly_from_seifert(&v);
            if common.format == "json" {
                emit(common, io::poly_to_json(&p)?)
            } else {
                emit(common, format!("{}\n", p))
            }
        }
    }
}

fn series_cmd(cmd: SeriesCmd, common: &Common) -> Result<()> {
    let cfg = config(common);
    match cmd {
        SeriesCmd::Member { file, word, depth, group } => {
            let f = load_grp(&file)?;
            let g = pick_group(&f, &group)?;
            let gamma = epi_of(&f, &g.name)?;
            let w = parse_word_in(&word, &g.generators, 0)?;
            let m = if depth == 0 {
                gamma_membership(&gamma, &w, &cfg)
            } else {
                rational_series_membership(&gamma, &w, depth, &cfg)?
            };
            if common.format == "json" {
                emit_json(common, &m)
            } else {
                emit(
                    common,
                    format!(
                        "element {} depth {}: {:?}\n  certificate: {}\n",
                        g.display_word(&m.element),
                        m.depth,
                        m.status,
                        m.certificate
                    ),
                )
            }
        }
        SeriesCmd::Ptfa { file } => {
            let text = std::fs::read_to_string(&file)?;
            let cert: PtfaCertificate = serde_json::from_str(&text)?;
            let claim = ptfa_check(&cert, &cfg)?;
            emit(common, format!("{:?}\n", claim))
        }
    }
}

#[derive(serde::Deserialize)]
struct CandidateDto {
    normal_generators: Vec<String>,
    #[serde(default)]
    rewriting: Option<Vec<Vec<RewritingTermDto>>>,
}

#[derive(serde::Deserialize)]
struct RewritingTermDto {
    #[serde(default = "one_string")]
    conjugator: String,
    gen_index: usize,
    kernel_word: String,
    #[serde(default = "one_i64")]
    sign: i64,
}

fn one_string() -> String {
    "1".to_string()
}

fn one_i64() -> i64 {
    1
}

fn load_candidate(path: &Path, ambient: EpiOverG) -> Result<PiPerfectCandidate> {
    let text = std::fs::read_to_string(path)?;
    let dto: CandidateDto = serde_json::from_str(&text)?;
    let gens = ambient.source.generators.clone();
    let normal_generators: Vec<Word> = dto
        .normal_generators
        .iter()
        .map(|s| parse_word_in(s, &gens, 0).map_err(anyhow::Error::from))
        .collect::<Result<_>>()?;
    let rewriting = match dto.rewriting {
        None => None,
        Some(rows) => Some(
            rows.iter()
                .map(|terms| {
                    terms
                        .iter()
                        .map(|t| {
                            Ok(RewritingTerm {
                                conjugator: parse_word_in(&t.conjugator, &gens, 0)?,
                                gen_index: t.gen_index,
                                kernel_word: parse_word_in(&t.kernel_word, &gens, 0)?,
                                sign: t.sign,
                            })
                        })
                        .collect::<Result<Vec<_>>>()
                })
                .collect::<Result<Vec<_>>>()?,
        ),
    };
    Ok(PiPerfectCandidate { ambient, normal_generators, rewriting })
}

fn loc_cmd(cmd: LocCmd, common: &Common) -> Result<()> {
    let cfg = config(common);
    let class = common.class.unwrap_or(3);
    match cmd {
        LocCmd::Validate { file, system, group } => {
            let f = load_grp(&file)?;
            let g = pick_group(&f, &group)?;
            let gamma = epi_of(&f, &g.name)?;
            let sys_text = std::fs::read_to_string(&system)?;
            let sys = localization::parse_equation_system(&sys_text, gamma)?;
            emit(common, format!("{:?}\n", sys.validate(&cfg)))
        }
        LocCmd::Solve { file, system, group } => {
            let f = load_grp(&file)?;
            let g = pick_group(&f, &group)?;
            let gamma = epi_of(&f, &g.name)?;
            let sys_text = std::fs::read_to_string(&system)?;
            let sys = localization::parse_equation_system(&sys_text, gamma)?;
            let (sol, steps) = localization::solve_nilpotent(&sys, class, &cfg)?;
            #[derive(Serialize)]
            struct Out {
                class: usize,
                stabilized_at_step: usize,
                solution: Vec<String>,
            }
            let out = Out {
                class,
                stabilized_at_step: steps,
                solution: sol
                    .values
                    .iter()
                    .map(|w| sys.ambient.source.display_word(w))
                    .collect(),
            };
            if common.format == "json" {
                emit_json(common, &out)
            } else {
                let mut s = format!(
                    "unique solution in the class-{} quotient (stabilized at step {}):\n",
                    out.class, out.stabilized_at_step
                );
                for (v, w) in sys.variables.iter().zip(&out.solution) {
                    s.push_str(&format!("  {} = {}\n", v, w));
                }
                emit(common, s)
            }
        }
        LocCmd::PpCheck { file, candidate, group } => {
            let f = load_grp(&file)?;
            let g = pick_group(&f, &group)?;
            let gamma = epi_of(&f, &g.name)?;
            let cand = load_candidate(&candidate, gamma)?;
            let verdict = localization::pi_perfect_check(&cand, class.max(cfg.class), &cfg)?;
            emit(common, format!("{:?}\n", verdict))
        }
        LocCmd::PpRoundtrip { file, candidate, group } => {
            let f = load_grp(&file)?;
            let g = pick_group(&f, &group)?;
            let gamma = epi_of(&f, &g.name)?;
            let cand = load_candidate(&candidate, gamma)?;
            let (sys, triv, gens) = localization::pi_perfect_to_system(&cand, &cfg)?;
            let ok1 = localization::is_solution(&sys, &triv, class)?;
            let ok2 = localization::is_solution(&sys, &gens, class)?;
            let back = localization::solutions_to_pi_perfect(&sys, &gens, &triv, class)?;
            let verdict = localization::pi_perfect_check(&back, class.max(cfg.class), &cfg)?;
            let mut out = String::new();
            out.push_str(&format!("system variables: {}\n", sys.variables.join(" ")));
            for (v, rhs) in sys.variables.iter().zip(&sys.right_sides) {
                out.push_str(&format!("  {} = {}\n", v, display_mixed(&sys, rhs)));
            }
            out.push_str(&format!(
                "identity tuple solves: {}\ngenerator tuple solves: {}\n",
                ok1, ok2
            ));
            out.push_str(&format!("round-trip verdict: {:?}\n", verdict));
            emit(common, out)
        }
        LocCmd::Omega { file, source, target, map, h2_witness } => {
            let f = load_grp(&file)?;
            let gamma_a = epi_of(&f, &source)?;
            let gamma_b = epi_of(&f, &target)?;
            let images = match map {
                Some(m) => parse_images(&m, &gamma_a.source, &gamma_b.source)?,
                None => {
                    if source != target {
                        bail!("--map is required unless source and target coincide");
                    }
                    (0..gamma_a.source.rank()).map(|i| Word::generator(i, 1)).collect()
                }
            };
            let morphism = MorphismOverG::new(gamma_a, gamma_b, images)?;
            let witness = h2_witness.map(|j| H2Witness { justification: j });
            let report = omega_check(&morphism, witness.as_ref(), &cfg);
            if common.format == "json" {
                emit_json(common, &report)
            } else {
                let mut s = String::new();
                s.push_str(&format!(
                    "(1) finitely presented data: {:?}\n",
                    report.finitely_presented
                ));
                s.push_str(&format!(
                    "(2) kernels finitely normally generated: {:?}\n",
                    report.kernels_normally_generated
                ));
                s.push_str(&format!(
                    "(3) normal surjection of kernels: {:?}\n",
                    report.normal_surjection
                ));
                s.push_str(&format!("(4a) degree-one isomorphism: {:?}\n", report.h1_isomorphism));
                s.push_str(&format!("(4b) degree-two epimorphism: {:?}\n", report.h2_epimorphism));
                s.push_str(&format!("verdict: {:?}\n", report.verdict));
                emit(common, s)
            }
        }
    }
}

fn display_mixed(sys: &localization::EquationSystem, w: &Word) -> String {
    let mut names = sys.ambient.source.generators.clone();
    names.extend(sys.variables.iter().cloned());
    w.display(&names)
}

fn sig_cmd(cmd: SigCmd, common: &Common) -> Result<()> {
    let tol = io::parse_rat(&common.tol)?;
    match cmd {
        SigCmd::At { file, omega } => {
            let v = io::read_seifert(&file)?;
            let at = if omega.trim() == "-1" {
                CirclePoint::MinusOne
            } else if let Some(s) = omega.trim().strip_prefix("s=") {
                CirclePoint::TanHalf(io::parse_rat(s)?)
            } else {
                bail!("--omega takes '-1' or 's=P/Q'");
            };
            let sig = lt_signature_at(&v, &at)?;
            emit(common, format!("{}\n", sig))
        }
        SigCmd::Function { file } => {
            let v = io::read_seifert(&file)?;
            let f = signature_function(&v)?;
            match common.format.as_str() {
                "csv" => emit(common, io::signature_function_csv(&f)),
                "svg" => emit(common, io::signature_function_svg(&f)),
                "json" => {
                    #[derive(Serialize)]
                    struct JumpOut {
                        cos_lo: String,
                        cos_hi: String,
                    }
                    #[derive(Serialize)]
                    struct Out {
                        jumps: Vec<JumpOut>,
                        values: Vec<i64>,
                    }
                    emit_json(
                        common,
                        &Out {
                            jumps: f
                                .jumps
                                .iter()
                                .map(|j| JumpOut {
                                    cos_lo: j.cos_lo.to_string(),
                                    cos_hi: j.cos_hi.to_string(),
                                })
                                .collect(),
                            values: f.values.clone(),
                        },
                    )
                }
                _ => {
                    let mut s = String::new();
                    for (k, v) in f.values.iter().enumerate() {
                        let hi = if k == 0 {
                            "1".to_string()
                        } else {
                            f.jumps[k - 1].cos_lo.to_string()
                        };
                        let lo = if k == f.jumps.len() {
                            "-1".to_string()
                        } else {
                            f.jumps[k].cos_hi.to_string()
                        };
                        s.push_str(&format!("cos in ({}, {}): value {}\n", lo, hi, v));
                    }
                    emit(common, s)
                }
            }
        }
        SigCmd::Integral { file } => {
            let v = io::read_seifert(&file)?;
            let c = signature_integral(&v, &tol)?;
            let dto = io::certified_to_dto(&c);
            if common.format == "json" {
                emit_json(common, &dto)
            } else {
                emit(
                    common,
                    format!("integral in [{}, {}]\nsymbolic: {}\n", dto.lo, dto.hi, dto.symbolic),
                )
            }
        }
        SigCmd::Sum { files } => {
            if files.is_empty() {
                bail!("at least one Seifert file required");
            }
            let mut acc = SeifertMatrix::empty("unknot");
            for f in &files {
                let v = io::read_seifert(f)?;
                acc = acc.connected_sum(&v);
            }
            emit(common, io::seifert_to_json(&acc)?)
        }
        SigCmd::Dense { targets, range, epsilon } => {
            let eps = io::parse_rat(&epsilon)?;
            let request = match (targets, range) {
                (Some(t), None) => {
                    let list = t
                        .split(',')
                        .map(|x| io::parse_rat(x.trim()))
                        .collect::<Result<Vec<_>>>()?;
                    FamilyRequest::Targets(list, eps)
                }
                (None, Some(r)) => {
                    let (lo, hi) =
                        r.split_once("..").ok_or_else(|| anyhow!("--range needs LO..HI"))?;
                    FamilyRequest::Range {
                        lo: io::parse_rat(lo.trim())?,
                        hi: io::parse_rat(hi.trim())?,
                        epsilon: eps,
                    }
                }
                _ => bail!("exactly one of --targets or --range is required"),
            };
            let fam = dense_family(&request)?;
            #[derive(Serialize)]
            struct Member {
                name: String,
                size: usize,
                integral: io::CertifiedRealDto,
            }
            let rows: Vec<Member> = fam
                .iter()
                .map(|m| Member {
                    name: m.matrix.name.clone(),
                    size: m.matrix.size(),
                    integral: io::certified_to_dto(&m.integral),
                })
                .collect();
            if common.format == "json" {
                emit_json(common, &rows)
            } else {
                let mut s = String::new();
                for m in rows {
                    s.push_str(&format!(
                        "{:30} size {:3} integral [{}, {}]\n",
                        m.name, m.size, m.integral.lo, m.integral.hi
                    ));
                }
                emit(common, s)
            }
        }
    }
}

fn ledger_cmd(cmd: LedgerCmd, common: &Common) -> Result<()> {
    let cfg = config(common);
    let tol = io::parse_rat(&common.tol)?;
    match cmd {
        LedgerCmd::Infect { file, knot, eta, seifert, companion_group } => {
            let f = load_grp(&file)?;
            let k = knot_from_file(&f, &knot, &cfg)?;
            let eta_word = parse_word_in(&eta, &k.exterior.generators, 0)?;
            let l = io::read_seifert(&seifert)?;
            let companion = match &companion_group {
                Some(name) => {
                    Some(f.group(name).ok_or_else(|| anyhow!("no group '{}'", name))?.clone())
                }
                None => None,
            };
            let infected = ledger::infect(&k, &eta_word, &l, companion.as_ref(), &cfg)?;
            let mut out = render_presentation(&infected.exterior);
            if infected.symbolic_group {
                out.push_str("group data symbolic; companion carried at the signature level\n");
            }
            for n in &infected.notes {
                out.push_str(&format!("note: {}\n", n));
            }
            emit(common, out)
        }
        LedgerCmd::Certify { file, knot, eta, depth } => {
            let f = load_grp(&file)?;
            let k = knot_from_file(&f, &knot, &cfg)?;
            let eta_word = parse_word_in(&eta, &k.exterior.generators, 0)?;
            let cert = ledger::certify_eta(&k.gamma, &eta_word, depth, &cfg)?;
            if common.format == "json" {
                emit_json(common, &cert)
            } else {
                emit(
                    common,
                    format!(
                        "depth {} certificate for {}\n  in: {}\n  not in next stage: {}\n",
                        cert.depth,
                        k.exterior.display_word(&cert.eta),
                        cert.in_evidence.certificate,
                        cert.notin_evidence.certificate
                    ),
                )
            }
        }
        LedgerCmd::Rho { file, knot, eta, depth, seifert } => {
            let f = load_grp(&file)?;
            let k = knot_from_file(&f, &knot, &cfg)?;
            let eta_word = parse_word_in(&eta, &k.exterior.generators, 0)?;
            let cert = ledger::certify_eta(&k.gamma, &eta_word, depth, &cfg)?;
            let l = io::read_seifert(&seifert)?;
            let rho = ledger::rho_differences(&cert, &l, depth + 1, &tol)?;
            if common.format == "json" {
                emit_json(common, &rho)
            } else {
                let mut out = String::new();
                for e in &rho {
                    let val = match &e.value {
                        ledger::RhoValue::ExactZero => "0 (exact)".to_string(),
                        ledger::RhoValue::Certified(c) => format!("[{}, {}]", c.lo, c.hi),
                    };
                    out.push_str(&format!(
                        "rho[{}] difference: {}  ({})\n",
                        e.index, val, e.provenance
                    ));
                }
                emit(common, out)
            }
        }
        LedgerCmd::Report { file, knot, eta, depth, family, bounds_disk } => {
            let f = load_grp(&file)?;
            let k = knot_from_file(&f, &knot, &cfg)?;
            let eta_word = parse_word_in(&eta, &k.exterior.generators, 0)?;
            let cert = ledger::certify_eta(&k.gamma, &eta_word, depth, &cfg)?;
            let mut fam = Vec::new();
            for path in family.split(',') {
                let l = io::read_seifert(Path::new(path.trim()))?;
                fam.push((format!("{}({})", k.label, l.name), cert.clone(), l));
            }
            let report = ledger::distinguish_report(&k, &fam, &tol, bounds_disk)?;
            if common.format == "json" {
                emit_json(common, &report)
            } else {
                emit(common, ledger::render_report(&report))
            }
        }
    }
}
