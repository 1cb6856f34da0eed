//! File formats and serialization DTOs: Seifert matrices and certified
//! reals as JSON, Laurent data as coefficient maps, signature functions as
//! CSV rows or an SVG step plot.

use anyhow::{bail, Context, Result};
use ck_core::laurent::{LaurentMatrix, LaurentPoly, Rat};
use ck_core::seifert::SeifertMatrix;
use ck_core::sigfn::{CertifiedReal, SignatureFunction};
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;
use std::path::Path;

#[derive(Serialize, Deserialize)]
pub struct SeifertDto {
    pub name: String,
    pub matrix: Vec<Vec<i64>>,
}

pub fn read_seifert(path: &Path) -> Result<SeifertMatrix> {
    let text = std::fs::read_to_string(path)
        .with_context(|| format!("reading {}", path.display()))?;
    let dto: SeifertDto = serde_json::from_str(&text)
        .with_context(|| format!("parsing Seifert JSON {}", path.display()))?;
    Ok(SeifertMatrix::new(&dto.name, dto.matrix)?)
}

pub fn seifert_to_json(v: &SeifertMatrix) -> Result<String> {
    let dto = SeifertDto {
        name: v.name.clone(),
        matrix: v
            .rows()
            .iter()
            .map(|r| {
                r.iter()
                    .map(|x| {
                        i64::try_from(x).map_err(|_| anyhow::anyhow!("entry too large for JSON"))
                    })
                    .collect::<Result<Vec<i64>>>()
            })
            .collect::<Result<Vec<_>>>()?,
    };
    Ok(serde_json::to_string_pretty(&dto)?)
}

#[derive(Serialize, Deserialize)]
pub struct CertifiedRealDto {
    pub lo: String,
    pub hi: String,
    pub symbolic: String,
}

pub fn certified_to_dto(c: &CertifiedReal) -> CertifiedRealDto {
    CertifiedRealDto {
        lo: c.lo.to_string(),
        hi: c.hi.to_string(),
        symbolic: c.symbolic.as_ref().map(|s| s.render()).unwrap_or_default(),
    }
}

#[derive(Serialize, Deserialize)]
pub struct LaurentMatrixDto {
    pub rows: usize,
    pub cols: usize,
    pub entries: Vec<Vec<BTreeMap<String, String>>>,
}

pub fn laurent_matrix_to_dto(m: &LaurentMatrix) -> LaurentMatrixDto {
    LaurentMatrixDto {
        rows: m.rows,
        cols: m.cols,
        entries: (0..m.rows)
            .map(|i| (0..m.cols).map(|j| m[(i, j)].to_coeff_map()).collect())
            .collect(),
    }
}

pub fn laurent_matrix_from_dto(dto: &LaurentMatrixDto) -> Result<LaurentMatrix> {
    if dto.entries.len() != dto.rows {
        bail!("entry rows do not match the declared row count");
    }
    let mut rows = Vec::new();
    for r in &dto.entries {
        if r.len() != dto.cols {
            bail!("entry columns do not match the declared column count");
        }
        let row: Vec<LaurentPoly> = r
            .iter()
            .map(|m| LaurentPoly::from_coeff_map(m).map_err(anyhow::Error::from))
            .collect::<Result<_>>()?;
        rows.push(row);
    }
    if rows.is_empty() {
        return Ok(LaurentMatrix::zero(0, dto.cols));
    }
    Ok(LaurentMatrix::from_rows(rows))
}

pub fn poly_to_json(p: &LaurentPoly) -> Result<String> {
    Ok(serde_json::to_string_pretty(&p.to_coeff_map())?)
}

pub fn parse_rat(text: &str) -> Result<Rat> {
    // accepts p/q, integers, and decimal literals like 1e-6 or 0.25
    if let Ok(r) = text.parse::<Rat>() {
        return Ok(r);
    }
    if let Some((mant, exp)) = text.split_once(['e', 'E']) {
        let e: i32 = exp.parse().context("bad exponent")?;
        let base = parse_decimal(mant)?;
        let ten = Rat::from_integer(10.into());
        let mut out = base;
        for _ in 0..e.unsigned_abs() {
            if e >= 0 {
                out *= &ten;
            } else {
                out /= &ten;
            }
        }
        return Ok(out);
    }
    parse_decimal(text)
}

fn parse_decimal(text: &str) -> Result<Rat> {
    if let Ok(r) = text.parse::<Rat>() {
        return Ok(r);
    }
    let (int_part, frac_part) = text.split_once('.').context("not a number")?;
    let negative = int_part.trim_start().starts_with('-');
    let int: Rat = if int_part.is_empty() || int_part == "-" {
        Rat::from_integer(0.into())
    } else {
        int_part.parse::<Rat>().context("bad integer part")?
    };
    let digits = frac_part.len() as u32;
    let num: Rat = frac_part.parse::<Rat>().context("bad fraction part")?;
    let denom = Rat::from_integer(num_bigint::BigInt::from(10u32).pow(digits));
    let frac = num / denom;
    Ok(if negative { int - frac } else { int + frac })
}

/// CSV rows "cos_lo,cos_hi,value" for the arcs of a signature function, by
/// decreasing cosine.
pub fn signature_function_csv(f: &SignatureFunction) -> String {
    let mut out = String::from("cos_lo,cos_hi,value\n");
    for (k, v) in f.values.iter().enumerate() {
        let hi = if k == 0 { "1".to_string() } else { f.jumps[k - 1].cos_lo.to_string() };
        let lo = if k == f.jumps.len() {
            "-1".to_string()
        } else {
            f.jumps[k].cos_hi.to_string()
        };
        out.push_str(&format!("{},{},{}\n", lo, hi, v));
    }
    out
}

/// Minimal SVG step plot of a signature function over cos(theta).
pub fn signature_function_svg(f: &SignatureFunction) -> String {
    let width = 640.0;
    let height = 240.0;
    let margin = 30.0;
    let max_abs = f.values.iter().map(|v| v.abs()).max().unwrap_or(0).max(1) as f64;
    let x_of = |cos: f64| margin + (1.0 - cos) / 2.0 * (width - 2.0 * margin);
    let y_of = |v: f64| height / 2.0 - v / max_abs * (height / 2.0 - margin);
    let mut path = String::new();
    let mut boundaries: Vec<f64> = vec![1.0];
    for j in &f.jumps {
        boundaries.push(rat_to_f64(&j.cos_lo));
    }
    boundaries.push(-1.0);
    for (k, v) in f.values.iter().enumerate() {
        let x0 = x_of(boundaries[k]);
        let x1 = x_of(boundaries[k + 1]);
        let y = y_of(*v as f64);
        if k == 0 {
            path.push_str(&format!("M {:.1} {:.1} ", x0, y));
        } else {
            path.push_str(&format!("L {:.1} {:.1} ", x0, y));
        }
        path.push_str(&format!("L {:.1} {:.1} ", x1, y));
    }
    format!(
        "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{w}\" height=\"{h}\" viewBox=\"0 0 {w} {h}\">\n\
         <line x1=\"{m}\" y1=\"{mid}\" x2=\"{xe}\" y2=\"{mid}\" stroke=\"#999\"/>\n\
         <path d=\"{path}\" fill=\"none\" stroke=\"#06c\" stroke-width=\"2\"/>\n\
         </svg>\n",
        w = width,
        h = height,
        m = margin,
        mid = height / 2.0,
        xe = width - margin,
        path = path.trim_end()
    )
}

fn rat_to_f64(r: &Rat) -> f64 {
    use num_traits::ToPrimitive;
    r.to_f64().unwrap_or(0.0)
}
