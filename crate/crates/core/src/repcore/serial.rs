//! Canonical text form of a module, used for golden files.
//!
//! ```text
//! frobkit-module 1
//! field 3 2 x^2+1
//! dim 2 levels 1
//! pchar 00
//! provenance L_1
//! grading 1 -1
//! E0 0100
//! F0 0001
//! ```
//! Each matrix line is the row-major sequence of entries, every entry the
//! code `a + b p` of `a + b x` in fixed-width lowercase hex.

use crate::error::{Error, Result};
use crate::exactfield::{FieldCtx, FieldElement, Matrix};
use crate::smallalg::PChar;

use super::module::ModuleRep;

fn width(ctx: FieldCtx) -> usize {
    format!("{:x}", ctx.size() - 1).len()
}

fn code(x: FieldElement) -> usize {
    let c = x.coeffs();
    let p = x.ctx().p() as usize;
    c.iter().rev().fold(0, |acc, &d| acc * p + d as usize)
}

fn decode(ctx: FieldCtx, mut v: usize) -> Result<FieldElement> {
    if v >= ctx.size() {
        return Err(Error::Parse(format!("entry code {v} out of range")));
    }
    let p = ctx.p() as usize;
    let mut coeffs = Vec::new();
    for _ in 0..ctx.k() {
        coeffs.push((v % p) as u32);
        v /= p;
    }
    ctx.from_coeffs(&coeffs)
}

fn hex_matrix(m: &Matrix, w: usize) -> String {
    let mut s = String::with_capacity(m.rows() * m.cols() * w);
    for i in 0..m.rows() {
        for j in 0..m.cols() {
            s.push_str(&format!("{:0w$x}", code(m.get(i, j)), w = w));
        }
    }
    s
}

pub fn to_canonical_text(m: &ModuleRep) -> String {
    let ctx = m.ctx();
    let w = width(ctx);
    let mut out = String::new();
    out.push_str("frobkit-module 1\n");
    out.push_str(&format!("field {} {} {}\n", ctx.p(), ctx.k(), ctx.modulus_string()));
    out.push_str(&format!("dim {} levels {}\n", m.dim(), m.levels()));
    out.push_str(&format!("pchar {:0w$x}\n", code(m.pchar().chi_h), w = w));
    out.push_str(&format!("provenance {}\n", m.provenance));
    let g: Vec<String> = m.grading().iter().map(|x| x.to_string()).collect();
    out.push_str(&format!("grading {}\n", g.join(" ")).replace("grading \n", "grading\n"));
    for j in 0..m.levels() {
        out.push_str(&format!("E{j} {}\n", hex_matrix(m.e(j), w)));
    }
    for j in 0..m.levels() {
        out.push_str(&format!("F{j} {}\n", hex_matrix(m.f(j), w)));
    }
    out
}

fn field_line<'a>(lines: &mut impl Iterator<Item = &'a str>, key: &str) -> Result<&'a str> {
    let line = lines.next().ok_or_else(|| Error::Parse(format!("missing `{key}` line")))?;
    let rest = line.strip_prefix(key).ok_or_else(|| Error::Parse(format!("expected `{key}`, got `{line}`")))?;
    Ok(rest.strip_prefix(' ').unwrap_or(rest))
}

fn parse_num<T: std::str::FromStr>(s: &str) -> Result<T> {
    s.trim().parse().map_err(|_| Error::Parse(format!("bad number `{s}`")))
}

fn parse_matrix(ctx: FieldCtx, n: usize, hex: &str, w: usize) -> Result<Matrix> {
    let hex = hex.trim();
    if hex.len() != n * n * w {
        return Err(Error::Parse(format!("matrix has {} hex digits, expected {}", hex.len(), n * n * w)));
    }
    let mut m = Matrix::zeros(ctx, n, n);
    for idx in 0..n * n {
        let v = usize::from_str_radix(&hex[idx * w..(idx + 1) * w], 16)
            .map_err(|_| Error::Parse("bad hex digit".into()))?;
        m.set(idx / n, idx % n, decode(ctx, v)?);
    }
    Ok(m)
}

pub fn from_canonical_text(text: &str) -> Result<ModuleRep> {
    let mut lines = text.lines();
    if lines.next() != Some("frobkit-module 1") {
        return Err(Error::Parse("missing header".into()));
    }
    let fl: Vec<&str> = field_line(&mut lines, "field")?.split_whitespace().collect();
    if fl.len() != 3 {
        return Err(Error::Parse("field line needs p, k, modulus".into()));
    }
    let ctx = FieldCtx::new(parse_num(fl[0])?, parse_num(fl[1])?)?;
    if ctx.modulus_string() != fl[2] {
        return Err(Error::Parse(format!("modulus {} does not match {}", fl[2], ctx.modulus_string())));
    }
    let w = width(ctx);
    let dl: Vec<&str> = field_line(&mut lines, "dim")?.split_whitespace().collect();
    if dl.len() != 3 || dl[1] != "levels" {
        return Err(Error::Parse("bad dim line".into()));
    }
    let n: usize = parse_num(dl[0])?;
    let levels: usize = parse_num(dl[2])?;
    let chi = decode(ctx, usize::from_str_radix(field_line(&mut lines, "pchar")?.trim(), 16)
        .map_err(|_| Error::Parse("bad pchar".into()))?)?;
    let provenance = field_line(&mut lines, "provenance")?.to_string();
    let grading = field_line(&mut lines, "grading")?
        .split_whitespace()
        .map(parse_num)
        .collect::<Result<Vec<i64>>>()?;
    if grading.len() != n {
        return Err(Error::Parse("grading length differs from dim".into()));
    }
    let mut e = Vec::with_capacity(levels);
    let mut f = Vec::with_capacity(levels);
    for j in 0..levels {
        e.push(parse_matrix(ctx, n, field_line(&mut lines, &format!("E{j}"))?, w)?);
    }
    for j in 0..levels {
        f.push(parse_matrix(ctx, n, field_line(&mut lines, &format!("F{j}"))?, w)?);
    }
    ModuleRep::new(e, f, grading, PChar { chi_h: chi }, provenance)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::repcore::{baby_verma, simple_restricted, tensor};

    #[test]
    fn golden_l1() {
        let f = FieldCtx::new(3, 1).unwrap();
        let t = to_canonical_text(&simple_restricted(f, 1, 1).unwrap());
        assert_eq!(t, "frobkit-module 1\nfield 3 1 x\ndim 2 levels 1\npchar 0\nprovenance L_1\ngrading 1 -1\nE0 0100\nF0 0010\n");
    }

    #[test]
    fn round_trip() {
        let f = FieldCtx::new(5, 2).unwrap();
        let z = baby_verma(f.generator().unwrap() + f.from_int(2), -1).unwrap();
        let m = tensor(&z, &simple_restricted(f, 3, 1).unwrap()).unwrap();
        let back = from_canonical_text(&to_canonical_text(&m)).unwrap();
        assert_eq!(back, m);
        assert!(from_canonical_text("nonsense").is_err());
    }
}
