use crate::error::{Error, Result};
use crate::exactfield::{FieldCtx, FieldElement, Matrix};
use crate::smallalg::PChar;

use super::module::{zero_levels, ModuleRep};

/// The restricted simple `L_i` (`0 <= i <= p-1`), basis `v_k = f^(k) v_0` of weight `i - 2k`.
pub fn simple_restricted(ctx: FieldCtx, i: u32, levels: usize) -> Result<ModuleRep> {
    if i >= ctx.p() {
        return Err(Error::InvalidArgument(format!("L_{i} is not restricted for p = {}", ctx.p())));
    }
    if levels == 0 {
        return Err(Error::InvalidArgument("levels must be positive".into()));
    }
    let n = i as usize + 1;
    let mut e = Matrix::zeros(ctx, n, n);
    let mut f = Matrix::zeros(ctx, n, n);
    for k in 0..n {
        if k + 1 < n {
            // f v_k = (k+1) v_{k+1}
            f.set(k + 1, k, ctx.from_int(k as i64 + 1));
        }
        if k > 0 {
            // e v_k = (i - k + 1) v_{k-1}
            e.set(k - 1, k, ctx.from_int(i as i64 - k as i64 + 1));
        }
    }
    let mut es = zero_levels(ctx, levels, n);
    let mut fs = zero_levels(ctx, levels, n);
    es[0] = e;
    fs[0] = f;
    let grading = (0..n).map(|k| i as i64 - 2 * k as i64).collect();
    ModuleRep::new(es, fs, grading, PChar::zero(ctx), format!("L_{i}"))
}

/// Baby Verma module `Z_d` for `u_chi(sl2)` with `chi` determined by `d`;
/// basis `f^k v`, grading `mu - 2k`.
pub fn baby_verma(d: FieldElement, mu: i64) -> Result<ModuleRep> {
    let ctx = d.ctx();
    let p = ctx.p() as usize;
    let mut e = Matrix::zeros(ctx, p, p);
    let mut f = Matrix::zeros(ctx, p, p);
    for k in 0..p {
        if k + 1 < p {
            f.set(k + 1, k, ctx.one());
        }
        if k > 0 {
            let kk = ctx.from_int(k as i64);
            e.set(k - 1, k, kk * (d - kk + ctx.one()));
        }
    }
    let grading = (0..p).map(|k| mu - 2 * k as i64).collect();
    ModuleRep::new(vec![e], vec![f], grading, PChar::from_seed(d), format!("Z({d})"))
}

/// Frobenius twist `M^(j)`: the level-`i` action becomes the level-`i+j` action.
pub fn frobenius_twist(m: &ModuleRep, j: usize) -> ModuleRep {
    let ctx = m.ctx();
    let n = m.dim();
    let mut e = zero_levels(ctx, j, n);
    let mut f = zero_levels(ctx, j, n);
    e.extend(m.e.iter().cloned());
    f.extend(m.f.iter().cloned());
    let scale = (ctx.p() as i64).pow(j as u32);
    let grading = m.grading.iter().map(|w| w * scale).collect();
    ModuleRep { ctx, e, f, grading, pchar: m.pchar, provenance: format!("{}^({j})", m.provenance) }
}

/// Twist then pad with zero action up to `levels`; errors if that overflows.
pub fn frobenius_twist_capped(m: &ModuleRep, j: usize, levels: usize) -> Result<ModuleRep> {
    if m.levels() + j > levels && !(m.pchar.is_zero() && is_trivial_above(m, levels.saturating_sub(j))) {
        return Err(Error::LevelOverflow(format!(
            "twisting a {}-level module by {j} exceeds the cap {levels}",
            m.levels()
        )));
    }
    let t = frobenius_twist(m, j);
    if t.levels() > levels {
        restrict_levels(&t, levels)
    } else {
        extend_levels(&t, levels)
    }
}

fn is_trivial_above(m: &ModuleRep, from: usize) -> bool {
    (from..m.levels()).all(|j| m.e[j].is_zero() && m.f[j].is_zero())
}

/// Forget the actions of levels `>= r`.
pub fn restrict_levels(m: &ModuleRep, r: usize) -> Result<ModuleRep> {
    if r == 0 || r > m.levels() {
        return Err(Error::LevelOverflow(format!("cannot restrict {} levels to {r}", m.levels())));
    }
    if r == m.levels() {
        return Ok(m.clone());
    }
    Ok(ModuleRep {
        ctx: m.ctx,
        e: m.e[..r].to_vec(),
        f: m.f[..r].to_vec(),
        grading: m.grading.clone(),
        pchar: PChar::zero(m.ctx),
        provenance: format!("res_{r}({})", m.provenance),
    })
}

/// Pad with zero higher-level action. Only valid for modules whose top level
/// carries no p-character.
pub fn extend_levels(m: &ModuleRep, levels: usize) -> Result<ModuleRep> {
    if levels < m.levels() {
        return Err(Error::LevelOverflow("extend_levels cannot shrink".into()));
    }
    if levels > m.levels() && m.pchar.is_generic() {
        return Err(Error::PCharacter("cannot place a module with p-character below new levels".into()));
    }
    let mut out = m.clone();
    let n = m.dim();
    while out.e.len() < levels {
        out.e.push(Matrix::zeros(m.ctx, n, n));
        out.f.push(Matrix::zeros(m.ctx, n, n));
    }
    Ok(out)
}

/// Tensor product through the coproduct on divided powers; the first factor
/// is the major Kronecker index.
pub fn tensor(m: &ModuleRep, n: &ModuleRep) -> Result<ModuleRep> {
    if m.ctx != n.ctx {
        return Err(Error::FieldMismatch);
    }
    if m.levels() != n.levels() {
        return Err(Error::LevelOverflow(format!("level caps differ: {} vs {}", m.levels(), n.levels())));
    }
    let pchar = m.pchar.combine(&n.pchar)?;
    let p = m.ctx.p() as u64;
    let top = p.pow(m.levels() as u32 - 1);
    let (me, mf) = (m.divided_powers(top, true)?, m.divided_powers(top, false)?);
    let (ne, nf) = (n.divided_powers(top, true)?, n.divided_powers(top, false)?);
    let dim = m.dim() * n.dim();
    let mut e = Vec::with_capacity(m.levels());
    let mut f = Vec::with_capacity(m.levels());
    for j in 0..m.levels() {
        let pj = p.pow(j as u32) as usize;
        let mut ej = Matrix::zeros(m.ctx, dim, dim);
        let mut fj = Matrix::zeros(m.ctx, dim, dim);
        for a in 0..=pj {
            let b = pj - a;
            if !(me[a].is_zero() || ne[b].is_zero()) {
                ej.add_scaled_assign(m.ctx.one(), &me[a].kron(&ne[b]));
            }
            if !(mf[a].is_zero() || nf[b].is_zero()) {
                fj.add_scaled_assign(m.ctx.one(), &mf[a].kron(&nf[b]));
            }
        }
        e.push(ej);
        f.push(fj);
    }
    let mut grading = Vec::with_capacity(dim);
    for a in &m.grading {
        for b in &n.grading {
            grading.push(a + b);
        }
    }
    Ok(ModuleRep {
        ctx: m.ctx,
        e,
        f,
        grading,
        pchar,
        provenance: format!("({})⊗({})", m.provenance, n.provenance),
    })
}

/// Tensor a list of factors left to right.
pub fn tensor_all(factors: &[&ModuleRep]) -> Result<ModuleRep> {
    let (first, rest) = factors.split_first().ok_or_else(|| Error::InvalidArgument("empty tensor".into()))?;
    rest.iter().try_fold((*first).clone(), |acc, m| tensor(&acc, m))
}

/// Contragredient module; the antipode acts on `e^(p^j)` by `-1` since `p` is odd.
pub fn dual(m: &ModuleRep) -> ModuleRep {
    ModuleRep {
        ctx: m.ctx,
        e: m.e.iter().map(|x| x.transpose().neg()).collect(),
        f: m.f.iter().map(|x| x.transpose().neg()).collect(),
        grading: m.grading.iter().map(|w| -w).collect(),
        pchar: m.pchar.neg(),
        provenance: format!("({})*", m.provenance),
    }
}

pub fn direct_sum(parts: &[&ModuleRep]) -> Result<ModuleRep> {
    let first = parts.first().ok_or_else(|| Error::InvalidArgument("empty direct sum".into()))?;
    let ctx = first.ctx;
    let levels = first.levels();
    let dim: usize = parts.iter().map(|m| m.dim()).sum();
    let pchar = first.pchar;
    for m in parts {
        if m.levels() != levels || m.ctx != ctx {
            return Err(Error::Shape("summands must share field and level cap".into()));
        }
        if m.pchar != pchar {
            return Err(Error::PCharacter("summands carry different p-characters".into()));
        }
    }
    let mut e = zero_levels(ctx, levels, dim);
    let mut f = zero_levels(ctx, levels, dim);
    let mut grading = Vec::with_capacity(dim);
    let mut off = 0;
    for m in parts {
        for j in 0..levels {
            e[j].set_block(off, off, &m.e[j]);
            f[j].set_block(off, off, &m.f[j]);
        }
        grading.extend_from_slice(&m.grading);
        off += m.dim();
    }
    let tag = parts.iter().map(|m| m.provenance.as_str()).collect::<Vec<_>>().join(" ⊕ ");
    Ok(ModuleRep { ctx, e, f, grading, pchar, provenance: tag })
}

/// Steinberg product `L_{k_0} (x) L_{k_1}^(1) (x) ... (x) top^(r-1)` for a label with
/// `r` digits, with `levels` total levels. The top factor is `L_{k_{r-1}}` for a
/// restricted label and the baby Verma `Z_d` otherwise.
pub fn build_simple(ctx: FieldCtx, label: &super::WeightLabel, levels: usize) -> Result<ModuleRep> {
    let r = label.levels();
    if r == 0 || r > levels {
        return Err(Error::LevelOverflow(format!("label with {r} digits does not fit {levels} levels")));
    }
    let mut factors = Vec::with_capacity(r);
    for (j, &k) in label.digits.iter().enumerate() {
        if j + 1 == r && label.is_generic() {
            if levels != r {
                return Err(Error::PCharacter("a generic top factor must sit on the top level".into()));
            }
            let p = ctx.p() as i64;
            let low: i64 = label.digits[..r - 1].iter().rev().fold(0, |acc, &x| acc * p + x as i64);
            let top_shift = (label.mu - low).div_euclid(p.pow(r as u32 - 1));
            let z = baby_verma(label.d, top_shift)?;
            factors.push(frobenius_twist(&z, j));
        } else {
            let l = simple_restricted(ctx, k, 1)?;
            factors.push(frobenius_twist_capped(&l, j, levels)?);
        }
    }
    let refs: Vec<&ModuleRep> = factors.iter().collect();
    let m = tensor_all(&refs)?;
    Ok(m.with_provenance(format!("L{label}")))
}
