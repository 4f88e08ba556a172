use std::collections::BTreeSet;

use crate::error::{Error, Result};
use crate::exactfield::{FieldCtx, FieldElement};
use crate::repcore::{
    baby_verma, build_simple, extend_levels, frobenius_twist, restrict_levels, simple_restricted, tensor,
    ModuleRep, WeightLabel,
};

use super::hom::{hom_space, Degree};
use super::split::{is_isomorphic, split_indecomposables};
use super::submodule::{is_simple, radical_and_head};

/// A labelled indecomposable projective.
#[derive(Clone, Debug)]
pub struct ProjectiveCover {
    pub label: WeightLabel,
    pub module: ModuleRep,
}

/// All digit tuples in `[0, p)^r`, lowest digit first, in lexicographic order of the reversed tuple.
pub fn digit_tuples(p: u32, r: usize) -> Vec<Vec<u32>> {
    let total = (p as usize).pow(r as u32);
    (0..total)
        .map(|mut n| {
            (0..r)
                .map(|_| {
                    let d = (n % p as usize) as u32;
                    n /= p as usize;
                    d
                })
                .collect()
        })
        .collect()
}

/// Restricted simples for `r` levels, embedded in `levels` levels.
pub fn restricted_simples(ctx: FieldCtx, r: usize, levels: usize) -> Result<Vec<ModuleRep>> {
    digit_tuples(ctx.p(), r)
        .iter()
        .map(|ds| build_simple(ctx, &WeightLabel::restricted(ctx, ds)?, levels))
        .collect()
}

/// The first-level projective `P_i` realised as a module for two levels:
/// `St` for `i = p-1`, otherwise the summand of `St (x) L_{p-1-i}` containing
/// the highest weight `2p-2-i`.
pub fn first_kernel_projective(ctx: FieldCtx, i: u32, seed: u64) -> Result<ModuleRep> {
    let p = ctx.p();
    if i >= p {
        return Err(Error::InvalidArgument(format!("P_{i} needs i < p")));
    }
    let st = simple_restricted(ctx, p - 1, 2)?;
    if i == p - 1 {
        return Ok(st.with_provenance(format!("P_{i}")));
    }
    let m = tensor(&st, &simple_restricted(ctx, p - 1 - i, 2)?)?;
    let simples = restricted_simples(ctx, 2, 2)?;
    let dec = split_indecomposables(&m, &simples, seed)?;
    let top = 2 * p as i64 - 2 - i as i64;
    let s = dec
        .summands
        .into_iter()
        .find(|s| s.module.grading().contains(&top))
        .ok_or_else(|| Error::Inconclusive("no summand carries the top weight".into()))?;
    if s.module.dim() != 2 * p as usize {
        return Err(Error::UnexpectedDimension(format!("P_{i} has dim {}, expected {}", s.module.dim(), 2 * p)));
    }
    Ok(s.module.with_provenance(format!("P_{i}")))
}

/// First-level projectives `P_0..P_{p-1}` with `levels` levels.
pub fn first_kernel_projectives(ctx: FieldCtx, levels: usize, seed: u64) -> Result<Vec<ModuleRep>> {
    (0..ctx.p())
        .map(|i| {
            let m = first_kernel_projective(ctx, i, seed)?;
            if levels >= 2 {
                extend_levels(&m, levels)
            } else {
                restrict_levels(&m, levels)
            }
        })
        .collect()
}

/// `P_{lambda_0} (x) P_{lambda_1}^(1) (x) ...` from first-level pieces with `levels` levels.
pub(crate) fn assemble(digits: &[u32], pieces: &[ModuleRep], levels: usize) -> Result<ModuleRep> {
    let mut acc: Option<ModuleRep> = None;
    for (j, &k) in digits.iter().enumerate() {
        let piece = &pieces[k as usize];
        let t = frobenius_twist(piece, j);
        let t = if t.levels() > levels { restrict_levels(&t, levels)? } else { extend_levels(&t, levels)? };
        acc = Some(match acc {
            None => t,
            Some(a) => tensor(&a, &t)?,
        });
    }
    let label: Vec<String> = digits.iter().map(|d| d.to_string()).collect();
    Ok(acc.expect("nonempty digits").with_provenance(format!("P({})", label.join(","))))
}

/// Check that the p baby Vermas at seed `d` are simple and pairwise non-isomorphic.
pub fn certify_generic_seed(d: FieldElement) -> Result<()> {
    let ctx = d.ctx();
    if d.in_prime_field() {
        return Err(Error::NonGeneric(format!("{d} lies in the prime field")));
    }
    let vermas: Vec<ModuleRep> =
        (0..ctx.p() as i64).map(|t| baby_verma(d + ctx.from_int(t), t)).collect::<Result<_>>()?;
    for (a, z) in vermas.iter().enumerate() {
        if !is_simple(z)?.is_simple() {
            return Err(Error::NonGeneric(format!("Z({}) is not simple", d + ctx.from_int(a as i64))));
        }
        for w in &vermas[a + 1..] {
            if hom_space(z, w, Degree::All)?.dim() != 0 {
                return Err(Error::NonGeneric("two baby Vermas are isomorphic".into()));
            }
        }
    }
    Ok(())
}

/// Indecomposable projectives for `r` levels.
///
/// Restricted case (`seed_d = None`): `_rP_lambda` for all digit tuples,
/// carrying `r + 1` levels so that the level-`r` action is available.
/// Generic case: `_{r-1}P_lambda (x) Z_{d+t}^(r-1)` with `r` levels.
/// Every output is certified to have simple head with the expected label.
pub fn projective_covers(
    ctx: FieldCtx,
    r: usize,
    seed_d: Option<FieldElement>,
    rng_seed: u64,
) -> Result<Vec<ProjectiveCover>> {
    if r == 0 {
        return Err(Error::InvalidArgument("r must be positive".into()));
    }
    let mut out = Vec::new();
    match seed_d {
        None => {
            let pieces = first_kernel_projectives(ctx, r + 1, rng_seed)?;
            let simples = restricted_simples(ctx, r, r)?;
            for digits in digit_tuples(ctx.p(), r) {
                let label = WeightLabel::restricted(ctx, &digits)?;
                let module = assemble(&digits, &pieces, r + 1)?;
                certify_head(&restrict_levels(&module, r)?, &simples, &build_simple(ctx, &label, r)?)?;
                out.push(ProjectiveCover { label, module });
            }
        }
        Some(d) => {
            certify_generic_seed(d)?;
            let pieces = if r > 1 { first_kernel_projectives(ctx, r, rng_seed)? } else { vec![] };
            let mut labels = Vec::new();
            for lower in digit_tuples(ctx.p(), r - 1) {
                for t in 0..ctx.p() as i64 {
                    labels.push(WeightLabel::generic(&lower, d + ctx.from_int(t), t)?);
                }
            }
            let simples: Vec<ModuleRep> =
                labels.iter().map(|l| build_simple(ctx, l, r)).collect::<Result<_>>()?;
            for (label, simple) in labels.into_iter().zip(&simples) {
                let t = (label.mu - low_part(ctx, &label)) / (ctx.p() as i64).pow(r as u32 - 1);
                let z = frobenius_twist(&baby_verma(label.d, t)?, r - 1);
                let module = if r == 1 {
                    z
                } else {
                    let lower = assemble(&label.digits[..r - 1], &pieces, r)?;
                    tensor(&lower, &z)?
                };
                certify_head(&module, &simples, simple)?;
                let module = module.with_provenance(format!("P{label}"));
                out.push(ProjectiveCover { label, module });
            }
        }
    }
    Ok(out)
}

fn low_part(ctx: FieldCtx, label: &WeightLabel) -> i64 {
    let r = label.levels();
    label.digits[..r - 1].iter().rev().fold(0, |acc, &x| acc * ctx.p() as i64 + x as i64)
}

fn certify_head(module: &ModuleRep, simples: &[ModuleRep], expected: &ModuleRep) -> Result<()> {
    let rh = radical_and_head(module, simples)?;
    if rh.head_length() != 1 {
        return Err(Error::Inconclusive(format!(
            "{} has head of length {}",
            module.provenance,
            rh.head_length()
        )));
    }
    if !is_isomorphic(&simples[rh.head[0].0], expected, 0)? {
        return Err(Error::Inconclusive(format!("{} has the wrong head", module.provenance)));
    }
    Ok(())
}

/// Finest partition of `modules` with no nonzero Homs across parts.
pub fn blocks(modules: &[ModuleRep]) -> Result<Vec<Vec<usize>>> {
    let n = modules.len();
    let mut parent: Vec<usize> = (0..n).collect();
    fn find(parent: &mut [usize], x: usize) -> usize {
        let mut x = x;
        while parent[x] != x {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        x
    }
    for a in 0..n {
        for b in 0..n {
            if a != b && find(&mut parent, a) != find(&mut parent, b)
                && hom_space(&modules[a], &modules[b], Degree::All)?.dim() > 0 {
                    let (ra, rb) = (find(&mut parent, a), find(&mut parent, b));
                    parent[ra] = rb;
                }
        }
    }
    let mut groups: Vec<Vec<usize>> = Vec::new();
    let roots: BTreeSet<usize> = (0..n).map(|x| find(&mut parent, x)).collect();
    for r in roots {
        groups.push((0..n).filter(|&x| find(&mut parent, x) == r).collect());
    }
    groups.sort();
    Ok(groups)
}
