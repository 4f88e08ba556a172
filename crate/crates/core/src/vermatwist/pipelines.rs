use crate::error::Result;
use crate::exactfield::{FieldCtx, FieldElement, Matrix};
use crate::homology::{
    assemble, first_kernel_projectives, hom_as_gmodule, hom_space, is_isomorphic, projective_covers, radical_and_head,
    restricted_simples, Degree,
};
use crate::report::{Report, Table};
use crate::repcore::{baby_verma, build_simple, frobenius_twist, simple_restricted, tensor, ModuleRep, WeightLabel};

use super::homiso::{hom_iso, hom_iso_inverse, verma_tensor_split};
use super::twist::{twist_closed_form, twist_oracle};

/// Closed form against the invariant-vector oracle, plus the recursion.
pub fn verify_twist(ctx: FieldCtx, seeds: &[FieldElement]) -> Result<Report> {
    let mut rep = Report::new("twist").with_conventions(ctx).param("p", ctx.p()).param("seeds", seeds.len());
    let mut table = Table::new("coefficients", &["d", "k", "A_k"]);
    for &d in seeds {
        let closed = twist_closed_form(d)?;
        let oracle = twist_oracle(d)?;
        let c = rep.check(format!("oracle = closed form at d={d}"), closed == oracle, "");
        for (k, a) in closed.a.iter().enumerate() {
            c.scalar(&format!("A_{k}"), a);
        }
        let res_ok = closed.recursion_residuals().iter().all(|r| r.is_zero());
        rep.check(format!("recursion at d={d}"), res_ok, "");
        for (k, a) in closed.a.iter().enumerate() {
            table.push(vec![d.to_string(), k.to_string(), a.to_string()]);
        }
    }
    rep.table(table);
    Ok(rep)
}

/// Up to `count` generic seeds in enumeration order.
pub fn generic_seeds(ctx: FieldCtx, count: usize) -> Vec<FieldElement> {
    ctx.elements().filter(|x| !x.in_prime_field()).take(count).collect()
}

fn unit(ctx: FieldCtx, n: usize, i: usize) -> Matrix {
    let mut v = Matrix::zeros(ctx, n, 1);
    v.set(i, 0, ctx.one());
    v
}

/// `(psi_w (x) id) o psi_v` projected to the top line equals
/// `sum_k A_k(d + mu1) f^k w (x) e^k v`.
#[allow(clippy::too_many_arguments)]
pub fn composition_law_holds(
    d: FieldElement,
    vmod: &ModuleRep,
    v: &Matrix,
    wmod: &ModuleRep,
    w: &Matrix,
    mu: i64,
    mu1: i64,
    mu2: i64,
) -> Result<bool> {
    let ctx = d.ctx();
    let psi_v = hom_iso(d, vmod, v, mu, mu1)?;
    let psi_w = hom_iso(d, wmod, w, mu1, mu2)?;
    let comp = psi_w.kron(&Matrix::identity(ctx, vmod.dim())).mul(&psi_v);
    let top = hom_iso_inverse(&comp, wmod.dim() * vmod.dim());
    let a = twist_closed_form(d + ctx.from_int(mu1))?;
    let mut want = Matrix::zeros(ctx, top.rows(), 1);
    let (mut wk, mut vk) = (w.clone(), v.clone());
    for ak in &a.a {
        want.add_scaled_assign(*ak, &wk.kron(&vk));
        wk = wmod.f(0).mul(&wk);
        vk = vmod.e(0).mul(&vk);
    }
    Ok(top == want)
}

/// For `V` among `L_0`, `L_1` and the Hom spaces between first-level
/// projectives: dimensions, bijectivity and left inverse of the Hom-space map
/// over all `(mu, mu')` in the window, the Verma tensor splitting, and the
/// composition law.
pub fn verify_hom_iso(ctx: FieldCtx, d: FieldElement, window: i64, seed: u64) -> Result<Report> {
    let mut rep = Report::new("hom-iso")
        .with_conventions(ctx)
        .param("p", ctx.p())
        .param("d", d)
        .param("window", window)
        .param("seed", seed);
    let mut vs: Vec<(String, ModuleRep)> = vec![
        ("L_0".into(), simple_restricted(ctx, 0, 1)?),
        ("L_1".into(), simple_restricted(ctx, 1, 1)?),
    ];
    let pieces = first_kernel_projectives(ctx, 2, seed)?;
    for (a, pa) in pieces.iter().enumerate() {
        for (b, pb) in pieces.iter().enumerate() {
            let g = hom_as_gmodule(pa, pb, 1)?;
            if g.space.dim() > 0 {
                vs.push((format!("Hom(P_{a},P_{b})"), g.as_module()?));
            }
        }
    }
    let mut table = Table::new("hom_dims", &["V", "mu", "mu_prime", "dim_V_weight", "dim_hom"]);
    for (name, vmod) in &vs {
        let mut bad = Vec::new();
        let mut maps = 0usize;
        for mu in -window..=window {
            for mu2 in -window..=window {
                let want = vmod.grading().iter().filter(|w| **w == mu - mu2).count();
                let src = baby_verma(d + ctx.from_int(mu), mu)?;
                let tgt = tensor(&baby_verma(d + ctx.from_int(mu2), mu2)?, vmod)?;
                let hs = hom_space(&src, &tgt, Degree::Shift(0))?;
                if hs.dim() != want {
                    bad.push(format!("dim at ({mu},{mu2}): {} vs {want}", hs.dim()));
                }
                let mut images = Vec::new();
                for i in (0..vmod.dim()).filter(|&i| vmod.grading()[i] == mu - mu2) {
                    let v = unit(ctx, vmod.dim(), i);
                    let psi = hom_iso(d, vmod, &v, mu, mu2)?;
                    maps += 1;
                    if hs.coordinates(&psi).is_none() {
                        bad.push(format!("map not an intertwiner at ({mu},{mu2})"));
                    }
                    if hom_iso_inverse(&psi, vmod.dim()) != v {
                        bad.push(format!("inverse fails at ({mu},{mu2})"));
                    }
                    images.push(psi.vectorize());
                }
                if !images.is_empty() {
                    let refs: Vec<&Matrix> = images.iter().collect();
                    if Matrix::hstack(&refs)?.rank() != images.len() {
                        bad.push(format!("images dependent at ({mu},{mu2})"));
                    }
                }
                if want > 0 {
                    table.push(vec![name.clone(), mu.to_string(), mu2.to_string(), want.to_string(), hs.dim().to_string()]);
                }
            }
        }
        rep.check(format!("bijection for V = {name}"), bad.is_empty(), bad.join("; ")).scalar("maps", maps);
        let parts = verma_tensor_split(d, 0, vmod)?;
        let mut sum = Matrix::zeros(ctx, vmod.dim() * ctx.p() as usize, vmod.dim() * ctx.p() as usize);
        for s in &parts {
            sum = sum.add(&s.inclusion.mul(&s.projection));
        }
        rep.check(
            format!("Z (x) {name} splits into Vermas"),
            sum == Matrix::identity(ctx, sum.rows()) && parts.len() == vmod.dim(),
            format!("{} summands", parts.len()),
        );
    }
    let l1 = &vs[1].1;
    let mut law = true;
    for (i, j) in [(0usize, 0usize), (0, 1), (1, 0), (1, 1)] {
        let (v, w) = (unit(ctx, 2, i), unit(ctx, 2, j));
        let (sv, sw) = (l1.grading()[i], l1.grading()[j]);
        law &= composition_law_holds(d, l1, &v, l1, &w, 0, -sv, -sv - sw)?;
    }
    rep.check("composition law on L_1 (x) L_1", law, "");
    rep.table(table);
    Ok(rep)
}

/// Generic-character projectives `P_lower (x) Z^(r-1)`: certified heads,
/// expected dimensions, `sum dim L * dim P = p^(3r)`, and graded shifts.
pub fn verify_projectives(ctx: FieldCtx, r: usize, d: Option<FieldElement>, seed: u64) -> Result<Report> {
    let p = ctx.p() as usize;
    let mut rep = Report::new("projectives")
        .with_conventions(ctx)
        .param("p", p)
        .param("r", r)
        .param("chi", d.map_or("0".to_string(), |d| format!("generic d={d}")))
        .param("seed", seed);
    let covers = projective_covers(ctx, r, d, seed)?;
    let mut table = Table::new("projectives", &["label", "dim", "simple_dim"]);
    let mut total = 0usize;
    for c in &covers {
        let simple = build_simple(ctx, &c.label, r)?;
        let lower = if d.is_some() { &c.label.digits[..r - 1] } else { &c.label.digits[..] };
        let expect: usize = lower.iter().map(|&k| if k as usize == p - 1 { p } else { 2 * p }).product::<usize>()
            * if d.is_some() { p } else { 1 };
        rep.check(format!("dim P{}", c.label), c.module.dim() == expect, format!("{} vs {expect}", c.module.dim()))
            .scalar("dim", c.module.dim());
        total += simple.dim() * c.module.dim();
        table.push(vec![c.label.to_string(), c.module.dim().to_string(), simple.dim().to_string()]);
    }
    rep.check("heads certified", true, format!("{} projectives", covers.len()));
    let want = p.pow(3 * r as u32);
    rep.check("sum dim L * dim P = dim of the algebra", total == want, format!("{total} vs {want}")).scalar("sum", total);
    if d.is_some() {
        // graded variants: shifting the top Verma by a multiple of p keeps the head
        let pieces = if r > 1 { first_kernel_projectives(ctx, r, seed)? } else { vec![] };
        let pr = (p as i64).pow(r as u32 - 1);
        let mut bad = Vec::new();
        for c in &covers {
            let lower = &c.label.digits[..r - 1];
            let t0 = c.label.mu.div_euclid(pr);
            for t in [t0 - p as i64, t0 + p as i64] {
                let z = frobenius_twist(&baby_verma(c.label.d, t)?, r - 1);
                let q = if r == 1 { z } else { tensor(&assemble(lower, &pieces, r)?, &z)? };
                let simple = build_simple(ctx, &WeightLabel::generic(lower, c.label.d, t)?, r)?;
                let rh = radical_and_head(&q, std::slice::from_ref(&simple))?;
                if rh.head_length() != 1 || !is_isomorphic(&q, &c.module, seed)? {
                    bad.push(format!("P{} shifted to {t}", c.label));
                }
            }
        }
        rep.check("graded shifts keep head and isomorphism type", bad.is_empty(), bad.join("; "));
    } else {
        let simples = restricted_simples(ctx, r, r)?;
        rep.check("restricted simples listed", simples.len() == covers.len(), "");
    }
    rep.table(table);
    Ok(rep)
}
