//! Pipelines certifying the tensor product factorisation of simples,
//! restriction simplicity, hat-Borel irreducibles, partial Vermas and the
//! Steinberg-block functor `M -> M^(1) (x) St`.

use crate::error::{Error, Result};
use crate::exactfield::{FieldCtx, FieldElement, Matrix, SpanBuilder};
use crate::homology::{
    digit_tuples, first_kernel_projectives, hom_space, is_isomorphic, is_simple, projective_covers,
    radical_and_head, restricted_simples, Degree, Simplicity,
};
use crate::report::{Report, Table};
use crate::repcore::{
    baby_verma, extend_levels, frobenius_twist, restrict_levels, simple_restricted, tensor, ModuleRep,
    WeightLabel,
};

pub use crate::repcore::build_simple;

fn digits_string(ds: &[u32]) -> String {
    ds.iter().map(|d| d.to_string()).collect::<Vec<_>>().join(",")
}

fn verdict(s: &Simplicity) -> (bool, String) {
    match s {
        Simplicity::Simple => (true, "simple".into()),
        Simplicity::NotSimple(_) => (false, "proper submodule found".into()),
        Simplicity::Inconclusive(msg) => (false, format!("inconclusive: {msg}")),
    }
}

/// Labels covered by [`verify_steinberg`]: all restricted tuples, or the
/// lower tuples under a generic top seed `d`.
pub fn steinberg_labels(ctx: FieldCtx, r: usize, d: Option<FieldElement>) -> Result<Vec<WeightLabel>> {
    match d {
        None => digit_tuples(ctx.p(), r).iter().map(|ds| WeightLabel::restricted(ctx, ds)).collect(),
        Some(d) => digit_tuples(ctx.p(), r - 1).iter().map(|ds| WeightLabel::generic(ds, d, 0)).collect(),
    }
}

/// Every labelled tensor product is simple, the level-0 socle recovers the
/// untwisted factor, and distinct labels have no Homs between them.
pub fn verify_steinberg(ctx: FieldCtx, r: usize, d: Option<FieldElement>) -> Result<Report> {
    if r == 0 {
        return Err(Error::InvalidArgument("r must be positive".into()));
    }
    let mut rep = Report::new("steinberg")
        .with_conventions(ctx)
        .param("p", ctx.p())
        .param("ext", ctx.k())
        .param("r", r)
        .param("chi", d.map_or("0".to_string(), |d| format!("generic d={d}")));
    let labels = steinberg_labels(ctx, r, d)?;
    let mut table = Table::new("simples", &["label", "dim", "min_weight", "max_weight"]);
    let mut simples = Vec::with_capacity(labels.len());
    for label in &labels {
        let m = build_simple(ctx, label, r)?;
        let (ok, why) = verdict(&is_simple(&m)?);
        rep.check(format!("simple {label}"), ok, why).scalar("dim", m.dim());
        let lo = m.grading().iter().min().copied().unwrap_or(0);
        let hi = m.grading().iter().max().copied().unwrap_or(0);
        table.push(vec![label.to_string(), m.dim().to_string(), lo.to_string(), hi.to_string()]);
        // restricted to level 0 the module is a sum of copies of L_{k_0}
        let k0 = label.digits[0];
        let base = simple_restricted(ctx, k0, 1)?;
        let socle = hom_space(&base, &restrict_levels(&m, 1)?, Degree::All)?.dim();
        let expect = m.dim() / (k0 as usize + 1);
        rep.check(format!("level-0 socle {label}"), socle == expect, format!("L_{k0} occurs {socle} times"))
            .scalar("multiplicity", socle);
        simples.push(m);
    }
    let mut bad = Vec::new();
    for a in 0..simples.len() {
        for b in a + 1..simples.len() {
            let n = hom_space(&simples[a], &simples[b], Degree::All)?.dim();
            if n != 0 {
                bad.push(format!("Hom({}, {}) has dim {n}", labels[a], labels[b]));
            }
        }
    }
    let pairs = simples.len() * simples.len().saturating_sub(1) / 2;
    rep.check(
        "pairwise non-isomorphic",
        bad.is_empty(),
        if bad.is_empty() { format!("{pairs} pairs with zero Hom") } else { bad.join("; ") },
    )
    .scalar("pairs", pairs);
    rep.table(table);
    Ok(rep)
}

/// Restricted simples for `r` levels, padded with zero digits to `big_r`
/// levels, stay simple after restricting back to `r` levels.
pub fn verify_restriction_simplicity(ctx: FieldCtx, big_r: usize, r: usize) -> Result<Report> {
    if r == 0 || r >= big_r {
        return Err(Error::InvalidArgument(format!("need 0 < r < R, got r={r}, R={big_r}")));
    }
    let mut rep = Report::new("restriction")
        .with_conventions(ctx)
        .param("p", ctx.p())
        .param("R", big_r)
        .param("r", r);
    for digits in digit_tuples(ctx.p(), r) {
        let mut padded = digits.clone();
        padded.resize(big_r, 0);
        let m = build_simple(ctx, &WeightLabel::restricted(ctx, &padded)?, big_r)?;
        let (ok, why) = verdict(&is_simple(&restrict_levels(&m, r)?)?);
        rep.check(format!("restrict ({})", digits_string(&padded)), ok, why).scalar("dim", m.dim());
    }
    Ok(rep)
}

// intertwiners phi with phi A_i = B_i phi, as a kernel basis of row-major vec(phi)
fn intertwiner_dim(a: &[Matrix], b: &[Matrix]) -> Result<usize> {
    let ctx = a[0].ctx();
    let (da, db) = (a[0].rows(), b[0].rows());
    let blocks: Vec<Matrix> = a
        .iter()
        .zip(b)
        .map(|(x, y)| Matrix::identity(ctx, db).kron(&x.transpose()).sub(&y.kron(&Matrix::identity(ctx, da))))
        .collect();
    let refs: Vec<&Matrix> = blocks.iter().collect();
    Ok(Matrix::vstack(&refs)?.kernel().cols())
}

fn spin_dim(ops: &[Matrix], v: &Matrix) -> usize {
    let mut span = SpanBuilder::new(v.ctx(), v.rows());
    let mut queue = vec![];
    if span.insert(v) {
        queue.push(v.clone());
    }
    while let Some(x) = queue.pop() {
        for g in ops {
            let y = g.mul(&x);
            if !y.is_zero() && span.insert(&y) {
                queue.push(y);
            }
        }
    }
    span.dim()
}

// Simple iff the joint kernel of the (commuting, nilpotent) raising operators
// is a line that generates everything.
fn simple_under(ops: &[Matrix], raising: &[usize]) -> Result<(bool, String)> {
    let stacked: Vec<&Matrix> = raising.iter().map(|&i| &ops[i]).collect();
    let j = Matrix::vstack(&stacked)?.kernel();
    if j.cols() != 1 {
        return Ok((false, format!("joint kernel of raising operators has dim {}", j.cols())));
    }
    let n = spin_dim(ops, &j.column(0));
    Ok((n == ops[0].rows(), format!("highest vector spins to dim {n} of {}", ops[0].rows())))
}

// rows/cols of `x` on `idx`, failing if `x` leaves the coordinate subspace
fn compress(x: &Matrix, idx: &[usize]) -> Option<Matrix> {
    let inside: std::collections::BTreeSet<usize> = idx.iter().copied().collect();
    for &c in idx {
        for r in 0..x.rows() {
            if !inside.contains(&r) && !x.get(r, c).is_zero() {
                return None;
            }
        }
    }
    Some(x.submatrix(idx, idx))
}

/// A module for the hat-Borel subalgebra, as the operator list
/// `E_0, F_0, ..., E_{r-2}, F_{r-2}, E_{r-1}, H_{r-1}`.
#[derive(Clone, Debug)]
pub struct HatBorelModule {
    pub lower: Vec<u32>,
    pub top: FieldElement,
    pub ops: Vec<Matrix>,
}

impl HatBorelModule {
    pub fn dim(&self) -> usize {
        self.ops[0].rows()
    }

    fn raising(&self) -> Vec<usize> {
        let r = self.lower.len() + 1;
        (0..r - 1).map(|j| 2 * j).chain([2 * (r - 1)]).collect()
    }
}

/// `N = L_lower (x) k_top`, cut out of the induced module
/// `L_lower (x) Z_top^(r-1)` as the span of `L_lower (x) v_top`.
pub fn hat_borel_module(ctx: FieldCtx, lower: &[u32], top: FieldElement, shift: i64) -> Result<HatBorelModule> {
    let r = lower.len() + 1;
    if r < 2 {
        return Err(Error::InvalidArgument("hat-Borel modules need r >= 2".into()));
    }
    let induced = build_simple(ctx, &WeightLabel::generic(lower, top, shift)?, r)?;
    let lam = lower.iter().rev().fold(0i64, |acc, &k| acc * ctx.p() as i64 + k as i64);
    let hi = *induced.grading().iter().max().expect("nonzero module");
    let idx: Vec<usize> = (0..induced.dim()).filter(|&i| induced.grading()[i] >= hi - 2 * lam).collect();
    let h = induced.e(r - 1).commutator(induced.f(r - 1));
    let mut gens: Vec<&Matrix> = Vec::new();
    for j in 0..r - 1 {
        gens.push(induced.e(j));
        gens.push(induced.f(j));
    }
    gens.push(induced.e(r - 1));
    gens.push(&h);
    let ops = gens
        .into_iter()
        .map(|x| compress(x, &idx))
        .collect::<Option<Vec<_>>>()
        .ok_or_else(|| Error::Inconclusive("L (x) v_top is not stable under the hat-Borel generators".into()))?;
    Ok(HatBorelModule { lower: lower.to_vec(), top, ops })
}

/// Irreducibility of `L_lower (x) k_{d+t}` for every lower tuple and every
/// extension `t`, irreducibility of the restriction to `Dist(G_{r-1})`, and
/// pairwise non-isomorphism of the extensions.
pub fn hat_borel_irreducibles(ctx: FieldCtx, r: usize, d: FieldElement) -> Result<Report> {
    let mut rep = Report::new("hat-borel")
        .with_conventions(ctx)
        .param("p", ctx.p())
        .param("r", r)
        .param("d", d);
    for lower in digit_tuples(ctx.p(), r - 1) {
        let tag = digits_string(&lower);
        let mods: Vec<HatBorelModule> = (0..ctx.p() as i64)
            .map(|t| hat_borel_module(ctx, &lower, d + ctx.from_int(t), t))
            .collect::<Result<_>>()?;
        let lsimple = build_simple(ctx, &WeightLabel::restricted(ctx, &lower)?, r - 1)?;
        for m in &mods {
            let (ok, why) = simple_under(&m.ops, &m.raising())?;
            rep.check(format!("irreducible ({tag}; {})", m.top), ok, why).scalar("dim", m.dim());
            let nlow = 2 * (r - 1);
            let low = &m.ops[..nlow];
            let raising: Vec<usize> = (0..r - 1).map(|j| 2 * j).collect();
            let (ok, why) = simple_under(low, &raising)?;
            rep.check(format!("restriction irreducible ({tag}; {})", m.top), ok, why);
            let lops: Vec<Matrix> = (0..r - 1).flat_map(|j| [lsimple.e(j).clone(), lsimple.f(j).clone()]).collect();
            let iso = m.dim() == lsimple.dim() && intertwiner_dim(low, &lops)? == 1;
            rep.check(format!("restriction is L({tag}) for ({tag}; {})", m.top), iso, "");
            let eig = m.ops[nlow + 1].clone();
            let scalar = eig.get(0, 0);
            let is_scalar = eig == Matrix::identity(ctx, m.dim()).scale(scalar);
            rep.check(format!("H_top scalar ({tag}; {})", m.top), is_scalar, format!("H_top = {scalar}"))
                .scalar("h_top", scalar);
        }
        let mut bad = vec![];
        for a in 0..mods.len() {
            for b in a + 1..mods.len() {
                let n = intertwiner_dim(&mods[a].ops, &mods[b].ops)?;
                if n != 0 {
                    bad.push(format!("{} ~ {}", mods[a].top, mods[b].top));
                }
            }
        }
        rep.check(format!("extensions distinct ({tag})"), bad.is_empty(), bad.join("; "));
    }
    Ok(rep)
}

/// Outcome of building `Z_{d+t}^(twist_exp) (x) L_lower`.
#[derive(Clone, Debug)]
pub struct PartialVerma {
    pub module: ModuleRep,
    pub twist_exp: usize,
    /// whether the module lives on the `lower.len() + 1` levels of the label
    pub fits_label_levels: bool,
    /// whether the head is the simple of the matching label
    pub head_matches: bool,
}

/// The induced module `Z_top^(twist_exp) (x) L_lower` with its head certified
/// against [`build_simple`]. `top` may lie in the prime field, in which case
/// the expected head is the restricted simple with top digit `top`.
pub fn partial_verma(ctx: FieldCtx, lower: &[u32], top: FieldElement, shift: i64, twist_exp: usize) -> Result<PartialVerma> {
    let r = lower.len() + 1;
    let levels = twist_exp + 1;
    let z = frobenius_twist(&baby_verma(top, shift)?, twist_exp);
    let l = if lower.is_empty() {
        None
    } else {
        Some(extend_levels(&build_simple(ctx, &WeightLabel::restricted(ctx, lower)?, lower.len())?, levels)?)
    };
    let module = match &l {
        Some(l) => tensor(&z, l)?,
        None => z,
    };
    let mut digits = lower.to_vec();
    digits.resize(levels - 1, 0);
    let expected = if top.in_prime_field() {
        digits.push(top.as_prime().expect("prime field element"));
        build_simple(ctx, &WeightLabel::restricted(ctx, &digits)?, levels)?
    } else {
        build_simple(ctx, &WeightLabel::generic(&digits, top, shift)?, levels)?
    };
    let simples = if top.in_prime_field() {
        restricted_simples(ctx, levels, levels)?
    } else {
        vec![expected.clone()]
    };
    let rh = radical_and_head(&module, &simples)?;
    let head_matches = rh.head_length() == 1 && is_isomorphic(&simples[rh.head[0].0], &expected, 0)?;
    Ok(PartialVerma { module, twist_exp, fits_label_levels: levels == r, head_matches })
}

/// `M -> M^(1) (x) St` on the one-level simples and projectives.
pub fn steinberg_block_equivalence(ctx: FieldCtx, seed: u64) -> Result<Report> {
    let p = ctx.p();
    let mut rep = Report::new("block-equivalence").with_conventions(ctx).param("p", p).param("seed", seed);
    let st = simple_restricted(ctx, p - 1, 2)?;
    let functor = |m: &ModuleRep| -> Result<ModuleRep> { tensor(&st, &frobenius_twist(m, 1)) };
    let simples = restricted_simples(ctx, 1, 1)?;
    let images: Vec<ModuleRep> = simples.iter().map(functor).collect::<Result<_>>()?;
    let mut table = Table::new("hom_dims", &["source", "target", "dim", "dim_image"]);
    let mut bad = vec![];
    for a in 0..simples.len() {
        for b in 0..simples.len() {
            let x = hom_space(&simples[a], &simples[b], Degree::All)?.dim();
            let y = hom_space(&images[a], &images[b], Degree::All)?.dim();
            if x != y {
                bad.push(format!("L_{a} -> L_{b}: {x} vs {y}"));
            }
            table.push(vec![format!("L_{a}"), format!("L_{b}"), x.to_string(), y.to_string()]);
        }
    }
    let n = simples.len() * simples.len();
    rep.check("simple Hom dims preserved", bad.is_empty(), if bad.is_empty() { format!("{n} pairs") } else { bad.join("; ") })
        .scalar("pairs", n);
    rep.check("L_0 maps to St", is_isomorphic(&images[0], &st, seed)?, "");
    let projs: Vec<ModuleRep> =
        first_kernel_projectives(ctx, 1, seed)?.iter().map(functor).collect::<Result<_>>()?;
    let covers = projective_covers(ctx, 2, None, seed)?;
    for (i, fp) in projs.iter().enumerate() {
        let src = restrict_levels(&first_kernel_projectives(ctx, 2, seed)?[i], 1)?;
        let e0 = hom_space(&src, &src, Degree::All)?.dim();
        let e1 = hom_space(fp, fp, Degree::All)?.dim();
        rep.check(format!("End(P_{i}) preserved"), e0 == e1, format!("{e0} vs {e1}")).scalar("dim", e1);
        let target = covers
            .iter()
            .find(|c| c.label.digits == [p - 1, i as u32])
            .ok_or_else(|| Error::Inconclusive("missing projective".into()))?;
        let iso = is_isomorphic(fp, &restrict_levels(&target.module, 2)?, seed)?;
        rep.check(format!("P_{i} maps to P({},{i})", p - 1), iso, "");
    }
    rep.table(table);
    Ok(rep)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn generic_seed(ctx: FieldCtx) -> FieldElement {
        ctx.elements().find(|x| !x.in_prime_field()).unwrap()
    }

    #[test]
    fn steinberg_p3_r2_restricted() {
        let ctx = FieldCtx::new(3, 2).unwrap();
        let rep = verify_steinberg(ctx, 2, None).unwrap();
        assert!(rep.passed(), "{}", rep.to_json());
        let dims: Vec<usize> = rep.tables[0].rows.iter().map(|r| r[1].parse().unwrap()).collect();
        assert_eq!(dims, vec![1, 2, 3, 2, 4, 6, 3, 6, 9]);
    }

    #[test]
    fn steinberg_p3_r2_generic() {
        let ctx = FieldCtx::new(3, 2).unwrap();
        let rep = verify_steinberg(ctx, 2, Some(generic_seed(ctx))).unwrap();
        assert!(rep.passed(), "{}", rep.to_json());
        let dims: Vec<usize> = rep.tables[0].rows.iter().map(|r| r[1].parse().unwrap()).collect();
        assert_eq!(dims, vec![3, 6, 9]);
    }

    #[test]
    fn restriction_p3() {
        let ctx = FieldCtx::new(3, 1).unwrap();
        let rep = verify_restriction_simplicity(ctx, 2, 1).unwrap();
        assert_eq!(rep.checks.len(), 3);
        assert!(rep.passed());
    }

    #[test]
    fn hat_borel_p3() {
        let ctx = FieldCtx::new(3, 2).unwrap();
        let rep = hat_borel_irreducibles(ctx, 2, generic_seed(ctx)).unwrap();
        assert!(rep.passed(), "{}", rep.to_json());
    }

    #[test]
    fn partial_verma_twist_exponent() {
        let ctx = FieldCtx::new(3, 2).unwrap();
        let d = generic_seed(ctx);
        let a = partial_verma(ctx, &[1], d, 0, 1).unwrap();
        assert_eq!(a.module.dim(), 6);
        assert!(a.fits_label_levels && a.head_matches);
        let b = partial_verma(ctx, &[1], d, 0, 2).unwrap();
        assert!(!b.fits_label_levels);
        // with the top digit zero-padded the larger exponent still has simple head
        assert!(b.head_matches);
        let z = partial_verma(ctx, &[0], d, 0, 1).unwrap();
        assert_eq!(z.module.dim(), 3);
        // prime-field top: head is the Steinberg product simple
        let c = partial_verma(ctx, &[1], ctx.from_int(1), 1, 1).unwrap();
        assert!(c.head_matches);
    }

    #[test]
    fn block_equivalence_p3() {
        let ctx = FieldCtx::new(3, 1).unwrap();
        let rep = steinberg_block_equivalence(ctx, 0).unwrap();
        assert!(rep.passed(), "{}", rep.to_json());
    }
}
