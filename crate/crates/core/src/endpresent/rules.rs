use crate::error::Result;
use crate::exactfield::FieldCtx;
use crate::homology::{first_kernel_projectives, is_isomorphic, restricted_simples, split_indecomposables};
use crate::repcore::{frobenius_twist_capped, simple_restricted, tensor, ModuleRep};
use crate::report::{Report, Table};

/// Expected summands of `P_i (x) V`, as labels and modules.
fn expected(proj: &[ModuleRep], st_v1: &ModuleRep, p: u32, i: u32) -> Vec<(String, ModuleRep)> {
    let pk = |k: u32| (format!("P_{k}"), proj[k as usize].clone());
    if i == p - 1 {
        vec![pk(p - 2)]
    } else if i == p - 2 {
        vec![pk(p - 3), pk(p - 1), pk(p - 1)]
    } else if i == 0 {
        vec![(format!("V^(1) (x) P_{}", p - 1), st_v1.clone()), pk(1)]
    } else {
        vec![pk(i - 1), pk(i + 1)]
    }
}

/// Split `P_i (x) V` for every `i` and match the summands, with multiplicity,
/// against `P_{i-1} + P_{i+1}`, `V^(1) (x) P_{p-1} + P_1`, `P_{p-3} + 2 P_{p-1}`
/// and `P_{p-2}`.
pub fn verify_tensor_rules(ctx: FieldCtx, seed: u64) -> Result<Report> {
    let p = ctx.p();
    let mut rep = Report::new("tensor_rules").with_conventions(ctx).param("p", p).param("seed", seed);
    let proj = first_kernel_projectives(ctx, 2, seed)?;
    let simples = restricted_simples(ctx, 2, 2)?;
    let v = simple_restricted(ctx, 1, 2)?;
    let v1 = frobenius_twist_capped(&simple_restricted(ctx, 1, 1)?, 1, 2)?;
    let st_v1 = tensor(&proj[p as usize - 1], &v1)?;
    let mut table = Table::new("decompositions", &["i", "summand_dims", "matched"]);
    for i in 0..p {
        let m = tensor(&proj[i as usize], &v)?;
        let dec = split_indecomposables(&m, &simples, seed)?;
        let mut want = expected(&proj, &st_v1, p, i);
        let labels: Vec<String> = want.iter().map(|w| w.0.clone()).collect();
        let mut unmatched = 0;
        let mut dims = Vec::new();
        for s in &dec.summands {
            dims.push(s.module.dim().to_string());
            let mut hit = None;
            for (n, (_, w)) in want.iter().enumerate() {
                if is_isomorphic(&s.module, w, seed)? {
                    hit = Some(n);
                    break;
                }
            }
            match hit {
                Some(n) => {
                    want.remove(n);
                }
                None => unmatched += 1,
            }
        }
        let ok = unmatched == 0 && want.is_empty();
        rep.check(
            format!("P_{i} (x) V = {}", labels.join(" + ")),
            ok,
            format!("{} summands, {unmatched} unmatched, {} expected missing", dec.summands.len(), want.len()),
        );
        table.push(vec![i.to_string(), dims.join(" "), labels.join(" + ")]);
    }
    rep.table(table);
    Ok(rep)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rules_at_three_five_seven() {
        for p in [3, 5, 7] {
            let rep = verify_tensor_rules(FieldCtx::new(p, 1).unwrap(), 0).unwrap();
            assert!(rep.passed(), "{}", rep.to_json());
        }
    }
}
