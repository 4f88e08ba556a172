use serde::Serialize;

use crate::error::{Error, Result};
use crate::exactfield::{FieldElement, Matrix, SpanBuilder};
use crate::homology::{blocks, digit_tuples, end_algebra, CoordinateSystem, Degree, EndAlgebra};
use crate::repcore::{restrict_levels, ModuleRep};
use crate::report::{Report, Table};

use super::generators::Presentation;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum BlockKind {
    /// every object has lowest digit `<= p-2`
    Regular,
    /// the single object with all digits `p-1`
    Steinberg,
    /// lowest digit `p-1`: the image of a lower block under `M -> M^(1) (x) St`
    Singular,
}

/// Centre of one block of End(P).
#[derive(Clone, Debug)]
pub struct BlockCenter {
    pub objects: Vec<usize>,
    pub kind: BlockKind,
    pub end_dim: usize,
    pub center_dim: usize,
    /// for regular blocks: span of the predicted elements
    pub predicted_dim: Option<usize>,
    pub predicted_central: bool,
    pub center_in_predicted: bool,
    /// for singular blocks: centre dimension of the matching lower block
    pub lower_center_dim: Option<usize>,
    /// centre dimension after shifting every other object by `p^r`
    pub shifted_center_dim: Option<usize>,
}

/// Digit classes of the blocks of the first Frobenius kernel.
fn first_kernel_block(p: u32, k: u32) -> u32 {
    if k == p - 1 {
        p - 1
    } else {
        k.min(p - 2 - k)
    }
}

/// Predicted central elements on `objects`, one map per object: the block
/// idempotent, and for each level `l`, each digit tuple `k_0..k_l <= p-2` and
/// (for `l < r-1`) each first-kernel block `C`, the map
/// `Omega_{k_0} (x) .. (x) Omega_{k_l}` on objects with those lowest digits
/// and digit `l+1` in `C`, identity on the factors above `l`.
pub fn predicted_elements(pres: &Presentation, objects: &[usize]) -> Vec<Vec<Matrix>> {
    let p = pres.ctx.p();
    let r = pres.r;
    let single = &pres.single;
    let ctx = pres.ctx;
    let omegas = |d: &[u32], upto: usize| -> Matrix {
        d.iter().enumerate().fold(Matrix::identity(ctx, 1), |acc, (f, &k)| {
            let m = if f <= upto { single.omega[k as usize].clone() } else { Matrix::identity(ctx, single.dim(k)) };
            acc.kron(&m)
        })
    };
    let mut out = vec![objects.iter().map(|&a| Matrix::identity(ctx, pres.modules[a].dim())).collect::<Vec<_>>()];
    for l in 0..r {
        let classes: Vec<Option<u32>> = if l + 1 < r {
            let mut c: Vec<u32> = (0..p).map(|k| first_kernel_block(p, k)).collect();
            c.sort();
            c.dedup();
            c.into_iter().map(Some).collect()
        } else {
            vec![None]
        };
        for low in digit_tuples(p - 1, l + 1) {
            for class in &classes {
                let elem: Vec<Matrix> = objects
                    .iter()
                    .map(|&a| {
                        let d = &pres.objects[a];
                        let sel = d[..=l] == low[..] && class.is_none_or(|c| first_kernel_block(p, d[l + 1]) == c);
                        if sel {
                            omegas(d, l)
                        } else {
                            let n = pres.modules[a].dim();
                            Matrix::zeros(ctx, n, n)
                        }
                    })
                    .collect();
                if elem.iter().any(|m| !m.is_zero()) {
                    out.push(elem);
                }
            }
        }
    }
    out
}

fn coordinates(alg: &EndAlgebra, elem: &[Matrix]) -> Result<Vec<FieldElement>> {
    let mut out = vec![alg.ctx.zero(); alg.dim()];
    for (a, m) in elem.iter().enumerate() {
        let idx = alg.blocks.get(&(a, a)).cloned().unwrap_or_default();
        let maps: Vec<Matrix> = idx.iter().map(|&i| alg.basis[i].map.clone()).collect();
        let c = CoordinateSystem::new(alg.ctx, &maps)?
            .coords(m)
            .ok_or_else(|| Error::InvalidArgument("element is not an endomorphism".into()))?;
        for (k, x) in idx.iter().zip(c) {
            out[*k] = x;
        }
    }
    Ok(out)
}

fn as_column(v: &[FieldElement]) -> Matrix {
    Matrix::column_vector(v[0].ctx(), v)
}

/// Centre of every block among the objects of `pres`.
pub fn block_centers(pres: &Presentation) -> Result<Vec<BlockCenter>> {
    let p = pres.ctx.p();
    let mut out = Vec::new();
    for objs in blocks(&pres.modules)? {
        let mods: Vec<ModuleRep> = objs.iter().map(|&a| pres.modules[a].clone()).collect();
        let alg = end_algebra(&mods, Degree::All)?;
        let center = alg.center()?;
        let kind = if objs.len() == 1 && pres.objects[objs[0]].iter().all(|&k| k == p - 1) {
            BlockKind::Steinberg
        } else if objs.iter().all(|&a| pres.objects[a][0] <= p - 2) {
            BlockKind::Regular
        } else {
            BlockKind::Singular
        };
        let mut bc = BlockCenter {
            objects: objs.clone(),
            kind,
            end_dim: alg.dim(),
            center_dim: center.len(),
            predicted_dim: None,
            predicted_central: true,
            center_in_predicted: true,
            lower_center_dim: None,
            shifted_center_dim: None,
        };
        match kind {
            BlockKind::Regular => {
                let predicted = predicted_elements(pres, &objs);
                // direct check against every basis map, independent of the commutant solve
                for elem in &predicted {
                    for b in &alg.basis {
                        if elem[b.tgt].mul(&b.map) != b.map.mul(&elem[b.src]) {
                            bc.predicted_central = false;
                        }
                    }
                }
                let mut span = SpanBuilder::new(pres.ctx, alg.dim());
                for elem in &predicted {
                    span.insert(&as_column(&coordinates(&alg, elem)?));
                }
                bc.predicted_dim = Some(span.dim());
                bc.center_in_predicted = center.iter().all(|z| span.contains(&as_column(z)));
                let pr = (p as i64).pow(pres.r as u32);
                let shifted: Vec<ModuleRep> =
                    mods.iter().enumerate().map(|(i, m)| if i % 2 == 1 { m.shift(pr) } else { m.clone() }).collect();
                bc.shifted_center_dim = Some(end_algebra(&shifted, Degree::All)?.center()?.len());
            }
            BlockKind::Singular => {
                // drop the Steinberg factor: P_{p-1} (x) M^(1) corresponds to M one level down
                if pres.r >= 2 {
                    let lower: Vec<ModuleRep> = objs
                        .iter()
                        .map(|&a| {
                            let d = &pres.objects[a];
                            let m = crate::homology::assemble(&d[1..], &pres.single.proj, pres.r)?;
                            restrict_levels(&m, pres.r - 1)
                        })
                        .collect::<Result<_>>()?;
                    bc.lower_center_dim = Some(end_algebra(&lower, Degree::All)?.center()?.len());
                }
            }
            BlockKind::Steinberg => {}
        }
        out.push(bc);
    }
    Ok(out)
}

/// Centre theorem on every regular block, dimension one on the Steinberg
/// block, and the lower-block comparison on singular blocks.
pub fn verify_center(pres: &Presentation) -> Result<Report> {
    let p = pres.ctx.p();
    let mut rep = Report::new("center").with_conventions(pres.ctx).param("p", p).param("r", pres.r);
    let mut table = Table::new("centers", &["block", "kind", "end_dim", "center_dim", "predicted_dim"]);
    for bc in block_centers(pres)? {
        let names: Vec<String> = bc.objects.iter().map(|&a| pres.label(a)).collect();
        let name = names.join(" ");
        let kind = serde_json::to_value(bc.kind).expect("kind").as_str().unwrap_or_default().to_string();
        match bc.kind {
            BlockKind::Regular => {
                let pd = bc.predicted_dim.unwrap_or(0);
                rep.check(format!("predicted elements central on {name}"), bc.predicted_central, "");
                rep.check(format!("centre within predicted span on {name}"), bc.center_in_predicted, "");
                rep.check(format!("centre dim = predicted dim on {name}"), pd == bc.center_dim, format!("{} vs {pd}", bc.center_dim))
                    .scalar("center_dim", bc.center_dim);
                let sd = bc.shifted_center_dim.unwrap_or(0);
                rep.check(format!("centre dim invariant under regrading on {name}"), sd == bc.center_dim, format!("{sd}"));
            }
            BlockKind::Steinberg => {
                rep.check(format!("Steinberg block {name} has centre dim 1"), bc.center_dim == 1, "")
                    .scalar("center_dim", bc.center_dim);
            }
            BlockKind::Singular => {
                if let Some(low) = bc.lower_center_dim {
                    rep.check(format!("singular block {name} matches the lower block"), low == bc.center_dim, format!("{} vs {low}", bc.center_dim))
                        .scalar("center_dim", bc.center_dim);
                }
            }
        }
        table.push(vec![
            name,
            kind,
            bc.end_dim.to_string(),
            bc.center_dim.to_string(),
            bc.predicted_dim.map(|d| d.to_string()).unwrap_or_default(),
        ]);
    }
    rep.table(table);
    Ok(rep)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::endpresent::build_generators;
    use crate::exactfield::FieldCtx;

    #[test]
    fn first_kernel_centers_at_three() {
        let ctx = FieldCtx::new(3, 1).unwrap();
        let pres = build_generators(ctx, 1, 0).unwrap();
        let bcs = block_centers(&pres).unwrap();
        let dims: Vec<(BlockKind, usize)> = bcs.iter().map(|b| (b.kind, b.center_dim)).collect();
        assert_eq!(dims, vec![(BlockKind::Regular, 3), (BlockKind::Steinberg, 1)]);
        assert!(bcs[0].predicted_central && bcs[0].center_in_predicted);
        assert_eq!(bcs[0].end_dim, 8);
    }

    #[test]
    fn two_level_regular_block_at_three() {
        let ctx = FieldCtx::new(3, 1).unwrap();
        let pres = build_generators(ctx, 2, 0).unwrap();
        let bc = block_centers(&pres).unwrap().remove(0);
        assert_eq!(pres.objects[bc.objects[0]], vec![0, 0]);
        // id, Omega_{k_0} (x) e_C for k_0 in {0,1} and two blocks C, Omega_{k_0} (x) Omega_{k_1}
        assert_eq!((bc.kind, bc.center_dim, bc.predicted_dim), (BlockKind::Regular, 9, Some(9)));
    }

    #[test]
    fn center_reports_pass() {
        for (p, r) in [(3, 1), (3, 2), (5, 1)] {
            let ctx = FieldCtx::new(p, 1).unwrap();
            let pres = build_generators(ctx, r, 0).unwrap();
            let rep = verify_center(&pres).unwrap();
            assert!(rep.passed(), "p={p} r={r}: {}", rep.to_json());
        }
    }
}
