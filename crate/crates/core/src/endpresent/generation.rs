use std::collections::BTreeMap;

use crate::error::Result;
use crate::exactfield::{Matrix, SpanBuilder};
use crate::homology::{hom_space, Degree};
use crate::report::{Report, Table};

use super::generators::Presentation;

/// Span dimension of monomials against the Hom dimension for one `(src, tgt, degree)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SpanRow {
    pub src: usize,
    pub tgt: usize,
    pub degree: i64,
    pub hom_dim: usize,
    pub span_dim: usize,
}

type Spans = BTreeMap<(usize, i64), (SpanBuilder, Vec<Matrix>)>;

fn insert(spans: &mut Spans, key: (usize, i64), m: Matrix) -> bool {
    let n = m.rows() * m.cols();
    let ctx = m.ctx();
    let (sb, kept) = spans.entry(key).or_insert_with(|| (SpanBuilder::new(ctx, n), vec![]));
    if sb.insert(&m.vectorize()) {
        kept.push(m);
        true
    } else {
        false
    }
}

/// Span of the products `g_n .. g_1` from `src` (so `g_1` acts first) with
/// `level(g_n) <= .. <= level(g_1)`: written left to right, levels never decrease.
fn monomials_from(pres: &Presentation, src: usize) -> Spans {
    let ctx = pres.ctx;
    let mut spans = Spans::new();
    insert(&mut spans, (src, 0), Matrix::identity(ctx, pres.modules[src].dim()));
    for level in (0..pres.r).rev() {
        let mut frontier: Vec<((usize, i64), Matrix)> = spans
            .iter()
            .flat_map(|(k, (_, ms))| ms.iter().map(move |m| (*k, m.clone())))
            .collect();
        while !frontier.is_empty() {
            let mut next = Vec::new();
            for ((b, d), m) in frontier {
                for g in pres.from_object(b, level) {
                    let x = g.matrix.mul(&m);
                    let key = (g.tgt, d + g.degree);
                    if !x.is_zero() && insert(&mut spans, key, x.clone()) {
                        next.push((key, x));
                    }
                }
            }
            frontier = next;
        }
    }
    spans
}

/// Compare the monomial span with the full Hom space for all pairs among
/// `objects`, degree by degree, keeping degrees with `|degree| <= window * p^r`.
pub fn monomial_span_rows(pres: &Presentation, objects: &[usize], window: i64) -> Result<Vec<SpanRow>> {
    let pr = (pres.ctx.p() as i64).pow(pres.r as u32);
    let mut rows = Vec::new();
    for &a in objects {
        let spans = monomials_from(pres, a);
        for &b in objects {
            let hs = hom_space(&pres.modules[a], &pres.modules[b], Degree::All)?;
            let mut by_degree: BTreeMap<i64, usize> = BTreeMap::new();
            for d in &hs.degrees {
                *by_degree.entry(*d).or_default() += 1;
            }
            for (d, _) in spans.range((b, i64::MIN)..=(b, i64::MAX)) {
                by_degree.entry(d.1).or_default();
            }
            for (d, hom_dim) in by_degree {
                if d.abs() > window * pr {
                    continue;
                }
                let span_dim = spans.get(&(b, d)).map_or(0, |s| s.0.dim());
                rows.push(SpanRow { src: a, tgt: b, degree: d, hom_dim, span_dim });
            }
        }
    }
    Ok(rows)
}

/// Monomials in non-decreasing level order span every graded piece of End.
pub fn verify_generation(pres: &Presentation, objects: &[usize], window: i64) -> Result<Report> {
    let p = pres.ctx.p();
    let mut rep = Report::new("generation")
        .with_conventions(pres.ctx)
        .param("p", p)
        .param("r", pres.r)
        .param("window", window)
        .param("objects", objects.len());
    let rows = monomial_span_rows(pres, objects, window)?;
    let mut per_degree: BTreeMap<i64, (usize, usize)> = BTreeMap::new();
    let mut missing = Vec::new();
    for row in &rows {
        let e = per_degree.entry(row.degree).or_default();
        e.0 += row.hom_dim;
        e.1 += row.span_dim;
        if row.span_dim != row.hom_dim {
            missing.push(format!(
                "{} -> {} deg {}: {} of {}",
                pres.label(row.src),
                pres.label(row.tgt),
                row.degree,
                row.span_dim,
                row.hom_dim
            ));
        }
    }
    let mut table = Table::new("span_by_degree", &["degree", "hom_dim", "span_dim"]);
    for (d, (h, s)) in &per_degree {
        table.push(vec![d.to_string(), h.to_string(), s.to_string()]);
    }
    let total: usize = rows.iter().map(|r| r.hom_dim).sum();
    let spanned: usize = rows.iter().map(|r| r.span_dim).sum();
    rep.check("monomials span End degree by degree", missing.is_empty(), missing.join("; "))
        .scalar("end_dim", total)
        .scalar("span_dim", spanned);
    // widening the window by one keeps every already-checked degree spanned
    let wider = monomial_span_rows(pres, objects, window + 1)?;
    let stable = rows.iter().all(|r| wider.contains(r)) && wider.iter().all(|r| r.span_dim == r.hom_dim);
    rep.check("spanning stable under widening the window", stable, "");
    rep.table(table);
    Ok(rep)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::endpresent::build_generators;
    use crate::exactfield::FieldCtx;

    #[test]
    fn regular_block_at_three_spans_eight() {
        let ctx = FieldCtx::new(3, 1).unwrap();
        let pres = build_generators(ctx, 1, 0).unwrap();
        let rows = monomial_span_rows(&pres, &[0, 1], 2).unwrap();
        let total: usize = rows.iter().map(|r| r.hom_dim).sum();
        assert_eq!(total, 8);
        assert!(rows.iter().all(|r| r.span_dim == r.hom_dim), "{rows:?}");
        let st = monomial_span_rows(&pres, &[2], 2).unwrap();
        assert_eq!(st.iter().map(|r| r.hom_dim).sum::<usize>(), 1);
    }

    #[test]
    fn two_levels_at_three_span() {
        let ctx = FieldCtx::new(3, 1).unwrap();
        let pres = build_generators(ctx, 2, 0).unwrap();
        let all: Vec<usize> = (0..pres.objects.len()).collect();
        let rows = monomial_span_rows(&pres, &all, 2).unwrap();
        let bad: Vec<_> = rows.iter().filter(|r| r.span_dim != r.hom_dim).collect();
        assert!(bad.is_empty(), "{bad:?}");
    }
}
