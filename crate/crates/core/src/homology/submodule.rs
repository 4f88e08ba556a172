use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::exactfield::{FieldElement, Matrix, SpanBuilder};
use crate::repcore::ModuleRep;

use super::hom::{hom_space, Degree};

/// Residue class of a weight that fixes the action of every toral element.
pub(crate) fn cartan_key(m: &ModuleRep, w: i64) -> i64 {
    w.rem_euclid((m.ctx().p() as i64).pow(m.levels() as u32))
}

fn project_key(m: &ModuleRep, v: &Matrix, key: i64) -> Matrix {
    let mut out = v.clone();
    for (i, w) in m.grading().iter().enumerate() {
        if cartan_key(m, *w) != key {
            out.set(i, 0, m.ctx().zero());
        }
    }
    out
}

/// Smallest submodule containing the columns of `seeds`, closed under every
/// `E_j`, `F_j` and the toral projections. Returned as basis columns.
pub fn spin(m: &ModuleRep, seeds: &Matrix) -> Result<Matrix> {
    if seeds.is_zero() {
        return Err(Error::InvalidArgument("cannot spin the zero vector".into()));
    }
    let mut span = SpanBuilder::new(m.ctx(), m.dim());
    let mut queue: Vec<Matrix> = Vec::new();
    let keys: Vec<i64> = {
        let mut k: Vec<i64> = m.grading().iter().map(|w| cartan_key(m, *w)).collect();
        k.sort();
        k.dedup();
        k
    };
    let push = |v: Matrix, span: &mut SpanBuilder, queue: &mut Vec<Matrix>| {
        if !v.is_zero() && span.insert(&v) {
            queue.push(v);
        }
    };
    for c in 0..seeds.cols() {
        let v = seeds.column(c);
        for &k in &keys {
            push(project_key(m, &v, k), &mut span, &mut queue);
        }
    }
    while let Some(v) = queue.pop() {
        if span.dim() == m.dim() {
            break;
        }
        for j in 0..m.levels() {
            for g in [m.e(j), m.f(j)] {
                let w = g.mul(&v);
                for &k in &keys {
                    push(project_key(m, &w, k), &mut span, &mut queue);
                }
            }
        }
    }
    Ok(span.basis())
}

/// Outcome of a simplicity test.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Simplicity {
    Simple,
    /// a vector spinning to a proper submodule
    NotSimple(Matrix),
    Inconclusive(String),
}

impl Simplicity {
    pub fn is_simple(&self) -> bool {
        matches!(self, Simplicity::Simple)
    }
}

/// Homogeneous basis of the joint kernel `J` of all raising operators,
/// grouped by toral residue.
pub fn highest_weight_vectors(m: &ModuleRep) -> BTreeMap<i64, Matrix> {
    let ctx = m.ctx();
    let mut groups: BTreeMap<i64, Vec<Matrix>> = BTreeMap::new();
    for (w, idx) in m.weight_spaces() {
        let stacked: Vec<Matrix> = (0..m.levels()).map(|j| m.e(j).select_columns(&idx)).collect();
        let refs: Vec<&Matrix> = stacked.iter().collect();
        let ker = Matrix::vstack(&refs).expect("equal widths").kernel();
        for c in 0..ker.cols() {
            let mut v = Matrix::zeros(ctx, m.dim(), 1);
            for (r, &i) in idx.iter().enumerate() {
                v.set(i, 0, ker.get(r, c));
            }
            groups.entry(cartan_key(m, w)).or_default().push(v);
        }
    }
    groups
        .into_iter()
        .map(|(k, vs)| {
            let refs: Vec<&Matrix> = vs.iter().collect();
            (k, Matrix::hstack(&refs).expect("equal heights"))
        })
        .collect()
}

fn projective_points(basis: &Matrix) -> Vec<Matrix> {
    let ctx = basis.ctx();
    match basis.cols() {
        1 => vec![basis.column(0)],
        2 => {
            let (a, b) = (basis.column(0), basis.column(1));
            let mut pts = vec![a.clone()];
            for t in ctx.elements() {
                let mut v = b.clone();
                v.add_scaled_assign(t, &a);
                pts.push(v);
            }
            pts
        }
        _ => vec![],
    }
}

/// Decide simplicity by spinning every highest-weight vector.
pub fn is_simple(m: &ModuleRep) -> Result<Simplicity> {
    if m.dim() == 0 {
        return Ok(Simplicity::NotSimple(Matrix::zeros(m.ctx(), 0, 1)));
    }
    for j in 0..m.levels() {
        if !m.e(j).pow(m.dim() as u64 + 1).is_zero() {
            return Err(Error::Ungraded("raising operators are not nilpotent".into()));
        }
    }
    let q = m.ctx().size();
    let mut inconclusive = None;
    for (key, basis) in highest_weight_vectors(m) {
        for c in 0..basis.cols() {
            let v = basis.column(c);
            if spin(m, &v)?.cols() < m.dim() {
                return Ok(Simplicity::NotSimple(v));
            }
        }
        if basis.cols() <= 2 && (basis.cols() == 1 || q <= 25) {
            for v in projective_points(&basis) {
                if spin(m, &v)?.cols() < m.dim() {
                    return Ok(Simplicity::NotSimple(v));
                }
            }
        } else {
            inconclusive = Some(format!("highest-weight component {key} has dimension {}", basis.cols()));
        }
    }
    Ok(match inconclusive {
        Some(msg) => Simplicity::Inconclusive(msg),
        None => Simplicity::Simple,
    })
}

/// Radical and head multiplicities of `M` relative to a complete list of simples.
#[derive(Clone, Debug)]
pub struct RadicalHead {
    /// homogeneous basis of `rad M`
    pub radical: Matrix,
    /// `(index into simples, multiplicity)` for each simple occurring in the head
    pub head: Vec<(usize, usize)>,
}

impl RadicalHead {
    pub fn head_length(&self) -> usize {
        self.head.iter().map(|(_, k)| k).sum()
    }
}

pub fn radical_and_head(m: &ModuleRep, simples: &[ModuleRep]) -> Result<RadicalHead> {
    let ctx = m.ctx();
    let mut maps = Vec::new();
    let mut head = Vec::new();
    for (i, l) in simples.iter().enumerate() {
        let hs = hom_space(m, l, Degree::All)?;
        if hs.dim() == 0 {
            continue;
        }
        let end = hom_space(l, l, Degree::All)?.dim();
        if hs.dim() % end != 0 {
            return Err(Error::UnexpectedDimension(format!(
                "dim Hom(M, {}) = {} is not a multiple of dim End = {end}",
                l.provenance,
                hs.dim()
            )));
        }
        head.push((i, hs.dim() / end));
        maps.extend(hs.basis);
    }
    let mut cols = Vec::new();
    for (_, idx) in m.weight_spaces() {
        let ker = if maps.is_empty() {
            Matrix::identity(ctx, idx.len())
        } else {
            let parts: Vec<Matrix> = maps.iter().map(|phi| phi.select_columns(&idx)).collect();
            let refs: Vec<&Matrix> = parts.iter().collect();
            Matrix::vstack(&refs)?.kernel()
        };
        for c in 0..ker.cols() {
            let mut v = Matrix::zeros(ctx, m.dim(), 1);
            for (r, &i) in idx.iter().enumerate() {
                v.set(i, 0, ker.get(r, c));
            }
            cols.push(v);
        }
    }
    let radical = if cols.is_empty() {
        Matrix::zeros(ctx, m.dim(), 0)
    } else {
        let refs: Vec<&Matrix> = cols.iter().collect();
        Matrix::hstack(&refs)?
    };
    Ok(RadicalHead { radical, head })
}

/// Successive heads of the radical filtration, as `(simple index, multiplicity)` lists.
pub fn radical_layers(m: &ModuleRep, simples: &[ModuleRep]) -> Result<Vec<Vec<(usize, usize)>>> {
    let mut layers = Vec::new();
    let mut cur = m.clone();
    while cur.dim() > 0 {
        let rh = radical_and_head(&cur, simples)?;
        if rh.radical.cols() == cur.dim() {
            return Err(Error::Inconclusive("simple list does not cover the head".into()));
        }
        layers.push(rh.head);
        if rh.radical.cols() == 0 {
            break;
        }
        cur = cur.subquotient_sub(&rh.radical)?;
    }
    Ok(layers)
}

/// Random element of a span with coefficients drawn from `rng`.
pub(crate) fn random_combination<R: rand::Rng>(
    basis: &[Matrix],
    rng: &mut R,
) -> Option<Matrix> {
    let first = basis.first()?;
    let ctx = first.ctx();
    let mut out = Matrix::zeros(ctx, first.rows(), first.cols());
    for b in basis {
        let c: FieldElement = ctx.elements().nth(rng.gen_range(0..ctx.size())).unwrap();
        out.add_scaled_assign(c, b);
    }
    Some(out)
}
