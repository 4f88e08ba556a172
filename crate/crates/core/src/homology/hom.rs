use std::collections::{BTreeMap, BTreeSet};

use crate::error::{Error, Result};
use crate::exactfield::{FieldCtx, Matrix};
use crate::repcore::ModuleRep;

/// Which graded pieces of `Hom(M, N)` to compute.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Degree {
    /// maps raising weights by exactly `s`
    Shift(i64),
    /// the ungraded Hom: all shifts divisible by `p^levels`
    All,
}

/// Basis of an intertwiner space; every basis map is homogeneous.
#[derive(Clone, Debug)]
pub struct HomSpace {
    pub src_dim: usize,
    pub tgt_dim: usize,
    pub basis: Vec<Matrix>,
    pub degrees: Vec<i64>,
}

impl HomSpace {
    pub fn dim(&self) -> usize {
        self.basis.len()
    }
    pub fn is_zero(&self) -> bool {
        self.basis.is_empty()
    }
    /// Linear combination of basis maps.
    pub fn combine(&self, ctx: FieldCtx, coeffs: &[crate::exactfield::FieldElement]) -> Matrix {
        let mut out = Matrix::zeros(ctx, self.tgt_dim, self.src_dim);
        for (c, b) in coeffs.iter().zip(&self.basis) {
            out.add_scaled_assign(*c, b);
        }
        out
    }
    /// Sub-basis of maps with the given degree.
    pub fn of_degree(&self, s: i64) -> HomSpace {
        let (basis, degrees) = self
            .basis
            .iter()
            .zip(&self.degrees)
            .filter(|(_, d)| **d == s)
            .map(|(b, d)| (b.clone(), *d))
            .unzip();
        HomSpace { src_dim: self.src_dim, tgt_dim: self.tgt_dim, basis, degrees }
    }
    /// Coordinates of `phi` in this basis, if it lies in the span.
    pub fn coordinates(&self, phi: &Matrix) -> Option<Matrix> {
        if self.basis.is_empty() {
            return if phi.is_zero() { Some(Matrix::zeros(phi.ctx(), 0, 1)) } else { None };
        }
        let cols: Vec<Matrix> = self.basis.iter().map(|b| b.vectorize()).collect();
        let refs: Vec<&Matrix> = cols.iter().collect();
        Matrix::hstack(&refs).ok()?.coordinates(&phi.vectorize())
    }
}

fn check_pair(m: &ModuleRep, n: &ModuleRep) -> Result<()> {
    if m.ctx() != n.ctx() {
        return Err(Error::FieldMismatch);
    }
    if m.levels() != n.levels() {
        return Err(Error::LevelOverflow(format!("level caps differ: {} vs {}", m.levels(), n.levels())));
    }
    Ok(())
}

/// Shifts `s` for which some weight of `M` moved by `s` is a weight of `N`.
fn candidate_shifts(m: &ModuleRep, n: &ModuleRep, degree: Degree) -> Vec<i64> {
    match degree {
        Degree::Shift(s) => vec![s],
        Degree::All => {
            let modulus = (m.ctx().p() as i64).pow(m.levels() as u32);
            let wn: BTreeSet<i64> = n.grading().iter().copied().collect();
            let wm: BTreeSet<i64> = m.grading().iter().copied().collect();
            let mut out = BTreeSet::new();
            for a in &wm {
                for b in &wn {
                    if (b - a).rem_euclid(modulus) == 0 {
                        out.insert(b - a);
                    }
                }
            }
            out.into_iter().collect()
        }
    }
}

/// Intertwiners of a single degree, solved on weight blocks only.
fn hom_of_shift(m: &ModuleRep, n: &ModuleRep, s: i64) -> Vec<Matrix> {
    let ctx = m.ctx();
    let mw = m.weight_spaces();
    let nw = n.weight_spaces();
    // unknown blocks: phi_w : M_w -> N_{w+s}
    let mut offsets: BTreeMap<i64, usize> = BTreeMap::new();
    let mut total = 0;
    for (w, idx) in &mw {
        if let Some(t) = nw.get(&(w + s)) {
            offsets.insert(*w, total);
            total += idx.len() * t.len();
        }
    }
    if total == 0 {
        return vec![];
    }
    let unknown = |w: i64, row_in_n: usize, col_in_m: usize| -> Option<usize> {
        let off = *offsets.get(&w)?;
        Some(off + row_in_n * mw[&w].len() + col_in_m)
    };
    let p = ctx.p() as i64;
    let mut rows: Vec<Vec<(usize, crate::exactfield::FieldElement)>> = Vec::new();
    let gens: Vec<(&Matrix, &Matrix, i64)> = (0..m.levels())
        .flat_map(|j| {
            let step = 2 * p.pow(j as u32);
            [(m.e(j), n.e(j), step), (m.f(j), n.f(j), -step)]
        })
        .collect();
    for (xm, xn, step) in gens {
        // (phi X_M - X_N phi) restricted to M_w -> N_{w+s+step}
        for (w, src) in &mw {
            let Some(tgt) = nw.get(&(w + s + step)) else { continue };
            let mid_m = mw.get(&(w + step));
            let mid_n = nw.get(&(w + s));
            for (ti, &t) in tgt.iter().enumerate() {
                for (si, &sv) in src.iter().enumerate() {
                    let mut row = Vec::new();
                    // phi_{w+step}[t, u] * X_M[u, sv]
                    if let Some(mid) = mid_m {
                        for (ui, &u) in mid.iter().enumerate() {
                            let c = xm.get(u, sv);
                            if !c.is_zero() {
                                if let Some(k) = unknown(w + step, ti, ui) {
                                    row.push((k, c));
                                }
                            }
                        }
                    }
                    // - X_N[t, u] * phi_w[u, sv]
                    if let Some(mid) = mid_n {
                        for (ui, &u) in mid.iter().enumerate() {
                            let c = xn.get(t, u);
                            if !c.is_zero() {
                                if let Some(k) = unknown(*w, ui, si) {
                                    row.push((k, -c));
                                }
                            }
                        }
                    }
                    if !row.is_empty() {
                        rows.push(row);
                    }
                }
            }
        }
    }
    let mut sys = Matrix::zeros(ctx, rows.len(), total);
    for (r, row) in rows.iter().enumerate() {
        for (k, c) in row {
            let cur = sys.get(r, *k);
            sys.set(r, *k, cur + *c);
        }
    }
    let ker = sys.kernel();
    (0..ker.cols())
        .map(|c| {
            let mut phi = Matrix::zeros(ctx, n.dim(), m.dim());
            for (w, src) in &mw {
                let Some(off) = offsets.get(w) else { continue };
                let tgt = &nw[&(w + s)];
                for (ti, &t) in tgt.iter().enumerate() {
                    for (si, &sv) in src.iter().enumerate() {
                        phi.set(t, sv, ker.get(off + ti * src.len() + si, c));
                    }
                }
            }
            phi
        })
        .collect()
}

/// Intertwiner space `Hom(M, N)`, solved weight block by weight block.
pub fn hom_space(m: &ModuleRep, n: &ModuleRep, degree: Degree) -> Result<HomSpace> {
    check_pair(m, n)?;
    let mut basis = Vec::new();
    let mut degrees = Vec::new();
    for s in candidate_shifts(m, n, degree) {
        for phi in hom_of_shift(m, n, s) {
            basis.push(phi);
            degrees.push(s);
        }
    }
    Ok(HomSpace { src_dim: m.dim(), tgt_dim: n.dim(), basis, degrees })
}

/// Reference solver: one system in all `dim M * dim N` entries, with the
/// degree condition imposed as extra equations.
pub fn hom_space_unblocked(m: &ModuleRep, n: &ModuleRep, degree: Degree) -> Result<HomSpace> {
    check_pair(m, n)?;
    let ctx = m.ctx();
    let (dm, dn) = (m.dim(), n.dim());
    let modulus = (ctx.p() as i64).pow(m.levels() as u32);
    let allowed = |t: usize, s: usize| {
        let d = n.grading()[t] - m.grading()[s];
        match degree {
            Degree::Shift(x) => d == x,
            Degree::All => d.rem_euclid(modulus) == 0,
        }
    };
    let var = |t: usize, s: usize| t * dm + s;
    let mut blocks: Vec<Matrix> = Vec::new();
    for j in 0..m.levels() {
        for (xm, xn) in [(m.e(j), n.e(j)), (m.f(j), n.f(j))] {
            // vec(phi X_M - X_N phi) = (I kron X_M^T - X_N kron I) vec(phi) in row-major order
            let a = Matrix::identity(ctx, dn).kron(&xm.transpose());
            let b = xn.kron(&Matrix::identity(ctx, dm));
            blocks.push(a.sub(&b));
        }
    }
    let mut pins = Vec::new();
    for t in 0..dn {
        for s in 0..dm {
            if !allowed(t, s) {
                pins.push(var(t, s));
            }
        }
    }
    let mut pin = Matrix::zeros(ctx, pins.len(), dm * dn);
    for (r, k) in pins.iter().enumerate() {
        pin.set(r, *k, ctx.one());
    }
    blocks.push(pin);
    let refs: Vec<&Matrix> = blocks.iter().collect();
    let ker = Matrix::vstack(&refs)?.kernel();
    let basis: Vec<Matrix> = (0..ker.cols()).map(|c| ker.column(c).unvectorize(dn, dm)).collect();
    let degrees = basis
        .iter()
        .map(|phi| {
            (0..dn)
                .flat_map(|t| (0..dm).map(move |s| (t, s)))
                .find(|&(t, s)| !phi.get(t, s).is_zero())
                .map(|(t, s)| n.grading()[t] - m.grading()[s])
                .unwrap_or(0)
        })
        .collect();
    Ok(HomSpace { src_dim: dm, tgt_dim: dn, basis, degrees })
}
