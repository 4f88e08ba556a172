use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::exactfield::{FieldCtx, FieldElement, Matrix};
use crate::repcore::{restrict_levels, ModuleRep};
use crate::smallalg::PChar;

use super::hom::{hom_space, Degree, HomSpace};

/// Coordinates with respect to a fixed list of independent matrices, via a
/// set of pivot entries on which the list restricts to an invertible matrix.
#[derive(Clone, Debug)]
pub struct CoordinateSystem {
    basis: Vec<Matrix>,
    pivots: Vec<usize>,
    inv: Matrix,
}

impl CoordinateSystem {
    pub fn new(ctx: FieldCtx, basis: &[Matrix]) -> Result<Self> {
        let Some(first) = basis.first() else {
            return Ok(CoordinateSystem { basis: vec![], pivots: vec![], inv: Matrix::zeros(ctx, 0, 0) });
        };
        let len = first.rows() * first.cols();
        let mut rows = Matrix::zeros(ctx, basis.len(), len);
        for (i, b) in basis.iter().enumerate() {
            let v = b.vectorize();
            for k in 0..len {
                rows.set(i, k, v.get(k, 0));
            }
        }
        let (_, pivots) = rows.rref();
        if pivots.len() != basis.len() {
            return Err(Error::InvalidArgument("basis matrices are dependent".into()));
        }
        let sub = rows.select_columns(&pivots);
        Ok(CoordinateSystem { basis: basis.to_vec(), pivots, inv: sub.inverse()? })
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    /// Coordinates of `phi`, or `None` if it is outside the span.
    pub fn coords(&self, phi: &Matrix) -> Option<Vec<FieldElement>> {
        if self.basis.is_empty() {
            return phi.is_zero().then(Vec::new);
        }
        let ctx = phi.ctx();
        let v = phi.vectorize();
        let vals = Matrix::from_fn(ctx, 1, self.pivots.len(), |_, j| v.get(self.pivots[j], 0));
        let c = vals.mul(&self.inv);
        let coeffs: Vec<FieldElement> = (0..c.cols()).map(|j| c.get(0, j)).collect();
        let mut rebuilt = Matrix::zeros(ctx, phi.rows(), phi.cols());
        for (x, b) in coeffs.iter().zip(&self.basis) {
            rebuilt.add_scaled_assign(*x, b);
        }
        (rebuilt == *phi).then_some(coeffs)
    }
}

/// One basis map of an endomorphism algebra of `(+)_a M_a`.
#[derive(Clone, Debug)]
pub struct EndBasisElement {
    pub src: usize,
    pub tgt: usize,
    pub degree: i64,
    pub map: Matrix,
}

/// Endomorphism algebra of a direct sum of objects, stored block-sparsely.
///
/// The product is composition: `b_i * b_j = b_i o b_j` (apply `b_j` first).
#[derive(Clone, Debug)]
pub struct EndAlgebra {
    pub ctx: FieldCtx,
    pub object_dims: Vec<usize>,
    pub basis: Vec<EndBasisElement>,
    /// nonzero products: `(i, j) -> coordinates`
    pub structure: BTreeMap<(usize, usize), Vec<(usize, FieldElement)>>,
    /// basis indices of each `Hom(a, b)` block
    pub blocks: BTreeMap<(usize, usize), Vec<usize>>,
}

/// Build `End((+)_a M_a)` with Homs of the given degree type.
pub fn end_algebra(objects: &[ModuleRep], degree: Degree) -> Result<EndAlgebra> {
    let ctx = objects.first().ok_or_else(|| Error::InvalidArgument("no objects".into()))?.ctx();
    let mut basis = Vec::new();
    let mut blocks: BTreeMap<(usize, usize), Vec<usize>> = BTreeMap::new();
    for (a, ma) in objects.iter().enumerate() {
        for (b, mb) in objects.iter().enumerate() {
            let hs = hom_space(ma, mb, degree)?;
            for (map, deg) in hs.basis.iter().zip(&hs.degrees) {
                blocks.entry((a, b)).or_default().push(basis.len());
                basis.push(EndBasisElement { src: a, tgt: b, degree: *deg, map: map.clone() });
            }
        }
    }
    from_parts(ctx, objects.iter().map(|m| m.dim()).collect(), basis, blocks)
}

/// Assemble an algebra from explicit block bases (structure constants are computed).
pub fn from_parts(
    ctx: FieldCtx,
    object_dims: Vec<usize>,
    basis: Vec<EndBasisElement>,
    blocks: BTreeMap<(usize, usize), Vec<usize>>,
) -> Result<EndAlgebra> {
    let mut coords: BTreeMap<(usize, usize), CoordinateSystem> = BTreeMap::new();
    for (key, idx) in &blocks {
        let maps: Vec<Matrix> = idx.iter().map(|&i| basis[i].map.clone()).collect();
        coords.insert(*key, CoordinateSystem::new(ctx, &maps)?);
    }
    let mut structure = BTreeMap::new();
    for (i, bi) in basis.iter().enumerate() {
        for (j, bj) in basis.iter().enumerate() {
            if bj.tgt != bi.src {
                continue;
            }
            let prod = bi.map.mul(&bj.map);
            if prod.is_zero() {
                continue;
            }
            let key = (bj.src, bi.tgt);
            let cs = coords
                .get(&key)
                .ok_or_else(|| Error::InvalidArgument(format!("product lands in the missing block {key:?}")))?;
            let c = cs
                .coords(&prod)
                .ok_or_else(|| Error::InvalidArgument("product leaves the span of the block basis".into()))?;
            let sparse: Vec<(usize, FieldElement)> = blocks[&key]
                .iter()
                .zip(c)
                .filter(|(_, x)| !x.is_zero())
                .map(|(k, x)| (*k, x))
                .collect();
            if !sparse.is_empty() {
                structure.insert((i, j), sparse);
            }
        }
    }
    Ok(EndAlgebra { ctx, object_dims, basis, structure, blocks })
}

impl EndAlgebra {
    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    /// Coordinates of the identity (sum of the identities of the objects).
    pub fn identity(&self) -> Result<Vec<FieldElement>> {
        let mut out = vec![self.ctx.zero(); self.dim()];
        for (a, &n) in self.object_dims.iter().enumerate() {
            let idx = self.blocks.get(&(a, a)).cloned().unwrap_or_default();
            let maps: Vec<Matrix> = idx.iter().map(|&i| self.basis[i].map.clone()).collect();
            let c = CoordinateSystem::new(self.ctx, &maps)?
                .coords(&Matrix::identity(self.ctx, n))
                .ok_or_else(|| Error::InvalidArgument("identity is not in End".into()))?;
            for (k, x) in idx.iter().zip(c) {
                out[*k] = x;
            }
        }
        Ok(out)
    }

    /// Product of two coordinate vectors.
    pub fn mul(&self, x: &[FieldElement], y: &[FieldElement]) -> Vec<FieldElement> {
        let mut out = vec![self.ctx.zero(); self.dim()];
        for ((i, j), terms) in &self.structure {
            let c = x[*i] * y[*j];
            if c.is_zero() {
                continue;
            }
            for (k, v) in terms {
                out[*k] = out[*k] + c * *v;
            }
        }
        out
    }

    /// Map with the given coordinates inside block `(src, tgt)`.
    pub fn map_of(&self, x: &[FieldElement], src: usize, tgt: usize) -> Matrix {
        let mut m = Matrix::zeros(self.ctx, self.object_dims[tgt], self.object_dims[src]);
        for i in self.blocks.get(&(src, tgt)).into_iter().flatten() {
            m.add_scaled_assign(x[*i], &self.basis[*i].map);
        }
        m
    }

    /// Basis of the centre, as coordinate vectors. A central element commutes
    /// with the object idempotents, so it lies in the diagonal blocks.
    pub fn center(&self) -> Result<Vec<Vec<FieldElement>>> {
        let unknowns: Vec<usize> = (0..self.dim()).filter(|&k| self.basis[k].src == self.basis[k].tgt).collect();
        let pos: BTreeMap<usize, usize> = unknowns.iter().enumerate().map(|(a, b)| (*b, a)).collect();
        let mut rows: Vec<Vec<(usize, FieldElement)>> = Vec::new();
        for i in 0..self.dim() {
            // coefficient of basis k in (z b_i - b_i z), as a function of z
            let mut eqs: BTreeMap<usize, Vec<(usize, FieldElement)>> = BTreeMap::new();
            for &k in &unknowns {
                if let Some(t) = self.structure.get(&(k, i)) {
                    for (out, v) in t {
                        eqs.entry(*out).or_default().push((pos[&k], *v));
                    }
                }
                if let Some(t) = self.structure.get(&(i, k)) {
                    for (out, v) in t {
                        eqs.entry(*out).or_default().push((pos[&k], -*v));
                    }
                }
            }
            rows.extend(eqs.into_values());
        }
        let mut sys = Matrix::zeros(self.ctx, rows.len(), unknowns.len());
        for (r, row) in rows.iter().enumerate() {
            for (c, v) in row {
                let cur = sys.get(r, *c);
                sys.set(r, *c, cur + *v);
            }
        }
        let ker = sys.kernel();
        Ok((0..ker.cols())
            .map(|c| {
                let mut z = vec![self.ctx.zero(); self.dim()];
                for (a, &k) in unknowns.iter().enumerate() {
                    z[k] = ker.get(a, c);
                }
                z
            })
            .collect())
    }

    /// Exact associativity check on all basis triples.
    pub fn is_associative(&self) -> bool {
        let n = self.dim();
        let unit = |i: usize| {
            let mut v = vec![self.ctx.zero(); n];
            v[i] = self.ctx.one();
            v
        };
        for i in 0..n {
            for j in 0..n {
                if self.basis[j].tgt != self.basis[i].src {
                    continue;
                }
                let ij = self.mul(&unit(i), &unit(j));
                for k in 0..n {
                    if self.basis[k].tgt != self.basis[j].src {
                        continue;
                    }
                    if self.mul(&ij, &unit(k)) != self.mul(&unit(i), &self.mul(&unit(j), &unit(k))) {
                        return false;
                    }
                }
            }
        }
        true
    }
}

fn hex(x: FieldElement) -> String {
    let p = x.ctx().p() as usize;
    let code = x.coeffs().iter().rev().fold(0usize, |acc, &d| acc * p + d as usize);
    format!("{code:x}")
}

/// Canonical text of the structure constants (basis in construction order).
pub fn end_algebra_canonical_text(a: &EndAlgebra) -> String {
    let mut s = String::from("frobkit-endalg 1\n");
    s.push_str(&format!("field {} {} {}\n", a.ctx.p(), a.ctx.k(), a.ctx.modulus_string()));
    let dims: Vec<String> = a.object_dims.iter().map(|d| d.to_string()).collect();
    s.push_str(&format!("objects {}\n", dims.join(" ")));
    s.push_str(&format!("dim {}\n", a.dim()));
    for (i, b) in a.basis.iter().enumerate() {
        s.push_str(&format!("basis {i} {} {} {}\n", b.src, b.tgt, b.degree));
    }
    for ((i, j), terms) in &a.structure {
        let t: Vec<String> = terms.iter().map(|(k, v)| format!("{k}:{}", hex(*v))).collect();
        s.push_str(&format!("mul {i} {j} {}\n", t.join(" ")));
    }
    s
}

/// `Hom_{G_r}(M, N)` with the induced action of `e^(p^r)`, `f^(p^r)`.
#[derive(Clone, Debug)]
pub struct GHom {
    pub space: HomSpace,
    /// matrices of `phi -> E_r phi - phi E_r` and its `f` analogue in the basis
    pub e: Matrix,
    pub f: Matrix,
    /// `degree / p^r` of each basis map
    pub weights: Vec<i64>,
}

impl GHom {
    /// The Hom space as a one-level module.
    pub fn as_module(&self) -> Result<ModuleRep> {
        let ctx = self.e.ctx();
        ModuleRep::new(vec![self.e.clone()], vec![self.f.clone()], self.weights.clone(), PChar::zero(ctx), "Hom")
    }

    /// `[E, F] = H` with `H` the diagonal weight matrix.
    pub fn satisfies_sl2(&self) -> bool {
        let ctx = self.e.ctx();
        let h: Vec<FieldElement> = self.weights.iter().map(|w| ctx.from_int(*w)).collect();
        self.e.commutator(&self.f) == Matrix::diagonal(ctx, &h)
    }
}

pub fn hom_as_gmodule(m: &ModuleRep, n: &ModuleRep, r: usize) -> Result<GHom> {
    if m.levels() < r + 1 || n.levels() < r + 1 {
        return Err(Error::LevelOverflow(format!("the level-{r} action is missing")));
    }
    let ctx = m.ctx();
    let space = hom_space(&restrict_levels(m, r)?, &restrict_levels(n, r)?, Degree::All)?;
    let pr = (ctx.p() as i64).pow(r as u32);
    let cs = CoordinateSystem::new(ctx, &space.basis)?;
    let k = space.dim();
    let mut e = Matrix::zeros(ctx, k, k);
    let mut f = Matrix::zeros(ctx, k, k);
    for (c, phi) in space.basis.iter().enumerate() {
        for (out, xm, xn) in [(&mut e, m.e(r), n.e(r)), (&mut f, m.f(r), n.f(r))] {
            let img = xn.mul(phi).sub(&phi.mul(xm));
            let co = cs
                .coords(&img)
                .ok_or_else(|| Error::InvalidArgument("level-r action leaves the Hom space".into()))?;
            for (row, v) in co.into_iter().enumerate() {
                out.set(row, c, v);
            }
        }
    }
    let weights = space.degrees.iter().map(|d| d / pr).collect();
    Ok(GHom { space, e, f, weights })
}
