use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::exactfield::{FieldCtx, Matrix};
use crate::homology::{first_kernel_projectives, hom_space, Degree, HomSpace};
use crate::repcore::{frobenius_twist, simple_restricted, tensor, ModuleRep};

/// `A (x) B -> B (x) A`.
pub fn swap_matrix(ctx: FieldCtx, a: usize, b: usize) -> Matrix {
    let mut m = Matrix::zeros(ctx, a * b, a * b);
    for i in 0..a {
        for j in 0..b {
            m.set(j * a + i, i * b + j, ctx.one());
        }
    }
    m
}

/// A map between tensor words, built factor by factor (first factor major).
#[derive(Clone, Debug)]
pub struct Chain {
    ctx: FieldCtx,
    dims: Vec<usize>,
    mat: Matrix,
}

impl Chain {
    pub fn start(ctx: FieldCtx, dims: &[usize]) -> Self {
        let n = dims.iter().product();
        Chain { ctx, dims: dims.to_vec(), mat: Matrix::identity(ctx, n) }
    }

    /// Apply `m` to factors `at..at+len`, which become factors of dims `out`.
    pub fn apply(mut self, at: usize, len: usize, m: &Matrix, out: &[usize]) -> Self {
        let left: usize = self.dims[..at].iter().product();
        let right: usize = self.dims[at + len..].iter().product();
        debug_assert_eq!(m.cols(), self.dims[at..at + len].iter().product::<usize>());
        debug_assert_eq!(m.rows(), out.iter().product::<usize>());
        let op = Matrix::identity(self.ctx, left).kron(m).kron(&Matrix::identity(self.ctx, right));
        self.mat = op.mul(&self.mat);
        self.dims.splice(at..at + len, out.iter().copied());
        self
    }

    /// Exchange factors `at` and `at + 1`.
    pub fn swap(self, at: usize) -> Self {
        let (a, b) = (self.dims[at], self.dims[at + 1]);
        let s = swap_matrix(self.ctx, a, b);
        self.apply(at, 2, &s, &[b, a])
    }

    pub fn finish(self) -> Matrix {
        self.mat
    }
}

/// Scale so that the first nonzero entry (row-major) is one.
pub fn normalize(m: &Matrix) -> Matrix {
    for i in 0..m.rows() {
        for j in 0..m.cols() {
            let x = m.get(i, j);
            if !x.is_zero() {
                return m.scale(x.inv().expect("nonzero"));
            }
        }
    }
    m.clone()
}

/// The Hom-space maps `P_b -> P_c (x) V` and friends between first-level
/// projectives viewed as modules for two levels.
#[derive(Clone, Debug)]
pub struct SingleLevel {
    pub ctx: FieldCtx,
    /// `P_0 .. P_{p-1}`
    pub proj: Vec<ModuleRep>,
    pub v: ModuleRep,
    /// `V^(1)`
    pub v1: ModuleRep,
    /// `(b, c) -> P_b -> P_c (x) V` for `|b - c| = 1`, `b <= p-2`, `c <= p-1`
    pub split: BTreeMap<(u32, u32), Matrix>,
    /// `P_k (x) V^(1) -> P_{p-2-k}` for `k <= p-2`
    pub lambda: Vec<Matrix>,
    /// nilpotent endomorphism of `P_k`, `k <= p-2`
    pub omega: Vec<Matrix>,
    /// `V (x) V -> L_0`
    pub ev: Matrix,
    /// `P_{p-1} -> P_{p-2} (x) V`
    pub phi_min: Matrix,
    pub phi_max: Matrix,
    /// `P_{p-1} (x) V^(1) -> P_0 (x) V`
    pub j: Matrix,
    /// Hom-space dimensions met while choosing the maps
    pub hom_dims: Vec<(String, usize)>,
}

fn hom0(m: &ModuleRep, n: &ModuleRep) -> Result<HomSpace> {
    hom_space(m, n, Degree::Shift(0))
}

fn expect_dim(name: &str, hs: &HomSpace, want: usize, log: &mut Vec<(String, usize)>) -> Result<()> {
    log.push((name.to_string(), hs.dim()));
    if hs.dim() != want {
        return Err(Error::UnexpectedDimension(format!("{name} has dim {}, expected {want}", hs.dim())));
    }
    Ok(())
}

/// Candidates `b_0, b_1, .., b_0 + c b_1, ..` in a fixed order.
fn candidates(ctx: FieldCtx, hs: &HomSpace) -> Vec<Matrix> {
    let mut out: Vec<Matrix> = hs.basis.clone();
    if hs.dim() >= 2 {
        for c in ctx.elements().filter(|c| !c.is_zero()) {
            out.push(hs.basis[0].add(&hs.basis[1].scale(c)));
        }
    }
    out
}

fn first_with<F: Fn(&Matrix) -> bool>(ctx: FieldCtx, name: &str, hs: &HomSpace, pred: F) -> Result<Matrix> {
    candidates(ctx, hs)
        .into_iter()
        .find(|m| pred(m))
        .map(|m| normalize(&m))
        .ok_or_else(|| Error::Inconclusive(format!("no suitable map for {name}")))
}

/// Whether `s : A -> X` has a left inverse inside `Hom(X, A)`.
fn splits(s: &Matrix, back: &HomSpace) -> bool {
    let ctx = s.ctx();
    let n = s.cols();
    if back.is_zero() {
        return false;
    }
    let cols: Vec<Matrix> = back.basis.iter().map(|t| t.mul(s).vectorize()).collect();
    let refs: Vec<&Matrix> = cols.iter().collect();
    let a = Matrix::hstack(&refs).expect("same shape");
    a.solve(&Matrix::identity(ctx, n).vectorize()).ok().flatten().is_some()
}

impl SingleLevel {
    pub fn new(ctx: FieldCtx, seed: u64) -> Result<Self> {
        let p = ctx.p();
        let proj = first_kernel_projectives(ctx, 2, seed)?;
        let v = simple_restricted(ctx, 1, 2)?;
        let v1 = frobenius_twist(&simple_restricted(ctx, 1, 1)?, 1);
        let l0 = simple_restricted(ctx, 0, 2)?;
        let mut log = Vec::new();
        let full_rank = |m: &Matrix| m.rank() == m.cols();

        let ev_hs = hom0(&tensor(&v, &v)?, &l0)?;
        expect_dim("Hom(V (x) V, L_0)", &ev_hs, 1, &mut log)?;
        let ev = normalize(&ev_hs.basis[0]);

        let mut split = BTreeMap::new();
        for b in 0..=p - 2 {
            for c in [b.wrapping_sub(1), b + 1] {
                if c > p - 1 {
                    continue;
                }
                let x = tensor(&proj[c as usize], &v)?;
                let hs = hom0(&proj[b as usize], &x)?;
                let name = format!("Hom(P_{b}, P_{c} (x) V)");
                log.push((name.clone(), hs.dim()));
                let back = hom0(&x, &proj[b as usize])?;
                let s = first_with(ctx, &name, &hs, |m| full_rank(m) && splits(m, &back))?;
                split.insert((b, c), s);
            }
        }

        let mut lambda = Vec::new();
        let mut omega = Vec::new();
        for k in 0..=p - 2 {
            let src = tensor(&proj[k as usize], &v1)?;
            let hs = hom0(&src, &proj[(p - 2 - k) as usize])?;
            expect_dim(&format!("Hom(P_{k} (x) V^(1), P_{})", p - 2 - k), &hs, 1, &mut log)?;
            lambda.push(normalize(&hs.basis[0]));

            let pk = &proj[k as usize];
            let end = hom0(pk, pk)?;
            let name = format!("End(P_{k})");
            expect_dim(&name, &end, 2, &mut log)?;
            let om = first_with(ctx, &name, &end, |m| !m.is_zero() && m.rank() < m.cols())?;
            if !om.mul(&om).is_zero() || om.rank() != k as usize + 1 {
                return Err(Error::Inconclusive(format!("Omega on P_{k} does not factor through L_{k}")));
            }
            omega.push(om);
        }

        // phi_min / phi_max through (id (x) ev) (phi (x) id_V) u
        let (pm2, pm1) = (&proj[(p - 2) as usize], &proj[(p - 1) as usize]);
        let u = split[&(p - 2, p - 1)].clone();
        let hs = hom0(pm1, &tensor(pm2, &v)?)?;
        expect_dim(&format!("Hom(P_{}, P_{} (x) V)", p - 1, p - 2), &hs, 2, &mut log)?;
        let (n2, dv) = (pm2.dim(), v.dim());
        let theta = |phi: &Matrix| -> Matrix {
            Chain::start(ctx, &[n2])
                .apply(0, 1, &u, &[pm1.dim(), dv])
                .apply(0, 1, phi, &[n2, dv])
                .apply(1, 2, &ev, &[1])
                .finish()
        };
        let id2 = Matrix::identity(ctx, n2);
        let om2 = omega[(p - 2) as usize].clone();
        let target = Matrix::hstack(&[&id2.vectorize(), &om2.vectorize()])?;
        let images: Vec<Matrix> = hs.basis.iter().map(|b| theta(b).vectorize()).collect();
        let mut coords = Matrix::zeros(ctx, 2, 2);
        for (c, img) in images.iter().enumerate() {
            let co = target
                .coordinates(img)
                .ok_or_else(|| Error::Inconclusive("phi composite leaves span{Id, Omega}".into()))?;
            coords.set_block(0, c, &co);
        }
        let inv = coords.inverse().map_err(|_| Error::Inconclusive("phi_min and phi_max are not separated".into()))?;
        let pick = |col: usize| hs.basis[0].scale(inv.get(0, col)).add(&hs.basis[1].scale(inv.get(1, col)));
        let phi_max = pick(0);
        let phi_min = pick(1);

        let src = tensor(pm1, &v1)?;
        let tgt = tensor(&proj[0], &v)?;
        let hs = hom0(&src, &tgt)?;
        let name = format!("Hom(P_{} (x) V^(1), P_0 (x) V)", p - 1);
        log.push((name.clone(), hs.dim()));
        let back = hom0(&tgt, &src)?;
        let j = first_with(ctx, &name, &hs, |m| full_rank(m) && splits(m, &back))?;

        Ok(SingleLevel { ctx, proj, v, v1, split, lambda, omega, ev, phi_min, phi_max, j, hom_dims: log })
    }

    pub fn p(&self) -> u32 {
        self.ctx.p()
    }

    pub fn dim(&self, k: u32) -> usize {
        self.proj[k as usize].dim()
    }

    /// Index of the weight `sign * p` vector of `V^(1)`.
    pub fn v1_index(&self, sign: i64) -> usize {
        let p = self.p() as i64;
        self.v1.grading().iter().position(|&w| w == sign * p).expect("V^(1) has weights +-p")
    }

    /// `x -> lambda_k(x (x) v_sign)`, a first-level map `P_k -> P_{p-2-k}` of degree `sign * p`.
    pub fn lambda_at(&self, k: u32, sign: i64) -> Matrix {
        let mut e = Matrix::zeros(self.ctx, 2, 1);
        e.set(self.v1_index(sign), 0, self.ctx.one());
        self.lambda[k as usize].mul(&Matrix::identity(self.ctx, self.dim(k)).kron(&e))
    }

    /// `x -> j(x (x) v_sign)`, a first-level map `P_{p-1} -> P_0 (x) V`.
    pub fn j_at(&self, sign: i64) -> Matrix {
        let mut e = Matrix::zeros(self.ctx, 2, 1);
        e.set(self.v1_index(sign), 0, self.ctx.one());
        self.j.mul(&Matrix::identity(self.ctx, self.dim(self.p() - 1)).kron(&e))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::homology::hom_space;

    #[test]
    fn swap_is_an_isomorphism_of_tensor_products() {
        let ctx = FieldCtx::new(3, 1).unwrap();
        let a = simple_restricted(ctx, 1, 1).unwrap();
        let b = simple_restricted(ctx, 2, 1).unwrap();
        let s = swap_matrix(ctx, 2, 3);
        let hs = hom_space(&tensor(&a, &b).unwrap(), &tensor(&b, &a).unwrap(), Degree::Shift(0)).unwrap();
        assert!(hs.coordinates(&s).is_some());
    }

    #[test]
    fn single_level_maps_at_three_and_five() {
        for p in [3, 5] {
            let ctx = FieldCtx::new(p, 1).unwrap();
            let s = SingleLevel::new(ctx, 0).unwrap();
            let (pm1, pm2) = (p - 1, p - 2);
            assert_ne!(s.phi_min, s.phi_max);
            assert_eq!(s.phi_min.rank(), s.dim(pm1));
            assert_eq!(s.phi_max.rank(), s.dim(pm1));
            // intertwiners
            let x = tensor(&s.proj[pm2 as usize], &s.v).unwrap();
            let hs = hom_space(&s.proj[pm1 as usize], &x, Degree::Shift(0)).unwrap();
            assert!(hs.coordinates(&s.phi_min).is_some());
            assert_eq!(s.lambda.len(), (p - 1) as usize);
            assert!(s.omega.iter().all(|o| o.mul(o).is_zero()));
        }
    }
}
