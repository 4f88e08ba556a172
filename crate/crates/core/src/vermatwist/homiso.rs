use crate::error::{Error, Result};
use crate::exactfield::{FieldElement, Matrix};
use crate::repcore::{baby_verma, tensor, ModuleRep};

use super::twist::twist_closed_form;

fn unit(ctx: crate::exactfield::FieldCtx, n: usize, i: usize) -> Matrix {
    let mut v = Matrix::zeros(ctx, n, 1);
    v.set(i, 0, ctx.one());
    v
}

/// Weight of a homogeneous vector of `v_mod`, or `None` if it is zero or mixed.
pub fn vector_weight(v_mod: &ModuleRep, v: &Matrix) -> Option<i64> {
    let mut w = None;
    for i in 0..v.rows() {
        if !v.get(i, 0).is_zero() {
            let wi = v_mod.grading()[i];
            if w.is_some_and(|x| x != wi) {
                return None;
            }
            w = Some(wi);
        }
    }
    w
}

/// The intertwiner `Z_mu -> Z_mu' (x) V` sending `1_mu` to
/// `sum_k A_k(d + mu') f^k 1_mu' (x) e^k v`, with `Z_n = baby_verma(d + n, n)`.
/// Columns are images of the basis `f^j 1_mu`.
pub fn hom_iso(d: FieldElement, v_mod: &ModuleRep, v: &Matrix, mu: i64, mu2: i64) -> Result<Matrix> {
    let ctx = d.ctx();
    if v_mod.levels() != 1 || !v_mod.pchar().is_zero() {
        return Err(Error::InvalidArgument("V must be a one-level restricted module".into()));
    }
    if vector_weight(v_mod, v) != Some(mu - mu2) {
        return Err(Error::InvalidArgument(format!("v is not a nonzero vector of weight {}", mu - mu2)));
    }
    let p = ctx.p() as usize;
    let target = tensor(&baby_verma(d + ctx.from_int(mu2), mu2)?, v_mod)?;
    let a = twist_closed_form(d + ctx.from_int(mu2))?;
    let zf = baby_verma(d + ctx.from_int(mu2), mu2)?.f(0).clone();
    let mut top = Matrix::zeros(ctx, target.dim(), 1);
    let (mut zk, mut vk) = (unit(ctx, p, 0), v.clone());
    for ak in &a.a {
        top.add_scaled_assign(*ak, &zk.kron(&vk));
        zk = zf.mul(&zk);
        vk = v_mod.e(0).mul(&vk);
    }
    let mut cols = Vec::with_capacity(p);
    let mut x = top;
    for _ in 0..p {
        cols.push(x.clone());
        x = target.f(0).mul(&x);
    }
    let refs: Vec<&Matrix> = cols.iter().collect();
    Matrix::hstack(&refs)
}

/// Left inverse of [`hom_iso`]: the `1_mu' (x) V` component of the image of `1_mu`.
pub fn hom_iso_inverse(psi: &Matrix, dim_v: usize) -> Matrix {
    psi.submatrix(&(0..dim_v).collect::<Vec<_>>(), &[0])
}

/// One summand `Z_{mu + s}` of `Z_mu (x) V`, coming from a weight vector of weight `s`.
#[derive(Clone, Debug)]
pub struct VermaSummand {
    pub mu: i64,
    pub inclusion: Matrix,
    pub projection: Matrix,
}

/// `Z_mu (x) V = (+)_s V_s (x) Z_{mu+s}`, one summand per basis vector of `V`.
pub fn verma_tensor_split(d: FieldElement, mu: i64, v_mod: &ModuleRep) -> Result<Vec<VermaSummand>> {
    let ctx = d.ctx();
    let mut incl = Vec::new();
    for i in 0..v_mod.dim() {
        let s = v_mod.grading()[i];
        incl.push((mu + s, hom_iso(d, v_mod, &unit(ctx, v_mod.dim(), i), mu + s, mu)?));
    }
    let refs: Vec<&Matrix> = incl.iter().map(|(_, m)| m).collect();
    let inv = Matrix::hstack(&refs)?.inverse()?;
    let p = ctx.p() as usize;
    Ok(incl
        .into_iter()
        .enumerate()
        .map(|(i, (mu, inclusion))| VermaSummand {
            mu,
            inclusion,
            projection: inv.select_rows(&(i * p..(i + 1) * p).collect::<Vec<_>>()),
        })
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactfield::FieldCtx;
    use crate::homology::{hom_space, split_indecomposables, Degree};
    use crate::repcore::simple_restricted;

    fn seed(ctx: FieldCtx) -> FieldElement {
        ctx.elements().find(|x| !x.in_prime_field()).unwrap()
    }

    #[test]
    fn trivial_module_gives_identity() {
        let ctx = FieldCtx::new(3, 2).unwrap();
        let l0 = simple_restricted(ctx, 0, 1).unwrap();
        let psi = hom_iso(seed(ctx), &l0, &unit(ctx, 1, 0), 1, 1).unwrap();
        assert_eq!(psi, Matrix::identity(ctx, 3));
    }

    #[test]
    fn l1_round_trip_and_intertwining() {
        let ctx = FieldCtx::new(3, 2).unwrap();
        let d = seed(ctx);
        let l1 = simple_restricted(ctx, 1, 1).unwrap();
        for (i, s) in [(0usize, 1i64), (1, -1)] {
            let v = unit(ctx, 2, i);
            let psi = hom_iso(d, &l1, &v, s, 0).unwrap();
            let src = baby_verma(d + ctx.from_int(s), s).unwrap();
            let tgt = tensor(&baby_verma(d, 0).unwrap(), &l1).unwrap();
            let hs = hom_space(&src, &tgt, Degree::Shift(0)).unwrap();
            assert_eq!(hs.dim(), 1);
            assert!(hs.coordinates(&psi).is_some());
            assert_eq!(hom_iso_inverse(&psi, 2), v);
        }
        assert!(hom_iso(d, &l1, &unit(ctx, 2, 0), 0, 0).is_err());
    }

    #[test]
    fn split_matches_fitting_decomposition() {
        let ctx = FieldCtx::new(3, 2).unwrap();
        let d = seed(ctx);
        let l1 = simple_restricted(ctx, 1, 1).unwrap();
        let parts = verma_tensor_split(d, 0, &l1).unwrap();
        let mus: Vec<i64> = parts.iter().map(|s| s.mu).collect();
        assert_eq!(mus, vec![1, -1]);
        let n = 6;
        let mut sum = Matrix::zeros(ctx, n, n);
        for s in &parts {
            let e = s.inclusion.mul(&s.projection);
            assert_eq!(e.mul(&e), e);
            sum = sum.add(&e);
        }
        assert_eq!(sum, Matrix::identity(ctx, n));
        let m = tensor(&baby_verma(d, 0).unwrap(), &l1).unwrap();
        let simples: Vec<_> = [1i64, -1].iter().map(|t| baby_verma(d + ctx.from_int(*t), *t).unwrap()).collect();
        let dec = split_indecomposables(&m, &simples, 0).unwrap();
        assert_eq!(dec.signature(), vec![(0, 3), (1, 3)]);
    }
}
