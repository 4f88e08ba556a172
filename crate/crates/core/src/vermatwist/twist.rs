use crate::error::{Error, Result};
use crate::exactfield::{FieldElement, Matrix};
use crate::repcore::baby_verma;

/// `c_n = sum_k A_k e^k (x) f^k` for the baby Verma of highest weight `d`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TwistElement {
    pub d: FieldElement,
    /// `A[0..p-1]`, `A[0] = 1`
    pub a: Vec<FieldElement>,
}

impl TwistElement {
    /// Residual of `A[k-1] + k(d-k+1) A[k]` for `k = 1..p-1`; all zero when valid.
    pub fn recursion_residuals(&self) -> Vec<FieldElement> {
        let ctx = self.d.ctx();
        (1..self.a.len())
            .map(|k| {
                let kk = ctx.from_int(k as i64);
                self.a[k - 1] + kk * (self.d - kk + ctx.one()) * self.a[k]
            })
            .collect()
    }

    /// `1 - A_1 = (d+1)/d`.
    pub fn one_minus_a1(&self) -> FieldElement {
        self.d.ctx().one() - self.a[1]
    }
}

fn require_generic(d: FieldElement) -> Result<()> {
    if d.in_prime_field() {
        return Err(Error::NonGeneric(format!("{d} lies in the prime field")));
    }
    Ok(())
}

/// `A_k = (-1)^k / (k! d(d-1)...(d-k+1))`.
pub fn twist_closed_form(d: FieldElement) -> Result<TwistElement> {
    require_generic(d)?;
    let ctx = d.ctx();
    let mut a = vec![ctx.one()];
    let mut denom = ctx.one();
    for k in 1..ctx.p() as i64 {
        let kk = ctx.from_int(k);
        denom = denom * kk * (d - kk + ctx.one());
        let sign = if k % 2 == 0 { ctx.one() } else { -ctx.one() };
        a.push(sign.try_div(denom)?);
    }
    Ok(TwistElement { d, a })
}

/// Solve for the invariant vector `sum_k A_k (e^k 1*) (x) (f^k 1)` in
/// `Z_d^* (x) Z_d`, normalised by `A_0 = 1`.
pub fn twist_oracle(d: FieldElement) -> Result<TwistElement> {
    require_generic(d)?;
    let ctx = d.ctx();
    let p = ctx.p() as usize;
    let z = baby_verma(d, 0)?;
    let (e, f) = (z.e(0).clone(), z.f(0).clone());
    let (de, df) = (e.transpose().neg(), f.transpose().neg());
    let id = Matrix::identity(ctx, p);
    let te = de.kron(&id).add(&id.kron(&e));
    let tf = df.kron(&id).add(&id.kron(&f));
    // lowest vector of the dual is the functional dual to the highest vector
    let mut xi = Matrix::zeros(ctx, p, 1);
    xi.set(0, 0, ctx.one());
    let mut v = xi.clone();
    let mut cols = Vec::with_capacity(p);
    for k in 0..p {
        let mut fk = Matrix::zeros(ctx, p, 1);
        fk.set(k, 0, ctx.one());
        cols.push(v.kron(&fk));
        v = de.mul(&v);
    }
    let refs: Vec<&Matrix> = cols.iter().collect();
    let x = Matrix::hstack(&refs)?;
    let ker = Matrix::vstack(&[&te.mul(&x), &tf.mul(&x)])?.kernel();
    if ker.cols() != 1 {
        return Err(Error::NonGeneric(format!("invariant space has dimension {}", ker.cols())));
    }
    let a0 = ker.get(0, 0);
    if a0.is_zero() {
        return Err(Error::NonGeneric("invariant vector has A_0 = 0".into()));
    }
    let inv = a0.inv()?;
    Ok(TwistElement { d, a: (0..p).map(|k| ker.get(k, 0) * inv).collect() })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactfield::FieldCtx;

    #[test]
    fn closed_form_matches_oracle_on_every_generic_seed() {
        for p in [3, 5, 7] {
            let ctx = FieldCtx::new(p, 2).unwrap();
            for d in ctx.elements().filter(|x| !x.in_prime_field()) {
                let c = twist_closed_form(d).unwrap();
                assert_eq!(c, twist_oracle(d).unwrap());
                assert!(c.recursion_residuals().iter().all(|r| r.is_zero()));
                assert_eq!(c.a[1], -d.inv().unwrap());
                assert_eq!(c.one_minus_a1(), (d + ctx.one()) * d.inv().unwrap());
            }
        }
    }

    #[test]
    fn second_coefficient() {
        let ctx = FieldCtx::new(5, 2).unwrap();
        let d = ctx.generator().unwrap();
        let c = twist_closed_form(d).unwrap();
        let want = (ctx.from_int(2) * d * (d - ctx.one())).inv().unwrap();
        assert_eq!(c.a[2], want);
    }

    #[test]
    fn prime_field_seed_rejected() {
        let ctx = FieldCtx::new(3, 2).unwrap();
        assert!(matches!(twist_closed_form(ctx.from_int(1)), Err(Error::NonGeneric(_))));
        assert!(matches!(twist_oracle(ctx.from_int(2)), Err(Error::NonGeneric(_))));
    }
}
