use std::collections::BTreeMap;
use std::fmt;

use crate::error::{Error, Result};
use crate::exactfield::{FieldCtx, FieldElement, Matrix};
use crate::repcore::ModuleRep;

use super::divided::binomial_mod_p;
use super::PChar;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Gen {
    E,
    H,
    F,
}

/// Linear combination of PBW monomials `e^a h^b f^c`, keyed by `(a, b, c)`.
#[derive(Clone, PartialEq, Eq)]
pub struct PBWElement {
    ctx: FieldCtx,
    terms: BTreeMap<(u32, u32, u32), FieldElement>,
}

impl PBWElement {
    pub fn zero(ctx: FieldCtx) -> Self {
        PBWElement { ctx, terms: BTreeMap::new() }
    }
    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
    pub fn coeff(&self, a: u32, b: u32, c: u32) -> FieldElement {
        self.terms.get(&(a, b, c)).copied().unwrap_or_else(|| self.ctx.zero())
    }
    pub fn terms(&self) -> impl Iterator<Item = ((u32, u32, u32), FieldElement)> + '_ {
        self.terms.iter().map(|(k, v)| (*k, *v))
    }
    fn add_term(&mut self, key: (u32, u32, u32), c: FieldElement) {
        if c.is_zero() {
            return;
        }
        let slot = self.terms.entry(key).or_insert_with(|| self.ctx.zero());
        *slot = *slot + c;
        if slot.is_zero() {
            self.terms.remove(&key);
        }
    }
    pub fn add(&self, o: &PBWElement) -> PBWElement {
        let mut out = self.clone();
        for (k, v) in o.terms() {
            out.add_term(k, v);
        }
        out
    }
    pub fn scale(&self, c: FieldElement) -> PBWElement {
        let mut out = PBWElement::zero(self.ctx);
        for (k, v) in self.terms() {
            out.add_term(k, v * c);
        }
        out
    }
}

impl fmt::Debug for PBWElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> =
            self.terms.iter().map(|((a, b, c), v)| format!("({v})e^{a}h^{b}f^{c}")).collect();
        write!(f, "{}", parts.join(" + "))
    }
}

/// The reduced enveloping algebra `u_chi(sl2)` with `e^p = f^p = 0` and
/// `h^p - h = chi(h)^p`.
#[derive(Clone, Debug)]
pub struct UChi {
    ctx: FieldCtx,
    chi: PChar,
}

/// Build the algebra; multiplication is computed on demand by straightening.
pub fn build_u_chi(ctx: FieldCtx, chi: PChar) -> UChi {
    UChi { ctx, chi }
}

impl UChi {
    pub fn ctx(&self) -> FieldCtx {
        self.ctx
    }
    pub fn pchar(&self) -> PChar {
        self.chi
    }
    pub fn dim(&self) -> usize {
        (self.ctx.p() as usize).pow(3)
    }
    pub fn index(&self, a: u32, b: u32, c: u32) -> usize {
        let p = self.ctx.p() as usize;
        (a as usize * p + b as usize) * p + c as usize
    }
    pub fn monomial(&self, a: u32, b: u32, c: u32) -> PBWElement {
        let mut x = PBWElement::zero(self.ctx);
        let p = self.ctx.p();
        if a < p && b < p && c < p {
            x.add_term((a, b, c), self.ctx.one());
        }
        x
    }
    pub fn one(&self) -> PBWElement {
        self.monomial(0, 0, 0)
    }
    pub fn basis_element(&self, idx: usize) -> PBWElement {
        let p = self.ctx.p() as usize;
        self.monomial((idx / (p * p)) as u32, (idx / p % p) as u32, (idx % p) as u32)
    }

    // adds c * e^a h^b f^c with b <= p, reducing h^p = h + chi(h)^p
    fn push(&self, out: &mut PBWElement, a: u32, b: u32, c: u32, coef: FieldElement) {
        let p = self.ctx.p();
        if a >= p || c >= p {
            return;
        }
        if b == p {
            out.add_term((a, 1, c), coef);
            out.add_term((a, 0, c), coef * self.chi.central());
        } else {
            out.add_term((a, b, c), coef);
        }
    }

    /// Left multiplication by a generator.
    pub fn left(&self, g: Gen, x: &PBWElement) -> PBWElement {
        let ctx = self.ctx;
        let p = ctx.p();
        let mut out = PBWElement::zero(ctx);
        for ((a, b, c), v) in x.terms() {
            match g {
                Gen::E => self.push(&mut out, a + 1, b, c, v),
                Gen::H => {
                    // h e^a = e^a (h + 2a)
                    self.push(&mut out, a, b + 1, c, v);
                    self.push(&mut out, a, b, c, v * ctx.from_int(2 * a as i64));
                }
                Gen::F => {
                    // f e^a = e^a f - a e^{a-1} (h + a - 1), and f h^b = (h + 2)^b f
                    if c + 1 < p {
                        for j in 0..=b {
                            let bin = binomial_mod_p(b as u64, j as u64, p as u64) as i64;
                            let coef = ctx.from_int(bin) * ctx.from_int(2).pow((b - j) as u64);
                            self.push(&mut out, a, j, c + 1, v * coef);
                        }
                    }
                    if a > 0 {
                        let s = -v * ctx.from_int(a as i64);
                        self.push(&mut out, a - 1, b + 1, c, s);
                        self.push(&mut out, a - 1, b, c, s * ctx.from_int(a as i64 - 1));
                    }
                }
            }
        }
        out
    }

    /// Product of a word of generators, each with a multiplicity.
    pub fn straighten(&self, word: &[(Gen, u32)]) -> PBWElement {
        let mut acc = self.one();
        for (g, m) in word.iter().rev() {
            for _ in 0..*m {
                acc = self.left(*g, &acc);
            }
        }
        acc
    }

    pub fn mul(&self, x: &PBWElement, y: &PBWElement) -> PBWElement {
        let mut out = PBWElement::zero(self.ctx);
        for ((a, b, c), v) in x.terms() {
            let mut z = y.clone();
            for _ in 0..c {
                z = self.left(Gen::F, &z);
            }
            for _ in 0..b {
                z = self.left(Gen::H, &z);
            }
            for _ in 0..a {
                z = self.left(Gen::E, &z);
            }
            out = out.add(&z.scale(v));
        }
        out
    }

    /// Coordinates in the monomial basis.
    pub fn to_vector(&self, x: &PBWElement) -> Matrix {
        let mut v = Matrix::zeros(self.ctx, self.dim(), 1);
        for ((a, b, c), coef) in x.terms() {
            v.set(self.index(a, b, c), 0, coef);
        }
        v
    }

    /// Matrix of `y -> x y` in the monomial basis.
    pub fn left_matrix(&self, x: &PBWElement) -> Matrix {
        let n = self.dim();
        let mut m = Matrix::zeros(self.ctx, n, n);
        for j in 0..n {
            let col = self.mul(x, &self.basis_element(j));
            for ((a, b, c), coef) in col.terms() {
                m.set(self.index(a, b, c), j, coef);
            }
        }
        m
    }

    /// Roots of `t^p - t = chi(h)^p`, i.e. the admissible values of `h` on a weight vector.
    pub fn cartan_roots(&self) -> Result<Vec<FieldElement>> {
        let d0 = self
            .ctx
            .elements()
            .find(|&d| self.chi.admits(d))
            .ok_or(Error::EnlargeField)?;
        Ok((0..self.ctx.p()).map(|t| d0 + self.ctx.from_int(t as i64)).collect())
    }

    /// Idempotent of `k[h]` projecting onto `h = mu`.
    pub fn cartan_idempotent(&self, mu: FieldElement) -> Result<PBWElement> {
        let mut poly = self.one();
        for nu in self.cartan_roots()? {
            if nu == mu {
                continue;
            }
            let inv = (mu - nu).inv()?;
            let lin = self.monomial(0, 1, 0).add(&self.one().scale(-nu));
            poly = self.mul(&poly, &lin.scale(inv));
        }
        Ok(poly)
    }

    /// The left regular module, graded in the basis `e^a f^c eps_mu`.
    ///
    /// The weight of `e^a f^c eps_mu` is `2a - 2c + t` where `mu = d_0 + t`.
    pub fn regular_module(&self) -> Result<ModuleRep> {
        let ctx = self.ctx;
        let p = ctx.p();
        let n = self.dim();
        let roots = self.cartan_roots()?;
        let mut basis = Matrix::zeros(ctx, n, n);
        let mut grading = Vec::with_capacity(n);
        let mut col = 0;
        for (t, mu) in roots.iter().enumerate() {
            let eps = self.cartan_idempotent(*mu)?;
            for a in 0..p {
                for c in 0..p {
                    let v = self.mul(&self.mul(&self.monomial(a, 0, 0), &self.monomial(0, 0, c)), &eps);
                    basis.set_block(0, col, &self.to_vector(&v));
                    grading.push(2 * a as i64 - 2 * c as i64 + t as i64);
                    col += 1;
                }
            }
        }
        let inv = basis.inverse()?;
        let conj = |x: &PBWElement| inv.mul(&self.left_matrix(x)).mul(&basis);
        let e = conj(&self.monomial(1, 0, 0));
        let f = conj(&self.monomial(0, 0, 1));
        ModuleRep::new(vec![e], vec![f], grading, self.chi, "regular")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::repcore::baby_verma;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn random_element(u: &UChi, rng: &mut ChaCha8Rng) -> PBWElement {
        let f = u.ctx();
        let mut x = PBWElement::zero(f);
        for idx in 0..u.dim() {
            if rng.gen_bool(0.3) {
                let c = f.elements().nth(rng.gen_range(0..f.size())).unwrap();
                x = x.add(&u.basis_element(idx).scale(c));
            }
        }
        x
    }

    #[test]
    fn defining_relations() {
        let f = FieldCtx::new(5, 1).unwrap();
        let u = build_u_chi(f, PChar::zero(f));
        let fe = u.straighten(&[(Gen::F, 1), (Gen::E, 1)]);
        assert_eq!(fe, u.monomial(1, 0, 1).add(&u.monomial(0, 1, 0).scale(-f.one())));
        assert!(u.straighten(&[(Gen::E, 5)]).is_zero());
        assert!(u.straighten(&[(Gen::F, 5)]).is_zero());
        let he2 = u.straighten(&[(Gen::H, 1), (Gen::E, 2)]);
        assert_eq!(he2, u.monomial(2, 1, 0).add(&u.monomial(2, 0, 0).scale(f.from_int(4))));
    }

    // a direct sum of baby Vermas over all admissible weights is faithful for generic chi
    fn verma_image(u: &UChi, x: &PBWElement) -> Vec<Matrix> {
        let p = u.ctx().p() as u64;
        u.cartan_roots()
            .unwrap()
            .into_iter()
            .map(|d| {
                let z = baby_verma(d, 0).unwrap();
                let hdiag: Vec<FieldElement> =
                    (0..p).map(|k| d - u.ctx().from_int(2 * k as i64)).collect();
                let h = Matrix::diagonal(u.ctx(), &hdiag);
                let mut acc = Matrix::zeros(u.ctx(), p as usize, p as usize);
                for ((a, b, c), v) in x.terms() {
                    let t = z.e(0).pow(a as u64).mul(&h.pow(b as u64)).mul(&z.f(0).pow(c as u64));
                    acc.add_scaled_assign(v, &t);
                }
                acc
            })
            .collect()
    }

    #[test]
    fn products_match_verma_matrices() {
        let f = FieldCtx::new(5, 2).unwrap();
        let u = build_u_chi(f, PChar::from_seed(f.generator().unwrap()));
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..10 {
            let x = random_element(&u, &mut rng);
            let y = random_element(&u, &mut rng);
            let lhs = verma_image(&u, &u.mul(&x, &y));
            let (ix, iy) = (verma_image(&u, &x), verma_image(&u, &y));
            for k in 0..lhs.len() {
                assert_eq!(lhs[k], ix[k].mul(&iy[k]));
            }
        }
        let he2 = u.straighten(&[(Gen::H, 1), (Gen::E, 2)]);
        let img = verma_image(&u, &he2);
        let oracle = verma_image(&u, &u.monomial(0, 1, 0));
        let e = verma_image(&u, &u.monomial(1, 0, 0));
        for k in 0..img.len() {
            assert_eq!(img[k], oracle[k].mul(&e[k]).mul(&e[k]));
        }
    }

    #[test]
    fn associativity_on_random_triples() {
        for p in [3u32, 5] {
            let f = FieldCtx::new(p, 1).unwrap();
            let u = build_u_chi(f, PChar::zero(f));
            let mut rng = ChaCha8Rng::seed_from_u64(p as u64);
            let trials = 200;
            for _ in 0..trials {
                let (x, y, z) = (random_element(&u, &mut rng), random_element(&u, &mut rng), random_element(&u, &mut rng));
                assert_eq!(u.mul(&u.mul(&x, &y), &z), u.mul(&x, &u.mul(&y, &z)));
            }
        }
    }

    #[test]
    fn augmentation_ideal_powers_stabilise_on_h() {
        // h^p = h, so h lies in every power of the augmentation ideal
        let f = FieldCtx::new(3, 1).unwrap();
        let u = build_u_chi(f, PChar::zero(f));
        let gens: Vec<Matrix> = (1..u.dim()).map(|i| u.left_matrix(&u.basis_element(i))).collect();
        let mut span = Matrix::identity(f, u.dim()).select_columns(&(1..u.dim()).collect::<Vec<_>>());
        loop {
            let prods: Vec<Matrix> = gens.iter().map(|g| g.mul(&span)).collect();
            let refs: Vec<&Matrix> = prods.iter().collect();
            let next = Matrix::hstack(&refs).unwrap().column_space();
            assert!(next.cols() <= span.cols());
            if next.cols() == span.cols() {
                break;
            }
            span = next;
        }
        assert!(span.cols() > 0);
        assert!(span.coordinates(&u.to_vector(&u.monomial(0, 1, 0))).is_some());
        // the ideal generated by e alone is nilpotent
        let e = u.left_matrix(&u.monomial(1, 0, 0));
        assert!(e.pow(3).is_zero());
    }

    #[test]
    fn regular_module_is_graded_and_faithful() {
        let f = FieldCtx::new(3, 2).unwrap();
        for chi in [PChar::zero(f), PChar::from_seed(f.generator().unwrap())] {
            let u = build_u_chi(f, chi);
            let m = u.regular_module().unwrap();
            assert_eq!(m.dim(), 27);
            let rep = crate::repcore::validate(&m);
            assert!(rep.ok(), "{:?}", rep.failures);
            assert!(m.e(0).pow(3).is_zero());
            assert!(!m.e(0).pow(2).is_zero());
        }
    }
}
