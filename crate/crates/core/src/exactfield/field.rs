//! Finite fields of order `p` and `p^2` with table-driven arithmetic.
//!
//! Elements are encoded as `a + b*p` for `a + b*x`, where `x` is a root of the
//! context's fixed monic quadratic modulus. Every context is interned once per
//! `(p, k)` so a [`FieldCtx`] is a `Copy` handle and context equality is pointer
//! equality.

use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::sync::Mutex;

use crate::error::{Error, Result};

/// Largest prime accepted; keeps the `q x q` tables small.
pub const MAX_PRIME: u32 = 31;

pub(crate) struct Tables {
    p: u32,
    k: u32,
    q: usize,
    /// `(c0, c1)` for the modulus `x^2 + c1 x + c0`; `(0, 0)` when `k = 1`.
    modulus: (u32, u32),
    add: Vec<u16>,
    mul: Vec<u16>,
    neg: Vec<u16>,
    inv: Vec<u16>,
    frob: Vec<u16>,
}

static REGISTRY: Mutex<Vec<&'static Tables>> = Mutex::new(Vec::new());

/// Handle to an interned field `F_{p^k}`.
#[derive(Clone, Copy)]
pub struct FieldCtx {
    t: &'static Tables,
}

impl PartialEq for FieldCtx {
    fn eq(&self, other: &Self) -> bool {
        std::ptr::eq(self.t, other.t)
    }
}
impl Eq for FieldCtx {}

impl fmt::Debug for FieldCtx {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GF({}^{})", self.t.p, self.t.k)
    }
}

pub fn is_prime(n: u32) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// Fixed quadratic modulus: `x^2 + 1` when `p = 3 mod 4`, otherwise the first
/// irreducible `x^2 + c1 x + c0` in lexicographic `(c1, c0)` order.
pub fn default_quadratic_modulus(p: u32) -> (u32, u32) {
    if p % 4 == 3 {
        return (1, 0);
    }
    for c1 in 0..p {
        for c0 in 1..p {
            let has_root = (0..p).any(|t| (t * t + c1 * t + c0) % p == 0);
            if !has_root {
                return (c0, c1);
            }
        }
    }
    unreachable!("every odd prime admits an irreducible quadratic")
}

fn build_tables(p: u32, k: u32) -> Tables {
    let q = p.pow(k) as usize;
    let modulus = if k == 2 { default_quadratic_modulus(p) } else { (0, 0) };
    let (c0, c1) = modulus;
    let split = |v: usize| ((v % p as usize) as u32, (v / p as usize) as u32);
    let join = |a: u32, b: u32| (a % p + (b % p) * p) as u16;
    let mut add = vec![0u16; q * q];
    let mut mul = vec![0u16; q * q];
    for u in 0..q {
        let (a, b) = split(u);
        for v in 0..q {
            let (c, d) = split(v);
            add[u * q + v] = join(a + c, b + d);
            // (a + b x)(c + d x) with x^2 = -c1 x - c0
            let bd = b * d % p;
            let lin = (a * d + b * c) % p;
            let cst = (a * c + (p - c0) * bd) % p;
            let lin = (lin + (p - c1) * bd) % p;
            mul[u * q + v] = join(cst, lin);
        }
    }
    let neg = (0..q)
        .map(|u| {
            let (a, b) = split(u);
            join(p - a, p - b)
        })
        .collect::<Vec<_>>();
    let mut inv = vec![0u16; q];
    for u in 1..q {
        inv[u] = (1..q).find(|&v| mul[u * q + v] == 1).unwrap() as u16;
    }
    let frob = (0..q)
        .map(|u| {
            let mut acc = 1usize;
            for _ in 0..p {
                acc = mul[acc * q + u] as usize;
            }
            acc as u16
        })
        .collect();
    Tables { p, k, q, modulus, add, mul, neg, inv, frob }
}

impl FieldCtx {
    /// The field `F_{p^k}` for an odd prime `p <= MAX_PRIME` and `k` in `{1, 2}`.
    pub fn new(p: u32, k: u32) -> Result<Self> {
        if !is_prime(p) || p < 3 {
            return Err(Error::InvalidField(format!("p = {p} is not an odd prime")));
        }
        if p > MAX_PRIME {
            return Err(Error::InvalidField(format!("p = {p} exceeds {MAX_PRIME}")));
        }
        if k != 1 && k != 2 {
            return Err(Error::InvalidField(format!("extension degree {k} unsupported")));
        }
        let mut reg = REGISTRY.lock().unwrap();
        if let Some(t) = reg.iter().find(|t| t.p == p && t.k == k) {
            return Ok(FieldCtx { t });
        }
        let t: &'static Tables = Box::leak(Box::new(build_tables(p, k)));
        reg.push(t);
        Ok(FieldCtx { t })
    }

    pub fn p(&self) -> u32 {
        self.t.p
    }
    pub fn k(&self) -> u32 {
        self.t.k
    }
    /// Number of elements.
    pub fn size(&self) -> usize {
        self.t.q
    }
    /// `(c0, c1)` of the modulus `x^2 + c1 x + c0`.
    pub fn modulus(&self) -> (u32, u32) {
        self.t.modulus
    }
    pub fn modulus_string(&self) -> String {
        if self.t.k == 1 {
            return "x".to_string();
        }
        let (c0, c1) = self.t.modulus;
        match c1 {
            0 => format!("x^2+{c0}"),
            1 => format!("x^2+x+{c0}"),
            _ => format!("x^2+{c1}x+{c0}"),
        }
    }

    pub fn zero(&self) -> FieldElement {
        self.raw(0)
    }
    pub fn one(&self) -> FieldElement {
        self.raw(1)
    }
    /// The adjoined root `x`; errors for prime fields.
    pub fn generator(&self) -> Result<FieldElement> {
        if self.t.k == 1 {
            return Err(Error::InvalidArgument("prime field has no adjoined root".into()));
        }
        Ok(self.raw(self.t.p as u16))
    }
    pub fn from_int(&self, n: i64) -> FieldElement {
        self.raw(n.rem_euclid(self.t.p as i64) as u16)
    }
    /// Element from its coefficient vector `[a, b]` meaning `a + b x`.
    pub fn from_coeffs(&self, coeffs: &[u32]) -> Result<FieldElement> {
        if coeffs.len() != self.t.k as usize {
            return Err(Error::InvalidArgument(format!(
                "expected {} coefficients, got {}",
                self.t.k,
                coeffs.len()
            )));
        }
        let p = self.t.p;
        let mut v = 0u32;
        for (i, c) in coeffs.iter().enumerate() {
            v += (c % p) * p.pow(i as u32);
        }
        Ok(self.raw(v as u16))
    }
    pub fn elements(&self) -> impl Iterator<Item = FieldElement> + '_ {
        (0..self.t.q).map(move |v| self.raw(v as u16))
    }

    pub(crate) fn raw(&self, v: u16) -> FieldElement {
        debug_assert!((v as usize) < self.t.q);
        FieldElement { ctx: *self, v }
    }

    #[inline]
    pub(crate) fn add_raw(&self, a: u16, b: u16) -> u16 {
        self.t.add[a as usize * self.t.q + b as usize]
    }
    #[inline]
    pub(crate) fn mul_raw(&self, a: u16, b: u16) -> u16 {
        self.t.mul[a as usize * self.t.q + b as usize]
    }
    #[inline]
    pub(crate) fn neg_raw(&self, a: u16) -> u16 {
        self.t.neg[a as usize]
    }
    #[inline]
    pub(crate) fn sub_raw(&self, a: u16, b: u16) -> u16 {
        self.add_raw(a, self.neg_raw(b))
    }
    #[inline]
    pub(crate) fn inv_raw(&self, a: u16) -> u16 {
        debug_assert!(a != 0);
        self.t.inv[a as usize]
    }
    /// Row `c * _` of the multiplication table.
    #[inline]
    pub(crate) fn mul_row(&self, c: u16) -> &'static [u16] {
        let q = self.t.q;
        &self.t.mul[c as usize * q..(c as usize + 1) * q]
    }
}

/// An element of `F_{p^k}` tied to its context.
#[derive(Clone, Copy, PartialEq, Eq)]
pub struct FieldElement {
    ctx: FieldCtx,
    v: u16,
}

impl std::hash::Hash for FieldElement {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.v.hash(state);
    }
}

impl FieldElement {
    pub fn ctx(&self) -> FieldCtx {
        self.ctx
    }
    pub(crate) fn raw(&self) -> u16 {
        self.v
    }
    /// Coefficients `[a, b]` of `a + b x` (length `k`).
    pub fn coeffs(&self) -> Vec<u32> {
        let p = self.ctx.p();
        let v = self.v as u32;
        if self.ctx.k() == 1 {
            vec![v]
        } else {
            vec![v % p, v / p]
        }
    }
    pub fn is_zero(&self) -> bool {
        self.v == 0
    }
    /// True when the element lies in the prime subfield.
    pub fn in_prime_field(&self) -> bool {
        (self.v as u32) < self.ctx.p()
    }
    /// The integer representative in `[0, p)` for prime-subfield elements.
    pub fn as_prime(&self) -> Option<u32> {
        self.in_prime_field().then_some(self.v as u32)
    }

    fn same(&self, o: &Self) -> Result<()> {
        if self.ctx == o.ctx {
            Ok(())
        } else {
            Err(Error::FieldMismatch)
        }
    }
    pub fn try_add(self, o: Self) -> Result<Self> {
        self.same(&o)?;
        Ok(self.ctx.raw(self.ctx.add_raw(self.v, o.v)))
    }
    pub fn try_sub(self, o: Self) -> Result<Self> {
        self.same(&o)?;
        Ok(self.ctx.raw(self.ctx.sub_raw(self.v, o.v)))
    }
    pub fn try_mul(self, o: Self) -> Result<Self> {
        self.same(&o)?;
        Ok(self.ctx.raw(self.ctx.mul_raw(self.v, o.v)))
    }
    pub fn try_div(self, o: Self) -> Result<Self> {
        self.same(&o)?;
        self.try_mul(o.inv()?)
    }
    pub fn inv(self) -> Result<Self> {
        if self.v == 0 {
            return Err(Error::DivisionByZero);
        }
        Ok(self.ctx.raw(self.ctx.inv_raw(self.v)))
    }
    pub fn frobenius(self) -> Self {
        self.ctx.raw(self.ctx.t.frob[self.v as usize])
    }
    pub fn pow(self, mut e: u64) -> Self {
        let mut base = self;
        let mut acc = self.ctx.one();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc * base;
            }
            base = base * base;
            e >>= 1;
        }
        acc
    }
}

impl Add for FieldElement {
    type Output = FieldElement;
    fn add(self, o: Self) -> Self {
        self.try_add(o).expect("field mismatch")
    }
}
impl Sub for FieldElement {
    type Output = FieldElement;
    fn sub(self, o: Self) -> Self {
        self.try_sub(o).expect("field mismatch")
    }
}
impl Mul for FieldElement {
    type Output = FieldElement;
    fn mul(self, o: Self) -> Self {
        self.try_mul(o).expect("field mismatch")
    }
}
impl Div for FieldElement {
    type Output = FieldElement;
    fn div(self, o: Self) -> Self {
        self.try_div(o).expect("division failed")
    }
}
impl Neg for FieldElement {
    type Output = FieldElement;
    fn neg(self) -> Self {
        self.ctx.raw(self.ctx.neg_raw(self.v))
    }
}

impl fmt::Display for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let c = self.coeffs();
        if c.len() == 1 || c[1] == 0 {
            return write!(f, "{}", c[0]);
        }
        let lin = if c[1] == 1 { "x".to_string() } else { format!("{}x", c[1]) };
        if c[0] == 0 {
            write!(f, "{lin}")
        } else {
            write!(f, "{}+{lin}", c[0])
        }
    }
}

impl fmt::Debug for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn inverse_of_root_in_f9() {
        let f = FieldCtx::new(3, 2).unwrap();
        assert_eq!(f.modulus(), (1, 0));
        let x = f.generator().unwrap();
        assert_eq!(x.inv().unwrap(), f.from_int(2) * x);
        assert_eq!(x * x, -f.one());
    }

    #[test]
    fn frobenius_fixes_prime_field() {
        for p in [3, 5, 7] {
            let f = FieldCtx::new(p, 1).unwrap();
            assert!(f.elements().all(|a| a.frobenius() == a));
            let f2 = FieldCtx::new(p, 2).unwrap();
            let fixed = f2.elements().filter(|a| a.frobenius() == *a).count();
            assert_eq!(fixed, p as usize);
        }
    }

    #[test]
    fn frobenius_is_an_involution_on_f25() {
        let f = FieldCtx::new(5, 2).unwrap();
        for a in f.elements() {
            assert_eq!(a.frobenius().frobenius(), a);
            assert_eq!(a.frobenius(), a.pow(5));
        }
    }

    #[test]
    fn moduli_follow_the_fixed_rule() {
        assert_eq!(default_quadratic_modulus(5), (2, 0));
        assert_eq!(default_quadratic_modulus(7), (1, 0));
        assert_eq!(default_quadratic_modulus(13), (2, 0));
    }

    #[test]
    fn errors_are_explicit() {
        let f = FieldCtx::new(3, 2).unwrap();
        let g = FieldCtx::new(5, 2).unwrap();
        assert_eq!(f.zero().inv(), Err(Error::DivisionByZero));
        assert_eq!(f.one().try_add(g.one()), Err(Error::FieldMismatch));
        assert!(FieldCtx::new(9, 1).is_err());
        assert!(FieldCtx::new(2, 1).is_err());
        assert!(FieldCtx::new(3, 3).is_err());
    }

    #[test]
    fn contexts_are_interned() {
        assert_eq!(FieldCtx::new(7, 2).unwrap(), FieldCtx::new(7, 2).unwrap());
        assert_ne!(FieldCtx::new(7, 2).unwrap(), FieldCtx::new(7, 1).unwrap());
    }
}
