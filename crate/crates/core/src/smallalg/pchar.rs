use crate::error::{Error, Result};
use crate::exactfield::{FieldCtx, FieldElement};

/// Semisimple p-character on the top level, determined by `chi(h)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct PChar {
    pub chi_h: FieldElement,
}

impl PChar {
    pub fn zero(ctx: FieldCtx) -> Self {
        PChar { chi_h: ctx.zero() }
    }

    /// The character for which `d` is an admissible highest weight:
    /// `chi(h)^p = d^p - d`.
    pub fn from_seed(d: FieldElement) -> Self {
        let c = d.pow(d.ctx().p() as u64) - d;
        // x -> x^p has order k on F_{p^k}, so its inverse is x -> x^{p^{k-1}}
        let mut chi = c;
        for _ in 1..d.ctx().k() {
            chi = chi.frobenius();
        }
        PChar { chi_h: chi }
    }

    /// Scalar by which `h^p - h` acts.
    pub fn central(&self) -> FieldElement {
        self.chi_h.pow(self.chi_h.ctx().p() as u64)
    }

    pub fn is_zero(&self) -> bool {
        self.chi_h.is_zero()
    }

    pub fn is_generic(&self) -> bool {
        !self.is_zero()
    }

    pub fn neg(&self) -> Self {
        PChar { chi_h: -self.chi_h }
    }

    /// Character of a tensor product; defined only if one side is zero.
    pub fn combine(&self, other: &PChar) -> Result<PChar> {
        if self.chi_h.ctx() != other.chi_h.ctx() {
            return Err(Error::FieldMismatch);
        }
        if !self.is_zero() && !other.is_zero() {
            return Err(Error::PCharacter("both factors carry a nonzero top p-character".into()));
        }
        Ok(PChar { chi_h: self.chi_h + other.chi_h })
    }

    /// Whether `d` satisfies `d^p - d = chi(h)^p`.
    pub fn admits(&self, d: FieldElement) -> bool {
        d.pow(d.ctx().p() as u64) - d == self.central()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn seed_and_character_agree() {
        let f = FieldCtx::new(5, 2).unwrap();
        let x = f.generator().unwrap();
        for d in [x, x + f.from_int(3), f.from_int(2)] {
            let chi = PChar::from_seed(d);
            assert!(chi.admits(d));
            assert!(chi.admits(d + f.one()));
            assert_eq!(chi.is_generic(), !d.in_prime_field());
        }
    }

    #[test]
    fn combining_two_generic_fails() {
        let f = FieldCtx::new(3, 2).unwrap();
        let a = PChar::from_seed(f.generator().unwrap());
        assert!(a.combine(&a).is_err());
        assert_eq!(a.combine(&PChar::zero(f)).unwrap(), a);
    }
}
