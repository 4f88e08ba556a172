use std::fmt;

use crate::error::{Error, Result};
use crate::exactfield::{FieldCtx, FieldElement};

/// Highest-weight label `(k_0, ..., k_{r-2}; d)` with graded shift `mu`.
///
/// `digits` holds all `r` digits; for generic labels the top digit is
/// unused and the top weight is the seed `d`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct WeightLabel {
    pub digits: Vec<u32>,
    pub d: FieldElement,
    pub mu: i64,
}

impl WeightLabel {
    /// Restricted label with `d` equal to the top digit.
    pub fn restricted(ctx: FieldCtx, digits: &[u32]) -> Result<Self> {
        let top = *digits.last().ok_or_else(|| Error::InvalidArgument("empty digit list".into()))?;
        if digits.iter().any(|&k| k >= ctx.p()) {
            return Err(Error::InvalidArgument("digits must lie in [0, p-1]".into()));
        }
        let mu = digits.iter().rev().fold(0i64, |acc, &k| acc * ctx.p() as i64 + k as i64);
        Ok(WeightLabel { digits: digits.to_vec(), d: ctx.from_int(top as i64), mu })
    }

    /// Generic label: lower digits plus a non-prime-field top seed.
    pub fn generic(lower: &[u32], d: FieldElement, top_shift: i64) -> Result<Self> {
        let ctx = d.ctx();
        if d.in_prime_field() {
            return Err(Error::NonGeneric(format!("{d} lies in F_{}", ctx.p())));
        }
        if lower.iter().any(|&k| k >= ctx.p()) {
            return Err(Error::InvalidArgument("digits must lie in [0, p-1]".into()));
        }
        let r = lower.len() as u32;
        let low = lower.iter().rev().fold(0i64, |acc, &k| acc * ctx.p() as i64 + k as i64);
        let mut digits = lower.to_vec();
        digits.push(0);
        Ok(WeightLabel { digits, d, mu: top_shift * (ctx.p() as i64).pow(r) + low })
    }

    pub fn is_generic(&self) -> bool {
        !self.d.in_prime_field()
    }

    pub fn levels(&self) -> usize {
        self.digits.len()
    }
}

impl fmt::Display for WeightLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let n = self.digits.len();
        let lower: Vec<String> = self.digits[..n - 1].iter().map(|k| k.to_string()).collect();
        write!(f, "({}{}{})", lower.join(","), if n > 1 { ";" } else { "" }, self.d)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn restricted_label_weight() {
        let f = FieldCtx::new(3, 1).unwrap();
        let l = WeightLabel::restricted(f, &[2, 1]).unwrap();
        assert_eq!(l.mu, 5);
        assert_eq!(l.to_string(), "(2;1)");
        assert!(!l.is_generic());
    }

    #[test]
    fn generic_requires_outside_prime_field() {
        let f = FieldCtx::new(3, 2).unwrap();
        assert!(WeightLabel::generic(&[1], f.one(), 0).is_err());
        let l = WeightLabel::generic(&[1], f.generator().unwrap(), 2).unwrap();
        assert_eq!(l.mu, 7);
        assert!(l.is_generic());
    }
}
