//! Divided-power calculus: digit factorisation of `e^(n)` and the coproduct.

use crate::error::{Error, Result};
use crate::exactfield::{FieldCtx, FieldElement};

/// Factorisation `e^(n) = scale * prod_i (e^(p^i))^{n_i}` with `n = sum n_i p^i`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DividedPowerPlan {
    pub n: u64,
    /// base-p digits, least significant first, exactly `levels` of them
    pub digits: Vec<u32>,
    /// the Lucas-type multinomial `n! / prod (n_i p^i)!` mod p (a unit)
    pub lucas_unit: u32,
    /// product of `n_i!` mod p
    pub digit_factorials: u32,
    /// inverse of `lucas_unit * digit_factorials` mod p
    pub scale: u32,
}

fn factorial_mod(n: u64, p: u64) -> u64 {
    (1..=n).fold(1, |acc, k| acc * (k % p) % p)
}

fn inv_mod(a: u64, p: u64) -> u64 {
    let mut r = 1;
    for _ in 0..p - 2 {
        r = r * a % p;
    }
    r
}

/// Multinomial coefficient `(sum parts)! / prod parts!` reduced mod `p`,
/// evaluated digit by digit (Lucas). Zero if adding the parts carries.
pub fn multinomial_mod_p(parts: &[u64], p: u64) -> u64 {
    let mut parts = parts.to_vec();
    let mut acc = 1u64;
    while parts.iter().any(|&x| x > 0) {
        let digits: Vec<u64> = parts.iter().map(|x| x % p).collect();
        let total: u64 = digits.iter().sum();
        if total >= p {
            return 0;
        }
        let mut m = factorial_mod(total, p);
        for d in &digits {
            m = m * inv_mod(factorial_mod(*d, p), p) % p;
        }
        acc = acc * m % p;
        for x in parts.iter_mut() {
            *x /= p;
        }
    }
    acc
}

/// `binom(n, k)` mod p.
pub fn binomial_mod_p(n: u64, k: u64, p: u64) -> u64 {
    if k > n {
        return 0;
    }
    multinomial_mod_p(&[k, n - k], p)
}

pub fn divided_power_plan(p: u32, levels: usize, n: u64) -> Result<DividedPowerPlan> {
    let pp = p as u64;
    let cap = pp.pow(levels as u32);
    if n >= cap {
        return Err(Error::LevelOverflow(format!("divided power {n} needs more than {levels} levels")));
    }
    let mut digits = Vec::with_capacity(levels);
    let mut rest = n;
    for _ in 0..levels {
        digits.push((rest % pp) as u32);
        rest /= pp;
    }
    let parts: Vec<u64> =
        digits.iter().enumerate().map(|(i, &d)| d as u64 * pp.pow(i as u32)).collect();
    let lucas_unit = multinomial_mod_p(&parts, pp);
    let digit_factorials = digits.iter().fold(1, |acc, &d| acc * factorial_mod(d as u64, pp) % pp);
    // (e^(p^i))^m = (m p^i)! / ((p^i)!)^m * e^(m p^i), and that multinomial is m! mod p
    for (i, &d) in digits.iter().enumerate() {
        let part = pp.pow(i as u32);
        let rep = vec![part; d as usize];
        debug_assert_eq!(multinomial_mod_p(&rep, pp), factorial_mod(d as u64, pp));
    }
    let denom = lucas_unit * digit_factorials % pp;
    if denom == 0 {
        return Err(Error::InvalidArgument("vanishing digit factorisation".into()));
    }
    Ok(DividedPowerPlan {
        n,
        digits,
        lucas_unit: lucas_unit as u32,
        digit_factorials: digit_factorials as u32,
        scale: inv_mod(denom, pp) as u32,
    })
}

impl DividedPowerPlan {
    pub fn scale_in(&self, ctx: FieldCtx) -> FieldElement {
        ctx.from_int(self.scale as i64)
    }
}

/// Terms `(a, b)` of `Delta(e^(n)) = sum_{a+b=n} e^(a) (x) e^(b)`.
pub fn coproduct_terms(n: u64) -> Vec<(u64, u64)> {
    (0..=n).map(|a| (a, n - a)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn plan_for_four_at_three() {
        let plan = divided_power_plan(3, 2, 4).unwrap();
        assert_eq!(plan.digits, vec![1, 1]);
        assert_eq!(plan.lucas_unit, 1);
        assert_eq!(plan.scale, 1);
        assert!(divided_power_plan(3, 2, 9).is_err());
    }

    #[test]
    fn lucas_matches_exact_binomials() {
        // exact integer binomials as the oracle
        fn exact(n: u64, k: u64) -> u128 {
            let mut r: u128 = 1;
            for i in 0..k {
                r = r * (n - i) as u128 / (i + 1) as u128;
            }
            r
        }
        for p in [3u64, 5, 7] {
            for n in 0..60 {
                for k in 0..=n {
                    assert_eq!(binomial_mod_p(n, k, p) as u128, exact(n, k) % p as u128);
                }
            }
        }
    }

    #[test]
    fn coproduct_has_n_plus_one_symmetric_terms() {
        assert_eq!(coproduct_terms(1), vec![(0, 1), (1, 0)]);
        let t = coproduct_terms(3);
        assert_eq!(t.len(), 4);
        for (a, b) in &t {
            assert!(t.contains(&(*b, *a)));
        }
    }
}
