use crate::exactfield::Matrix;

use super::module::ModuleRep;

/// Itemized outcome of [`validate`].
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ValidationReport {
    pub checks: usize,
    pub failures: Vec<String>,
}

impl ValidationReport {
    pub fn ok(&self) -> bool {
        self.failures.is_empty()
    }
    fn check(&mut self, cond: bool, msg: impl FnOnce() -> String) {
        self.checks += 1;
        if !cond {
            self.failures.push(msg());
        }
    }
}

fn respects_shift(m: &Matrix, grading: &[i64], shift: i64) -> Option<(usize, usize)> {
    for u in 0..m.rows() {
        for v in 0..m.cols() {
            if !m.get(u, v).is_zero() && grading[u] != grading[v] + shift {
                return Some((u, v));
            }
        }
    }
    None
}

/// Check the structural invariants of a module.
///
/// The Cartan condition is tested at level 0 only: `[E_0, F_0]` must be
/// diagonal, equal to the weight mod p up to a scalar `c` with
/// `c^p - c = chi(h)^p` (and `c = 0` unless the module is a one-level module
/// with nonzero p-character).
pub fn validate(m: &ModuleRep) -> ValidationReport {
    let mut rep = ValidationReport::default();
    let ctx = m.ctx();
    let p = ctx.p() as i64;
    let n = m.dim();
    for j in 0..m.levels() {
        let s = 2 * p.pow(j as u32);
        let e_bad = respects_shift(m.e(j), m.grading(), s);
        rep.check(e_bad.is_none(), || format!("E_{j} violates the grading at {:?}", e_bad));
        let f_bad = respects_shift(m.f(j), m.grading(), -s);
        rep.check(f_bad.is_none(), || format!("F_{j} violates the grading at {:?}", f_bad));
        rep.check(m.e(j).pow(p as u64).is_zero(), || format!("E_{j}^p != 0"));
        rep.check(m.f(j).pow(p as u64).is_zero(), || format!("F_{j}^p != 0"));
        for i in 0..j {
            rep.check(m.e(i).commutator(m.e(j)).is_zero(), || format!("[E_{i}, E_{j}] != 0"));
            rep.check(m.f(i).commutator(m.f(j)).is_zero(), || format!("[F_{i}, F_{j}] != 0"));
        }
    }
    let h = m.h0();
    let mut offset = None;
    let mut diagonal = true;
    let mut constant = true;
    for u in 0..n {
        for v in 0..n {
            if u != v && !h.get(u, v).is_zero() {
                diagonal = false;
            }
        }
        let c = h.get(u, u) - ctx.from_int(m.grading()[u]);
        match offset {
            None => offset = Some(c),
            Some(c0) if c0 != c => constant = false,
            _ => {}
        }
    }
    rep.check(diagonal, || "[E_0, F_0] is not diagonal".into());
    rep.check(constant, || "[E_0, F_0] differs from the weights by a non-constant".into());
    if let Some(c) = offset {
        let generic_base = m.levels() == 1 && m.pchar().is_generic();
        let ok = if generic_base { m.pchar().admits(c) } else { c.is_zero() };
        rep.check(ok, || format!("level-0 weight offset {c} is incompatible with the p-character"));
    }
    rep
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactfield::FieldCtx;
    use crate::repcore::{baby_verma, frobenius_twist, simple_restricted, tensor, dual, extend_levels};

    #[test]
    fn simples_and_tensors_validate() {
        let f = FieldCtx::new(3, 1).unwrap();
        let mods: Vec<_> = (0..3).map(|i| simple_restricted(f, i, 2).unwrap()).collect();
        for a in &mods {
            assert!(validate(a).ok(), "{:?}", validate(a).failures);
            let ta = extend_levels(&frobenius_twist(&simple_restricted(f, 1, 1).unwrap(), 1), 2).unwrap();
            for b in &mods {
                let t = tensor(&tensor(a, &ta).unwrap(), b).unwrap();
                let r = validate(&t);
                assert!(r.ok(), "{:?}", r.failures);
                assert!(validate(&dual(&t)).ok());
            }
        }
    }

    #[test]
    fn generic_verma_validates() {
        let f = FieldCtx::new(5, 2).unwrap();
        let z = baby_verma(f.generator().unwrap(), 3).unwrap();
        let r = validate(&z);
        assert!(r.ok(), "{:?}", r.failures);
        let l = simple_restricted(f, 2, 1).unwrap();
        assert!(validate(&tensor(&z, &l).unwrap()).ok());
    }

    #[test]
    fn fault_injection_is_caught() {
        let f = FieldCtx::new(3, 1).unwrap();
        let mut l = simple_restricted(f, 2, 1).unwrap();
        l.e[0].set(2, 0, f.one());
        assert!(!validate(&l).ok());
    }
}
