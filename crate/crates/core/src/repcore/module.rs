use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::exactfield::{FieldCtx, Matrix};
use crate::smallalg::{divided_power_plan, PChar};

/// A finite-dimensional graded module over the level-`levels` Frobenius
/// kernel (possibly with a p-character on its top level).
///
/// `e[j]`, `f[j]` are the actions of `e^(p^j)` and `f^(p^j)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ModuleRep {
    pub(crate) ctx: FieldCtx,
    pub(crate) e: Vec<Matrix>,
    pub(crate) f: Vec<Matrix>,
    pub(crate) grading: Vec<i64>,
    pub(crate) pchar: PChar,
    pub provenance: String,
}

impl ModuleRep {
    pub fn new(
        e: Vec<Matrix>,
        f: Vec<Matrix>,
        grading: Vec<i64>,
        pchar: PChar,
        provenance: impl Into<String>,
    ) -> Result<Self> {
        let first = e.first().ok_or_else(|| Error::InvalidArgument("a module needs at least one level".into()))?;
        let ctx = first.ctx();
        let n = grading.len();
        if e.len() != f.len() {
            return Err(Error::Shape("E and F level counts differ".into()));
        }
        for m in e.iter().chain(f.iter()) {
            if m.ctx() != ctx || pchar.chi_h.ctx() != ctx {
                return Err(Error::FieldMismatch);
            }
            if m.rows() != n || m.cols() != n {
                return Err(Error::Shape(format!("generator is {}x{}, grading has {n}", m.rows(), m.cols())));
            }
        }
        Ok(ModuleRep { ctx, e, f, grading, pchar, provenance: provenance.into() })
    }

    pub fn ctx(&self) -> FieldCtx {
        self.ctx
    }
    pub fn dim(&self) -> usize {
        self.grading.len()
    }
    pub fn levels(&self) -> usize {
        self.e.len()
    }
    pub fn e(&self, j: usize) -> &Matrix {
        &self.e[j]
    }
    pub fn f(&self, j: usize) -> &Matrix {
        &self.f[j]
    }
    pub fn grading(&self) -> &[i64] {
        &self.grading
    }
    pub fn pchar(&self) -> PChar {
        self.pchar
    }

    pub fn with_provenance(mut self, tag: impl Into<String>) -> Self {
        self.provenance = tag.into();
        self
    }

    /// Shift every weight by `s`.
    pub fn shift(&self, s: i64) -> ModuleRep {
        let mut m = self.clone();
        for w in m.grading.iter_mut() {
            *w += s;
        }
        m
    }

    /// Basis indices grouped by weight.
    pub fn weight_spaces(&self) -> BTreeMap<i64, Vec<usize>> {
        let mut out: BTreeMap<i64, Vec<usize>> = BTreeMap::new();
        for (i, w) in self.grading.iter().enumerate() {
            out.entry(*w).or_default().push(i);
        }
        out
    }

    /// Action of `e^(n)` (raising) or `f^(n)` (lowering).
    pub fn divided_power(&self, n: u64, raising: bool) -> Result<Matrix> {
        let plan = divided_power_plan(self.ctx.p(), self.levels(), n)?;
        let gens = if raising { &self.e } else { &self.f };
        let mut acc = Matrix::identity(self.ctx, self.dim()).scale(plan.scale_in(self.ctx));
        for (j, &d) in plan.digits.iter().enumerate() {
            if d > 0 {
                acc = acc.mul(&gens[j].pow(d as u64));
            }
        }
        Ok(acc)
    }

    /// All divided powers `x^(0..=n)`.
    pub fn divided_powers(&self, n: u64, raising: bool) -> Result<Vec<Matrix>> {
        (0..=n).map(|a| self.divided_power(a, raising)).collect()
    }

    /// Matrix of `h` on the level-0 weight spaces: `[E_0, F_0]`.
    pub fn h0(&self) -> Matrix {
        self.e[0].commutator(&self.f[0])
    }

    /// Restriction to an invariant graded subspace with homogeneous basis columns.
    pub fn subquotient_sub(&self, basis: &Matrix) -> Result<ModuleRep> {
        let mut grading = Vec::with_capacity(basis.cols());
        for c in 0..basis.cols() {
            let mut w = None;
            for r in 0..basis.rows() {
                if !basis.get(r, c).is_zero() {
                    match w {
                        None => w = Some(self.grading[r]),
                        Some(x) if x != self.grading[r] => {
                            return Err(Error::Ungraded("basis column mixes weights".into()))
                        }
                        _ => {}
                    }
                }
            }
            grading.push(w.ok_or_else(|| Error::InvalidArgument("zero basis column".into()))?);
        }
        let restrict = |m: &Matrix| -> Result<Matrix> {
            basis
                .coordinates(&m.mul(basis))
                .ok_or_else(|| Error::InvalidArgument("subspace is not invariant".into()))
        };
        let e = self.e.iter().map(restrict).collect::<Result<Vec<_>>>()?;
        let f = self.f.iter().map(restrict).collect::<Result<Vec<_>>>()?;
        ModuleRep::new(e, f, grading, self.pchar, format!("sub({})", self.provenance))
    }

    /// Apply a change of basis: the new basis is the columns of `b` (each homogeneous).
    pub fn rebase(&self, b: &Matrix) -> Result<ModuleRep> {
        if b.rows() != self.dim() || b.cols() != self.dim() {
            return Err(Error::Shape("change of basis must be square".into()));
        }
        self.subquotient_sub(b).map(|m| m.with_provenance(self.provenance.clone()))
    }
}

/// Zero action on `n` basis vectors at every level.
pub(crate) fn zero_levels(ctx: FieldCtx, levels: usize, n: usize) -> Vec<Matrix> {
    vec![Matrix::zeros(ctx, n, n); levels]
}
