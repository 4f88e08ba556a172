use std::collections::BTreeMap;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::exactfield::{FieldCtx, Matrix};
use crate::homology::{assemble, digit_tuples, hom_space, Degree};
use crate::repcore::ModuleRep;

use super::pieces::{Chain, SingleLevel};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum GenKind {
    Idempotent,
    Omega,
    Raise,
    Lower,
    PhiMin,
    PhiMax,
}

/// One generator `Q_src -> Q_tgt` of the endomorphism algebra.
#[derive(Clone, Debug)]
pub struct EndGenerator {
    pub kind: GenKind,
    pub level: usize,
    pub src: usize,
    pub tgt: usize,
    /// weight shift of the map
    pub degree: i64,
    pub matrix: Matrix,
}

/// Objects `Q_k = P_{k_0} (x) P_{k_1}^(1) (x) ...` for `r` levels and the
/// generators between them.
#[derive(Clone, Debug)]
pub struct Presentation {
    pub ctx: FieldCtx,
    pub r: usize,
    /// digit tuples, lowest level first
    pub objects: Vec<Vec<u32>>,
    pub modules: Vec<ModuleRep>,
    pub single: SingleLevel,
    pub generators: Vec<EndGenerator>,
}

impl Presentation {
    pub fn index(&self, digits: &[u32]) -> Option<usize> {
        self.objects.iter().position(|d| d == digits)
    }

    pub fn label(&self, i: usize) -> String {
        let d: Vec<String> = self.objects[i].iter().map(|x| x.to_string()).collect();
        format!("P({})", d.join(","))
    }

    /// Generators from `src` of the given level.
    pub fn from_object(&self, src: usize, level: usize) -> impl Iterator<Item = &EndGenerator> {
        self.generators.iter().filter(move |g| g.src == src && g.level == level)
    }

    /// Identity on all factors except `at..at+len` of object `digits`, where `m` acts.
    pub fn embed(&self, digits: &[u32], at: usize, len: usize, m: &Matrix) -> Matrix {
        let left: usize = digits[..at].iter().map(|&k| self.single.dim(k)).product();
        let right: usize = digits[at + len..].iter().map(|&k| self.single.dim(k)).product();
        Matrix::identity(self.ctx, left).kron(m).kron(&Matrix::identity(self.ctx, right))
    }

    /// The two-factor level map `P_k (x) P_b^(1) -> P_{p-2-k} (x) P_c^(1)` through `s : P_b -> P_c (x) V`.
    pub fn level_map(&self, k: u32, b: u32, c: u32, s: &Matrix) -> Matrix {
        let sl = &self.single;
        let p = sl.p();
        Chain::start(self.ctx, &[sl.dim(k), sl.dim(b)])
            .apply(1, 1, s, &[sl.dim(c), 2])
            .swap(1)
            .apply(0, 2, &sl.lambda[k as usize], &[sl.dim(p - 2 - k)])
            .finish()
    }

    /// `P_k (x) P_{p-1}^(1) -> P_{p-2-k} (x) P_0^(1)` through `j`, of degree `sign * p^2`.
    pub fn j_level_map(&self, k: u32, sign: i64) -> Matrix {
        let sl = &self.single;
        let p = sl.p();
        Chain::start(self.ctx, &[sl.dim(k), sl.dim(p - 1)])
            .apply(1, 1, &sl.j_at(sign), &[sl.dim(0), 2])
            .swap(1)
            .apply(0, 2, &sl.lambda[k as usize], &[sl.dim(p - 2 - k)])
            .finish()
    }
}

/// Build objects and generators for `r <= 2` levels.
///
/// Generators: idempotents; `Omega` on each factor (level = factor index);
/// level-`l-1` maps acting on factors `l-1, l` through the fixed splittings,
/// `phi_min` and `phi_max`; top maps `P_k^(r-1) -> P_{p-2-k}^(r-1)` of degree
/// `+-p^r` at level `r-1`; and at the top pair of factors, the maps
/// `P_k (x) P_{p-1}^(r-1) -> P_{p-2-k} (x) P_0^(r-1)` of degree `+-p^r` through `j`.
pub fn build_generators(ctx: FieldCtx, r: usize, seed: u64) -> Result<Presentation> {
    if r == 0 || r > 2 {
        return Err(Error::InvalidArgument(format!("presentations are built for r in 1..=2, got {r}")));
    }
    let single = SingleLevel::new(ctx, seed)?;
    let p = ctx.p();
    let objects = digit_tuples(p, r);
    let modules: Vec<ModuleRep> =
        objects.iter().map(|d| assemble(d, &single.proj, r)).collect::<Result<_>>()?;
    let mut pres = Presentation { ctx, r, objects, modules, single, generators: vec![] };
    let index: BTreeMap<Vec<u32>, usize> = pres.objects.iter().cloned().enumerate().map(|(i, d)| (d, i)).collect();
    let pr = (p as i64).pow(r as u32);
    let mut gens = Vec::new();
    for (a, d) in pres.objects.iter().enumerate() {
        let n = pres.modules[a].dim();
        gens.push(EndGenerator {
            kind: GenKind::Idempotent,
            level: 0,
            src: a,
            tgt: a,
            degree: 0,
            matrix: Matrix::identity(ctx, n),
        });
        for (l, &k) in d.iter().enumerate() {
            if k <= p - 2 {
                gens.push(EndGenerator {
                    kind: GenKind::Omega,
                    level: l,
                    src: a,
                    tgt: a,
                    degree: 0,
                    matrix: pres.embed(d, l, 1, &pres.single.omega[k as usize]),
                });
            }
        }
        let top = r - 1;
        let k = d[top];
        if k <= p - 2 {
            for sign in [1i64, -1] {
                let mut t = d.clone();
                t[top] = p - 2 - k;
                gens.push(EndGenerator {
                    kind: if sign > 0 { GenKind::Raise } else { GenKind::Lower },
                    level: top,
                    src: a,
                    tgt: index[&t],
                    degree: sign * pr,
                    matrix: pres.embed(d, top, 1, &pres.single.lambda_at(k, sign)),
                });
            }
        }
        for l in 1..r {
            let (k, b) = (d[l - 1], d[l]);
            if k > p - 2 {
                continue;
            }
            let mut maps: Vec<(GenKind, u32, &Matrix)> = Vec::new();
            for ((bb, c), s) in &pres.single.split {
                if *bb == b {
                    maps.push((if *c > b { GenKind::Raise } else { GenKind::Lower }, *c, s));
                }
            }
            if b == p - 1 {
                maps.push((GenKind::PhiMin, p - 2, &pres.single.phi_min));
                maps.push((GenKind::PhiMax, p - 2, &pres.single.phi_max));
            }
            if b == p - 1 && l == r - 1 {
                // P_{p-1}^(l) -> P_0^(l) (x) V^(l) through V^(l+1), which is the grading shift
                for sign in [1i64, -1] {
                    let mut t = d.clone();
                    t[l - 1] = p - 2 - k;
                    t[l] = 0;
                    gens.push(EndGenerator {
                        kind: if sign > 0 { GenKind::Raise } else { GenKind::Lower },
                        level: l - 1,
                        src: a,
                        tgt: index[&t],
                        degree: sign * pr,
                        matrix: pres.embed(d, l - 1, 2, &pres.j_level_map(k, sign)),
                    });
                }
            }
            for (kind, c, s) in maps {
                let mut t = d.clone();
                t[l - 1] = p - 2 - k;
                t[l] = c;
                let local = pres.level_map(k, b, c, s);
                gens.push(EndGenerator {
                    kind,
                    level: l - 1,
                    src: a,
                    tgt: index[&t],
                    degree: 0,
                    matrix: pres.embed(d, l - 1, 2, &local),
                });
            }
        }
    }
    pres.generators = gens;
    Ok(pres)
}

/// Every generator is an intertwiner of its stated degree.
pub fn generators_are_intertwiners(pres: &Presentation) -> Result<Vec<String>> {
    let mut bad = Vec::new();
    for g in &pres.generators {
        let hs = hom_space(&pres.modules[g.src], &pres.modules[g.tgt], Degree::Shift(g.degree))?;
        if hs.coordinates(&g.matrix).is_none() || g.matrix.is_zero() {
            bad.push(format!("{:?} {} -> {}", g.kind, pres.label(g.src), pres.label(g.tgt)));
        }
    }
    Ok(bad)
}

/// Generator graph in DOT format: nodes are objects, edges are generators.
pub fn to_dot(pres: &Presentation) -> String {
    let mut s = String::from("digraph generators {\n");
    for i in 0..pres.objects.len() {
        s.push_str(&format!("  n{i} [label=\"{}\"];\n", pres.label(i)));
    }
    for g in &pres.generators {
        if g.kind == GenKind::Idempotent {
            continue;
        }
        let kind = serde_json::to_value(g.kind).expect("kind").as_str().unwrap_or_default().to_string();
        s.push_str(&format!(
            "  n{} -> n{} [label=\"{kind} l={} deg={}\"];\n",
            g.src, g.tgt, g.level, g.degree
        ));
    }
    s.push_str("}\n");
    s
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn generators_intertwine_p3() {
        let ctx = FieldCtx::new(3, 1).unwrap();
        for r in [1, 2] {
            let pres = build_generators(ctx, r, 0).unwrap();
            assert_eq!(generators_are_intertwiners(&pres).unwrap(), Vec::<String>::new());
        }
    }

    #[test]
    fn dot_lists_every_object() {
        let ctx = FieldCtx::new(3, 1).unwrap();
        let pres = build_generators(ctx, 1, 0).unwrap();
        let dot = to_dot(&pres);
        assert!(dot.starts_with("digraph"));
        assert_eq!(dot.matches("[label=\"P(").count(), 3);
        assert_eq!(dot.matches("omega").count(), 2);
    }
}
