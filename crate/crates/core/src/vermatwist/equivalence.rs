use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::exactfield::{FieldCtx, FieldElement, Matrix, SpanBuilder};
use crate::homology::{
    first_kernel_projectives, from_parts, hom_as_gmodule, hom_space, CoordinateSystem, Degree, EndAlgebra,
    EndBasisElement, GHom,
};
use crate::report::{Report, Table};
use crate::repcore::{baby_verma, frobenius_twist, tensor, ModuleRep};

use super::homiso::hom_iso;
use super::twist::twist_closed_form;

/// Graded `End(P)` for one-level projectives: objects `(lambda, mu)` standing
/// for `P_lambda` shifted by `p * mu`, with `Hom((l, m), (l', m')) = V^(l,l')_{m - m'}`.
#[derive(Clone, Debug)]
pub struct GradedEnd {
    pub ctx: FieldCtx,
    pub objects: Vec<(u32, i64)>,
    /// two-level projectives `P_0 .. P_{p-1}`
    pub pieces: Vec<ModuleRep>,
    pub ghoms: BTreeMap<(u32, u32), GHom>,
    /// for each basis element: index into the basis of its `V^(l,l')`
    pub local: Vec<usize>,
    pub algebra: EndAlgebra,
}

impl GradedEnd {
    pub fn new(ctx: FieldCtx, window: i64, seed: u64) -> Result<Self> {
        let pieces = first_kernel_projectives(ctx, 2, seed)?;
        let p = ctx.p();
        let mut ghoms = BTreeMap::new();
        for a in 0..p {
            for b in 0..p {
                ghoms.insert((a, b), hom_as_gmodule(&pieces[a as usize], &pieces[b as usize], 1)?);
            }
        }
        let objects: Vec<(u32, i64)> =
            (-window..=window).flat_map(|mu| (0..p).map(move |l| (l, mu))).collect();
        let mut basis = Vec::new();
        let mut local = Vec::new();
        let mut blocks: BTreeMap<(usize, usize), Vec<usize>> = BTreeMap::new();
        for (a, &(la, ma)) in objects.iter().enumerate() {
            for (b, &(lb, mb)) in objects.iter().enumerate() {
                let g = &ghoms[&(la, lb)];
                for (i, w) in g.weights.iter().enumerate() {
                    if *w == ma - mb {
                        blocks.entry((a, b)).or_default().push(basis.len());
                        local.push(i);
                        basis.push(EndBasisElement { src: a, tgt: b, degree: *w, map: g.space.basis[i].clone() });
                    }
                }
            }
        }
        let dims = objects.iter().map(|(l, _)| pieces[*l as usize].dim()).collect();
        let algebra = from_parts(ctx, dims, basis, blocks)?;
        Ok(GradedEnd { ctx, objects, pieces, ghoms, local, algebra })
    }

    fn ghom_of(&self, i: usize) -> &GHom {
        let b = &self.algebra.basis[i];
        &self.ghoms[&(self.objects[b.src].0, self.objects[b.tgt].0)]
    }

    /// `x^k` applied to basis element `i`, as a map.
    fn act(&self, i: usize, raising: bool, k: usize) -> Matrix {
        let g = self.ghom_of(i);
        let x = if raising { &g.e } else { &g.f };
        let mut v = Matrix::zeros(self.ctx, g.space.dim(), 1);
        v.set(self.local[i], 0, self.ctx.one());
        for _ in 0..k {
            v = x.mul(&v);
        }
        let coeffs: Vec<FieldElement> = (0..v.rows()).map(|r| v.get(r, 0)).collect();
        g.space.combine(self.ctx, &coeffs)
    }

    /// Weight-space dimension of `V^(l,l')_s`.
    pub fn weight_dim(&self, l: u32, l2: u32, s: i64) -> usize {
        self.ghoms[&(l, l2)].weights.iter().filter(|w| **w == s).count()
    }
}

/// `a o~ b = sum_k A_k(d + n) (f^k a) o (e^k b)` with `n` the degree of the
/// middle object (target of `b`).
pub fn twisted_product(g: &GradedEnd, d: FieldElement) -> Result<EndAlgebra> {
    let alg = &g.algebra;
    let ctx = g.ctx;
    let mut coords = BTreeMap::new();
    for (key, idx) in &alg.blocks {
        let maps: Vec<Matrix> = idx.iter().map(|&i| alg.basis[i].map.clone()).collect();
        coords.insert(*key, CoordinateSystem::new(ctx, &maps)?);
    }
    let mut structure = BTreeMap::new();
    for (i, bi) in alg.basis.iter().enumerate() {
        for (j, bj) in alg.basis.iter().enumerate() {
            if bj.tgt != bi.src {
                continue;
            }
            let n = g.objects[bj.tgt].1;
            let tw = twist_closed_form(d + ctx.from_int(n))?;
            let mut prod = Matrix::zeros(ctx, bi.map.rows(), bj.map.cols());
            for (k, ak) in tw.a.iter().enumerate() {
                let term = g.act(i, false, k).mul(&g.act(j, true, k));
                prod.add_scaled_assign(*ak, &term);
            }
            if prod.is_zero() {
                continue;
            }
            let key = (bj.src, bi.tgt);
            let c = coords
                .get(&key)
                .and_then(|cs| cs.coords(&prod))
                .ok_or_else(|| Error::Inconclusive(format!("twisted product ({i},{j}) leaves the graded piece")))?;
            let sparse: Vec<(usize, FieldElement)> =
                alg.blocks[&key].iter().zip(c).filter(|(_, x)| !x.is_zero()).map(|(k, x)| (*k, x)).collect();
            if !sparse.is_empty() {
                structure.insert((i, j), sparse);
            }
        }
    }
    Ok(EndAlgebra { structure, ..alg.clone() })
}

/// Scalars `D^+_n`, `D^-_n` for `n` in `lo..=hi`.
#[derive(Clone, Debug)]
pub struct RescalingSolution {
    pub lo: i64,
    pub d: FieldElement,
    pub dplus: Vec<FieldElement>,
    pub dminus: Vec<FieldElement>,
}

impl RescalingSolution {
    pub fn plus(&self, n: i64) -> FieldElement {
        self.dplus[(n - self.lo) as usize]
    }

    pub fn minus(&self, n: i64) -> FieldElement {
        self.dminus[(n - self.lo) as usize]
    }

    fn hi(&self) -> i64 {
        self.lo + self.dplus.len() as i64 - 1
    }

    /// `D+_{n-1} D-_n - D-_{n+1} D+_n (1 - A_1(n+1))` at interior `n`.
    pub fn residuals(&self) -> Result<Vec<(i64, FieldElement)>> {
        let ctx = self.d.ctx();
        let mut out = Vec::new();
        for n in self.lo + 1..self.hi() {
            let f = twist_closed_form(self.d + ctx.from_int(n + 1))?.one_minus_a1();
            out.push((n, self.plus(n - 1) * self.minus(n) - self.minus(n + 1) * self.plus(n) * f));
        }
        Ok(out)
    }
}

/// `D+ = 1`, `D-_lo = 1` and `D-_{n+1} = D-_n / (1 - A_1(n+1))`.
pub fn solve_rescaling(d: FieldElement, lo: i64, hi: i64) -> Result<RescalingSolution> {
    let ctx = d.ctx();
    let mut dminus = vec![ctx.one()];
    for n in lo..hi {
        let f = twist_closed_form(d + ctx.from_int(n + 1))?.one_minus_a1();
        if f.is_zero() {
            return Err(Error::NonGeneric(format!("1 - A_1 vanishes at degree {}", n + 1)));
        }
        dminus.push(dminus.last().unwrap().try_div(f)?);
    }
    Ok(RescalingSolution { lo, d, dplus: vec![ctx.one(); (hi - lo + 1) as usize], dminus })
}

/// Outcome of extending a generator assignment multiplicatively.
#[derive(Clone, Debug)]
pub struct Extension {
    /// image of each basis element of the source
    pub images: Vec<Vec<FieldElement>>,
    pub spans: bool,
    pub consistent: bool,
    /// basis pairs `(i, j)` with `L(b_i b_j) != L(b_i) L(b_j)`
    pub mismatches: Vec<(usize, usize)>,
}

fn unit_vec(ctx: FieldCtx, n: usize, i: usize) -> Vec<FieldElement> {
    let mut v = vec![ctx.zero(); n];
    v[i] = ctx.one();
    v
}

fn to_col(ctx: FieldCtx, v: &[FieldElement]) -> Matrix {
    Matrix::column_vector(ctx, v)
}

/// Extend `gens[i].0 -> gens[i].1` from `src` to `tgt` through all monomials,
/// then test linear consistency and multiplicativity on basis pairs.
pub fn extend_multiplicatively(
    src: &EndAlgebra,
    tgt: &EndAlgebra,
    gens: &[(Vec<FieldElement>, Vec<FieldElement>)],
) -> Result<Extension> {
    let ctx = src.ctx;
    let n = src.dim();
    let mut span = SpanBuilder::new(ctx, n);
    let mut words: Vec<(Vec<FieldElement>, Vec<FieldElement>)> = Vec::new();
    let mut frontier: Vec<usize> = Vec::new();
    for g in gens {
        words.push(g.clone());
        if span.insert(&to_col(ctx, &g.0)) {
            frontier.push(words.len() - 1);
        }
    }
    while !frontier.is_empty() {
        let mut next = Vec::new();
        for &w in &frontier {
            for g in gens {
                let val = src.mul(&g.0, &words[w].0);
                if val.iter().all(|x| x.is_zero()) {
                    continue;
                }
                let img = tgt.mul(&g.1, &words[w].1);
                let grows = span.insert(&to_col(ctx, &val));
                words.push((val, img));
                if grows {
                    next.push(words.len() - 1);
                }
            }
        }
        frontier = next;
    }
    let spans = span.dim() == n;
    let vals: Vec<Matrix> = words.iter().map(|(v, _)| to_col(ctx, v)).collect();
    let imgs: Vec<Matrix> = words.iter().map(|(_, i)| to_col(ctx, i)).collect();
    let vrefs: Vec<&Matrix> = vals.iter().collect();
    let irefs: Vec<&Matrix> = imgs.iter().collect();
    let vm = Matrix::hstack(&vrefs)?;
    let im = Matrix::hstack(&irefs)?;
    // L vm = im, solved row by row through vm^T L^T = im^T
    let sol = vm.transpose().solve(&im.transpose())?;
    let (images, consistent) = match sol {
        Some(s) if spans => {
            let l = s.particular.transpose();
            let images: Vec<Vec<FieldElement>> = (0..n).map(|i| (0..n).map(|r| l.get(r, i)).collect()).collect();
            (images, true)
        }
        Some(_) => (vec![], true),
        None => (vec![], false),
    };
    let mut mismatches = Vec::new();
    if spans && consistent {
        let apply = |x: &[FieldElement]| -> Vec<FieldElement> {
            let mut out = vec![ctx.zero(); n];
            for (i, c) in x.iter().enumerate() {
                if !c.is_zero() {
                    for (k, v) in images[i].iter().enumerate() {
                        out[k] = out[k] + *c * *v;
                    }
                }
            }
            out
        };
        for i in 0..n {
            for j in 0..n {
                if src.basis[j].tgt != src.basis[i].src {
                    continue;
                }
                let lhs = apply(&src.mul(&unit_vec(ctx, n, i), &unit_vec(ctx, n, j)));
                let rhs = tgt.mul(&images[i], &images[j]);
                if lhs != rhs {
                    mismatches.push((i, j));
                }
            }
        }
    }
    Ok(Extension { images, spans, consistent, mismatches })
}

/// The generic-character side: `Q(l, mu) = Z_{d+mu}^(1) (x) P_l`.
pub fn twisted_projective(piece: &ModuleRep, d: FieldElement, mu: i64) -> Result<ModuleRep> {
    let z = frobenius_twist(&baby_verma(d + d.ctx().from_int(mu), mu)?, 1);
    Ok(tensor(&z, piece)?.with_provenance(format!("Z({mu})^(1) x {}", piece.provenance)))
}

/// The map `Z_mu^(1) (x) P_l -> Z_mu'^(1) (x) P_l'` attached to basis element `i`.
pub fn transport(g: &GradedEnd, d: FieldElement, i: usize) -> Result<Matrix> {
    let b = &g.algebra.basis[i];
    let (ma, mb) = (g.objects[b.src].1, g.objects[b.tgt].1);
    let gh = g.ghom_of(i);
    let vmod = gh.as_module()?;
    let mut v = Matrix::zeros(g.ctx, gh.space.dim(), 1);
    v.set(g.local[i], 0, g.ctx.one());
    let psi = hom_iso(d, &vmod, &v, ma, mb)?;
    let p = g.ctx.p() as usize;
    let dv = gh.space.dim();
    let mut out: Option<Matrix> = None;
    for (alpha, phi) in gh.space.basis.iter().enumerate() {
        let rows: Vec<usize> = (0..p).map(|j| j * dv + alpha).collect();
        let m = psi.select_rows(&rows);
        let t = m.kron(phi);
        out = Some(match out {
            None => t,
            Some(acc) => acc.add(&t),
        });
    }
    out.ok_or_else(|| Error::InvalidArgument("empty Hom space".into()))
}

/// Both graded endomorphism algebras over a window, the twisted product,
/// the rescaling and the resulting isomorphism, checked exactly.
pub fn verify_equivalence(ctx: FieldCtx, d: FieldElement, window: i64, seed: u64) -> Result<Report> {
    let p = ctx.p();
    let mut rep = Report::new("equivalence")
        .with_conventions(ctx)
        .param("p", p)
        .param("r", 1)
        .param("d", d)
        .param("window", window)
        .param("seed", seed);
    rep.conventions.insert("twist_degree".into(), "n = degree of the middle object".into());
    let g = GradedEnd::new(ctx, window, seed)?;
    let twisted = twisted_product(&g, d)?;
    let qs: Vec<ModuleRep> = g
        .objects
        .iter()
        .map(|(l, mu)| twisted_projective(&g.pieces[*l as usize], d, *mu))
        .collect::<Result<_>>()?;
    let phis: Vec<Matrix> = (0..g.algebra.dim()).map(|i| transport(&g, d, i)).collect::<Result<_>>()?;

    // graded dimensions and the transported maps
    let mut dims = Table::new("graded_dims", &["source", "target", "dim_V", "dim_hom_chi"]);
    let mut bad_dims = Vec::new();
    let mut bad_maps = Vec::new();
    for (a, &(la, ma)) in g.objects.iter().enumerate() {
        for (b, &(lb, mb)) in g.objects.iter().enumerate() {
            let want = g.weight_dim(la, lb, ma - mb);
            let hs = hom_space(&qs[a], &qs[b], Degree::Shift(0))?;
            if hs.dim() != want {
                bad_dims.push(format!("({la},{ma})->({lb},{mb}): {want} vs {}", hs.dim()));
            }
            let idx = g.algebra.blocks.get(&(a, b)).cloned().unwrap_or_default();
            let mut sp = SpanBuilder::new(ctx, qs[a].dim() * qs[b].dim());
            for &i in &idx {
                if hs.coordinates(&phis[i]).is_none() || !sp.insert(&phis[i].vectorize()) {
                    bad_maps.push(i);
                }
            }
            if want > 0 {
                dims.push(vec![format!("({la},{ma})"), format!("({lb},{mb})"), want.to_string(), hs.dim().to_string()]);
            }
        }
    }
    rep.check("graded Hom dimensions agree", bad_dims.is_empty(), bad_dims.join("; "))
        .scalar("objects", g.objects.len())
        .scalar("dim_end", g.algebra.dim());
    rep.check("transported maps form bases of the Hom spaces", bad_maps.is_empty(), format!("{} failures", bad_maps.len()));

    // composition in End(P') is the twisted product
    let n = g.algebra.dim();
    let mut checked = 0usize;
    let mut bad_struct = Vec::new();
    for i in 0..n {
        for j in 0..n {
            if g.algebra.basis[j].tgt != g.algebra.basis[i].src {
                continue;
            }
            checked += 1;
            let lhs = phis[i].mul(&phis[j]);
            let mut rhs = Matrix::zeros(ctx, lhs.rows(), lhs.cols());
            for (k, c) in twisted.structure.get(&(i, j)).into_iter().flatten() {
                rhs.add_scaled_assign(*c, &phis[*k]);
            }
            if lhs != rhs {
                bad_struct.push(format!("({i},{j})"));
            }
        }
    }
    rep.check(
        "End(P') structure constants equal the twisted product",
        bad_struct.is_empty(),
        if bad_struct.is_empty() { format!("{checked} products") } else { bad_struct.join(" ") },
    )
    .scalar("products", checked);
    rep.check("twisted product associative", twisted.is_associative(), "");

    // rescaling
    let sol = solve_rescaling(d, -window, window)?;
    let res = sol.residuals()?;
    let nonzero: Vec<String> = res.iter().filter(|(_, r)| !r.is_zero()).map(|(n, _)| n.to_string()).collect();
    rep.check("rescaling recurrence", nonzero.is_empty(), nonzero.join(" ")).scalar("interior_degrees", res.len());
    let mut rt = Table::new("rescaling", &["n", "one_minus_A1", "D_plus", "D_minus"]);
    for k in -window..=window {
        let f = twist_closed_form(d + ctx.from_int(k))?.one_minus_a1();
        rt.push(vec![k.to_string(), f.to_string(), sol.plus(k).to_string(), sol.minus(k).to_string()]);
    }
    rep.table(rt);

    // generators: object identities and the weight +-1 maps, the latter rescaled
    let mut gens = Vec::new();
    let id = g.algebra.identity()?;
    for a in 0..g.objects.len() {
        let mut e = vec![ctx.zero(); n];
        for &i in g.algebra.blocks.get(&(a, a)).into_iter().flatten() {
            e[i] = id[i];
        }
        gens.push((e.clone(), e));
    }
    for (i, b) in g.algebra.basis.iter().enumerate() {
        let from = g.objects[b.src].1;
        let scale = match b.degree {
            -1 => sol.plus(from),
            1 => sol.minus(from),
            0 => continue,
            other => return Err(Error::Inconclusive(format!("unexpected generator weight {other}"))),
        };
        let u = unit_vec(ctx, n, i);
        let v: Vec<FieldElement> = u.iter().map(|x| *x * scale).collect();
        gens.push((u, v));
    }
    let ext = extend_multiplicatively(&g.algebra, &twisted, &gens)?;
    rep.check("identities and level generators generate End(P)", ext.spans, "");
    rep.check("rescaled generators define a linear map", ext.consistent, "");
    rep.check(
        "rescaled map is multiplicative",
        ext.spans && ext.consistent && ext.mismatches.is_empty(),
        format!("{} mismatching pairs", ext.mismatches.len()),
    );

    // end to end: End(P) -> End(P') on matrices
    if ext.spans && ext.consistent {
        let big: Vec<Matrix> = ext
            .images
            .iter()
            .enumerate()
            .map(|(i, x)| {
                let b = &g.algebra.basis[i];
                let mut m = Matrix::zeros(ctx, qs[b.tgt].dim(), qs[b.src].dim());
                for (k, c) in x.iter().enumerate() {
                    if !c.is_zero() {
                        m.add_scaled_assign(*c, &phis[k]);
                    }
                }
                m
            })
            .collect();
        let mut bad = 0usize;
        for ((i, j), terms) in &g.algebra.structure {
            let mut rhs = Matrix::zeros(ctx, big[*i].rows(), big[*j].cols());
            for (k, c) in terms {
                rhs.add_scaled_assign(*c, &big[*k]);
            }
            if big[*i].mul(&big[*j]) != rhs {
                bad += 1;
            }
        }
        for (i, j) in (0..n).flat_map(|i| (0..n).map(move |j| (i, j))) {
            if g.algebra.basis[j].tgt == g.algebra.basis[i].src
                && !g.algebra.structure.contains_key(&(i, j))
                && !big[i].mul(&big[j]).is_zero()
            {
                bad += 1;
            }
        }
        rep.check("End(P) -> End(P') is an algebra isomorphism", bad == 0, format!("{bad} mismatches"));
        let mut id_ok = true;
        for (a, q) in qs.iter().enumerate().take(g.objects.len()) {
            let mut m = Matrix::zeros(ctx, q.dim(), q.dim());
            for &i in g.algebra.blocks.get(&(a, a)).into_iter().flatten() {
                m.add_scaled_assign(id[i], &big[i]);
            }
            id_ok &= m == Matrix::identity(ctx, q.dim());
        }
        rep.check("identities map to identities", id_ok, "");
    }
    rep.table(dims);
    Ok(rep)
}
