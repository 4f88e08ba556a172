use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::exactfield::Matrix;
use crate::repcore::ModuleRep;

use super::hom::{hom_space, Degree};
use super::submodule::{radical_and_head, random_combination};

/// One indecomposable summand of a decomposition.
#[derive(Clone, Debug)]
pub struct Summand {
    /// columns: homogeneous basis of the summand inside `M`
    pub inclusion: Matrix,
    /// rows: coordinates along this summand, with the other summands as kernel
    pub projection: Matrix,
    pub module: ModuleRep,
    /// index into the supplied simples of the (simple) head
    pub head: usize,
}

impl Summand {
    pub fn idempotent(&self) -> Matrix {
        self.inclusion.mul(&self.projection)
    }
}

#[derive(Clone, Debug)]
pub struct SummandDecomposition {
    pub seed: u64,
    pub summands: Vec<Summand>,
}

impl SummandDecomposition {
    /// Sorted `(head index, dim)` pairs.
    pub fn signature(&self) -> Vec<(usize, usize)> {
        let mut s: Vec<(usize, usize)> = self.summands.iter().map(|x| (x.head, x.module.dim())).collect();
        s.sort();
        s
    }
}

const ATTEMPTS: usize = 60;

// kernel and image of a degree-0 map, each with a homogeneous basis
fn fitting_parts(m: &ModuleRep, phi: &Matrix) -> (Matrix, Matrix) {
    let ctx = m.ctx();
    let mut ker = Vec::new();
    let mut img = Vec::new();
    for (_, idx) in m.weight_spaces() {
        let block = phi.submatrix(&idx, &idx);
        let embed = |local: &Matrix, out: &mut Vec<Matrix>| {
            for c in 0..local.cols() {
                let mut v = Matrix::zeros(ctx, m.dim(), 1);
                for (r, &i) in idx.iter().enumerate() {
                    v.set(i, 0, local.get(r, c));
                }
                out.push(v);
            }
        };
        embed(&block.kernel(), &mut ker);
        embed(&block.column_space(), &mut img);
    }
    let stack = |vs: Vec<Matrix>| {
        if vs.is_empty() {
            Matrix::zeros(ctx, m.dim(), 0)
        } else {
            let refs: Vec<&Matrix> = vs.iter().collect();
            Matrix::hstack(&refs).expect("equal heights")
        }
    };
    (stack(ker), stack(img))
}

fn split_rec(
    m: &ModuleRep,
    basis: Matrix,
    simples: &[ModuleRep],
    rng: &mut ChaCha8Rng,
    out: &mut Vec<(Matrix, ModuleRep, usize)>,
) -> Result<()> {
    let rh = radical_and_head(m, simples)?;
    if rh.head_length() == 1 {
        // simple head: End(M) is local
        out.push((basis, m.clone(), rh.head[0].0));
        return Ok(());
    }
    if rh.head_length() == 0 {
        return Err(Error::Inconclusive(format!("no simple in the list maps onto {}", m.provenance)));
    }
    let end = hom_space(m, m, Degree::Shift(0))?;
    for _ in 0..ATTEMPTS {
        let Some(phi) = random_combination(&end.basis, rng) else { break };
        let big = phi.pow(m.dim() as u64);
        let (k, i) = fitting_parts(m, &big);
        if k.cols() == 0 || i.cols() == 0 {
            continue;
        }
        for part in [k, i] {
            let sub = m.subquotient_sub(&part)?;
            split_rec(&sub, basis.mul(&part), simples, rng, out)?;
        }
        return Ok(());
    }
    Err(Error::Inconclusive(format!(
        "{} has head of length {} but no splitting endomorphism was found",
        m.provenance,
        rh.head_length()
    )))
}

/// Fitting decomposition into summands with simple head, using degree-0
/// endomorphisms drawn from a ChaCha8 stream seeded with `seed`.
pub fn split_indecomposables(m: &ModuleRep, simples: &[ModuleRep], seed: u64) -> Result<SummandDecomposition> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut leaves = Vec::new();
    split_rec(m, Matrix::identity(m.ctx(), m.dim()), simples, &mut rng, &mut leaves)?;
    let cols: Vec<&Matrix> = leaves.iter().map(|(b, _, _)| b).collect();
    let all = Matrix::hstack(&cols)?;
    let inv = all.inverse()?;
    let mut off = 0;
    let mut summands = Vec::with_capacity(leaves.len());
    for (b, module, head) in leaves {
        let rows: Vec<usize> = (off..off + b.cols()).collect();
        off += b.cols();
        summands.push(Summand { projection: inv.select_rows(&rows), inclusion: b, module, head });
    }
    Ok(SummandDecomposition { seed, summands })
}

/// Whether a random element of some homogeneous piece of `Hom(M, N)` is invertible.
pub fn is_isomorphic(m: &ModuleRep, n: &ModuleRep, seed: u64) -> Result<bool> {
    if m.dim() != n.dim() {
        return Ok(false);
    }
    if m.dim() == 0 {
        return Ok(true);
    }
    let hs = hom_space(m, n, Degree::All)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut degrees = hs.degrees.clone();
    degrees.dedup();
    for s in degrees {
        let piece = hs.of_degree(s);
        for _ in 0..8 {
            if let Some(phi) = random_combination(&piece.basis, &mut rng) {
                if phi.rank() == m.dim() {
                    return Ok(true);
                }
            }
        }
    }
    Ok(false)
}
