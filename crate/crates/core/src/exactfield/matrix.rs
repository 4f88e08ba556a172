//! Dense matrices over a [`FieldCtx`] and exact Gaussian elimination.

use std::fmt;

use super::field::{FieldCtx, FieldElement};
use crate::error::{Error, Result};

/// Row-major dense matrix. Entries are stored as raw field codes.
#[derive(Clone, PartialEq, Eq)]
pub struct Matrix {
    ctx: FieldCtx,
    rows: usize,
    cols: usize,
    data: Vec<u16>,
}

/// Result of a linear solve `A X = B`.
#[derive(Clone, Debug)]
pub struct Solution {
    /// One particular solution.
    pub particular: Matrix,
    /// Columns spanning `ker A`.
    pub kernel: Matrix,
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Matrix {}x{} over {:?}", self.rows, self.cols, self.ctx)?;
        for i in 0..self.rows {
            let row: Vec<String> = (0..self.cols).map(|j| self.get(i, j).to_string()).collect();
            writeln!(f, "  [{}]", row.join(" "))?;
        }
        Ok(())
    }
}

impl Matrix {
    pub fn zeros(ctx: FieldCtx, rows: usize, cols: usize) -> Self {
        Matrix { ctx, rows, cols, data: vec![0; rows * cols] }
    }

    pub fn identity(ctx: FieldCtx, n: usize) -> Self {
        let mut m = Self::zeros(ctx, n, n);
        for i in 0..n {
            m.data[i * n + i] = 1;
        }
        m
    }

    pub fn from_fn(
        ctx: FieldCtx,
        rows: usize,
        cols: usize,
        mut f: impl FnMut(usize, usize) -> FieldElement,
    ) -> Self {
        let mut m = Self::zeros(ctx, rows, cols);
        for i in 0..rows {
            for j in 0..cols {
                m.set(i, j, f(i, j));
            }
        }
        m
    }

    pub fn from_ints(ctx: FieldCtx, rows: usize, cols: usize, vals: &[i64]) -> Self {
        assert_eq!(vals.len(), rows * cols, "entry count");
        Self::from_fn(ctx, rows, cols, |i, j| ctx.from_int(vals[i * cols + j]))
    }

    /// Diagonal matrix with the given entries.
    pub fn diagonal(ctx: FieldCtx, diag: &[FieldElement]) -> Self {
        let n = diag.len();
        let mut m = Self::zeros(ctx, n, n);
        for (i, d) in diag.iter().enumerate() {
            m.set(i, i, *d);
        }
        m
    }

    /// Column vector.
    pub fn column_vector(ctx: FieldCtx, entries: &[FieldElement]) -> Self {
        let mut m = Self::zeros(ctx, entries.len(), 1);
        for (i, e) in entries.iter().enumerate() {
            m.set(i, 0, *e);
        }
        m
    }

    pub fn ctx(&self) -> FieldCtx {
        self.ctx
    }
    pub fn rows(&self) -> usize {
        self.rows
    }
    pub fn cols(&self) -> usize {
        self.cols
    }
    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> FieldElement {
        self.ctx.raw(self.data[i * self.cols + j])
    }

    pub fn set(&mut self, i: usize, j: usize, v: FieldElement) {
        assert!(v.ctx() == self.ctx, "field mismatch");
        self.data[i * self.cols + j] = v.raw();
    }

    #[inline]
    pub(crate) fn raw_set(&mut self, i: usize, j: usize, v: u16) {
        self.data[i * self.cols + j] = v;
    }
    pub(crate) fn raw_row(&self, i: usize) -> &[u16] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }
    pub(crate) fn raw_data(&self) -> &[u16] {
        &self.data
    }
    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&v| v == 0)
    }

    /// Number of nonzero entries.
    pub fn nnz(&self) -> usize {
        self.data.iter().filter(|&&v| v != 0).count()
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.ctx, self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.data[j * self.rows + i] = self.data[i * self.cols + j];
            }
        }
        t
    }

    fn check_same(&self, o: &Self) -> Result<()> {
        if self.ctx != o.ctx {
            return Err(Error::FieldMismatch);
        }
        if self.rows != o.rows || self.cols != o.cols {
            return Err(Error::Shape(format!(
                "{}x{} vs {}x{}",
                self.rows, self.cols, o.rows, o.cols
            )));
        }
        Ok(())
    }

    pub fn try_add(&self, o: &Self) -> Result<Self> {
        self.check_same(o)?;
        let ctx = self.ctx;
        let data = self.data.iter().zip(&o.data).map(|(&a, &b)| ctx.add_raw(a, b)).collect();
        Ok(self.with_data(data))
    }

    pub fn try_sub(&self, o: &Self) -> Result<Self> {
        self.check_same(o)?;
        let ctx = self.ctx;
        let data = self.data.iter().zip(&o.data).map(|(&a, &b)| ctx.sub_raw(a, b)).collect();
        Ok(self.with_data(data))
    }

    fn with_data(&self, data: Vec<u16>) -> Matrix {
        Matrix { ctx: self.ctx, rows: self.rows, cols: self.cols, data }
    }

    pub fn try_mul(&self, o: &Self) -> Result<Self> {
        if self.ctx != o.ctx {
            return Err(Error::FieldMismatch);
        }
        if self.cols != o.rows {
            return Err(Error::Shape(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, o.rows, o.cols
            )));
        }
        let ctx = self.ctx;
        let n = o.cols;
        let mut out = vec![0u16; self.rows * n];
        for i in 0..self.rows {
            let orow = &mut out[i * n..(i + 1) * n];
            for k in 0..self.cols {
                let a = self.data[i * self.cols + k];
                if a == 0 {
                    continue;
                }
                let mrow = ctx.mul_row(a);
                let brow = &o.data[k * n..(k + 1) * n];
                for (dst, &b) in orow.iter_mut().zip(brow) {
                    if b != 0 {
                        *dst = ctx.add_raw(*dst, mrow[b as usize]);
                    }
                }
            }
        }
        Ok(Matrix { ctx, rows: self.rows, cols: n, data: out })
    }

    pub fn add(&self, o: &Self) -> Self {
        self.try_add(o).expect("matrix add")
    }
    pub fn sub(&self, o: &Self) -> Self {
        self.try_sub(o).expect("matrix sub")
    }
    pub fn mul(&self, o: &Self) -> Self {
        self.try_mul(o).expect("matrix mul")
    }

    pub fn scale(&self, c: FieldElement) -> Self {
        assert!(c.ctx() == self.ctx, "field mismatch");
        let row = self.ctx.mul_row(c.raw());
        let data = self.data.iter().map(|&a| row[a as usize]).collect();
        self.with_data(data)
    }

    pub fn neg(&self) -> Self {
        let ctx = self.ctx;
        let data = self.data.iter().map(|&a| ctx.neg_raw(a)).collect();
        self.with_data(data)
    }

    /// `self += c * o`.
    pub fn add_scaled_assign(&mut self, c: FieldElement, o: &Self) {
        self.check_same(o).expect("shape");
        let ctx = self.ctx;
        let row = ctx.mul_row(c.raw());
        for (d, &b) in self.data.iter_mut().zip(&o.data) {
            if b != 0 {
                *d = ctx.add_raw(*d, row[b as usize]);
            }
        }
    }

    pub fn pow(&self, mut e: u64) -> Self {
        assert!(self.is_square());
        let mut base = self.clone();
        let mut acc = Self::identity(self.ctx, self.rows);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }

    /// `self * o - o * self`.
    pub fn commutator(&self, o: &Self) -> Self {
        self.mul(o).sub(&o.mul(self))
    }

    pub fn trace(&self) -> FieldElement {
        let mut t = self.ctx.zero();
        for i in 0..self.rows.min(self.cols) {
            t = t + self.get(i, i);
        }
        t
    }

    /// Kronecker product; row index `i * b.rows + k`, column `j * b.cols + l`.
    pub fn kron(&self, b: &Self) -> Self {
        assert!(self.ctx == b.ctx, "field mismatch");
        let ctx = self.ctx;
        let (r, c) = (self.rows * b.rows, self.cols * b.cols);
        let mut out = vec![0u16; r * c];
        for i in 0..self.rows {
            for j in 0..self.cols {
                let a = self.data[i * self.cols + j];
                if a == 0 {
                    continue;
                }
                let mrow = ctx.mul_row(a);
                for k in 0..b.rows {
                    let dst = (i * b.rows + k) * c + j * b.cols;
                    let src = &b.data[k * b.cols..(k + 1) * b.cols];
                    for (l, &v) in src.iter().enumerate() {
                        if v != 0 {
                            out[dst + l] = mrow[v as usize];
                        }
                    }
                }
            }
        }
        Matrix { ctx, rows: r, cols: c, data: out }
    }

    pub fn column(&self, j: usize) -> Matrix {
        self.select_columns(&[j])
    }

    pub fn select_columns(&self, idx: &[usize]) -> Matrix {
        let mut m = Self::zeros(self.ctx, self.rows, idx.len());
        for i in 0..self.rows {
            for (jj, &j) in idx.iter().enumerate() {
                m.data[i * idx.len() + jj] = self.data[i * self.cols + j];
            }
        }
        m
    }

    pub fn select_rows(&self, idx: &[usize]) -> Matrix {
        let mut data = Vec::with_capacity(idx.len() * self.cols);
        for &i in idx {
            data.extend_from_slice(self.raw_row(i));
        }
        Matrix { ctx: self.ctx, rows: idx.len(), cols: self.cols, data }
    }

    pub fn submatrix(&self, rows: &[usize], cols: &[usize]) -> Matrix {
        self.select_rows(rows).select_columns(cols)
    }

    pub fn hstack(parts: &[&Matrix]) -> Result<Matrix> {
        let first = parts.first().ok_or_else(|| Error::Shape("empty hstack".into()))?;
        let rows = first.rows;
        let cols: usize = parts.iter().map(|m| m.cols).sum();
        let mut out = Self::zeros(first.ctx, rows, cols);
        let mut off = 0;
        for m in parts {
            if m.rows != rows || m.ctx != first.ctx {
                return Err(Error::Shape("hstack row mismatch".into()));
            }
            for i in 0..rows {
                out.data[i * cols + off..i * cols + off + m.cols].copy_from_slice(m.raw_row(i));
            }
            off += m.cols;
        }
        Ok(out)
    }

    pub fn vstack(parts: &[&Matrix]) -> Result<Matrix> {
        let first = parts.first().ok_or_else(|| Error::Shape("empty vstack".into()))?;
        let cols = first.cols;
        let mut data = Vec::new();
        let mut rows = 0;
        for m in parts {
            if m.cols != cols || m.ctx != first.ctx {
                return Err(Error::Shape("vstack column mismatch".into()));
            }
            data.extend_from_slice(&m.data);
            rows += m.rows;
        }
        Ok(Matrix { ctx: first.ctx, rows, cols, data })
    }

    /// Place `block` with its top-left corner at `(r0, c0)`.
    pub fn set_block(&mut self, r0: usize, c0: usize, block: &Matrix) {
        for i in 0..block.rows {
            let dst = (r0 + i) * self.cols + c0;
            self.data[dst..dst + block.cols].copy_from_slice(block.raw_row(i));
        }
    }

    /// Flatten row-major into a column vector.
    pub fn vectorize(&self) -> Matrix {
        Matrix { ctx: self.ctx, rows: self.rows * self.cols, cols: 1, data: self.data.clone() }
    }

    /// Inverse of [`Matrix::vectorize`].
    pub fn unvectorize(&self, rows: usize, cols: usize) -> Matrix {
        assert_eq!(self.rows * self.cols, rows * cols);
        Matrix { ctx: self.ctx, rows, cols, data: self.data.clone() }
    }

    /// Reduced row echelon form in place; returns pivot columns.
    pub(crate) fn rref_in_place(&mut self) -> Vec<usize> {
        let ctx = self.ctx;
        let (rows, cols) = (self.rows, self.cols);
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..cols {
            if r == rows {
                break;
            }
            // first nonzero pivot, no heuristics
            let Some(pr) = (r..rows).find(|&i| self.data[i * cols + c] != 0) else {
                continue;
            };
            if pr != r {
                for j in 0..cols {
                    self.data.swap(pr * cols + j, r * cols + j);
                }
            }
            let inv = ctx.inv_raw(self.data[r * cols + c]);
            let irow = ctx.mul_row(inv);
            for j in c..cols {
                let v = self.data[r * cols + j];
                self.data[r * cols + j] = irow[v as usize];
            }
            let (before, rest) = self.data.split_at_mut(r * cols);
            let (prow, after) = rest.split_at_mut(cols);
            let eliminate = |row: &mut [u16]| {
                let f = row[c];
                if f == 0 {
                    return;
                }
                let m = ctx.mul_row(ctx.neg_raw(f));
                for j in c..cols {
                    let v = prow[j];
                    if v != 0 {
                        row[j] = ctx.add_raw(row[j], m[v as usize]);
                    }
                }
            };
            for row in before.chunks_mut(cols) {
                eliminate(row);
            }
            for row in after.chunks_mut(cols) {
                eliminate(row);
            }
            pivots.push(c);
            r += 1;
        }
        pivots
    }

    /// Reduced row echelon form and pivot columns.
    pub fn rref(&self) -> (Matrix, Vec<usize>) {
        let mut m = self.clone();
        let piv = m.rref_in_place();
        (m, piv)
    }

    pub fn rank(&self) -> usize {
        if self.rows <= self.cols {
            self.rref().1.len()
        } else {
            self.transpose().rref().1.len()
        }
    }

    /// Columns spanning the right kernel, in the standard free-variable basis.
    pub fn kernel(&self) -> Matrix {
        let (r, piv) = self.rref();
        let n = self.cols;
        let free: Vec<usize> = (0..n).filter(|c| !piv.contains(c)).collect();
        let mut k = Self::zeros(self.ctx, n, free.len());
        for (fi, &fcol) in free.iter().enumerate() {
            k.data[fcol * free.len() + fi] = 1;
            for (pi, &pcol) in piv.iter().enumerate() {
                let v = r.data[pi * n + fcol];
                if v != 0 {
                    k.data[pcol * free.len() + fi] = self.ctx.neg_raw(v);
                }
            }
        }
        k
    }

    /// A column basis for the column space, taken from the columns of `self`.
    pub fn column_space(&self) -> Matrix {
        let (_, piv) = self.rref();
        self.select_columns(&piv)
    }

    /// Solve `self * X = b`. `None` when inconsistent.
    pub fn solve(&self, b: &Matrix) -> Result<Option<Solution>> {
        Ok(self.particular(b)?.map(|x| Solution { particular: x, kernel: self.kernel() }))
    }

    fn particular(&self, b: &Matrix) -> Result<Option<Matrix>> {
        if self.ctx != b.ctx {
            return Err(Error::FieldMismatch);
        }
        if b.rows != self.rows {
            return Err(Error::Shape(format!("rhs has {} rows, expected {}", b.rows, self.rows)));
        }
        let n = self.cols;
        let aug = Matrix::hstack(&[self, b])?;
        let (r, piv) = aug.rref();
        if piv.iter().any(|&c| c >= n) {
            return Ok(None);
        }
        let mut x = Self::zeros(self.ctx, n, b.cols);
        for (pi, &pc) in piv.iter().enumerate() {
            for j in 0..b.cols {
                x.data[pc * b.cols + j] = r.data[pi * (n + b.cols) + n + j];
            }
        }
        Ok(Some(x))
    }

    pub fn inverse(&self) -> Result<Matrix> {
        if !self.is_square() {
            return Err(Error::Shape("inverse of non-square matrix".into()));
        }
        let n = self.rows;
        let aug = Matrix::hstack(&[self, &Self::identity(self.ctx, n)])?;
        let (r, piv) = aug.rref();
        if piv.len() < n || piv[n - 1] != n - 1 {
            return Err(Error::DivisionByZero);
        }
        Ok(r.select_columns(&(n..2 * n).collect::<Vec<_>>()))
    }

    /// Coordinates of the columns of `targets` in the column basis `self`
    /// (which must have independent columns). `None` if some column is outside the span.
    pub fn coordinates(&self, targets: &Matrix) -> Option<Matrix> {
        self.particular(targets).ok().flatten()
    }

    /// If `self = c * other` for a nonzero scalar `c`, return `c`.
    pub fn proportionality(&self, other: &Matrix) -> Option<FieldElement> {
        if self.rows != other.rows || self.cols != other.cols {
            return None;
        }
        let idx = other.data.iter().position(|&v| v != 0)?;
        let c = self.ctx.raw(self.data[idx]) / self.ctx.raw(other.data[idx]);
        if c.is_zero() {
            return None;
        }
        (other.scale(c) == *self).then_some(c)
    }
}

/// Incrementally maintained echelon basis of a subspace of `F^n`.
#[derive(Clone, Debug)]
pub struct SpanBuilder {
    ctx: FieldCtx,
    n: usize,
    /// reduced rows with pivot position
    rows: Vec<(usize, Vec<u16>)>,
    /// original vectors that were accepted
    accepted: Vec<Vec<u16>>,
}

impl SpanBuilder {
    pub fn new(ctx: FieldCtx, n: usize) -> Self {
        SpanBuilder { ctx, n, rows: Vec::new(), accepted: Vec::new() }
    }
    pub fn dim(&self) -> usize {
        self.rows.len()
    }
    pub fn ambient(&self) -> usize {
        self.n
    }

    fn reduce(&self, v: &mut [u16]) {
        let ctx = self.ctx;
        for (p, row) in &self.rows {
            let f = v[*p];
            if f != 0 {
                let m = ctx.mul_row(ctx.neg_raw(f));
                for j in *p..self.n {
                    let r = row[j];
                    if r != 0 {
                        v[j] = ctx.add_raw(v[j], m[r as usize]);
                    }
                }
            }
        }
    }

    pub(crate) fn insert_raw(&mut self, v: &[u16]) -> bool {
        let mut w = v.to_vec();
        self.reduce(&mut w);
        let Some(p) = w.iter().position(|&x| x != 0) else {
            return false;
        };
        let ctx = self.ctx;
        let inv = ctx.mul_row(ctx.inv_raw(w[p]));
        for x in w.iter_mut() {
            *x = inv[*x as usize];
        }
        self.rows.push((p, w));
        self.accepted.push(v.to_vec());
        true
    }

    /// Insert a vector given as an `n x 1` (or any `n`-entry) matrix; true if it enlarged the span.
    pub fn insert(&mut self, v: &Matrix) -> bool {
        assert_eq!(v.rows() * v.cols(), self.n);
        self.insert_raw(v.raw_data())
    }

    pub fn contains(&self, v: &Matrix) -> bool {
        let mut w = v.raw_data().to_vec();
        self.reduce(&mut w);
        w.iter().all(|&x| x == 0)
    }

    /// Accepted vectors as columns of an `n x dim` matrix.
    pub fn basis(&self) -> Matrix {
        let d = self.accepted.len();
        let mut m = Matrix::zeros(self.ctx, self.n, d);
        for (j, v) in self.accepted.iter().enumerate() {
            for (i, x) in v.iter().enumerate().take(self.n) {
                m.raw_set(i, j, *x);
            }
        }
        m
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};

    fn f9() -> FieldCtx {
        FieldCtx::new(3, 2).unwrap()
    }

    fn random(ctx: FieldCtx, r: usize, c: usize, rng: &mut impl Rng) -> Matrix {
        let q = ctx.size() as u16;
        Matrix { ctx, rows: r, cols: c, data: (0..r * c).map(|_| rng.gen_range(0..q)).collect() }
    }

    #[test]
    fn kernel_of_zero_and_identity() {
        let f = f9();
        assert_eq!(Matrix::zeros(f, 5, 5).kernel().cols(), 5);
        assert_eq!(Matrix::identity(f, 5).kernel().cols(), 0);
    }

    #[test]
    fn kron_identities_and_shapes() {
        let f = f9();
        assert_eq!(Matrix::identity(f, 2).kron(&Matrix::identity(f, 3)), Matrix::identity(f, 6));
        let a = Matrix::zeros(f, 2, 3).kron(&Matrix::zeros(f, 4, 5));
        assert_eq!((a.rows(), a.cols()), (8, 15));
    }

    #[test]
    fn solve_reports_inconsistency() {
        let f = FieldCtx::new(5, 1).unwrap();
        let a = Matrix::from_ints(f, 2, 2, &[1, 1, 2, 2]);
        let b = Matrix::from_ints(f, 2, 1, &[1, 3]);
        assert!(a.solve(&b).unwrap().is_none());
        let b = Matrix::from_ints(f, 2, 1, &[1, 2]);
        let s = a.solve(&b).unwrap().unwrap();
        assert_eq!(a.mul(&s.particular), b);
        assert_eq!(s.kernel.cols(), 1);
    }

    #[test]
    fn inverse_round_trip() {
        let f = f9();
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(3);
        let mut found = 0;
        while found < 5 {
            let a = random(f, 6, 6, &mut rng);
            if let Ok(inv) = a.inverse() {
                assert_eq!(a.mul(&inv), Matrix::identity(f, 6));
                found += 1;
            } else {
                assert!(a.rank() < 6);
            }
        }
    }

    #[test]
    fn proportionality_detects_scalar() {
        let f = f9();
        let a = Matrix::from_ints(f, 2, 2, &[1, 2, 0, 1]);
        let c = f.generator().unwrap();
        assert_eq!(a.scale(c).proportionality(&a), Some(c));
        assert_eq!(Matrix::identity(f, 2).proportionality(&a), None);
    }

    #[test]
    fn span_builder_tracks_dimension() {
        let f = f9();
        let mut s = SpanBuilder::new(f, 3);
        assert!(s.insert(&Matrix::from_ints(f, 3, 1, &[1, 1, 0])));
        assert!(!s.insert(&Matrix::from_ints(f, 3, 1, &[2, 2, 0])));
        assert!(s.insert(&Matrix::from_ints(f, 3, 1, &[0, 1, 1])));
        assert!(s.contains(&Matrix::from_ints(f, 3, 1, &[1, 2, 1])));
        assert_eq!(s.dim(), 2);
    }
}
