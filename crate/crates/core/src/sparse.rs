//! Sparse complex operators in compressed-row (CSR) form.
//!
//! Every operator in this crate — ladder matrices, projectors, embeddings —
//! is a [`SparseOp`]: a complex matrix over an explicitly indexed basis,
//! stored row-compressed with strictly increasing column indices per row and
//! no explicit zeros.  Ladder operators have O(dim) nonzeros in dim² entries,
//! so dense storage is rejected above a handful of modes; CSR keeps the
//! 8–10 mode constructions comfortable.
//!
//! The module also provides the generic operator algebra used by the
//! verification suites ([`commutator`], [`anticommutator`]) and export in
//! the Matrix Market `coordinate complex general` format.

use ndarray::Array2;
use num_complex::Complex64;

use crate::error::{Error, Result};

/// A sparse complex matrix in CSR form.
///
/// Invariants: `row_ptr.len() == nrows + 1`, column indices are strictly
/// increasing within each row, and no stored value is exactly zero.
#[derive(Debug, Clone, PartialEq)]
pub struct SparseOp {
    nrows: usize,
    ncols: usize,
    row_ptr: Vec<usize>,
    col_idx: Vec<usize>,
    vals: Vec<Complex64>,
}

impl SparseOp {
    /// The `nrows` × `ncols` zero matrix.
    pub fn zeros(nrows: usize, ncols: usize) -> Self {
        SparseOp {
            nrows,
            ncols,
            row_ptr: vec![0; nrows + 1],
            col_idx: Vec::new(),
            vals: Vec::new(),
        }
    }

    /// The n × n identity.
    pub fn identity(n: usize) -> Self {
        SparseOp::from_diag(&vec![Complex64::new(1.0, 0.0); n])
    }

    /// Diagonal matrix from the given entries.
    pub fn from_diag(diag: &[Complex64]) -> Self {
        let triplets = diag
            .iter()
            .enumerate()
            .map(|(i, &v)| (i, i, v))
            .collect::<Vec<_>>();
        SparseOp::from_triplets(diag.len(), diag.len(), triplets)
    }

    /// Builds a matrix from (row, col, value) triplets.
    ///
    /// Duplicate positions are summed; entries that are (or sum to) exactly
    /// zero are dropped.  Panics if an index is out of range — that is a
    /// programming error, not an input condition.
    pub fn from_triplets(
        nrows: usize,
        ncols: usize,
        mut triplets: Vec<(usize, usize, Complex64)>,
    ) -> Self {
        for &(r, c, _) in &triplets {
            assert!(r < nrows && c < ncols, "triplet ({r},{c}) out of bounds");
        }
        triplets.sort_by_key(|&(r, c, _)| (r, c));

        let mut merged: Vec<(usize, usize, Complex64)> = Vec::with_capacity(triplets.len());
        for (r, c, v) in triplets {
            match merged.last_mut() {
                Some((lr, lc, lv)) if *lr == r && *lc == c => *lv += v,
                _ => merged.push((r, c, v)),
            }
        }
        let mut row_ptr = vec![0usize; nrows + 1];
        for &(r, _, _) in &merged {
            row_ptr[r + 1] += 1;
        }
        for r in 0..nrows {
            row_ptr[r + 1] += row_ptr[r];
        }
        let mut op = SparseOp {
            nrows,
            ncols,
            row_ptr,
            col_idx: merged.iter().map(|&(_, c, _)| c).collect(),
            vals: merged.iter().map(|&(_, _, v)| v).collect(),
        };
        op.drop_zeros();
        op
    }

    /// Removes stored entries that are exactly zero.
    fn drop_zeros(&mut self) {
        let zero = Complex64::new(0.0, 0.0);
        if !self.vals.iter().any(|v| *v == zero) {
            return;
        }
        let mut new_ptr = vec![0usize; self.nrows + 1];
        let mut new_col = Vec::with_capacity(self.col_idx.len());
        let mut new_val = Vec::with_capacity(self.vals.len());
        for r in 0..self.nrows {
            for k in self.row_ptr[r]..self.row_ptr[r + 1] {
                if self.vals[k] != zero {
                    new_col.push(self.col_idx[k]);
                    new_val.push(self.vals[k]);
                }
            }
            new_ptr[r + 1] = new_col.len();
        }
        self.row_ptr = new_ptr;
        self.col_idx = new_col;
        self.vals = new_val;
    }

    pub fn nrows(&self) -> usize {
        self.nrows
    }

    pub fn ncols(&self) -> usize {
        self.ncols
    }

    pub fn shape(&self) -> (usize, usize) {
        (self.nrows, self.ncols)
    }

    /// Number of stored nonzero entries.
    pub fn nnz(&self) -> usize {
        self.vals.len()
    }

    /// Entry at (r, c); zero when not stored.
    pub fn get(&self, r: usize, c: usize) -> Complex64 {
        assert!(r < self.nrows && c < self.ncols, "index out of bounds");
        let lo = self.row_ptr[r];
        let hi = self.row_ptr[r + 1];
        match self.col_idx[lo..hi].binary_search(&c) {
            Ok(k) => self.vals[lo + k],
            Err(_) => Complex64::new(0.0, 0.0),
        }
    }

    /// Iterates stored entries as (row, col, value) in row-major order.
    pub fn iter(&self) -> impl Iterator<Item = (usize, usize, Complex64)> + '_ {
        (0..self.nrows).flat_map(move |r| {
            (self.row_ptr[r]..self.row_ptr[r + 1])
                .map(move |k| (r, self.col_idx[k], self.vals[k]))
        })
    }

    fn check_same_shape(&self, other: &SparseOp, what: &str) -> Result<()> {
        if self.shape() != other.shape() {
            return Err(Error::ShapeMismatch(format!(
                "{what}: {:?} vs {:?}",
                self.shape(),
                other.shape()
            )));
        }
        Ok(())
    }

    /// Elementwise sum.
    pub fn add(&self, other: &SparseOp) -> Result<SparseOp> {
        self.check_same_shape(other, "add")?;
        Ok(self.merge(other, |a, b| a + b))
    }

    /// Elementwise difference.
    pub fn sub(&self, other: &SparseOp) -> Result<SparseOp> {
        self.check_same_shape(other, "sub")?;
        Ok(self.merge(other, |a, b| a - b))
    }

    /// Merges two equal-shape matrices entrywise with `f(a, b)` where either
    /// side may be absent (zero).  `f` must satisfy f(0,0) = 0.
    fn merge(&self, other: &SparseOp, f: impl Fn(Complex64, Complex64) -> Complex64) -> SparseOp {
        let zero = Complex64::new(0.0, 0.0);
        let mut row_ptr = vec![0usize; self.nrows + 1];
        let mut col_idx = Vec::with_capacity(self.nnz() + other.nnz());
        let mut vals = Vec::with_capacity(self.nnz() + other.nnz());
        for r in 0..self.nrows {
            let (mut i, ie) = (self.row_ptr[r], self.row_ptr[r + 1]);
            let (mut j, je) = (other.row_ptr[r], other.row_ptr[r + 1]);
            while i < ie || j < je {
                let (c, v) = if j >= je || (i < ie && self.col_idx[i] < other.col_idx[j]) {
                    let e = (self.col_idx[i], f(self.vals[i], zero));
                    i += 1;
                    e
                } else if i >= ie || other.col_idx[j] < self.col_idx[i] {
                    let e = (other.col_idx[j], f(zero, other.vals[j]));
                    j += 1;
                    e
                } else {
                    let e = (self.col_idx[i], f(self.vals[i], other.vals[j]));
                    i += 1;
                    j += 1;
                    e
                };
                if v != zero {
                    col_idx.push(c);
                    vals.push(v);
                }
            }
            row_ptr[r + 1] = col_idx.len();
        }
        SparseOp {
            nrows: self.nrows,
            ncols: self.ncols,
            row_ptr,
            col_idx,
            vals,
        }
    }

    /// Multiplies every entry by `s`.
    pub fn scale(&self, s: Complex64) -> SparseOp {
        let mut out = self.clone();
        for v in &mut out.vals {
            *v *= s;
        }
        out.drop_zeros();
        out
    }

    /// Matrix product `self · other`.
    pub fn matmul(&self, other: &SparseOp) -> Result<SparseOp> {
        if self.ncols != other.nrows {
            return Err(Error::ShapeMismatch(format!(
                "matmul: {:?} · {:?}",
                self.shape(),
                other.shape()
            )));
        }
        let zero = Complex64::new(0.0, 0.0);
        let mut acc = vec![zero; other.ncols];
        let mut touched: Vec<usize> = Vec::new();
        let mut row_ptr = vec![0usize; self.nrows + 1];
        let mut col_idx = Vec::new();
        let mut vals = Vec::new();
        for r in 0..self.nrows {
            for k in self.row_ptr[r]..self.row_ptr[r + 1] {
                let a = self.vals[k];
                let m = self.col_idx[k];
                for l in other.row_ptr[m]..other.row_ptr[m + 1] {
                    let c = other.col_idx[l];
                    if acc[c] == zero {
                        touched.push(c);
                    }
                    acc[c] += a * other.vals[l];
                }
            }
            touched.sort_unstable();
            for &c in &touched {
                if acc[c] != zero {
                    col_idx.push(c);
                    vals.push(acc[c]);
                }
                acc[c] = zero;
            }
            touched.clear();
            row_ptr[r + 1] = col_idx.len();
        }
        Ok(SparseOp {
            nrows: self.nrows,
            ncols: other.ncols,
            row_ptr,
            col_idx,
            vals,
        })
    }

    /// Conjugate transpose.
    pub fn adjoint(&self) -> SparseOp {
        self.transpose_map(|v| v.conj())
    }

    /// Plain transpose.
    pub fn transpose(&self) -> SparseOp {
        self.transpose_map(|v| v)
    }

    fn transpose_map(&self, f: impl Fn(Complex64) -> Complex64) -> SparseOp {
        // Counting sort by column gives the transposed CSR directly.
        let mut row_ptr = vec![0usize; self.ncols + 1];
        for &c in &self.col_idx {
            row_ptr[c + 1] += 1;
        }
        for c in 0..self.ncols {
            row_ptr[c + 1] += row_ptr[c];
        }
        let mut next = row_ptr.clone();
        let mut col_idx = vec![0usize; self.nnz()];
        let mut vals = vec![Complex64::new(0.0, 0.0); self.nnz()];
        for (r, c, v) in self.iter() {
            let slot = next[c];
            col_idx[slot] = r;
            vals[slot] = f(v);
            next[c] += 1;
        }
        SparseOp {
            nrows: self.ncols,
            ncols: self.nrows,
            row_ptr,
            col_idx,
            vals,
        }
    }

    /// Kronecker product `self ⊗ other` (left factor most significant).
    pub fn kron(&self, other: &SparseOp) -> SparseOp {
        let nrows = self.nrows * other.nrows;
        let ncols = self.ncols * other.ncols;
        let mut row_ptr = vec![0usize; nrows + 1];
        let mut col_idx = Vec::with_capacity(self.nnz() * other.nnz());
        let mut vals = Vec::with_capacity(self.nnz() * other.nnz());
        for ra in 0..self.nrows {
            for rb in 0..other.nrows {
                for i in self.row_ptr[ra]..self.row_ptr[ra + 1] {
                    for j in other.row_ptr[rb]..other.row_ptr[rb + 1] {
                        col_idx.push(self.col_idx[i] * other.ncols + other.col_idx[j]);
                        vals.push(self.vals[i] * other.vals[j]);
                    }
                }
                row_ptr[ra * other.nrows + rb + 1] = col_idx.len();
            }
        }
        SparseOp {
            nrows,
            ncols,
            row_ptr,
            col_idx,
            vals,
        }
    }

    /// Matrix-vector product.
    pub fn apply(&self, x: &[Complex64]) -> Result<Vec<Complex64>> {
        if x.len() != self.ncols {
            return Err(Error::ShapeMismatch(format!(
                "apply: matrix {:?}, vector length {}",
                self.shape(),
                x.len()
            )));
        }
        let mut y = vec![Complex64::new(0.0, 0.0); self.nrows];
        for (r, c, v) in self.iter() {
            y[r] += v * x[c];
        }
        Ok(y)
    }

    /// Trace of a square matrix.
    pub fn trace(&self) -> Complex64 {
        assert_eq!(self.nrows, self.ncols, "trace of non-square matrix");
        (0..self.nrows).map(|r| self.get(r, r)).sum()
    }

    /// Largest entry magnitude (zero for the empty matrix).
    pub fn max_abs(&self) -> f64 {
        self.vals.iter().map(|v| v.norm()).fold(0.0, f64::max)
    }

    /// Largest entrywise magnitude of `self − other`, by a merged row walk.
    pub fn max_abs_diff(&self, other: &SparseOp) -> Result<f64> {
        self.check_same_shape(other, "max_abs_diff")?;
        let mut worst = 0.0f64;
        for r in 0..self.nrows {
            let (mut i, ie) = (self.row_ptr[r], self.row_ptr[r + 1]);
            let (mut j, je) = (other.row_ptr[r], other.row_ptr[r + 1]);
            while i < ie || j < je {
                let d = if j >= je || (i < ie && self.col_idx[i] < other.col_idx[j]) {
                    let d = self.vals[i].norm();
                    i += 1;
                    d
                } else if i >= ie || other.col_idx[j] < self.col_idx[i] {
                    let d = other.vals[j].norm();
                    j += 1;
                    d
                } else {
                    let d = (self.vals[i] - other.vals[j]).norm();
                    i += 1;
                    j += 1;
                    d
                };
                worst = worst.max(d);
            }
        }
        Ok(worst)
    }

    /// Submatrix with the given row and column index lists, in list order.
    pub fn restrict(&self, rows: &[usize], cols: &[usize]) -> SparseOp {
        let mut col_map = vec![usize::MAX; self.ncols];
        for (new, &old) in cols.iter().enumerate() {
            assert!(old < self.ncols, "restrict column {old} out of bounds");
            col_map[old] = new;
        }
        let mut triplets = Vec::new();
        for (new_r, &old_r) in rows.iter().enumerate() {
            assert!(old_r < self.nrows, "restrict row {old_r} out of bounds");
            for k in self.row_ptr[old_r]..self.row_ptr[old_r + 1] {
                let new_c = col_map[self.col_idx[k]];
                if new_c != usize::MAX {
                    triplets.push((new_r, new_c, self.vals[k]));
                }
            }
        }
        SparseOp::from_triplets(rows.len(), cols.len(), triplets)
    }

    /// Dense copy.
    pub fn to_dense(&self) -> Array2<Complex64> {
        let mut out = Array2::zeros((self.nrows, self.ncols));
        for (r, c, v) in self.iter() {
            out[(r, c)] = v;
        }
        out
    }

    /// Sparse copy of a dense matrix, keeping exact nonzeros.
    pub fn from_dense(mat: &Array2<Complex64>) -> SparseOp {
        let zero = Complex64::new(0.0, 0.0);
        let triplets = mat
            .indexed_iter()
            .filter(|(_, v)| **v != zero)
            .map(|((r, c), &v)| (r, c, v))
            .collect();
        SparseOp::from_triplets(mat.nrows(), mat.ncols(), triplets)
    }

    /// Writes the matrix in Matrix Market `coordinate complex general`
    /// format (1-based indices), preceded by the given comment lines.
    pub fn write_matrix_market<W: std::io::Write>(
        &self,
        w: &mut W,
        comments: &[&str],
    ) -> std::io::Result<()> {
        writeln!(w, "%%MatrixMarket matrix coordinate complex general")?;
        for line in comments {
            writeln!(w, "% {line}")?;
        }
        writeln!(w, "{} {} {}", self.nrows, self.ncols, self.nnz())?;
        for (r, c, v) in self.iter() {
            writeln!(w, "{} {} {:e} {:e}", r + 1, c + 1, v.re, v.im)?;
        }
        Ok(())
    }
}

/// The commutator AB − BA.
pub fn commutator(a: &SparseOp, b: &SparseOp) -> Result<SparseOp> {
    a.matmul(b)?.sub(&b.matmul(a)?)
}

/// The anticommutator AB + BA.
pub fn anticommutator(a: &SparseOp, b: &SparseOp) -> Result<SparseOp> {
    a.matmul(b)?.add(&b.matmul(a)?)
}
