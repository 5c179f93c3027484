//! Dense exact matrices with Gaussian elimination over a `FieldSpec`.
//!
//! Sizes here stay desk-scale (chain groups of small complexes, graded pieces
//! of small Stanley-Reisner rings), so dense row reduction beats any sparse
//! bookkeeping. Pivoting is "first nonzero": arithmetic is exact, so there
//! is no numerical pivoting concern and results are reproducible.

use crate::error::{Error, Result};
use crate::field::{FieldSpec, Scalar};

/// Row-major dense matrix over an exact field.
#[derive(Debug, Clone, PartialEq)]
pub struct ExactMatrix {
    field: FieldSpec,
    rows: usize,
    cols: usize,
    data: Vec<Scalar>,
}

impl ExactMatrix {
    pub fn zeros(field: FieldSpec, rows: usize, cols: usize) -> Self {
        ExactMatrix {
            field,
            rows,
            cols,
            data: vec![field.zero(); rows * cols],
        }
    }

    pub fn identity(field: FieldSpec, n: usize) -> Self {
        let mut m = Self::zeros(field, n, n);
        for i in 0..n {
            m.set(i, i, field.one());
        }
        m
    }

    /// Build from column vectors, all of length `rows`.
    pub fn from_columns(field: FieldSpec, rows: usize, columns: &[Vec<Scalar>]) -> Self {
        let mut m = Self::zeros(field, rows, columns.len());
        for (j, col) in columns.iter().enumerate() {
            assert_eq!(col.len(), rows, "column length mismatch");
            for (i, v) in col.iter().enumerate() {
                m.set(i, j, v.clone());
            }
        }
        m
    }

    pub fn from_rows(field: FieldSpec, cols: usize, rows: &[Vec<Scalar>]) -> Self {
        let mut m = Self::zeros(field, rows.len(), cols);
        for (i, row) in rows.iter().enumerate() {
            assert_eq!(row.len(), cols, "row length mismatch");
            for (j, v) in row.iter().enumerate() {
                m.set(i, j, v.clone());
            }
        }
        m
    }

    pub fn field(&self) -> FieldSpec {
        self.field
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> &Scalar {
        &self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: Scalar) {
        self.data[r * self.cols + c] = v;
    }

    pub fn column(&self, c: usize) -> Vec<Scalar> {
        (0..self.rows).map(|r| self.get(r, c).clone()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|v| self.field.is_zero(v))
    }

    pub fn mul_vec(&self, v: &[Scalar]) -> Result<Vec<Scalar>> {
        if v.len() != self.cols {
            return Err(Error::ShapeMismatch(format!(
                "{}x{} times vector of length {}",
                self.rows,
                self.cols,
                v.len()
            )));
        }
        let f = &self.field;
        let mut out = vec![f.zero(); self.rows];
        for r in 0..self.rows {
            for c in 0..self.cols {
                let a = self.get(r, c);
                if !f.is_zero(a) && !f.is_zero(&v[c]) {
                    out[r] = f.add(&out[r], &f.mul(a, &v[c]));
                }
            }
        }
        Ok(out)
    }

    pub fn mul(&self, other: &ExactMatrix) -> Result<ExactMatrix> {
        if self.cols != other.rows {
            return Err(Error::ShapeMismatch(format!(
                "{}x{} times {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let f = self.field;
        let mut out = ExactMatrix::zeros(f, self.rows, other.cols);
        for r in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(r, k).clone();
                if f.is_zero(&a) {
                    continue;
                }
                for c in 0..other.cols {
                    let b = other.get(k, c);
                    if !f.is_zero(b) {
                        let cur = out.get(r, c).clone();
                        out.set(r, c, f.add(&cur, &f.mul(&a, b)));
                    }
                }
            }
        }
        Ok(out)
    }

    /// In-place reduced row echelon form, pivoting only in the first
    /// `pivot_cols` columns (the remainder rides along, e.g. an augmented
    /// right-hand side). Returns the pivot column of each pivot row.
    fn rref_in_place(&mut self, pivot_cols: usize) -> Vec<usize> {
        let f = self.field;
        let mut pivots = Vec::new();
        let mut row = 0;
        for col in 0..pivot_cols {
            if row == self.rows {
                break;
            }
            let Some(p) = (row..self.rows).find(|&r| !f.is_zero(self.get(r, col))) else {
                continue;
            };
            if p != row {
                for c in 0..self.cols {
                    self.data.swap(p * self.cols + c, row * self.cols + c);
                }
            }
            let inv = f.inv(self.get(row, col)).expect("nonzero pivot");
            for c in col..self.cols {
                let v = f.mul(self.get(row, c), &inv);
                self.set(row, c, v);
            }
            for r in 0..self.rows {
                if r == row || f.is_zero(self.get(r, col)) {
                    continue;
                }
                let factor = self.get(r, col).clone();
                for c in col..self.cols {
                    let v = f.sub(self.get(r, c), &f.mul(&factor, self.get(row, c)));
                    self.set(r, c, v);
                }
            }
            pivots.push(col);
            row += 1;
        }
        pivots
    }

    pub fn rref(&self) -> (ExactMatrix, Vec<usize>) {
        let mut m = self.clone();
        let pivots = m.rref_in_place(m.cols);
        (m, pivots)
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    /// Basis of the right kernel, one vector per free column. The basis is
    /// canonical for a fixed column order: vector `k` has a 1 in its free
    /// column and 0 in every other free column.
    pub fn kernel_basis(&self) -> Vec<Vec<Scalar>> {
        let f = self.field;
        let (r, pivots) = self.rref();
        let pivot_set: Vec<Option<usize>> = {
            let mut v = vec![None; self.cols];
            for (row, &col) in pivots.iter().enumerate() {
                v[col] = Some(row);
            }
            v
        };
        let mut basis = Vec::new();
        for free in 0..self.cols {
            if pivot_set[free].is_some() {
                continue;
            }
            let mut vec = vec![f.zero(); self.cols];
            vec[free] = f.one();
            for (row, &col) in pivots.iter().enumerate() {
                vec[col] = f.neg(r.get(row, free));
            }
            basis.push(vec);
        }
        basis
    }

    /// Solve `self * x = b` for a single right-hand side; free variables are
    /// set to zero. `None` when inconsistent.
    pub fn solve(&self, b: &[Scalar]) -> Result<Option<Vec<Scalar>>> {
        let rhs = ExactMatrix::from_columns(self.field, b.len(), &[b.to_vec()]);
        Ok(self.solve_columns(&rhs)?.map(|m| m.column(0)))
    }

    /// Solve `self * X = B` column by column; `None` if any column is
    /// inconsistent.
    pub fn solve_columns(&self, b: &ExactMatrix) -> Result<Option<ExactMatrix>> {
        if b.rows != self.rows {
            return Err(Error::ShapeMismatch(format!(
                "solve: {}x{} with rhs {}x{}",
                self.rows, self.cols, b.rows, b.cols
            )));
        }
        let f = self.field;
        let mut aug = ExactMatrix::zeros(f, self.rows, self.cols + b.cols);
        for r in 0..self.rows {
            for c in 0..self.cols {
                aug.set(r, c, self.get(r, c).clone());
            }
            for c in 0..b.cols {
                aug.set(r, self.cols + c, b.get(r, c).clone());
            }
        }
        let pivots = aug.rref_in_place(self.cols);
        // consistency: no nonzero rhs entry in a zero row of the coefficient part
        for r in pivots.len()..self.rows {
            for c in 0..b.cols {
                if !f.is_zero(aug.get(r, self.cols + c)) {
                    return Ok(None);
                }
            }
        }
        let mut x = ExactMatrix::zeros(f, self.cols, b.cols);
        for (row, &col) in pivots.iter().enumerate() {
            for c in 0..b.cols {
                x.set(col, c, aug.get(row, self.cols + c).clone());
            }
        }
        Ok(Some(x))
    }
}

/// Incrementally maintained row-reduced basis of a subspace of k^dim.
///
/// Rows are kept in reduced echelon form sorted by pivot, so the basis (and
/// anything derived from it) is canonical for the subspace.
#[derive(Debug, Clone)]
pub struct SpanBasis {
    field: FieldSpec,
    dim: usize,
    rows: Vec<Vec<Scalar>>,
    pivots: Vec<usize>,
}

impl SpanBasis {
    pub fn new(field: FieldSpec, dim: usize) -> Self {
        SpanBasis {
            field,
            dim,
            rows: Vec::new(),
            pivots: Vec::new(),
        }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn rows(&self) -> &[Vec<Scalar>] {
        &self.rows
    }

    /// Residual of `v` after reduction against the current basis.
    pub fn reduce(&self, v: &[Scalar]) -> Vec<Scalar> {
        assert_eq!(v.len(), self.dim, "span dimension mismatch");
        let f = &self.field;
        let mut w = v.to_vec();
        for (row, &p) in self.rows.iter().zip(&self.pivots) {
            if f.is_zero(&w[p]) {
                continue;
            }
            let factor = w[p].clone();
            for c in p..self.dim {
                if !f.is_zero(&row[c]) {
                    w[c] = f.sub(&w[c], &f.mul(&factor, &row[c]));
                }
            }
        }
        w
    }

    pub fn contains(&self, v: &[Scalar]) -> bool {
        let f = &self.field;
        self.reduce(v).iter().all(|x| f.is_zero(x))
    }

    /// Insert a vector; returns true if it enlarged the span.
    pub fn insert(&mut self, v: &[Scalar]) -> bool {
        let f = self.field;
        let mut w = self.reduce(v);
        let Some(p) = w.iter().position(|x| !f.is_zero(x)) else {
            return false;
        };
        let inv = f.inv(&w[p]).expect("nonzero lead");
        for c in p..self.dim {
            w[c] = f.mul(&w[c], &inv);
        }
        // back-eliminate the new pivot from existing rows
        for row in self.rows.iter_mut() {
            if !f.is_zero(&row[p]) {
                let factor = row[p].clone();
                for c in p..self.dim {
                    row[c] = f.sub(&row[c], &f.mul(&factor, &w[c]));
                }
            }
        }
        let at = self.pivots.partition_point(|&q| q < p);
        self.pivots.insert(at, p);
        self.rows.insert(at, w);
        true
    }
}
