//! Minimal compressed-sparse-row complex matrix used for the collective
//! spin operators.

use std::collections::BTreeMap;
use std::ops::{Add, Mul, Sub};

use num_complex::Complex64 as C64;

use crate::error::{Error, Result};

/// Square complex matrix in CSR form.
#[derive(Clone, Debug, PartialEq)]
pub struct SparseMatrix {
    dim: usize,
    row_ptr: Vec<usize>,
    col_idx: Vec<usize>,
    values: Vec<C64>,
}

impl SparseMatrix {
    /// Builds a matrix from `(row, col, value)` triplets. Duplicates are summed
    /// and exact zeros dropped.
    pub fn from_triplets<I>(dim: usize, triplets: I) -> Self
    where
        I: IntoIterator<Item = (usize, usize, C64)>,
    {
        let mut rows: Vec<BTreeMap<usize, C64>> = vec![BTreeMap::new(); dim];
        for (r, c, v) in triplets {
            assert!(r < dim && c < dim, "triplet ({r}, {c}) outside dimension {dim}");
            *rows[r].entry(c).or_insert(C64::new(0.0, 0.0)) += v;
        }
        Self::from_rows(dim, rows)
    }

    fn from_rows(dim: usize, rows: Vec<BTreeMap<usize, C64>>) -> Self {
        let mut row_ptr = Vec::with_capacity(dim + 1);
        let mut col_idx = Vec::new();
        let mut values = Vec::new();
        row_ptr.push(0);
        for row in rows {
            for (c, v) in row {
                if v != C64::new(0.0, 0.0) {
                    col_idx.push(c);
                    values.push(v);
                }
            }
            row_ptr.push(col_idx.len());
        }
        Self {
            dim,
            row_ptr,
            col_idx,
            values,
        }
    }

    pub fn identity(dim: usize) -> Self {
        Self::from_triplets(dim, (0..dim).map(|i| (i, i, C64::new(1.0, 0.0))))
    }

    pub fn zeros(dim: usize) -> Self {
        Self::from_triplets(dim, std::iter::empty())
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn nnz(&self) -> usize {
        self.values.len()
    }

    /// Iterates over the stored entries of row `r` as `(col, value)`.
    pub fn row(&self, r: usize) -> impl Iterator<Item = (usize, C64)> + '_ {
        let span = self.row_ptr[r]..self.row_ptr[r + 1];
        self.col_idx[span.clone()]
            .iter()
            .copied()
            .zip(self.values[span].iter().copied())
    }

    /// Iterates over all stored entries as `(row, col, value)`.
    pub fn entries(&self) -> impl Iterator<Item = (usize, usize, C64)> + '_ {
        (0..self.dim).flat_map(move |r| self.row(r).map(move |(c, v)| (r, c, v)))
    }

    /// `out = self * input`.
    pub fn apply(&self, input: &[C64], out: &mut [C64]) {
        debug_assert_eq!(input.len(), self.dim);
        debug_assert_eq!(out.len(), self.dim);
        for (r, o) in out.iter_mut().enumerate() {
            *o = self.row(r).map(|(c, v)| v * input[c]).sum();
        }
    }

    pub fn mul_vec(&self, input: &[C64]) -> Result<Vec<C64>> {
        if input.len() != self.dim {
            return Err(Error::DimensionMismatch {
                expected: self.dim,
                got: input.len(),
            });
        }
        let mut out = vec![C64::new(0.0, 0.0); self.dim];
        self.apply(input, &mut out);
        Ok(out)
    }

    pub fn adjoint(&self) -> Self {
        Self::from_triplets(self.dim, self.entries().map(|(r, c, v)| (c, r, v.conj())))
    }

    pub fn scale(&self, factor: C64) -> Self {
        let mut out = self.clone();
        out.values.iter_mut().for_each(|v| *v *= factor);
        out
    }

    /// Sparse product `self * rhs`.
    pub fn matmul(&self, rhs: &Self) -> Self {
        assert_eq!(self.dim, rhs.dim);
        let rows = (0..self.dim)
            .map(|r| {
                let mut acc = BTreeMap::new();
                for (k, a) in self.row(r) {
                    for (c, b) in rhs.row(k) {
                        *acc.entry(c).or_insert(C64::new(0.0, 0.0)) += a * b;
                    }
                }
                acc
            })
            .collect();
        Self::from_rows(self.dim, rows)
    }

    /// `self * rhs - rhs * self`.
    pub fn commutator(&self, rhs: &Self) -> Self {
        &self.matmul(rhs) - &rhs.matmul(self)
    }

    /// Largest entry modulus, zero for the empty matrix.
    pub fn max_abs(&self) -> f64 {
        self.values.iter().map(|v| v.norm()).fold(0.0, f64::max)
    }

    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        (self - other).max_abs()
    }

    pub fn is_hermitian(&self, tol: f64) -> bool {
        self.max_abs_diff(&self.adjoint()) <= tol
    }

    pub fn trace(&self) -> C64 {
        (0..self.dim)
            .flat_map(|r| self.row(r).filter(move |(c, _)| *c == r).map(|(_, v)| v))
            .sum()
    }

    /// Diagonal entries (zero where not stored).
    pub fn diagonal(&self) -> Vec<C64> {
        (0..self.dim)
            .map(|r| {
                self.row(r)
                    .find(|(c, _)| *c == r)
                    .map(|(_, v)| v)
                    .unwrap_or_default()
            })
            .collect()
    }

    pub fn to_dense(&self) -> nalgebra::DMatrix<C64> {
        let mut m = nalgebra::DMatrix::zeros(self.dim, self.dim);
        for (r, c, v) in self.entries() {
            m[(r, c)] = v;
        }
        m
    }

    fn combine(&self, rhs: &Self, sign: f64) -> Self {
        assert_eq!(self.dim, rhs.dim);
        Self::from_triplets(
            self.dim,
            self.entries()
                .chain(rhs.entries().map(|(r, c, v)| (r, c, v * sign))),
        )
    }
}

impl Add for &SparseMatrix {
    type Output = SparseMatrix;
    fn add(self, rhs: Self) -> SparseMatrix {
        self.combine(rhs, 1.0)
    }
}

impl Sub for &SparseMatrix {
    type Output = SparseMatrix;
    fn sub(self, rhs: Self) -> SparseMatrix {
        self.combine(rhs, -1.0)
    }
}

impl Mul for &SparseMatrix {
    type Output = SparseMatrix;
    fn mul(self, rhs: Self) -> SparseMatrix {
        self.matmul(rhs)
    }
}
