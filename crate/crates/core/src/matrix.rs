//! Dense row-major complex matrices.
//!
//! Every operator in the crate (generators, projectors, gates, block
//! encodings) is stored as a [`ComplexMatrix`]. Comparisons never use `==`
//! on floating entries; they go through [`ComplexMatrix::max_abs_diff`] or
//! [`ComplexMatrix::approx_eq`] with an explicit absolute tolerance.

use std::ops::{Add, Index, IndexMut, Mul, Sub};

use nalgebra::{DMatrix, SymmetricEigen};
use num_complex::Complex64;

use crate::error::{Error, Result};

pub(crate) const ZERO: Complex64 = Complex64::new(0.0, 0.0);
pub(crate) const ONE: Complex64 = Complex64::new(1.0, 0.0);

#[derive(Debug, Clone, PartialEq)]
pub struct ComplexMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Complex64>,
}

impl ComplexMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            data: vec![ZERO; rows * cols],
        }
    }

    pub fn identity(dim: usize) -> Self {
        let mut m = Self::zeros(dim, dim);
        for i in 0..dim {
            m[(i, i)] = ONE;
        }
        m
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> Complex64) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for r in 0..rows {
            for c in 0..cols {
                data.push(f(r, c));
            }
        }
        Self { rows, cols, data }
    }

    /// Builds a matrix from row-major entries, checking `rows * cols == data.len()`.
    pub fn from_row_major(rows: usize, cols: usize, data: Vec<Complex64>) -> Result<Self> {
        if rows * cols != data.len() {
            return Err(Error::DimensionMismatch {
                expected: rows * cols,
                found: data.len(),
            });
        }
        Ok(Self { rows, cols, data })
    }

    /// Builds a matrix from nested rows; all rows must share one length.
    pub fn from_rows(rows: &[Vec<Complex64>]) -> Result<Self> {
        let cols = rows.first().map_or(0, Vec::len);
        let mut data = Vec::with_capacity(rows.len() * cols);
        for row in rows {
            if row.len() != cols {
                return Err(Error::DimensionMismatch {
                    expected: cols,
                    found: row.len(),
                });
            }
            data.extend_from_slice(row);
        }
        Ok(Self {
            rows: rows.len(),
            cols,
            data,
        })
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

    pub fn as_slice(&self) -> &[Complex64] {
        &self.data
    }

    pub fn to_rows(&self) -> Vec<Vec<Complex64>> {
        self.data.chunks(self.cols.max(1)).map(<[_]>::to_vec).collect()
    }

    pub fn scale(&self, s: Complex64) -> Self {
        Self {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|z| z * s).collect(),
        }
    }

    pub fn scale_real(&self, s: f64) -> Self {
        self.scale(Complex64::new(s, 0.0))
    }

    /// `self += s * other`, in place.
    pub fn add_scaled(&mut self, other: &Self, s: Complex64) {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        for (x, y) in self.data.iter_mut().zip(&other.data) {
            *x += s * y;
        }
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |r, c| self[(c, r)])
    }

    pub fn conj(&self) -> Self {
        Self {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(Complex64::conj).collect(),
        }
    }

    /// Conjugate transpose.
    pub fn adjoint(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |r, c| self[(c, r)].conj())
    }

    pub fn trace(&self) -> Complex64 {
        (0..self.rows.min(self.cols)).map(|i| self[(i, i)]).sum()
    }

    /// `Tr(self · other)` without forming the product.
    pub fn trace_product(&self, other: &Self) -> Complex64 {
        assert_eq!(self.cols, other.rows);
        assert_eq!(self.rows, other.cols);
        let mut acc = ZERO;
        for i in 0..self.rows {
            for k in 0..self.cols {
                acc += self[(i, k)] * other[(k, i)];
            }
        }
        acc
    }

    pub fn matmul(&self, other: &Self) -> Self {
        assert_eq!(self.cols, other.rows, "inner dimensions differ");
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self[(i, k)];
                if a == ZERO {
                    continue;
                }
                let row = &other.data[k * other.cols..(k + 1) * other.cols];
                let dst = &mut out.data[i * other.cols..(i + 1) * other.cols];
                for (d, b) in dst.iter_mut().zip(row) {
                    *d += a * b;
                }
            }
        }
        out
    }

    pub fn apply(&self, v: &[Complex64]) -> Vec<Complex64> {
        assert_eq!(self.cols, v.len());
        self.data
            .chunks(self.cols)
            .map(|row| row.iter().zip(v).map(|(a, b)| a * b).sum())
            .collect()
    }

    pub fn commutator(&self, other: &Self) -> Self {
        &self.matmul(other) - &other.matmul(self)
    }

    /// Kronecker product: `(A⊗B)[(k·nb+l),(i·mb+j)] = A[k,i]·B[l,j]`.
    pub fn kron(&self, other: &Self) -> Self {
        let (rb, cb) = (other.rows, other.cols);
        Self::from_fn(self.rows * rb, self.cols * cb, |r, c| {
            self[(r / rb, c / cb)] * other[(r % rb, c % cb)]
        })
    }

    /// Top-left `dim × dim` block.
    pub fn top_left(&self, dim: usize) -> Self {
        Self::from_fn(dim, dim, |r, c| self[(r, c)])
    }

    /// Largest entrywise modulus.
    pub fn max_abs(&self) -> f64 {
        self.data.iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    /// `max |self - other|` entrywise; `f64::INFINITY` on shape mismatch.
    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        if (self.rows, self.cols) != (other.rows, other.cols) {
            return f64::INFINITY;
        }
        self.data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }

    pub fn approx_eq(&self, other: &Self, tolerance: f64) -> bool {
        self.max_abs_diff(other) <= tolerance
    }

    pub fn hermiticity_deviation(&self) -> f64 {
        self.max_abs_diff(&self.adjoint())
    }

    /// `max |M†M − I|`.
    pub fn unitarity_deviation(&self) -> f64 {
        if !self.is_square() {
            return f64::INFINITY;
        }
        self.adjoint().matmul(self).max_abs_diff(&Self::identity(self.rows))
    }

    fn to_nalgebra(&self) -> DMatrix<Complex64> {
        DMatrix::from_row_slice(self.rows, self.cols, &self.data)
    }

    fn from_nalgebra(m: &DMatrix<Complex64>) -> Self {
        Self::from_fn(m.nrows(), m.ncols(), |r, c| m[(r, c)])
    }

    /// Eigen-decomposition of a Hermitian matrix. Eigenvalues come back in
    /// ascending order; column `k` of the returned matrix is the eigenvector
    /// for eigenvalue `k`. Only the Hermitian part of `self` is used.
    pub fn hermitian_eigen(&self) -> Result<(Vec<f64>, ComplexMatrix)> {
        if !self.is_square() {
            return Err(Error::NotSquare {
                rows: self.rows,
                cols: self.cols,
            });
        }
        let eig = SymmetricEigen::new(self.to_nalgebra());
        let mut order: Vec<usize> = (0..self.rows).collect();
        order.sort_by(|&a, &b| eig.eigenvalues[a].total_cmp(&eig.eigenvalues[b]));
        let values = order.iter().map(|&k| eig.eigenvalues[k]).collect();
        let vectors = Self::from_nalgebra(&eig.eigenvectors);
        let sorted = Self::from_fn(self.rows, self.rows, |r, c| vectors[(r, order[c])]);
        Ok((values, sorted))
    }

    /// `f(H) = V·diag(f(λ))·V†` for Hermitian `H`.
    pub fn hermitian_function(&self, f: impl Fn(f64) -> Complex64) -> Result<ComplexMatrix> {
        let (values, v) = self.hermitian_eigen()?;
        let n = self.rows;
        let fv: Vec<Complex64> = values.into_iter().map(f).collect();
        let scaled = Self::from_fn(n, n, |r, c| v[(r, c)] * fv[c]);
        Ok(scaled.matmul(&v.adjoint()))
    }
}

impl Index<(usize, usize)> for ComplexMatrix {
    type Output = Complex64;

    fn index(&self, (r, c): (usize, usize)) -> &Complex64 {
        debug_assert!(r < self.rows && c < self.cols);
        &self.data[r * self.cols + c]
    }
}

impl IndexMut<(usize, usize)> for ComplexMatrix {
    fn index_mut(&mut self, (r, c): (usize, usize)) -> &mut Complex64 {
        debug_assert!(r < self.rows && c < self.cols);
        &mut self.data[r * self.cols + c]
    }
}

impl Add for &ComplexMatrix {
    type Output = ComplexMatrix;

    fn add(self, rhs: &ComplexMatrix) -> ComplexMatrix {
        let mut out = self.clone();
        out.add_scaled(rhs, ONE);
        out
    }
}

impl Sub for &ComplexMatrix {
    type Output = ComplexMatrix;

    fn sub(self, rhs: &ComplexMatrix) -> ComplexMatrix {
        let mut out = self.clone();
        out.add_scaled(rhs, -ONE);
        out
    }
}

impl Mul for &ComplexMatrix {
    type Output = ComplexMatrix;

    fn mul(self, rhs: &ComplexMatrix) -> ComplexMatrix {
        self.matmul(rhs)
    }
}

/// Euclidean norm of a state vector.
pub fn vector_norm(v: &[Complex64]) -> f64 {
    v.iter().map(Complex64::norm_sqr).sum::<f64>().sqrt()
}

/// `⟨u|v⟩`, conjugate-linear in the first argument.
pub fn inner(u: &[Complex64], v: &[Complex64]) -> Complex64 {
    u.iter().zip(v).map(|(a, b)| a.conj() * b).sum()
}
