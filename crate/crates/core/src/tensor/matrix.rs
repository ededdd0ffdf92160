use std::fmt;
use std::ops::{Add, Index, IndexMut, Mul, Sub};

use faer::linalg::matmul::matmul;
use faer::{Accum, MatRef, Par};

use crate::error::{ensure_dims, Error, Result};
use crate::C64;

/// Dense complex matrix stored column-major.
#[derive(Clone, PartialEq)]
pub struct ComplexMatrix {
    rows: usize,
    cols: usize,
    data: Vec<C64>,
}

impl ComplexMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            data: vec![C64::new(0.0, 0.0); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = C64::new(1.0, 0.0);
        }
        m
    }

    /// Builds a matrix from column-major entries.
    pub fn from_col_major(rows: usize, cols: usize, data: Vec<C64>) -> Result<Self> {
        ensure_dims!(
            data.len() == rows * cols,
            "{} entries cannot form a {rows}x{cols} matrix",
            data.len()
        );
        Ok(Self { rows, cols, data })
    }

    /// Builds a matrix from row slices, mostly for literals in tests.
    pub fn from_rows(rows: &[Vec<C64>]) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        ensure_dims!(rows.iter().all(|row| row.len() == c), "ragged rows");
        Ok(Self::from_fn(r, c, |i, j| rows[i][j]))
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> C64) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for j in 0..cols {
            for i in 0..rows {
                data.push(f(i, j));
            }
        }
        Self { rows, cols, data }
    }

    /// Column vector holding `v`.
    pub fn column(v: Vec<C64>) -> Self {
        Self {
            rows: v.len(),
            cols: 1,
            data: v,
        }
    }

    pub fn diag(d: &[C64]) -> Self {
        let mut m = Self::zeros(d.len(), d.len());
        for (i, &x) in d.iter().enumerate() {
            m[(i, i)] = x;
        }
        m
    }

    #[inline]
    pub fn rows(&self) -> usize {
        self.rows
    }

    #[inline]
    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn shape(&self) -> (usize, usize) {
        (self.rows, self.cols)
    }

    pub fn as_slice(&self) -> &[C64] {
        &self.data
    }

    pub fn as_mut_slice(&mut self) -> &mut [C64] {
        &mut self.data
    }

    pub fn into_vec(self) -> Vec<C64> {
        self.data
    }

    pub fn col(&self, j: usize) -> &[C64] {
        &self.data[j * self.rows..(j + 1) * self.rows]
    }

    pub fn col_mut(&mut self, j: usize) -> &mut [C64] {
        &mut self.data[j * self.rows..(j + 1) * self.rows]
    }

    pub fn is_finite(&self) -> bool {
        self.data.iter().all(|z| z.re.is_finite() && z.im.is_finite())
    }

    pub(crate) fn as_faer(&self) -> MatRef<'_, C64> {
        MatRef::from_column_major_slice(&self.data, self.rows, self.cols)
    }

    pub(crate) fn from_faer(m: MatRef<'_, C64>) -> Self {
        Self::from_fn(m.nrows(), m.ncols(), |i, j| m[(i, j)])
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self[(j, i)])
    }

    /// Conjugate transpose.
    pub fn adjoint(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self[(j, i)].conj())
    }

    pub fn conj(&self) -> Self {
        self.map(|z| z.conj())
    }

    pub fn map(&self, f: impl Fn(C64) -> C64) -> Self {
        Self {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|&z| f(z)).collect(),
        }
    }

    pub fn scale(&self, s: C64) -> Self {
        self.map(|z| z * s)
    }

    pub fn scale_real(&self, s: f64) -> Self {
        self.map(|z| z * s)
    }

    /// Matrix product; errors on inner-dimension mismatch.
    pub fn matmul(&self, rhs: &Self) -> Result<Self> {
        ensure_dims!(
            self.cols == rhs.rows,
            "cannot multiply {}x{} by {}x{}",
            self.rows,
            self.cols,
            rhs.rows,
            rhs.cols
        );
        let mut out = Self::zeros(self.rows, rhs.cols);
        if self.cols == 0 {
            return Ok(out);
        }
        let dst = faer::MatMut::from_column_major_slice_mut(&mut out.data, self.rows, rhs.cols);
        matmul(
            dst,
            Accum::Replace,
            self.as_faer(),
            rhs.as_faer(),
            C64::new(1.0, 0.0),
            Par::Seq,
        );
        Ok(out)
    }

    /// `selfᴴ · rhs` without materialising the adjoint.
    pub fn adjoint_matmul(&self, rhs: &Self) -> Result<Self> {
        ensure_dims!(
            self.rows == rhs.rows,
            "cannot form adjoint product of {}x{} and {}x{}",
            self.rows,
            self.cols,
            rhs.rows,
            rhs.cols
        );
        let mut out = Self::zeros(self.cols, rhs.cols);
        if self.rows == 0 {
            return Ok(out);
        }
        let dst = faer::MatMut::from_column_major_slice_mut(&mut out.data, self.cols, rhs.cols);
        matmul(
            dst,
            Accum::Replace,
            self.as_faer().adjoint(),
            rhs.as_faer(),
            C64::new(1.0, 0.0),
            Par::Seq,
        );
        Ok(out)
    }

    /// `self · rhsᴴ` without materialising the adjoint.
    pub fn matmul_adjoint(&self, rhs: &Self) -> Result<Self> {
        ensure_dims!(
            self.cols == rhs.cols,
            "cannot form adjoint product of {}x{} and {}x{}",
            self.rows,
            self.cols,
            rhs.rows,
            rhs.cols
        );
        let mut out = Self::zeros(self.rows, rhs.rows);
        if self.cols == 0 {
            return Ok(out);
        }
        let dst = faer::MatMut::from_column_major_slice_mut(&mut out.data, self.rows, rhs.rows);
        matmul(
            dst,
            Accum::Replace,
            self.as_faer(),
            rhs.as_faer().adjoint(),
            C64::new(1.0, 0.0),
            Par::Seq,
        );
        Ok(out)
    }

    /// `diag(d) · self`.
    pub fn scale_rows(&self, d: &[C64]) -> Result<Self> {
        ensure_dims!(
            d.len() == self.rows,
            "row scaling length {} vs {} rows",
            d.len(),
            self.rows
        );
        let mut out = self.clone();
        for j in 0..self.cols {
            for (x, &s) in out.col_mut(j).iter_mut().zip(d) {
                *x *= s;
            }
        }
        Ok(out)
    }

    /// `self · diag(d)`.
    pub fn scale_cols(&self, d: &[C64]) -> Result<Self> {
        ensure_dims!(
            d.len() == self.cols,
            "column scaling length {} vs {} cols",
            d.len(),
            self.cols
        );
        let mut out = self.clone();
        for (j, &s) in d.iter().enumerate() {
            for x in out.col_mut(j) {
                *x *= s;
            }
        }
        Ok(out)
    }

    /// Element-wise product.
    pub fn hadamard(&self, rhs: &Self) -> Result<Self> {
        ensure_dims!(
            self.shape() == rhs.shape(),
            "hadamard of {:?} and {:?}",
            self.shape(),
            rhs.shape()
        );
        Ok(Self {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&rhs.data).map(|(a, b)| a * b).collect(),
        })
    }

    /// Horizontal concatenation `[m_1, m_2, …]`.
    pub fn hcat(blocks: &[Self]) -> Result<Self> {
        let Some(first) = blocks.first() else {
            return Err(Error::Dimension("cannot concatenate an empty block list".into()));
        };
        let rows = first.rows;
        ensure_dims!(blocks.iter().all(|b| b.rows == rows), "blocks differ in row count");
        let cols = blocks.iter().map(|b| b.cols).sum();
        let mut data = Vec::with_capacity(rows * cols);
        for b in blocks {
            data.extend_from_slice(&b.data);
        }
        Ok(Self { rows, cols, data })
    }

    /// Column block `[:, start..start + width]`.
    pub fn col_block(&self, start: usize, width: usize) -> Self {
        Self {
            rows: self.rows,
            cols: width,
            data: self.data[start * self.rows..(start + width) * self.rows].to_vec(),
        }
    }

    /// First `n` columns.
    pub fn leading_cols(&self, n: usize) -> Self {
        self.col_block(0, n)
    }

    /// First `n` rows.
    pub fn leading_rows(&self, n: usize) -> Self {
        Self::from_fn(n, self.cols, |i, j| self[(i, j)])
    }

    pub fn frobenius_norm_sqr(&self) -> f64 {
        self.data.iter().map(|z| z.norm_sqr()).sum()
    }

    pub fn frobenius_norm(&self) -> f64 {
        self.frobenius_norm_sqr().sqrt()
    }

    /// Largest entry-wise modulus of `self - other`.
    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        assert_eq!(self.shape(), other.shape());
        self.data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }

    /// `‖self − other‖_F / max(‖other‖_F, tiny)`.
    pub fn rel_diff(&self, other: &Self) -> f64 {
        assert_eq!(self.shape(), other.shape());
        let num: f64 = self.data.iter().zip(&other.data).map(|(a, b)| (a - b).norm_sqr()).sum();
        num.sqrt() / other.frobenius_norm().max(f64::MIN_POSITIVE)
    }
}

impl Index<(usize, usize)> for ComplexMatrix {
    type Output = C64;

    #[inline]
    fn index(&self, (i, j): (usize, usize)) -> &C64 {
        debug_assert!(i < self.rows && j < self.cols);
        &self.data[i + j * self.rows]
    }
}

impl IndexMut<(usize, usize)> for ComplexMatrix {
    #[inline]
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut C64 {
        debug_assert!(i < self.rows && j < self.cols);
        &mut self.data[i + j * self.rows]
    }
}

impl fmt::Debug for ComplexMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "ComplexMatrix {}x{} [", self.rows, self.cols)?;
        for i in 0..self.rows {
            write!(f, "  ")?;
            for j in 0..self.cols {
                let z = self[(i, j)];
                write!(f, "{:+.4}{:+.4}i ", z.re, z.im)?;
            }
            writeln!(f)?;
        }
        write!(f, "]")
    }
}

impl Mul for &ComplexMatrix {
    type Output = ComplexMatrix;

    /// Panics on mismatched shapes; use [`ComplexMatrix::matmul`] for a checked product.
    fn mul(self, rhs: &ComplexMatrix) -> ComplexMatrix {
        self.matmul(rhs).expect("matrix product shape mismatch")
    }
}

impl Add for &ComplexMatrix {
    type Output = ComplexMatrix;

    fn add(self, rhs: &ComplexMatrix) -> ComplexMatrix {
        assert_eq!(self.shape(), rhs.shape(), "matrix sum shape mismatch");
        ComplexMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&rhs.data).map(|(a, b)| a + b).collect(),
        }
    }
}

impl Sub for &ComplexMatrix {
    type Output = ComplexMatrix;

    fn sub(self, rhs: &ComplexMatrix) -> ComplexMatrix {
        assert_eq!(self.shape(), rhs.shape(), "matrix difference shape mismatch");
        ComplexMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&rhs.data).map(|(a, b)| a - b).collect(),
        }
    }
}
