//! Dense complex matrices stored row-major.

use alloc::vec;
use alloc::vec::Vec;
use core::fmt;
use core::ops::{Add, Index, Mul, Sub};

use num_complex::Complex;

use crate::error::{LabError, Result};

pub type C64 = Complex<f64>;

pub(crate) const ZERO: C64 = C64::new(0.0, 0.0);
pub(crate) const ONE: C64 = C64::new(1.0, 0.0);

/// Dense complex matrix. Every entry is finite.
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
            data: vec![ZERO; rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.data[i * n + i] = ONE;
        }
        m
    }

    /// Builds a matrix from row-major entries, rejecting NaN/Inf.
    pub fn from_vec(rows: usize, cols: usize, data: Vec<C64>) -> Result<Self> {
        if data.len() != rows * cols {
            return Err(LabError::BadLength {
                rows,
                cols,
                len: data.len(),
            });
        }
        if let Some(idx) = data
            .iter()
            .position(|z| !z.re.is_finite() || !z.im.is_finite())
        {
            return Err(LabError::NonFinite(idx));
        }
        Ok(Self { rows, cols, data })
    }

    /// Builds a real matrix from rows of equal length.
    ///
    /// Panics on ragged or non-finite input; intended for literals.
    pub fn from_real_rows(rows: &[&[f64]]) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |row| row.len());
        let mut data = Vec::with_capacity(r * c);
        for row in rows {
            assert_eq!(row.len(), c, "ragged matrix literal");
            data.extend(row.iter().map(|&x| C64::new(x, 0.0)));
        }
        Self::from_vec(r, c, data).expect("finite matrix literal")
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> C64) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Self { rows, cols, data }
    }

    pub fn diag(entries: &[C64]) -> Self {
        let n = entries.len();
        let mut m = Self::zeros(n, n);
        for (i, &z) in entries.iter().enumerate() {
            m.data[i * n + i] = z;
        }
        m
    }

    pub fn diag_real(entries: &[f64]) -> Self {
        let n = entries.len();
        let mut m = Self::zeros(n, n);
        for (i, &x) in entries.iter().enumerate() {
            m.data[i * n + i] = C64::new(x, 0.0);
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

    #[inline]
    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    /// Row-major entries.
    pub fn as_slice(&self) -> &[C64] {
        &self.data
    }

    pub fn into_vec(self) -> Vec<C64> {
        self.data
    }

    pub(crate) fn data_mut(&mut self) -> &mut [C64] {
        &mut self.data
    }

    pub fn get(&self, i: usize, j: usize) -> C64 {
        self.data[i * self.cols + j]
    }

    /// Sets an entry; non-finite values are rejected.
    pub fn set(&mut self, i: usize, j: usize, z: C64) -> Result<()> {
        if !z.re.is_finite() || !z.im.is_finite() {
            return Err(LabError::NonFinite(i * self.cols + j));
        }
        self.data[i * self.cols + j] = z;
        Ok(())
    }

    pub fn ensure_square(&self) -> Result<usize> {
        if self.is_square() {
            Ok(self.rows)
        } else {
            Err(LabError::NotSquare {
                rows: self.rows,
                cols: self.cols,
            })
        }
    }

    pub fn matmul(&self, other: &Self) -> Result<Self> {
        if self.cols != other.rows {
            return Err(self.mismatch("matmul", other));
        }
        Ok(self.mul_unchecked(other))
    }

    pub(crate) fn mul_unchecked(&self, other: &Self) -> Self {
        let (n, m, p) = (self.rows, self.cols, other.cols);
        let mut out = vec![ZERO; n * p];
        for i in 0..n {
            let row = &self.data[i * m..(i + 1) * m];
            let dst = &mut out[i * p..(i + 1) * p];
            for (k, &a) in row.iter().enumerate() {
                if a == ZERO {
                    continue;
                }
                let src = &other.data[k * p..(k + 1) * p];
                for (d, &b) in dst.iter_mut().zip(src) {
                    *d += a * b;
                }
            }
        }
        Self {
            rows: n,
            cols: p,
            data: out,
        }
    }

    pub fn adjoint(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self.get(j, i).conj())
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self.get(j, i))
    }

    pub fn conj(&self) -> Self {
        Self {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|z| z.conj()).collect(),
        }
    }

    pub fn scale(&self, s: C64) -> Self {
        Self {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|&z| z * s).collect(),
        }
    }

    pub fn scale_real(&self, s: f64) -> Self {
        Self {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|&z| z * s).collect(),
        }
    }

    pub fn try_add(&self, other: &Self) -> Result<Self> {
        self.zip_with(other, "add", |a, b| a + b)
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self> {
        self.zip_with(other, "sub", |a, b| a - b)
    }

    fn zip_with(
        &self,
        other: &Self,
        op: &'static str,
        f: impl Fn(C64, C64) -> C64,
    ) -> Result<Self> {
        if self.rows != other.rows || self.cols != other.cols {
            return Err(self.mismatch(op, other));
        }
        Ok(Self {
            rows: self.rows,
            cols: self.cols,
            data: self
                .data
                .iter()
                .zip(&other.data)
                .map(|(&a, &b)| f(a, b))
                .collect(),
        })
    }

    /// `AB - BA`.
    pub fn commutator(&self, other: &Self) -> Result<Self> {
        self.ensure_square()?;
        if self.rows != other.rows || !other.is_square() {
            return Err(self.mismatch("commutator", other));
        }
        let ab = self.mul_unchecked(other);
        let ba = other.mul_unchecked(self);
        ab.try_sub(&ba)
    }

    pub fn frobenius_norm(&self) -> f64 {
        libm::sqrt(self.frobenius_norm_sqr())
    }

    pub fn frobenius_norm_sqr(&self) -> f64 {
        self.data.iter().map(|z| z.norm_sqr()).sum()
    }

    /// Frobenius norm of `self - other`.
    pub fn distance(&self, other: &Self) -> Result<f64> {
        Ok(self.try_sub(other)?.frobenius_norm())
    }

    /// Block-diagonal `A ⊕ B`.
    pub fn direct_sum(&self, other: &Self) -> Self {
        let (r, c) = (self.rows + other.rows, self.cols + other.cols);
        let mut out = Self::zeros(r, c);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out.data[i * c + j] = self.get(i, j);
            }
        }
        for i in 0..other.rows {
            for j in 0..other.cols {
                out.data[(self.rows + i) * c + self.cols + j] = other.get(i, j);
            }
        }
        out
    }

    /// Entries `(i, i + 1)`.
    pub fn superdiagonal(&self) -> Vec<C64> {
        (0..self.rows.min(self.cols.saturating_sub(1)))
            .map(|i| self.get(i, i + 1))
            .collect()
    }

    pub fn trace(&self) -> C64 {
        (0..self.rows.min(self.cols)).map(|i| self.get(i, i)).sum()
    }

    /// Real Frobenius inner product `Re tr(A* B)`.
    pub fn real_inner(&self, other: &Self) -> f64 {
        self.data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| (a.conj() * b).re)
            .sum()
    }

    /// `(A + A*) / 2`.
    pub fn hermitian_part(&self) -> Self {
        Self::from_fn(self.rows, self.cols, |i, j| {
            (self.get(i, j) + self.get(j, i).conj()) * 0.5
        })
    }

    /// `(A - A*) / 2`.
    pub fn skew_hermitian_part(&self) -> Self {
        Self::from_fn(self.rows, self.cols, |i, j| {
            (self.get(i, j) - self.get(j, i).conj()) * 0.5
        })
    }

    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        self.data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }

    pub fn column(&self, j: usize) -> Vec<C64> {
        (0..self.rows).map(|i| self.get(i, j)).collect()
    }

    pub fn mat_vec(&self, x: &[C64]) -> Result<Vec<C64>> {
        if x.len() != self.cols {
            return Err(LabError::DimensionMismatch {
                op: "mat_vec",
                left: (self.rows, self.cols),
                right: (x.len(), 1),
            });
        }
        Ok((0..self.rows)
            .map(|i| {
                self.data[i * self.cols..(i + 1) * self.cols]
                    .iter()
                    .zip(x)
                    .map(|(a, b)| a * b)
                    .sum()
            })
            .collect())
    }

    /// Solves `self · X = rhs` by LU with partial pivoting.
    pub fn solve(&self, rhs: &Self) -> Result<Self> {
        let n = self.ensure_square()?;
        if rhs.rows != n {
            return Err(self.mismatch("solve", rhs));
        }
        let m = rhs.cols;
        let mut a = self.data.clone();
        let mut b = rhs.data.clone();
        for col in 0..n {
            let pivot = (col..n)
                .max_by(|&x, &y| a[x * n + col].norm().total_cmp(&a[y * n + col].norm()))
                .unwrap_or(col);
            let pv = a[pivot * n + col];
            if pv.norm() == 0.0 || !pv.norm().is_finite() {
                return Err(LabError::Singular);
            }
            if pivot != col {
                for j in 0..n {
                    a.swap(pivot * n + j, col * n + j);
                }
                for j in 0..m {
                    b.swap(pivot * m + j, col * m + j);
                }
            }
            for r in col + 1..n {
                let factor = a[r * n + col] / pv;
                if factor == ZERO {
                    continue;
                }
                for j in col..n {
                    let v = a[col * n + j];
                    a[r * n + j] -= factor * v;
                }
                for j in 0..m {
                    let v = b[col * m + j];
                    b[r * m + j] -= factor * v;
                }
            }
        }
        for col in (0..n).rev() {
            let pv = a[col * n + col];
            for j in 0..m {
                let mut acc = b[col * m + j];
                for k in col + 1..n {
                    acc -= a[col * n + k] * b[k * m + j];
                }
                b[col * m + j] = acc / pv;
            }
        }
        Self::from_vec(n, m, b).map_err(|_| LabError::Singular)
    }

    /// Orthonormalizes the columns in place (modified Gram-Schmidt, two passes).
    ///
    /// Columns that collapse numerically are replaced by the first standard
    /// basis vector orthogonal to the previous ones.
    pub(crate) fn orthonormalize_columns(&mut self) {
        let (n, k) = (self.rows, self.cols);
        for j in 0..k {
            for _pass in 0..2 {
                for prev in 0..j {
                    let mut dot = ZERO;
                    for i in 0..n {
                        dot += self.get(i, prev).conj() * self.get(i, j);
                    }
                    for i in 0..n {
                        let v = self.get(i, prev);
                        self.data[i * k + j] -= dot * v;
                    }
                }
            }
            let norm = libm::sqrt((0..n).map(|i| self.get(i, j).norm_sqr()).sum::<f64>());
            if norm > 1e-12 {
                for i in 0..n {
                    self.data[i * k + j] /= norm;
                }
            } else {
                for i in 0..n {
                    self.data[i * k + j] = ZERO;
                }
                self.data[(j % n.max(1)) * k + j] = ONE;
                if j > 0 {
                    self.orthonormalize_single(j);
                }
            }
        }
    }

    fn orthonormalize_single(&mut self, j: usize) {
        let (n, k) = (self.rows, self.cols);
        for e in 0..n {
            for i in 0..n {
                self.data[i * k + j] = if i == e { ONE } else { ZERO };
            }
            for prev in 0..j {
                let dot = self.get(e, prev).conj();
                for i in 0..n {
                    let v = self.get(i, prev);
                    self.data[i * k + j] -= dot * v;
                }
            }
            let norm = libm::sqrt((0..n).map(|i| self.get(i, j).norm_sqr()).sum::<f64>());
            if norm > 0.5 {
                for i in 0..n {
                    self.data[i * k + j] /= norm;
                }
                return;
            }
        }
    }

    fn mismatch(&self, op: &'static str, other: &Self) -> LabError {
        LabError::DimensionMismatch {
            op,
            left: (self.rows, self.cols),
            right: (other.rows, other.cols),
        }
    }
}

impl Index<(usize, usize)> for ComplexMatrix {
    type Output = C64;

    fn index(&self, (i, j): (usize, usize)) -> &C64 {
        &self.data[i * self.cols + j]
    }
}

/// Panics on dimension mismatch; use [`ComplexMatrix::matmul`] for a checked product.
impl Mul for &ComplexMatrix {
    type Output = ComplexMatrix;

    fn mul(self, rhs: &ComplexMatrix) -> ComplexMatrix {
        self.matmul(rhs).expect("matrix product dimensions")
    }
}

impl Add for &ComplexMatrix {
    type Output = ComplexMatrix;

    fn add(self, rhs: &ComplexMatrix) -> ComplexMatrix {
        self.try_add(rhs).expect("matrix sum dimensions")
    }
}

impl Sub for &ComplexMatrix {
    type Output = ComplexMatrix;

    fn sub(self, rhs: &ComplexMatrix) -> ComplexMatrix {
        self.try_sub(rhs).expect("matrix difference dimensions")
    }
}

impl fmt::Debug for ComplexMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "ComplexMatrix {}x{} [", self.rows, self.cols)?;
        for i in 0..self.rows {
            f.write_str("  ")?;
            for j in 0..self.cols {
                let z = self.get(i, j);
                write!(f, "{:+.6e}{:+.6e}i ", z.re, z.im)?;
            }
            f.write_str("\n")?;
        }
        f.write_str("]")
    }
}
