use alloc::vec::Vec;

use crate::error::{LabError, Result};
use crate::matrix::{ComplexMatrix, C64, ONE};

/// Antilinear operator `x ↦ M · conj(x)`.
#[derive(Clone, Debug, PartialEq)]
pub struct AntilinearMap {
    matrix: ComplexMatrix,
}

impl AntilinearMap {
    pub fn new(matrix: ComplexMatrix) -> Result<Self> {
        matrix.ensure_square()?;
        Ok(Self { matrix })
    }

    /// Map sending `e_j` to `e_{images[j]}`, or to zero for `None`.
    /// Indices are zero-based.
    pub fn from_basis_images(images: &[Option<usize>]) -> Result<Self> {
        let n = images.len();
        let mut m = ComplexMatrix::zeros(n, n);
        for (j, img) in images.iter().enumerate() {
            if let Some(i) = *img {
                if i >= n {
                    return Err(LabError::DimensionMismatch {
                        op: "from_basis_images",
                        left: (n, n),
                        right: (i + 1, 1),
                    });
                }
                m.set(i, j, ONE)?;
            }
        }
        Ok(Self { matrix: m })
    }

    pub fn matrix(&self) -> &ComplexMatrix {
        &self.matrix
    }

    pub fn dim(&self) -> usize {
        self.matrix.rows()
    }

    pub fn apply(&self, x: &[C64]) -> Result<Vec<C64>> {
        let conj: Vec<C64> = x.iter().map(|z| z.conj()).collect();
        self.matrix.mat_vec(&conj)
    }

    /// `self ∘ other`, a linear map with matrix `M_self · conj(M_other)`.
    pub fn compose(&self, other: &AntilinearMap) -> Result<ComplexMatrix> {
        self.matrix.matmul(&other.matrix.conj())
    }

    /// `M` unitary and symmetric within `tol · (1 + √n)`.
    pub fn is_conjugation(&self, tol: f64) -> bool {
        let n = self.dim();
        let bound = tol * (1.0 + libm::sqrt(n as f64));
        let m = &self.matrix;
        let sym = m.distance(&m.transpose()).unwrap_or(f64::INFINITY);
        let unit = (&m.adjoint() * m)
            .distance(&ComplexMatrix::identity(n))
            .unwrap_or(f64::INFINITY);
        sym <= bound && unit <= bound
    }

    /// `M = Mᵀ` and `M · conj(M)` is an orthogonal projection.
    ///
    /// The map is then a conjugation on the range of that projection and zero
    /// on its complement.
    pub fn is_partial_conjugation(&self, tol: f64) -> bool {
        let n = self.dim();
        let bound = tol * (1.0 + libm::sqrt(n as f64));
        let m = &self.matrix;
        let sym = m.distance(&m.transpose()).unwrap_or(f64::INFINITY);
        let q = m * &m.conj();
        let herm = q.distance(&q.adjoint()).unwrap_or(f64::INFINITY);
        let idem = (&q * &q).distance(&q).unwrap_or(f64::INFINITY);
        sym <= bound && herm <= bound && idem <= bound
    }
}

/// `‖T · M − M · Tᵀ‖_F`, which equals `‖T − C T* C‖_F` for a conjugation `C`.
pub fn check_cs_with(t: &ComplexMatrix, conjugation: &AntilinearMap) -> Result<f64> {
    t.ensure_square()?;
    if !conjugation.is_conjugation(1e-9) {
        return Err(LabError::NotConjugation);
    }
    let m = conjugation.matrix();
    let lhs = t.matmul(m)?;
    let rhs = m * &t.transpose();
    lhs.distance(&rhs)
}
