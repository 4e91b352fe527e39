//! Hermitian eigendecomposition and the spectral functions built on it.

use alloc::vec::Vec;

use crate::error::{LabError, Result};
use crate::matrix::{ComplexMatrix, C64, ZERO};

/// Eigenvalues at or below `DEFAULT_RANK_TOL · λ_max` are treated as zero.
pub const DEFAULT_RANK_TOL: f64 = 1e-10;

const SWEEP_THRESHOLD: f64 = 1e-13;
const MAX_SWEEPS: usize = 60;

/// `A = V · diag(λ) · V*` with `λ` ascending and `V` unitary.
#[derive(Clone, Debug, PartialEq)]
pub struct HermitianEig {
    pub eigenvalues: Vec<f64>,
    pub eigenvectors: ComplexMatrix,
}

impl HermitianEig {
    /// `V · diag(f(λ)) · V*`.
    pub fn apply_fn(&self, f: impl Fn(f64) -> f64) -> ComplexMatrix {
        let v = &self.eigenvectors;
        let n = v.rows();
        let vals: Vec<f64> = self.eigenvalues.iter().map(|&l| f(l)).collect();
        ComplexMatrix::from_fn(n, n, |i, j| {
            let mut acc = ZERO;
            for (k, &l) in vals.iter().enumerate() {
                if l != 0.0 {
                    acc += v.get(i, k) * v.get(j, k).conj() * l;
                }
            }
            acc
        })
    }

    pub fn reconstruct(&self) -> ComplexMatrix {
        self.apply_fn(|l| l)
    }

    pub fn max_eigenvalue(&self) -> f64 {
        self.eigenvalues.last().copied().unwrap_or(0.0)
    }
}

/// Eigendecomposition of a Hermitian matrix by cyclic complex Jacobi rotations.
///
/// The input must be Hermitian up to `tol · (1 + ‖A‖_F)`; it is replaced by
/// its Hermitian part before iterating.
pub fn hermitian_eig(a: &ComplexMatrix, tol: f64) -> Result<HermitianEig> {
    let n = a.ensure_square()?;
    let skew = a.skew_hermitian_part().frobenius_norm();
    if skew > tol * (1.0 + a.frobenius_norm()) {
        return Err(LabError::NotHermitian(skew));
    }
    let mut m = a.hermitian_part();
    let mut v = ComplexMatrix::identity(n);
    let threshold = SWEEP_THRESHOLD * m.frobenius_norm();

    let mut converged = false;
    for _sweep in 0..=MAX_SWEEPS {
        if off_diagonal_norm(&m) <= threshold {
            converged = true;
            break;
        }
        for p in 0..n.saturating_sub(1) {
            for q in p + 1..n {
                rotate(&mut m, &mut v, p, q);
            }
        }
    }
    if !converged {
        return Err(LabError::NoConvergence(MAX_SWEEPS));
    }

    let diag: Vec<f64> = (0..n).map(|i| m.get(i, i).re).collect();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&x, &y| diag[x].total_cmp(&diag[y]));
    let eigenvalues = order.iter().map(|&k| diag[k]).collect();
    let eigenvectors = ComplexMatrix::from_fn(n, n, |i, j| v.get(i, order[j]));
    Ok(HermitianEig {
        eigenvalues,
        eigenvectors,
    })
}

fn off_diagonal_norm(m: &ComplexMatrix) -> f64 {
    let n = m.rows();
    let mut acc = 0.0;
    for i in 0..n {
        for j in 0..n {
            if i != j {
                acc += m.get(i, j).norm_sqr();
            }
        }
    }
    libm::sqrt(acc)
}

/// Annihilates the `(p, q)` entry: `m ← W* m W`, `v ← v W`.
fn rotate(m: &mut ComplexMatrix, v: &mut ComplexMatrix, p: usize, q: usize) {
    let n = m.rows();
    let apq = m.get(p, q);
    let r = apq.norm();
    if r == 0.0 {
        return;
    }
    // Phase d makes the pivot real, then a real rotation finishes it.
    let d = apq.conj() / r;
    let app = m.get(p, p).re;
    let aqq = m.get(q, q).re;
    let theta = (aqq - app) / (2.0 * r);
    let t = if theta.abs() > 1e150 {
        0.5 / theta
    } else {
        let t = 1.0 / (theta.abs() + libm::sqrt(1.0 + theta * theta));
        if theta < 0.0 {
            -t
        } else {
            t
        }
    };
    let c = 1.0 / libm::sqrt(1.0 + t * t);
    let s = t * c;
    let w_pp = C64::new(c, 0.0);
    let w_pq = C64::new(s, 0.0);
    let w_qp = d * (-s);
    let w_qq = d * c;

    let data = m.data_mut();
    for k in 0..n {
        let akp = data[k * n + p];
        let akq = data[k * n + q];
        data[k * n + p] = akp * w_pp + akq * w_qp;
        data[k * n + q] = akp * w_pq + akq * w_qq;
    }
    for k in 0..n {
        let apk = data[p * n + k];
        let aqk = data[q * n + k];
        data[p * n + k] = w_pp.conj() * apk + w_qp.conj() * aqk;
        data[q * n + k] = w_pq.conj() * apk + w_qq.conj() * aqk;
    }
    data[p * n + q] = ZERO;
    data[q * n + p] = ZERO;
    data[p * n + p].im = 0.0;
    data[q * n + q].im = 0.0;

    let vd = v.data_mut();
    for k in 0..n {
        let vkp = vd[k * n + p];
        let vkq = vd[k * n + q];
        vd[k * n + p] = vkp * w_pp + vkq * w_qp;
        vd[k * n + q] = vkp * w_pq + vkq * w_qq;
    }
}

/// Eigendecomposition of a PSD matrix with negative noise clamped to zero and
/// eigenvalues at or below `rank_tol · λ_max` set exactly to zero.
pub(crate) fn psd_eig(p: &ComplexMatrix, tol: f64, rank_tol: f64) -> Result<HermitianEig> {
    let mut eig = hermitian_eig(p, tol)?;
    let lmax = eig.max_eigenvalue().max(0.0);
    if let Some(&lmin) = eig.eigenvalues.first() {
        if lmin < -tol * (1.0 + lmax) {
            return Err(LabError::NotPsd(lmin));
        }
    }
    for l in &mut eig.eigenvalues {
        if *l <= rank_tol * lmax {
            *l = 0.0;
        }
    }
    Ok(eig)
}

/// `x^t` with `0^0 = 1` and `0^t = 0` for `t > 0`.
pub(crate) fn spectral_pow(x: f64, t: f64) -> f64 {
    if t == 0.0 {
        1.0
    } else if x == 0.0 {
        0.0
    } else if t == 1.0 {
        x
    } else if t == 0.5 {
        libm::sqrt(x)
    } else {
        libm::pow(x, t)
    }
}

/// `P^t` for Hermitian PSD `P` and `t ∈ [0, 1]`, with the convention `P^0 = I`.
pub fn psd_power(p: &ComplexMatrix, t: f64, tol: f64) -> Result<ComplexMatrix> {
    if !(0.0..=1.0).contains(&t) {
        return Err(LabError::OutOfRange {
            name: "t",
            value: t,
            range: "[0, 1]",
        });
    }
    let eig = psd_eig(p, tol, DEFAULT_RANK_TOL)?;
    Ok(eig.apply_fn(|l| spectral_pow(l, t)))
}

/// Moore-Penrose pseudoinverse of a Hermitian PSD matrix.
pub fn pseudoinverse_psd(p: &ComplexMatrix, tol: f64) -> Result<ComplexMatrix> {
    let eig = psd_eig(p, tol, DEFAULT_RANK_TOL)?;
    Ok(eig.apply_fn(|l| if l > 0.0 { 1.0 / l } else { 0.0 }))
}
