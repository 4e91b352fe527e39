//! Nilpotent weighted shifts `T = Σ_{i=1}^{n-1} λ_i e_i ⊗ e_{i+1}` and the
//! closed-form complex-symmetry criteria for them and their transforms.
//!
//! With `(e_i ⊗ e_{i+1}) x = ⟨x, e_{i+1}⟩ e_i` the matrix carries `λ_i` at
//! position `(i, i + 1)`. All criteria depend only on the moduli `|λ_i|`.

use alloc::format;
use alloc::vec::Vec;

use crate::error::{LabError, Result};
use crate::matrix::{ComplexMatrix, C64, ONE};
use crate::spectral::DEFAULT_RANK_TOL;
use crate::symmetry::AntilinearMap;

/// Relative tolerance for comparing moduli in the criteria.
pub const EPS_CRIT: f64 = 1e-9;

#[derive(Clone, Debug, PartialEq)]
pub struct WeightedShift {
    weights: Vec<C64>,
}

impl WeightedShift {
    /// Shift of dimension `weights.len() + 1`; every weight must satisfy
    /// `|λ_i| > DEFAULT_RANK_TOL`.
    pub fn new(weights: Vec<C64>) -> Result<Self> {
        if weights.is_empty() {
            return Err(LabError::InvalidShift(
                "dimension must be at least 2".into(),
            ));
        }
        for (i, w) in weights.iter().enumerate() {
            if !w.re.is_finite() || !w.im.is_finite() {
                return Err(LabError::InvalidShift(format!(
                    "weight {} is not finite",
                    i + 1
                )));
            }
            if w.norm() <= DEFAULT_RANK_TOL {
                return Err(LabError::InvalidShift(format!("weight {} is zero", i + 1)));
            }
        }
        Ok(Self { weights })
    }

    pub fn from_real(weights: &[f64]) -> Result<Self> {
        Self::new(weights.iter().map(|&w| C64::new(w, 0.0)).collect())
    }

    /// Dimension `n`.
    pub fn dim(&self) -> usize {
        self.weights.len() + 1
    }

    pub fn weights(&self) -> &[C64] {
        &self.weights
    }

    pub fn moduli(&self) -> Vec<f64> {
        self.weights.iter().map(|w| w.norm()).collect()
    }

    pub fn to_matrix(&self) -> ComplexMatrix {
        let n = self.dim();
        let mut m = ComplexMatrix::zeros(n, n);
        for (i, &w) in self.weights.iter().enumerate() {
            m.set(i, i + 1, w).expect("weights are finite");
        }
        m
    }

    /// Diagonal unitary `D` and the shift with weights `|λ_i|` such that
    /// `D* T D` is that shift. `D_11 = 1` and
    /// `D_{i+1,i+1} = Π_{k≤i} conj(λ_k) / |λ_k|`.
    pub fn unimodular_gauge(&self) -> (ComplexMatrix, WeightedShift) {
        let mut phases = Vec::with_capacity(self.dim());
        let mut acc = ONE;
        phases.push(acc);
        for w in &self.weights {
            acc *= w.conj() / w.norm();
            phases.push(acc);
        }
        let positive = WeightedShift {
            weights: self
                .moduli()
                .into_iter()
                .map(|m| C64::new(m, 0.0))
                .collect(),
        };
        (ComplexMatrix::diag(&phases), positive)
    }
}

fn approx_eq(a: f64, b: f64) -> bool {
    (a - b).abs() <= EPS_CRIT * a.abs().max(b.abs())
}

/// `v_i = v_{len-1-i}` for all `i`, within [`EPS_CRIT`].
pub(crate) fn is_palindrome(values: &[f64]) -> bool {
    let len = values.len();
    (0..len / 2).all(|i| approx_eq(values[i], values[len - 1 - i]))
}

fn check_t(t: f64, ok: bool, range: &'static str) -> Result<()> {
    if ok {
        Ok(())
    } else {
        Err(LabError::OutOfRange {
            name: "t",
            value: t,
            range,
        })
    }
}

/// `T` is complex symmetric iff `|λ_i| = |λ_{n-i}|` for `1 ≤ i ≤ n-1`.
pub fn cs_criterion(s: &WeightedShift) -> bool {
    is_palindrome(&s.moduli())
}

/// `T^D` is complex symmetric iff `|λ_i| = |λ_{n-1-i}|` for `1 ≤ i ≤ n-2`.
/// Vacuous for `n ≤ 3`.
pub fn duggal_cs_criterion(s: &WeightedShift) -> bool {
    let m = s.moduli();
    is_palindrome(&m[..m.len() - 1])
}

/// Weights of the compressed shift inside `T̃(t) = 0 ⊕ shift(μ)`:
/// `μ_i = |λ_i|^t |λ_{i+1}|^{1-t}`, `1 ≤ i ≤ n-2`.
pub fn aluthge_weights(s: &WeightedShift, t: f64) -> Vec<f64> {
    let m = s.moduli();
    m.windows(2)
        .map(|w| libm::pow(w[0], t) * libm::pow(w[1], 1.0 - t))
        .collect()
}

/// `T̃(t)` is complex symmetric, `t ∈ (0, 1]`, iff
/// `|λ_i|^t |λ_{i+1}|^{1-t} = |λ_{n-1-i}|^t |λ_{n-i}|^{1-t}` for `1 ≤ i ≤ n-2`.
pub fn aluthge_cs_criterion(s: &WeightedShift, t: f64) -> Result<bool> {
    check_t(t, t > 0.0 && t <= 1.0, "(0, 1]")?;
    Ok(is_palindrome(&aluthge_weights(s, t)))
}

/// Superdiagonal moduli of the mean transform `T̂(0) = (T + T^D)/2`:
/// `(|λ_1|/2, (|λ_1|+|λ_2|)/2, …, (|λ_{n-2}|+|λ_{n-1}|)/2)`.
pub fn mean_zero_weights(s: &WeightedShift) -> Vec<f64> {
    let m = s.moduli();
    let mut out = Vec::with_capacity(m.len());
    out.push(m[0] / 2.0);
    out.extend(m.windows(2).map(|w| (w[0] + w[1]) / 2.0));
    out
}

/// `T̂(t)` is complex symmetric for `t ∈ [0, 1/2]`.
///
/// For `t > 0` the compressed weights are `μ_i(t) + μ_i(1-t)` (halved, which
/// does not affect the comparison). At `t = 0` the full mean-transform shift
/// [`mean_zero_weights`] is tested directly; its first weight is positive.
pub fn mean_cs_criterion(s: &WeightedShift, t: f64) -> Result<bool> {
    check_t(t, (0.0..=0.5).contains(&t), "[0, 1/2]")?;
    if t == 0.0 {
        return Ok(is_palindrome(&mean_zero_weights(s)));
    }
    let a = aluthge_weights(s, t);
    let b = aluthge_weights(s, 1.0 - t);
    let sums: Vec<f64> = a.iter().zip(&b).map(|(x, y)| x + y).collect();
    Ok(is_palindrome(&sums))
}

/// `T` and `T^D` are both complex symmetric iff all `|λ_i|` coincide.
pub fn both_cs_criterion(s: &WeightedShift) -> bool {
    let m = s.moduli();
    m.iter().all(|&x| approx_eq(x, m[0]))
}

/// `C(z_1, …, z_n) = (conj z_n, …, conj z_1)`.
pub fn flip_conjugation(n: usize) -> AntilinearMap {
    let m = ComplexMatrix::from_fn(n, n, |i, j| {
        if i + j + 1 == n {
            ONE
        } else {
            C64::new(0.0, 0.0)
        }
    });
    AntilinearMap::new(m).expect("exchange matrix is square")
}
