//! Numerical complex-symmetry certifier.
//!
//! `T` is complex symmetric iff some unitary `V` makes `A = V* T V` symmetric.
//! The certifier minimizes `f(V) = ‖A − Aᵀ‖_F²` over the unitary group by
//! retracted gradient descent with backtracking (Cayley retraction), then
//! polishes the best point with damped Gauss-Newton steps on the same
//! manifold. A successful run yields the certificate `J = V Vᵀ`, which is
//! unitary and symmetric and satisfies `T J − J Tᵀ = V (A − Aᵀ) Vᵀ`.

use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::error::{LabError, Result};
use crate::matrix::{ComplexMatrix, C64, ZERO};
use crate::sampling::SeededRng;

/// Iterates drifting further than this from the unitary group are re-orthonormalized.
const UNITARITY_GUARD: f64 = 1e-9;
/// Gradient descent hands over to the Gauss-Newton polish below this
/// normalized residual.
const DESCENT_HANDOVER: f64 = 1e-6;

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct CertifyConfig {
    pub seed: u64,
    pub restarts: usize,
    pub max_iters: usize,
    pub initial_step: f64,
    pub backtrack: f64,
    pub tau_yes: f64,
    pub tau_no: f64,
    /// Damped Gauss-Newton iterations run after the descent phase.
    pub polish_iters: usize,
}

impl Default for CertifyConfig {
    fn default() -> Self {
        Self {
            seed: 0x5EED,
            restarts: 16,
            max_iters: 500,
            initial_step: 0.1,
            backtrack: 0.5,
            tau_yes: 1e-7,
            tau_no: 1e-3,
            polish_iters: 60,
        }
    }
}

impl CertifyConfig {
    fn validate(&self) -> Result<()> {
        let bad = |name, value: f64, range| Err(LabError::OutOfRange { name, value, range });
        if self.restarts == 0 {
            return bad("restarts", 0.0, ">= 1");
        }
        if !(self.initial_step > 0.0 && self.initial_step.is_finite()) {
            return bad("initial_step", self.initial_step, "(0, inf)");
        }
        if !(self.backtrack > 0.0 && self.backtrack < 1.0) {
            return bad("backtrack", self.backtrack, "(0, 1)");
        }
        if !(self.tau_yes > 0.0 && self.tau_yes < self.tau_no && self.tau_no.is_finite()) {
            return bad("tau_yes", self.tau_yes, "(0, tau_no)");
        }
        Ok(())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CsStatus {
    Cs,
    NotCs,
    Inconclusive,
}

impl fmt::Display for CsStatus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            CsStatus::Cs => "CS",
            CsStatus::NotCs => "NotCS",
            CsStatus::Inconclusive => "Inconclusive",
        })
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct SymmetryVerdict {
    pub status: CsStatus,
    /// Best `‖T J − J Tᵀ‖_F` over all restarts (absolute).
    pub residual: f64,
    /// `J = V Vᵀ`; present whenever `status` is `Cs`.
    pub certificate: Option<ComplexMatrix>,
    pub restarts_used: usize,
    pub seed: u64,
    /// Largest `‖V*V − I‖_F` seen on an accepted iterate.
    pub max_unitarity_defect: f64,
}

impl SymmetryVerdict {
    pub fn is_cs(&self) -> bool {
        self.status == CsStatus::Cs
    }
}

/// `f(V) = ‖A − Aᵀ‖_F²` with `A = V* T V`.
pub fn objective(t: &ComplexMatrix, v: &ComplexMatrix) -> f64 {
    let a = &(&v.adjoint() * t) * v;
    let s = &a - &a.transpose();
    s.frobenius_norm_sqr()
}

/// Skew-Hermitian `Ω` such that `d/dε f(V (I + εX))|₀ = Re tr(Ω* X)` for
/// every skew-Hermitian `X`.
pub fn riemannian_gradient(t: &ComplexMatrix, v: &ComplexMatrix) -> ComplexMatrix {
    let a = &(&v.adjoint() * t) * v;
    gradient_at(&a)
}

fn gradient_at(a: &ComplexMatrix) -> ComplexMatrix {
    let s = a - &a.transpose();
    let ah = a.adjoint();
    let g = &(&ah * &s) - &(&s * &ah);
    g.skew_hermitian_part().scale_real(4.0)
}

/// `(I − X/2)⁻¹ (I + X/2)`, unitary for skew-Hermitian `X`.
fn cayley(x: &ComplexMatrix) -> ComplexMatrix {
    let n = x.rows();
    let half = x.scale_real(0.5);
    let id = ComplexMatrix::identity(n);
    let lhs = &id - &half;
    let rhs = &id + &half;
    lhs.solve(&rhs).unwrap_or(id)
}

fn unitarity_defect(v: &ComplexMatrix) -> f64 {
    (&v.adjoint() * v)
        .distance(&ComplexMatrix::identity(v.rows()))
        .unwrap_or(f64::INFINITY)
}

struct Point {
    v: ComplexMatrix,
    a: ComplexMatrix,
    f: f64,
}

impl Point {
    fn new(t: &ComplexMatrix, v: ComplexMatrix) -> Self {
        let a = &(&v.adjoint() * t) * &v;
        let f = (&a - &a.transpose()).frobenius_norm_sqr();
        Self { v, a, f }
    }
}

struct RestartOutcome {
    v: ComplexMatrix,
    max_defect: f64,
}

/// Tracks drift from the unitary group and re-orthonormalizes when needed.
fn guard(t: &ComplexMatrix, p: Point, max_defect: &mut f64) -> Point {
    let d = unitarity_defect(&p.v);
    if d > UNITARITY_GUARD {
        let mut v = p.v;
        v.orthonormalize_columns();
        let fixed = Point::new(t, v);
        *max_defect = max_defect.max(unitarity_defect(&fixed.v));
        fixed
    } else {
        *max_defect = max_defect.max(d);
        p
    }
}

fn descend(
    t: &ComplexMatrix,
    start: ComplexMatrix,
    cfg: &CertifyConfig,
    target: f64,
) -> RestartOutcome {
    let mut max_defect = 0.0;
    let mut cur = guard(t, Point::new(t, start), &mut max_defect);
    let mut step = cfg.initial_step;

    for _ in 0..cfg.max_iters {
        if libm::sqrt(cur.f) <= target.max(DESCENT_HANDOVER) {
            break;
        }
        let omega = gradient_at(&cur.a);
        if omega.frobenius_norm() <= 1e-15 {
            break;
        }
        let mut accepted = None;
        while step > 1e-16 {
            let cand = Point::new(t, &cur.v * &cayley(&omega.scale_real(-step)));
            if cand.f < cur.f {
                accepted = Some(cand);
                break;
            }
            step *= cfg.backtrack;
        }
        match accepted {
            Some(p) => {
                cur = guard(t, p, &mut max_defect);
                step = (step / cfg.backtrack).min(1.0);
            }
            None => break,
        }
    }

    polish(t, &mut cur, cfg.polish_iters, target, &mut max_defect);
    RestartOutcome {
        v: cur.v,
        max_defect,
    }
}

/// Real basis of the skew-Hermitian matrices: `i E_jj`, `E_jk − E_kj`,
/// `i (E_jk + E_kj)` for `j < k`.
fn skew_basis(n: usize) -> Vec<ComplexMatrix> {
    let mut out = Vec::with_capacity(n * n);
    let i = C64::new(0.0, 1.0);
    for j in 0..n {
        let mut m = ComplexMatrix::zeros(n, n);
        m.data_mut()[j * n + j] = i;
        out.push(m);
    }
    for j in 0..n {
        for k in j + 1..n {
            let mut re = ComplexMatrix::zeros(n, n);
            re.data_mut()[j * n + k] = C64::new(1.0, 0.0);
            re.data_mut()[k * n + j] = C64::new(-1.0, 0.0);
            out.push(re);
            let mut im = ComplexMatrix::zeros(n, n);
            im.data_mut()[j * n + k] = i;
            im.data_mut()[k * n + j] = i;
            out.push(im);
        }
    }
    out
}

/// Strict upper triangle of a skew-symmetric matrix as real coordinates.
fn upper_coords(s: &ComplexMatrix, out: &mut Vec<f64>) {
    out.clear();
    let n = s.rows();
    for j in 0..n {
        for k in j + 1..n {
            let z = s.get(j, k);
            out.push(z.re);
            out.push(z.im);
        }
    }
}

/// Levenberg-Marquardt on the residual `A − Aᵀ` with steps `V ← V · cayley(X)`.
fn polish(t: &ComplexMatrix, cur: &mut Point, iters: usize, target: f64, max_defect: &mut f64) {
    let n = t.rows();
    if iters == 0 || n < 2 {
        return;
    }
    let basis = skew_basis(n);
    let p = basis.len();
    let m = n * (n - 1);
    let mut jac = vec![0.0; m * p];
    let mut col = Vec::with_capacity(m);
    let mut r = Vec::with_capacity(m);
    let mut mu = 1e-3;

    for _ in 0..iters {
        if libm::sqrt(cur.f) <= target * 1e-3 {
            break;
        }
        let s = &cur.a - &cur.a.transpose();
        upper_coords(&s, &mut r);
        for (k, x) in basis.iter().enumerate() {
            let b = &(&cur.a * x) - &(x * &cur.a);
            let ds = &b - &b.transpose();
            upper_coords(&ds, &mut col);
            for (row, &val) in col.iter().enumerate() {
                jac[row * p + k] = val;
            }
        }
        let mut jtj = vec![0.0; p * p];
        let mut jtr = vec![0.0; p];
        for row in 0..m {
            let jr = &jac[row * p..(row + 1) * p];
            for a in 0..p {
                if jr[a] == 0.0 {
                    continue;
                }
                jtr[a] += jr[a] * r[row];
                for b in a..p {
                    jtj[a * p + b] += jr[a] * jr[b];
                }
            }
        }
        for a in 0..p {
            for b in 0..a {
                jtj[a * p + b] = jtj[b * p + a];
            }
        }

        let mut improved = false;
        for _ in 0..12 {
            let mut h = jtj.clone();
            for a in 0..p {
                h[a * p + a] += mu;
            }
            let mut delta: Vec<f64> = jtr.iter().map(|g| -g).collect();
            if !cholesky_solve(&mut h, p, &mut delta) {
                mu *= 4.0;
                continue;
            }
            let mut x = ComplexMatrix::zeros(n, n);
            for (coef, bm) in delta.iter().zip(&basis) {
                for (dst, src) in x.data_mut().iter_mut().zip(bm.as_slice()) {
                    if *src != ZERO {
                        *dst += *src * *coef;
                    }
                }
            }
            let cand = Point::new(t, &cur.v * &cayley(&x));
            if cand.f < cur.f {
                *cur = guard(t, cand, max_defect);
                mu = (mu / 3.0).max(1e-15);
                improved = true;
                break;
            }
            mu *= 4.0;
        }
        if !improved {
            break;
        }
    }
}

/// Solves `H x = b` in place for symmetric positive definite `H`.
fn cholesky_solve(h: &mut [f64], p: usize, b: &mut [f64]) -> bool {
    for j in 0..p {
        let mut d = h[j * p + j];
        for k in 0..j {
            d -= h[j * p + k] * h[j * p + k];
        }
        if !d.is_finite() || d <= 0.0 {
            return false;
        }
        let d = libm::sqrt(d);
        h[j * p + j] = d;
        for i in j + 1..p {
            let mut s = h[i * p + j];
            for k in 0..j {
                s -= h[i * p + k] * h[j * p + k];
            }
            h[i * p + j] = s / d;
        }
    }
    for i in 0..p {
        let mut s = b[i];
        for k in 0..i {
            s -= h[i * p + k] * b[k];
        }
        b[i] = s / h[i * p + i];
    }
    for i in (0..p).rev() {
        let mut s = b[i];
        for k in i + 1..p {
            s -= h[k * p + i] * b[k];
        }
        b[i] = s / h[i * p + i];
    }
    true
}

/// Decides whether `T` is complex symmetric.
///
/// Restart `k` starts from a random unitary drawn from seed `seed ^ k`. The
/// search stops at the first restart reaching `√f ≤ τ_yes (1 + ‖T‖_F)`; ties
/// among restarts resolve to the lowest index. `NotCs` means every restart
/// ended at or above `τ_no (1 + ‖T‖_F)`; anything in between is
/// `Inconclusive`.
pub fn certify_cs(t: &ComplexMatrix, cfg: &CertifyConfig) -> Result<SymmetryVerdict> {
    let n = t.ensure_square()?;
    if let Some(idx) = t
        .as_slice()
        .iter()
        .position(|z| !z.re.is_finite() || !z.im.is_finite())
    {
        return Err(LabError::NonFinite(idx));
    }
    cfg.validate()?;

    let norm = t.frobenius_norm();
    let scale = 1.0 + norm;
    let yes = cfg.tau_yes * scale;
    let no = cfg.tau_no * scale;

    if n <= 1 || norm == 0.0 {
        return Ok(SymmetryVerdict {
            status: CsStatus::Cs,
            residual: 0.0,
            certificate: Some(ComplexMatrix::identity(n)),
            restarts_used: 0,
            seed: cfg.seed,
            max_unitarity_defect: 0.0,
        });
    }

    // Work on T / ‖T‖_F; the objective scales by ‖T‖_F².
    let tn = t.scale_real(1.0 / norm);
    let target = yes / norm;

    let mut best: Option<(f64, ComplexMatrix)> = None;
    let mut max_defect: f64 = 0.0;
    let mut used = 0;
    for k in 0..cfg.restarts {
        used = k + 1;
        let mut rng = SeededRng::new(cfg.seed ^ k as u64);
        let start = rng.unitary(n);
        let out = descend(&tn, start, cfg, target);
        max_defect = max_defect.max(out.max_defect);
        let cert = &out.v * &out.v.transpose();
        let residual = (&(t * &cert) - &(&cert * &t.transpose())).frobenius_norm();
        if best.as_ref().is_none_or(|(r, _)| residual < *r) {
            best = Some((residual, cert));
        }
        if residual <= yes {
            break;
        }
    }

    let (residual, cert) = best.expect("at least one restart");
    let status = if residual <= yes {
        CsStatus::Cs
    } else if residual >= no {
        CsStatus::NotCs
    } else {
        CsStatus::Inconclusive
    };
    Ok(SymmetryVerdict {
        status,
        residual,
        certificate: (status == CsStatus::Cs).then_some(cert),
        restarts_used: used,
        seed: cfg.seed,
        max_unitarity_defect: max_defect,
    })
}
