//! Operator-theory toolkit for small dense complex matrices.
//!
//! The crate covers the polar decomposition `T = U|T|` with a genuine partial
//! isometry, the Duggal, Aluthge, generalized Aluthge and generalized mean
//! transforms, the nilpotent weighted shifts `T = Σ λ_i e_i ⊗ e_{i+1}` together
//! with closed-form complex-symmetry criteria for them, and a numerical
//! certifier that searches the unitary group for a conjugation witnessing
//! `T = C T* C`.
//!
//! Everything here is `no_std` with `alloc`; file formats and the command line
//! live in the companion `cslab` crate.

#![no_std]

extern crate alloc;

#[cfg(test)]
extern crate std;

pub mod error;
pub mod matrix;
pub mod polar;
pub mod sampling;
pub mod shift;
pub mod spectral;
pub mod symmetry;

pub use error::{LabError, Result};
pub use matrix::{ComplexMatrix, C64};
pub use polar::{
    aluthge, aluthge_t, duggal, is_partial_isometry, is_unitary, mean, mean_t, polar_decompose,
    PolarParts,
};
pub use shift::{
    aluthge_cs_criterion, aluthge_weights, both_cs_criterion, cs_criterion, duggal_cs_criterion,
    flip_conjugation, mean_cs_criterion, mean_zero_weights, WeightedShift, EPS_CRIT,
};
pub use spectral::{hermitian_eig, psd_power, pseudoinverse_psd, HermitianEig, DEFAULT_RANK_TOL};
pub use symmetry::{
    binormal_residuals, certify_cs, check_cs_with, is_binormal, is_centered, is_normal,
    is_quasinormal, AntilinearMap, CertifyConfig, CsStatus, SymmetryVerdict,
};
