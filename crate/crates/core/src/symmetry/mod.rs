//! Conjugations, the numerical complex-symmetry certifier and the structural
//! predicates (normal, quasinormal, binormal, centered).
//!
//! A conjugation `C` is represented by the matrix `M` with `C x = M · conj(x)`.
//! `C² = I` together with `⟨Cx, Cy⟩ = ⟨y, x⟩` holds iff `M` is unitary and
//! `M = Mᵀ`, and `T = C T* C` holds iff `T · M = M · Tᵀ`. Every complex-symmetry
//! computation in this crate goes through that linear identity.

mod antilinear;
mod certify;
mod predicates;

pub use antilinear::{check_cs_with, AntilinearMap};
pub use certify::{
    certify_cs, objective, riemannian_gradient, CertifyConfig, CsStatus, SymmetryVerdict,
};
pub use predicates::{
    binormal_residuals, is_binormal, is_centered, is_normal, is_quasinormal, DEFAULT_PREDICATE_TOL,
};
