//! Seminorms `p_R(a) = Σ_k k!^R p^{⊗k}(a_k)` and diagnostics for the
//! completion: exponentials, Weyl relations, translations.
//!
//! `p` is a weighted ℓ¹ norm on `V`, so the projective tensor norm
//! `p^{⊗k}` is the weighted ℓ¹ norm of the tensor coefficients and needs
//! no infimum. Symmetric tensors enter `V^{⊗k}` through the
//! symmetrization projector (with its `1/k!`).
//!
//! Exact identities between exponentials are only checked on a window of
//! graded components whose inputs are all present; see [`ExpWindow`].

mod continuity;
mod exponential;
mod identities;
mod seminorm;

pub use continuity::{continuity_diagnostic, ContinuityReport};
pub use exponential::{
    exponential_convergence_report, exponential_norm_closed_form, truncated_exponential, ConvergenceReport,
    ConvergenceStatus, TruncatedElement, DIVERGENCE_BOUND, TAIL_TOLERANCE,
};
pub use identities::{
    inner_automorphism_defect, musical_shift, translation_automorphism_defect, weyl_relation_defect, DefectReport,
    ExpWindow, WindowJson,
};
pub use seminorm::{seminorm_p_r, tensor_norm, tensor_norm_by_words, SeminormSpec};

/// Relative tolerance for floating-point comparisons.
pub const RELATIVE_TOLERANCE: f64 = 1e-12;

/// `|a - b| ≤ tol · max(|a|, |b|, 1e-300)`.
pub fn close_relative(a: f64, b: f64, tol: f64) -> bool {
    (a - b).abs() <= tol * a.abs().max(b.abs()).max(1e-300)
}

#[cfg(test)]
mod tests;
