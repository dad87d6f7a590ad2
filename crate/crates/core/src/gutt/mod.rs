//! The linear Poisson structure on `g*` and its Gutt quantization.
//!
//! Polynomials on `g*` use the basis names of `g` as coordinates, so
//! `{X, Y} = Z` on the Heisenberg algebra.
//!
//! The enveloping algebra is taken in its ħ-rescaled form
//! `ξ_i ξ_j − ξ_j ξ_i = iħ [ξ_i, ξ_j]`. If `η_i` are generators of the
//! ordinary `U(g)`, then `ξ_i = iħ η_i` satisfies exactly these
//! relations, and a symmetrized word of length `k` in the `ξ` is `(iħ)^k`
//! times the same word in the `η`. The rescaled symmetrizer therefore
//! already carries the `(iħ)^k` factor, and all coefficients stay in the
//! ħ-series ring. A side effect is that the BCH statement reads
//! `e^ξ ⋆ e^η = exp(Σ_m (iħ)^{m−1} L_m(ξ, η))` with `L_m` the degree-`m`
//! Dynkin term; see [`check_bch_property`].
//!
//! PBW monomials are non-decreasing words in the basis order.

mod algebra;
mod bch;
mod pbw;
mod ue;

pub use algebra::{BracketJson, LieAlgebra, LieAlgebraJson};
pub use bch::{bch, bch_with_cap, check_bch_property, BchReport, BchWindow, LieSeries, BCH_ORDER_CAP};
pub use pbw::{gutt_star, kks_bracket, pbw_symmetrize, pbw_symmetrize_inverse};
pub use ue::{ue_multiply, ue_normal_order, RewriteStrategy, UEElement, Word};
