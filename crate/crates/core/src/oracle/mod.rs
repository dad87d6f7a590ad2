//! Slow reference implementations.
//!
//! Nothing here calls into `starprod` or the straightening code in
//! `gutt`: the star product is the literal nested-loop sum over index
//! tuples on dense arrays, and BCH is read off `log(e^{ħX} e^{ħY})` in
//! the ordinary enveloping algebra with its own bubble-sort
//! straightening. Only the scalar types and the `LieAlgebra` /
//! `LieSeries` data carriers are shared.

mod bch;
mod dense;

pub use bch::naive_bch_via_ue;
pub use dense::{naive_star, DensePolynomial, DEFAULT_BOX};

#[cfg(test)]
mod tests;
