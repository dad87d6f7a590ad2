//! Exact formal star products on flat and linear Poisson structures.
//!
//! The crate is organised bottom-up:
//!
//! - [`scalars`]: Gaussian rationals, truncated power series in ħ, and a
//!   floating-point complex domain.
//! - [`symalg`]: the symmetric algebra as sparse polynomials.
//! - [`starprod`]: constant-coefficient star products, orderings and
//!   operator representations.
//! - [`gutt`]: the linear Poisson structure on the dual of a Lie algebra,
//!   PBW straightening, the Gutt product and BCH.
//! - [`analysis`]: `p_R` seminorms and convergence diagnostics.
//! - [`oracle`]: slow reference implementations used to cross-check.
//! - [`parse`], [`session`], [`verify`]: the expression language, session
//!   configuration, and the verification suites behind `starq verify`.

pub mod analysis;
pub mod error;
pub mod gutt;
pub mod oracle;
pub mod parse;
pub mod scalars;
pub mod session;
pub mod starprod;
pub mod symalg;
pub mod verify;

pub use error::{Error, Result};
