//! Coefficient domains: exact Gaussian rationals, truncated power series
//! in ħ over them, and double-precision complex numbers.

mod formal;
mod gaussian;
mod numeric;
pub mod text;

use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};

pub use formal::{FormalScalar, DEFAULT_TRUNCATION};
pub(crate) use formal::{factorial, hbar_factor};
pub use gaussian::{canonical_rational, GaussianRational};
pub use numeric::NumericScalar;

/// Which coefficient ring a polynomial lives over.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ScalarDomain {
    Formal,
    Numeric,
}

impl fmt::Display for ScalarDomain {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ScalarDomain::Formal => "formal",
            ScalarDomain::Numeric => "numeric",
        })
    }
}

/// The ring operations every coefficient domain provides.
///
/// Constants are built from an existing value (`one_like`, `zero_like`)
/// because a formal scalar carries its truncation order.
pub trait Scalar:
    Clone
    + fmt::Debug
    + PartialEq
    + Send
    + Sync
    + 'static
    + Neg<Output = Self>
    + for<'a> Add<&'a Self, Output = Self>
    + for<'a> Sub<&'a Self, Output = Self>
    + for<'a> Mul<&'a Self, Output = Self>
    + for<'a> AddAssign<&'a Self>
    + for<'a> SubAssign<&'a Self>
{
    const DOMAIN: ScalarDomain;

    fn is_zero(&self) -> bool;
    fn zero_like(&self) -> Self;
    fn one_like(&self) -> Self;
    fn scale(&self, r: &BigRational) -> Self;
    fn conj(&self) -> Self;
    /// Embeds an exact constant into the domain of `self`.
    fn constant_like(&self, c: &GaussianRational) -> Self;

    fn mul_int(&self, k: u64) -> Self {
        self.scale(&BigRational::from_integer(BigInt::from(k)))
    }

    fn pow(&self, exp: u32) -> Self {
        let mut acc = self.one_like();
        for _ in 0..exp {
            acc = acc * self;
        }
        acc
    }
}

impl Scalar for FormalScalar {
    const DOMAIN: ScalarDomain = ScalarDomain::Formal;

    fn is_zero(&self) -> bool {
        FormalScalar::is_zero(self)
    }
    fn zero_like(&self) -> Self {
        FormalScalar::zero(self.truncation())
    }
    fn one_like(&self) -> Self {
        FormalScalar::one(self.truncation())
    }
    fn scale(&self, r: &BigRational) -> Self {
        FormalScalar::scale(self, r)
    }
    fn conj(&self) -> Self {
        FormalScalar::conj(self)
    }
    fn constant_like(&self, c: &GaussianRational) -> Self {
        FormalScalar::constant(self.truncation(), c.clone())
    }
    fn pow(&self, exp: u32) -> Self {
        FormalScalar::pow(self, exp)
    }
}

impl Scalar for NumericScalar {
    const DOMAIN: ScalarDomain = ScalarDomain::Numeric;

    fn is_zero(&self) -> bool {
        self.0.re == 0.0 && self.0.im == 0.0
    }
    fn zero_like(&self) -> Self {
        NumericScalar::real(0.0)
    }
    fn one_like(&self) -> Self {
        NumericScalar::real(1.0)
    }
    fn scale(&self, r: &BigRational) -> Self {
        let f = if r.is_zero() { 0.0 } else { r.to_f64().unwrap_or(f64::NAN) };
        NumericScalar(self.0 * f)
    }
    fn conj(&self) -> Self {
        NumericScalar(self.0.conj())
    }
    fn constant_like(&self, c: &GaussianRational) -> Self {
        NumericScalar(c.to_complex())
    }
}
