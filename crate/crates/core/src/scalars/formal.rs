use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};

use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;

use super::gaussian::GaussianRational;
use super::text::{format_sum, Term};
use crate::error::{Error, Result};

/// Default truncation order for formal computations.
pub const DEFAULT_TRUNCATION: u32 = 8;

/// A power series in ħ with Gaussian-rational coefficients, truncated
/// after `ħ^N`.
///
/// Stored densely: `coeffs[k]` is the coefficient of `ħ^k` and
/// `coeffs.len() == N + 1`. Binary operations on operands with different
/// truncations produce a result at the smaller one.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct FormalScalar {
    coeffs: Vec<GaussianRational>,
}

impl FormalScalar {
    pub fn zero(truncation: u32) -> Self {
        Self {
            coeffs: vec![GaussianRational::zero(); truncation as usize + 1],
        }
    }

    pub fn one(truncation: u32) -> Self {
        Self::constant(truncation, GaussianRational::one())
    }

    pub fn constant(truncation: u32, c: GaussianRational) -> Self {
        let mut s = Self::zero(truncation);
        s.coeffs[0] = c;
        s
    }

    pub fn rational(truncation: u32, r: BigRational) -> Self {
        Self::constant(truncation, GaussianRational::real(r))
    }

    pub fn integer(truncation: u32, n: i64) -> Self {
        Self::constant(truncation, GaussianRational::from_integer(n))
    }

    /// `c * ħ^order`; zero when `order` exceeds the truncation.
    pub fn monomial(truncation: u32, order: u32, c: GaussianRational) -> Self {
        let mut s = Self::zero(truncation);
        if order <= truncation {
            s.coeffs[order as usize] = c;
        }
        s
    }

    /// The formal parameter ħ itself.
    pub fn hbar(truncation: u32) -> Self {
        Self::monomial(truncation, 1, GaussianRational::one())
    }

    /// `-iħ`, the deformation parameter of the physics presets.
    pub fn minus_i_hbar(truncation: u32) -> Self {
        Self::monomial(truncation, 1, -GaussianRational::i())
    }

    /// `iħ`, the bracket scale of the rescaled enveloping algebra.
    pub fn i_hbar(truncation: u32) -> Self {
        Self::monomial(truncation, 1, GaussianRational::i())
    }

    /// Builds a series from `(order, coefficient)` pairs, dropping
    /// orders beyond the truncation.
    pub fn from_terms<I>(truncation: u32, terms: I) -> Self
    where
        I: IntoIterator<Item = (u32, GaussianRational)>,
    {
        let mut s = Self::zero(truncation);
        for (k, c) in terms {
            if k <= truncation {
                s.coeffs[k as usize] += &c;
            }
        }
        s
    }

    pub fn truncation(&self) -> u32 {
        (self.coeffs.len() - 1) as u32
    }

    /// Coefficient of `ħ^k` (zero beyond the truncation).
    pub fn coeff(&self, k: u32) -> GaussianRational {
        self.coeffs
            .get(k as usize)
            .cloned()
            .unwrap_or_else(GaussianRational::zero)
    }

    pub fn coeffs(&self) -> &[GaussianRational] {
        &self.coeffs
    }

    /// Nonzero `(order, coefficient)` pairs in increasing order.
    pub fn terms(&self) -> impl Iterator<Item = (u32, &GaussianRational)> {
        self.coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(k, c)| (k as u32, c))
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(GaussianRational::is_zero)
    }

    pub fn is_one(&self) -> bool {
        self.coeffs[0].is_one() && self.coeffs[1..].iter().all(GaussianRational::is_zero)
    }

    /// Lowest order with a nonzero coefficient.
    pub fn valuation(&self) -> Option<u32> {
        self.terms().next().map(|(k, _)| k)
    }

    /// Re-truncates at `n`, padding with zeros when `n` is larger.
    pub fn with_truncation(&self, n: u32) -> Self {
        let mut coeffs: Vec<_> = self.coeffs.iter().take(n as usize + 1).cloned().collect();
        coeffs.resize(n as usize + 1, GaussianRational::zero());
        Self { coeffs }
    }

    /// Complex conjugation with ħ treated as real.
    pub fn conj(&self) -> Self {
        Self {
            coeffs: self.coeffs.iter().map(GaussianRational::conj).collect(),
        }
    }

    pub fn scale(&self, r: &BigRational) -> Self {
        Self {
            coeffs: self.coeffs.iter().map(|c| c.scale(r)).collect(),
        }
    }

    pub fn scale_gaussian(&self, g: &GaussianRational) -> Self {
        Self {
            coeffs: self.coeffs.iter().map(|c| c * g).collect(),
        }
    }

    /// Multiplies by `ħ^k`, dropping what falls past the truncation.
    pub fn shift(&self, k: u32) -> Self {
        let n = self.coeffs.len();
        let mut out = Self::zero(self.truncation());
        for j in 0..n.saturating_sub(k as usize) {
            out.coeffs[j + k as usize] = self.coeffs[j].clone();
        }
        out
    }

    pub fn pow(&self, exp: u32) -> Self {
        let mut acc = Self::one(self.truncation());
        for _ in 0..exp {
            acc = &acc * self;
        }
        acc
    }

    /// Truncated multiplicative inverse.
    pub fn invert(&self) -> Result<Self> {
        let a0_inv = self.coeffs[0].inv().ok_or_else(|| {
            Error::NotInvertible("formal scalar has zero constant term".into())
        })?;
        let n = self.coeffs.len();
        let mut b = vec![GaussianRational::zero(); n];
        b[0] = a0_inv.clone();
        for k in 1..n {
            let mut acc = GaussianRational::zero();
            for j in 1..=k {
                if self.coeffs[j].is_zero() || b[k - j].is_zero() {
                    continue;
                }
                acc += &(&self.coeffs[j] * &b[k - j]);
            }
            b[k] = -(&acc * &a0_inv);
        }
        Ok(Self { coeffs: b })
    }

    /// `exp(self)` for a series without constant term; the exponential
    /// series then terminates at the truncation.
    pub fn exp(&self) -> Result<Self> {
        if !self.coeffs[0].is_zero() {
            return Err(Error::InvalidInput(
                "formal exponential requires zero constant term".into(),
            ));
        }
        let n = self.truncation();
        let mut acc = Self::one(n);
        let mut power = Self::one(n);
        for k in 1..=n {
            power = &power * self;
            let inv_fact = BigRational::new(BigInt::from(1), factorial(k));
            acc += &power.scale(&inv_fact);
        }
        Ok(acc)
    }

    /// Numeric value at a real ħ.
    pub fn evaluate_at(&self, hbar: f64) -> Complex64 {
        let mut acc = Complex64::new(0.0, 0.0);
        let mut hk = 1.0;
        for c in &self.coeffs {
            if !c.is_zero() {
                acc += c.to_complex() * hk;
            }
            hk *= hbar;
        }
        acc
    }

    /// The largest `max(|re|, |im|)` over all coefficients.
    pub fn max_abs_part(&self) -> BigRational {
        self.coeffs
            .iter()
            .map(GaussianRational::max_abs_part)
            .max()
            .unwrap_or_else(|| BigRational::from_integer(0.into()))
    }

    fn zip_with(
        &self,
        other: &Self,
        f: impl Fn(&GaussianRational, &GaussianRational) -> GaussianRational,
    ) -> Self {
        let n = self.coeffs.len().min(other.coeffs.len());
        Self {
            coeffs: (0..n).map(|k| f(&self.coeffs[k], &other.coeffs[k])).collect(),
        }
    }
}

pub(crate) fn factorial(k: u32) -> BigInt {
    (1..=k).fold(BigInt::from(1), |acc, j| acc * BigInt::from(j))
}

impl fmt::Display for FormalScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms = self.terms().map(|(k, c)| Term::new(c.clone(), hbar_factor(k)));
        f.write_str(&format_sum(terms))
    }
}

/// Text factor for `ħ^k` (`None` for `k = 0`).
pub(crate) fn hbar_factor(k: u32) -> Vec<String> {
    match k {
        0 => vec![],
        1 => vec!["h".to_string()],
        _ => vec![format!("h^{k}")],
    }
}

impl Neg for FormalScalar {
    type Output = FormalScalar;
    fn neg(self) -> Self {
        Self {
            coeffs: self.coeffs.into_iter().map(|c| -c).collect(),
        }
    }
}

impl Neg for &FormalScalar {
    type Output = FormalScalar;
    fn neg(self) -> FormalScalar {
        FormalScalar {
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

impl Add<&FormalScalar> for &FormalScalar {
    type Output = FormalScalar;
    fn add(self, o: &FormalScalar) -> FormalScalar {
        self.zip_with(o, |a, b| a + b)
    }
}

impl Sub<&FormalScalar> for &FormalScalar {
    type Output = FormalScalar;
    fn sub(self, o: &FormalScalar) -> FormalScalar {
        self.zip_with(o, |a, b| a - b)
    }
}

impl Mul<&FormalScalar> for &FormalScalar {
    type Output = FormalScalar;
    fn mul(self, o: &FormalScalar) -> FormalScalar {
        let n = self.coeffs.len().min(o.coeffs.len());
        let mut out = vec![GaussianRational::zero(); n];
        for (i, a) in self.coeffs.iter().take(n).enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in o.coeffs.iter().take(n - i).enumerate() {
                if b.is_zero() {
                    continue;
                }
                out[i + j] += &(a * b);
            }
        }
        FormalScalar { coeffs: out }
    }
}

impl Add<&FormalScalar> for FormalScalar {
    type Output = FormalScalar;
    fn add(mut self, o: &FormalScalar) -> FormalScalar {
        self += o;
        self
    }
}

impl Sub<&FormalScalar> for FormalScalar {
    type Output = FormalScalar;
    fn sub(mut self, o: &FormalScalar) -> FormalScalar {
        self -= o;
        self
    }
}

impl Mul<&FormalScalar> for FormalScalar {
    type Output = FormalScalar;
    fn mul(self, o: &FormalScalar) -> FormalScalar {
        &self * o
    }
}

impl AddAssign<&FormalScalar> for FormalScalar {
    fn add_assign(&mut self, o: &FormalScalar) {
        self.coeffs.truncate(o.coeffs.len());
        for (a, b) in self.coeffs.iter_mut().zip(&o.coeffs) {
            if !b.is_zero() {
                *a += b;
            }
        }
    }
}

impl SubAssign<&FormalScalar> for FormalScalar {
    fn sub_assign(&mut self, o: &FormalScalar) {
        self.coeffs.truncate(o.coeffs.len());
        for (a, b) in self.coeffs.iter_mut().zip(&o.coeffs) {
            if !b.is_zero() {
                *a -= b;
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn gi(re: i64, im: i64) -> GaussianRational {
        GaussianRational::new(
            BigRational::from_integer(re.into()),
            BigRational::from_integer(im.into()),
        )
    }

    #[test]
    fn geometric_series_inverse() {
        let n = 8;
        let a = &FormalScalar::one(n) + &FormalScalar::hbar(n);
        let alternating = FormalScalar::from_terms(
            n,
            (0..=n).map(|k| (k, GaussianRational::from_integer(if k % 2 == 0 { 1 } else { -1 }))),
        );
        assert!((&a * &alternating).is_one());
        assert_eq!(a.invert().unwrap(), alternating);
    }

    #[test]
    fn hbar_is_not_invertible() {
        let err = FormalScalar::hbar(8).invert().unwrap_err();
        assert!(matches!(err, Error::NotInvertible(_)));
    }

    #[test]
    fn difference_of_squares() {
        let n = 4;
        let a = FormalScalar::from_terms(n, [(0, gi(2, 0)), (1, gi(0, 1))]);
        let b = FormalScalar::from_terms(n, [(0, gi(2, 0)), (1, gi(0, -1))]);
        let expected = FormalScalar::from_terms(n, [(0, gi(4, 0)), (2, gi(1, 0))]);
        assert_eq!(&a * &b, expected);
    }

    #[test]
    fn mixed_truncation_takes_minimum() {
        let a = FormalScalar::one(3);
        let b = FormalScalar::hbar(6);
        assert_eq!((&a + &b).truncation(), 3);
        assert_eq!((&a * &b).truncation(), 3);
    }

    #[test]
    fn products_truncate() {
        let h = FormalScalar::hbar(2);
        assert!(h.pow(3).is_zero());
        assert_eq!(h.pow(2).coeff(2), GaussianRational::one());
    }

    #[test]
    fn exp_of_nilpotent() {
        let z = FormalScalar::minus_i_hbar(4);
        let e = z.exp().unwrap();
        let back = (-&z).exp().unwrap();
        assert!((&e * &back).is_one());
        assert!(FormalScalar::one(4).exp().is_err());
    }

    #[test]
    fn display() {
        let n = 3;
        let a = FormalScalar::from_terms(
            n,
            [(0, GaussianRational::from_ratio(1, 2)), (1, gi(0, -1)), (2, gi(3, 1))],
        );
        assert_eq!(a.to_string(), "1/2 - i*h + (3 + i)*h^2");
        assert_eq!(FormalScalar::zero(n).to_string(), "0");
    }
}
