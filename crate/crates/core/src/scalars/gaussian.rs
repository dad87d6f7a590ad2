use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};

use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

/// An exact complex number `re + im*i` with rational parts.
///
/// `BigRational` keeps both parts in lowest terms with a positive
/// denominator, so structural equality is numeric equality.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct GaussianRational {
    re: BigRational,
    im: BigRational,
}

impl Default for GaussianRational {
    fn default() -> Self {
        Self::zero()
    }
}

impl GaussianRational {
    pub fn new(re: BigRational, im: BigRational) -> Self {
        Self { re, im }
    }

    pub fn zero() -> Self {
        Self::new(BigRational::zero(), BigRational::zero())
    }

    pub fn one() -> Self {
        Self::real(BigRational::one())
    }

    /// The imaginary unit.
    pub fn i() -> Self {
        Self::new(BigRational::zero(), BigRational::one())
    }

    pub fn real(re: BigRational) -> Self {
        Self::new(re, BigRational::zero())
    }

    pub fn imag(im: BigRational) -> Self {
        Self::new(BigRational::zero(), im)
    }

    pub fn from_integer(n: i64) -> Self {
        Self::real(BigRational::from_integer(BigInt::from(n)))
    }

    pub fn from_ratio(num: i64, den: i64) -> Self {
        Self::real(BigRational::new(BigInt::from(num), BigInt::from(den)))
    }

    pub fn re(&self) -> &BigRational {
        &self.re
    }

    pub fn im(&self) -> &BigRational {
        &self.im
    }

    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.re.is_one() && self.im.is_zero()
    }

    pub fn is_real(&self) -> bool {
        self.im.is_zero()
    }

    pub fn conj(&self) -> Self {
        Self::new(self.re.clone(), -self.im.clone())
    }

    pub fn norm_sqr(&self) -> BigRational {
        &self.re * &self.re + &self.im * &self.im
    }

    /// Multiplicative inverse; `None` for zero.
    pub fn inv(&self) -> Option<Self> {
        if self.is_zero() {
            return None;
        }
        let n = self.norm_sqr();
        Some(Self::new(&self.re / &n, -(&self.im / &n)))
    }

    pub fn scale(&self, r: &BigRational) -> Self {
        Self::new(&self.re * r, &self.im * r)
    }

    /// `max(|re|, |im|)`, an exact size measure used in defect reports.
    pub fn max_abs_part(&self) -> BigRational {
        let (a, b) = (self.re.abs(), self.im.abs());
        if a >= b {
            a
        } else {
            b
        }
    }

    pub fn to_complex(&self) -> Complex64 {
        Complex64::new(
            self.re.to_f64().unwrap_or(f64::NAN),
            self.im.to_f64().unwrap_or(f64::NAN),
        )
    }

    pub fn pow(&self, exp: u32) -> Self {
        let mut acc = Self::one();
        for _ in 0..exp {
            acc = &acc * self;
        }
        acc
    }
}

/// Canonical text form `a/b+c/d*i` (both parts always present).
impl fmt::Display for GaussianRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let im_sign = if self.im.is_negative() { "-" } else { "+" };
        write!(
            f,
            "{}{}{}*i",
            canonical_rational(&self.re),
            im_sign,
            canonical_rational(&self.im.abs())
        )
    }
}

/// `p/q` with `q > 0` and `gcd(p, q) = 1`, denominator always written.
pub fn canonical_rational(r: &BigRational) -> String {
    format!("{}/{}", r.numer(), r.denom())
}

impl Neg for GaussianRational {
    type Output = GaussianRational;
    fn neg(self) -> Self {
        Self::new(-self.re, -self.im)
    }
}

impl Neg for &GaussianRational {
    type Output = GaussianRational;
    fn neg(self) -> GaussianRational {
        GaussianRational::new(-self.re.clone(), -self.im.clone())
    }
}

impl Add<&GaussianRational> for &GaussianRational {
    type Output = GaussianRational;
    fn add(self, o: &GaussianRational) -> GaussianRational {
        GaussianRational::new(&self.re + &o.re, &self.im + &o.im)
    }
}

impl Sub<&GaussianRational> for &GaussianRational {
    type Output = GaussianRational;
    fn sub(self, o: &GaussianRational) -> GaussianRational {
        GaussianRational::new(&self.re - &o.re, &self.im - &o.im)
    }
}

impl Mul<&GaussianRational> for &GaussianRational {
    type Output = GaussianRational;
    fn mul(self, o: &GaussianRational) -> GaussianRational {
        if self.im.is_zero() && o.im.is_zero() {
            return GaussianRational::real(&self.re * &o.re);
        }
        GaussianRational::new(
            &self.re * &o.re - &self.im * &o.im,
            &self.re * &o.im + &self.im * &o.re,
        )
    }
}

impl Add<&GaussianRational> for GaussianRational {
    type Output = GaussianRational;
    fn add(mut self, o: &GaussianRational) -> GaussianRational {
        self += o;
        self
    }
}

impl Sub<&GaussianRational> for GaussianRational {
    type Output = GaussianRational;
    fn sub(mut self, o: &GaussianRational) -> GaussianRational {
        self -= o;
        self
    }
}

impl Mul<&GaussianRational> for GaussianRational {
    type Output = GaussianRational;
    fn mul(self, o: &GaussianRational) -> GaussianRational {
        &self * o
    }
}

impl AddAssign<&GaussianRational> for GaussianRational {
    fn add_assign(&mut self, o: &GaussianRational) {
        self.re += &o.re;
        self.im += &o.im;
    }
}

impl SubAssign<&GaussianRational> for GaussianRational {
    fn sub_assign(&mut self, o: &GaussianRational) {
        self.re -= &o.re;
        self.im -= &o.im;
    }
}

impl From<BigRational> for GaussianRational {
    fn from(r: BigRational) -> Self {
        Self::real(r)
    }
}

impl From<i64> for GaussianRational {
    fn from(n: i64) -> Self {
        Self::from_integer(n)
    }
}
