use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};

use num_complex::Complex64;

use crate::error::{Error, Result};

/// A double-precision complex number used by the analysis diagnostics.
#[derive(Clone, Copy, PartialEq, Debug, Default)]
pub struct NumericScalar(pub Complex64);

impl NumericScalar {
    /// Fails on NaN or infinite parts.
    pub fn new(re: f64, im: f64) -> Result<Self> {
        Self(Complex64::new(re, im)).checked()
    }

    pub fn real(re: f64) -> Self {
        Self(Complex64::new(re, 0.0))
    }

    pub fn value(&self) -> Complex64 {
        self.0
    }

    pub fn abs(&self) -> f64 {
        self.0.norm()
    }

    pub fn is_finite(&self) -> bool {
        self.0.re.is_finite() && self.0.im.is_finite()
    }

    pub fn checked(self) -> Result<Self> {
        if self.is_finite() {
            Ok(self)
        } else {
            Err(Error::NonFinite)
        }
    }
}

impl fmt::Display for NumericScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.im == 0.0 {
            write!(f, "{}", self.0.re)
        } else {
            write!(f, "({}{:+}*i)", self.0.re, self.0.im)
        }
    }
}

impl Neg for NumericScalar {
    type Output = NumericScalar;
    fn neg(self) -> Self {
        Self(-self.0)
    }
}

impl Add<&NumericScalar> for NumericScalar {
    type Output = NumericScalar;
    fn add(self, o: &NumericScalar) -> Self {
        Self(self.0 + o.0)
    }
}

impl Sub<&NumericScalar> for NumericScalar {
    type Output = NumericScalar;
    fn sub(self, o: &NumericScalar) -> Self {
        Self(self.0 - o.0)
    }
}

impl Mul<&NumericScalar> for NumericScalar {
    type Output = NumericScalar;
    fn mul(self, o: &NumericScalar) -> Self {
        Self(self.0 * o.0)
    }
}

impl AddAssign<&NumericScalar> for NumericScalar {
    fn add_assign(&mut self, o: &NumericScalar) {
        self.0 += o.0;
    }
}

impl SubAssign<&NumericScalar> for NumericScalar {
    fn sub_assign(&mut self, o: &NumericScalar) {
        self.0 -= o.0;
    }
}

impl From<Complex64> for NumericScalar {
    fn from(c: Complex64) -> Self {
        Self(c)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_non_finite() {
        assert!(NumericScalar::new(f64::NAN, 0.0).is_err());
        assert!(NumericScalar::new(1.0, f64::INFINITY).is_err());
        assert!(NumericScalar::new(1.0, 2.0).is_ok());
    }
}
