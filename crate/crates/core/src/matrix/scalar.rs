use std::fmt;
use std::ops::{Add, AddAssign, Div, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_complex::Complex;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// Element of ℚ(i), exact.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct GaussianScalar(Complex<BigRational>);

fn rat(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

impl GaussianScalar {
    pub fn new(re: BigRational, im: BigRational) -> Self {
        GaussianScalar(Complex::new(re, im))
    }

    pub fn from_int(n: i64) -> Self {
        Self::new(rat(n), BigRational::zero())
    }

    pub fn from_parts(re: i64, im: i64) -> Self {
        Self::new(rat(re), rat(im))
    }

    pub fn i() -> Self {
        Self::from_parts(0, 1)
    }

    pub fn zero() -> Self {
        Self::from_int(0)
    }

    pub fn one() -> Self {
        Self::from_int(1)
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn is_real(&self) -> bool {
        self.0.im.is_zero()
    }

    pub fn re(&self) -> &BigRational {
        &self.0.re
    }

    pub fn im(&self) -> &BigRational {
        &self.0.im
    }

    pub fn conj(&self) -> Self {
        GaussianScalar(self.0.conj())
    }

    /// The value as a plain integer, when it is one.
    pub fn to_integer(&self) -> Option<i64> {
        if !self.is_real() || !self.0.re.is_integer() {
            return None;
        }
        i64::try_from(self.0.re.to_integer()).ok()
    }

    /// Sign of a real value.
    pub fn real_sign(&self) -> Option<i8> {
        if !self.is_real() {
            return None;
        }
        Some(if self.0.re.is_zero() {
            0
        } else if self.0.re.is_positive() {
            1
        } else {
            -1
        })
    }
}

impl From<i64> for GaussianScalar {
    fn from(n: i64) -> Self {
        Self::from_int(n)
    }
}

impl Add for GaussianScalar {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        GaussianScalar(self.0 + rhs.0)
    }
}

impl<'a> Add<&'a GaussianScalar> for &'a GaussianScalar {
    type Output = GaussianScalar;
    fn add(self, rhs: &GaussianScalar) -> GaussianScalar {
        GaussianScalar(&self.0 + &rhs.0)
    }
}

impl AddAssign<&GaussianScalar> for GaussianScalar {
    fn add_assign(&mut self, rhs: &GaussianScalar) {
        self.0 = &self.0 + &rhs.0;
    }
}

impl Sub for GaussianScalar {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        GaussianScalar(self.0 - rhs.0)
    }
}

impl<'a> Sub<&'a GaussianScalar> for &'a GaussianScalar {
    type Output = GaussianScalar;
    fn sub(self, rhs: &GaussianScalar) -> GaussianScalar {
        GaussianScalar(&self.0 - &rhs.0)
    }
}

impl Mul for GaussianScalar {
    type Output = Self;
    fn mul(self, rhs: Self) -> Self {
        GaussianScalar(self.0 * rhs.0)
    }
}

impl<'a> Mul<&'a GaussianScalar> for &'a GaussianScalar {
    type Output = GaussianScalar;
    fn mul(self, rhs: &GaussianScalar) -> GaussianScalar {
        GaussianScalar(&self.0 * &rhs.0)
    }
}

impl<'a> Div<&'a GaussianScalar> for &'a GaussianScalar {
    type Output = GaussianScalar;
    fn div(self, rhs: &GaussianScalar) -> GaussianScalar {
        assert!(!rhs.is_zero(), "division by zero in Q(i)");
        GaussianScalar(&self.0 / &rhs.0)
    }
}

impl Neg for GaussianScalar {
    type Output = Self;
    fn neg(self) -> Self {
        GaussianScalar(-self.0)
    }
}

impl Neg for &GaussianScalar {
    type Output = GaussianScalar;
    fn neg(self) -> GaussianScalar {
        GaussianScalar(-self.0.clone())
    }
}

impl fmt::Display for GaussianScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (re, im) = (&self.0.re, &self.0.im);
        match (re.is_zero(), im.is_zero()) {
            (_, true) => write!(f, "{re}"),
            (true, false) if im.is_one() => f.write_str("i"),
            (true, false) => write!(f, "{im}i"),
            (false, false) if im.is_negative() => write!(f, "{re}-{}i", -im),
            (false, false) => write!(f, "{re}+{im}i"),
        }
    }
}

impl fmt::Debug for GaussianScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn field_arithmetic() {
        let a = GaussianScalar::from_parts(1, 2);
        let b = GaussianScalar::from_parts(3, -1);
        let p = &a * &b;
        assert_eq!(p, GaussianScalar::from_parts(5, 5));
        assert_eq!(&(&p / &b) - &a, GaussianScalar::zero());
        assert_eq!(&GaussianScalar::i() * &GaussianScalar::i(), GaussianScalar::from_int(-1));
        assert_eq!(a.conj(), GaussianScalar::from_parts(1, -2));
    }

    #[test]
    fn display() {
        assert_eq!(GaussianScalar::from_parts(0, 1).to_string(), "i");
        assert_eq!(GaussianScalar::from_parts(2, -3).to_string(), "2-3i");
        assert_eq!(GaussianScalar::from_int(-4).to_string(), "-4");
    }
}
