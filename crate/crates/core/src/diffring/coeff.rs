//! Exact Gaussian-rational coefficients.
//!
//! Every coefficient appearing in the hierarchy is a rational multiple of a
//! power of `i`, so a pair of arbitrary-precision rationals is a lossless
//! carrier. No floating point enters the symbolic layer.

use num::bigint::BigInt;
use num::rational::BigRational;
use num::traits::{Signed, ToPrimitive, Zero};
use num_complex::Complex64;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, MulAssign, Neg, Sub, SubAssign};

/// A complex number `re + im·i` with exact rational parts.
#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct GaussRat {
    re: BigRational,
    im: BigRational,
}

impl GaussRat {
    pub fn new(re: BigRational, im: BigRational) -> Self {
        GaussRat { re, im }
    }

    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::from_int(1)
    }

    /// The imaginary unit.
    pub fn i() -> Self {
        GaussRat {
            re: BigRational::zero(),
            im: BigRational::from_integer(BigInt::from(1)),
        }
    }

    pub fn from_int(v: i64) -> Self {
        GaussRat {
            re: BigRational::from_integer(BigInt::from(v)),
            im: BigRational::zero(),
        }
    }

    /// The real rational `num/den`.
    pub fn ratio(num: i64, den: i64) -> Self {
        assert!(den != 0, "zero denominator");
        GaussRat {
            re: BigRational::new(BigInt::from(num), BigInt::from(den)),
            im: BigRational::zero(),
        }
    }

    /// The purely imaginary rational `(num/den)·i`.
    pub fn ratio_i(num: i64, den: i64) -> Self {
        Self::ratio(num, den) * Self::i()
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

    pub fn is_real(&self) -> bool {
        self.im.is_zero()
    }

    pub fn is_imaginary(&self) -> bool {
        self.re.is_zero() && !self.im.is_zero()
    }

    /// Multiplication by `i` in place of a full product.
    pub fn times_i(&self) -> Self {
        GaussRat {
            re: -self.im.clone(),
            im: self.re.clone(),
        }
    }

    /// Division by a nonzero integer.
    pub fn div_int(&self, d: i64) -> Self {
        assert!(d != 0, "division by zero");
        let r = BigRational::new(BigInt::from(1), BigInt::from(d));
        GaussRat {
            re: &self.re * &r,
            im: &self.im * &r,
        }
    }

    /// Lossy conversion for the numerical compilation step.
    pub fn to_complex(&self) -> Complex64 {
        Complex64::new(
            self.re.to_f64().expect("rational out of f64 range"),
            self.im.to_f64().expect("rational out of f64 range"),
        )
    }
}

impl Add for GaussRat {
    type Output = GaussRat;
    fn add(self, rhs: GaussRat) -> GaussRat {
        GaussRat {
            re: self.re + rhs.re,
            im: self.im + rhs.im,
        }
    }
}

impl<'a> Add<&'a GaussRat> for &GaussRat {
    type Output = GaussRat;
    fn add(self, rhs: &'a GaussRat) -> GaussRat {
        GaussRat {
            re: &self.re + &rhs.re,
            im: &self.im + &rhs.im,
        }
    }
}

impl AddAssign<&GaussRat> for GaussRat {
    fn add_assign(&mut self, rhs: &GaussRat) {
        self.re += &rhs.re;
        self.im += &rhs.im;
    }
}

impl Sub for GaussRat {
    type Output = GaussRat;
    fn sub(self, rhs: GaussRat) -> GaussRat {
        GaussRat {
            re: self.re - rhs.re,
            im: self.im - rhs.im,
        }
    }
}

impl<'a> Sub<&'a GaussRat> for &GaussRat {
    type Output = GaussRat;
    fn sub(self, rhs: &'a GaussRat) -> GaussRat {
        GaussRat {
            re: &self.re - &rhs.re,
            im: &self.im - &rhs.im,
        }
    }
}

impl SubAssign<&GaussRat> for GaussRat {
    fn sub_assign(&mut self, rhs: &GaussRat) {
        self.re -= &rhs.re;
        self.im -= &rhs.im;
    }
}

impl Mul for GaussRat {
    type Output = GaussRat;
    fn mul(self, rhs: GaussRat) -> GaussRat {
        (&self).mul(&rhs)
    }
}

impl<'a> Mul<&'a GaussRat> for &GaussRat {
    type Output = GaussRat;
    fn mul(self, rhs: &'a GaussRat) -> GaussRat {
        GaussRat {
            re: &self.re * &rhs.re - &self.im * &rhs.im,
            im: &self.re * &rhs.im + &self.im * &rhs.re,
        }
    }
}

impl MulAssign<&GaussRat> for GaussRat {
    fn mul_assign(&mut self, rhs: &GaussRat) {
        *self = (&*self).mul(rhs);
    }
}

impl Neg for GaussRat {
    type Output = GaussRat;
    fn neg(self) -> GaussRat {
        GaussRat {
            re: -self.re,
            im: -self.im,
        }
    }
}

impl Neg for &GaussRat {
    type Output = GaussRat;
    fn neg(self) -> GaussRat {
        GaussRat {
            re: -self.re.clone(),
            im: -self.im.clone(),
        }
    }
}

/// Renders `3/2`, `-i`, `(3/2)*i`, or `(1/2+3/4*i)` depending on which parts
/// are present; the text serializer relies on this being parseable.
impl fmt::Display for GaussRat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fn rat(r: &BigRational) -> String {
            r.to_string()
        }
        if self.is_zero() {
            return write!(f, "0");
        }
        if self.im.is_zero() {
            return write!(f, "{}", rat(&self.re));
        }
        if self.re.is_zero() {
            let a = &self.im;
            if a == &BigRational::from_integer(BigInt::from(1)) {
                return write!(f, "i");
            }
            if a == &BigRational::from_integer(BigInt::from(-1)) {
                return write!(f, "-i");
            }
            return if a.is_negative() {
                write!(f, "-({})*i", rat(&-a.clone()))
            } else {
                write!(f, "({})*i", rat(a))
            };
        }
        let im_part = if self.im.is_negative() {
            format!("-{}*i", rat(&-self.im.clone()))
        } else {
            format!("+{}*i", rat(&self.im))
        };
        write!(f, "({}{})", rat(&self.re), im_part)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn i_squared_is_minus_one() {
        let i = GaussRat::i();
        assert_eq!(&i * &i, GaussRat::from_int(-1));
    }

    #[test]
    fn times_i_matches_product() {
        let z = GaussRat::new(
            BigRational::new(BigInt::from(3), BigInt::from(2)),
            BigRational::new(BigInt::from(-1), BigInt::from(5)),
        );
        assert_eq!(z.times_i(), &z * &GaussRat::i());
    }

    #[test]
    fn display_forms() {
        assert_eq!(GaussRat::ratio(3, 2).to_string(), "3/2");
        assert_eq!(GaussRat::i().to_string(), "i");
        assert_eq!((-GaussRat::i()).to_string(), "-i");
        assert_eq!(GaussRat::ratio_i(3, 2).to_string(), "(3/2)*i");
        let z = GaussRat::new(
            BigRational::new(BigInt::from(1), BigInt::from(2)),
            BigRational::new(BigInt::from(3), BigInt::from(4)),
        );
        assert_eq!(z.to_string(), "(1/2+3/4*i)");
    }
}
