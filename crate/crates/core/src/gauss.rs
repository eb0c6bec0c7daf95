//! Gaussian rationals.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_complex::Complex64;
use num_traits::{One, ToPrimitive, Zero};

use crate::poly::Rational;

/// `re + i * im` with rational parts.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct GaussRat {
    pub re: Rational,
    pub im: Rational,
}

impl GaussRat {
    pub fn new(re: Rational, im: Rational) -> Self {
        GaussRat { re, im }
    }

    pub fn real(re: Rational) -> Self {
        GaussRat {
            re,
            im: Rational::zero(),
        }
    }

    pub fn i() -> Self {
        GaussRat {
            re: Rational::zero(),
            im: Rational::one(),
        }
    }

    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::real(Rational::one())
    }

    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    pub fn is_real(&self) -> bool {
        self.im.is_zero()
    }

    pub fn scale(&self, c: &Rational) -> Self {
        GaussRat {
            re: &self.re * c,
            im: &self.im * c,
        }
    }

    /// Multiplies by `i^k`.
    pub fn mul_i_pow(&self, k: usize) -> Self {
        match k % 4 {
            0 => self.clone(),
            1 => GaussRat::new(-&self.im, self.re.clone()),
            2 => -self,
            _ => GaussRat::new(self.im.clone(), -&self.re),
        }
    }

    pub fn to_complex(&self) -> Complex64 {
        Complex64::new(
            self.re.to_f64().unwrap_or(f64::NAN),
            self.im.to_f64().unwrap_or(f64::NAN),
        )
    }
}

impl fmt::Display for GaussRat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.im.is_zero() {
            write!(f, "{}", self.re)
        } else {
            write!(f, "({} + {}i)", self.re, self.im)
        }
    }
}

impl Add for &GaussRat {
    type Output = GaussRat;
    fn add(self, rhs: &GaussRat) -> GaussRat {
        GaussRat::new(&self.re + &rhs.re, &self.im + &rhs.im)
    }
}

impl Sub for &GaussRat {
    type Output = GaussRat;
    fn sub(self, rhs: &GaussRat) -> GaussRat {
        GaussRat::new(&self.re - &rhs.re, &self.im - &rhs.im)
    }
}

impl Mul for &GaussRat {
    type Output = GaussRat;
    fn mul(self, rhs: &GaussRat) -> GaussRat {
        GaussRat::new(
            &self.re * &rhs.re - &self.im * &rhs.im,
            &self.re * &rhs.im + &self.im * &rhs.re,
        )
    }
}

impl Neg for &GaussRat {
    type Output = GaussRat;
    fn neg(self) -> GaussRat {
        GaussRat::new(-&self.re, -&self.im)
    }
}

impl GaussRat {
    /// The exact value of a finite complex float.
    pub fn from_complex(z: Complex64) -> Option<Self> {
        Some(GaussRat::new(
            Rational::from_float(z.re)?,
            Rational::from_float(z.im)?,
        ))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::rat;

    #[test]
    fn gaussian_arithmetic() {
        let i = GaussRat::i();
        assert_eq!(&i * &i, GaussRat::real(rat(-1)));
        let z = GaussRat::new(rat(2), rat(3));
        assert_eq!(z.mul_i_pow(1), &z * &i);
        assert_eq!(z.mul_i_pow(3), &(&z * &i) * &(&i * &i));
        assert_eq!(z.mul_i_pow(4), z);
        assert_eq!(
            GaussRat::from_complex(Complex64::new(0.5, -2.0)).unwrap(),
            GaussRat::new(crate::poly::rat_frac(1, 2), rat(-2))
        );
    }
}
