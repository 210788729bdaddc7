//! Rectangular complex enclosures built from two real balls.

use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_complex::Complex64;
use num_traits::{One, Zero};

use super::ball::Ball;
use super::dyadic::Dyadic;

/// The rectangle `re × im` in the complex plane.
#[derive(Clone, PartialEq, Eq)]
pub struct CBall {
    pub re: Ball,
    pub im: Ball,
}

impl CBall {
    pub fn new(re: Ball, im: Ball) -> Self {
        CBall { re, im }
    }

    pub fn real(re: Ball) -> Self {
        CBall { re, im: Ball::zero() }
    }

    pub fn from_c64(z: Complex64, prec: u32) -> Self {
        let re = Ball::from_f64(z.re).expect("finite").with_prec(prec);
        let im = Ball::from_f64(z.im).expect("finite").with_prec(prec);
        CBall { re, im }
    }

    pub fn to_c64(&self) -> Complex64 {
        Complex64::new(self.re.to_f64(), self.im.to_f64())
    }

    pub fn conj(&self) -> Self {
        CBall { re: self.re.clone(), im: -&self.im }
    }

    /// Enclosure of `|z|^2`.
    pub fn norm_sqr(&self) -> Ball {
        &(&self.re * &self.re) + &(&self.im * &self.im)
    }

    /// Enclosure of `|z|`.
    pub fn abs(&self) -> Ball {
        let n = self.norm_sqr();
        match n.sqrt() {
            Some(s) => s,
            // the squared modulus enclosure only dips below zero by rounding
            None => Ball::from_endpoints(&Dyadic::zero(), &n.upper(), n.prec()).sqrt().expect("nonnegative"),
        }
    }

    pub fn contains_zero(&self) -> bool {
        self.re.contains_zero() && self.im.contains_zero()
    }

    /// Upper bound on `|z|` (via the bounding box corner).
    pub fn abs_upper(&self) -> Dyadic {
        let r = self.re.abs_upper();
        let i = self.im.abs_upper();
        let sq = &(&r * &r) + &(&i * &i);
        let (s, e) = sq.sqrt_floor(64);
        (&s + &e).round_up(64)
    }

    /// Midpoint only, radius dropped.
    pub fn midpoint(&self) -> CBall {
        CBall {
            re: Ball::new(self.re.mid().clone(), Dyadic::zero(), self.re.prec()),
            im: Ball::new(self.im.mid().clone(), Dyadic::zero(), self.im.prec()),
        }
    }

    /// Grows both components by `r`.
    pub fn inflate(&self, r: &Dyadic) -> CBall {
        CBall {
            re: Ball::new(self.re.mid().clone(), self.re.rad() + r, self.re.prec()),
            im: Ball::new(self.im.mid().clone(), self.im.rad() + r, self.im.prec()),
        }
    }

    pub fn with_prec(&self, prec: u32) -> CBall {
        CBall { re: self.re.with_prec(prec), im: self.im.with_prec(prec) }
    }

    pub fn checked_div(&self, rhs: &CBall) -> Option<CBall> {
        let den = rhs.norm_sqr();
        let num = self * &rhs.conj();
        Some(CBall { re: num.re.checked_div(&den)?, im: num.im.checked_div(&den)? })
    }

    pub fn powu(&self, n: u64) -> CBall {
        let mut result = CBall::one();
        let mut base = self.clone();
        let mut e = n;
        while e > 0 {
            if e & 1 == 1 {
                result = &result * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        result
    }
}

impl<'a> Add<&'a CBall> for &'a CBall {
    type Output = CBall;
    fn add(self, rhs: &CBall) -> CBall {
        CBall { re: &self.re + &rhs.re, im: &self.im + &rhs.im }
    }
}

impl<'a> Sub<&'a CBall> for &'a CBall {
    type Output = CBall;
    fn sub(self, rhs: &CBall) -> CBall {
        CBall { re: &self.re - &rhs.re, im: &self.im - &rhs.im }
    }
}

impl<'a> Mul<&'a CBall> for &'a CBall {
    type Output = CBall;
    fn mul(self, rhs: &CBall) -> CBall {
        let re = &(&self.re * &rhs.re) - &(&self.im * &rhs.im);
        let im = &(&self.re * &rhs.im) + &(&self.im * &rhs.re);
        CBall { re, im }
    }
}

impl<'a> Div<&'a CBall> for &'a CBall {
    type Output = CBall;
    fn div(self, rhs: &CBall) -> CBall {
        self.checked_div(rhs).expect("complex ball division by an enclosure of zero")
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr<CBall> for CBall {
            type Output = CBall;
            fn $m(self, rhs: CBall) -> CBall {
                (&self).$m(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);
forward_owned!(Div, div);

impl Neg for CBall {
    type Output = CBall;
    fn neg(self) -> CBall {
        CBall { re: -self.re, im: -self.im }
    }
}

impl Neg for &CBall {
    type Output = CBall;
    fn neg(self) -> CBall {
        CBall { re: -&self.re, im: -&self.im }
    }
}

impl Zero for CBall {
    fn zero() -> Self {
        CBall { re: Ball::zero(), im: Ball::zero() }
    }
    fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }
}

impl One for CBall {
    fn one() -> Self {
        CBall { re: Ball::one(), im: Ball::zero() }
    }
}

impl fmt::Debug for CBall {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "CBall({:?}, {:?})", self.re, self.im)
    }
}

impl fmt::Display for CBall {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}) + ({})i", self.re, self.im)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;
    use num_rational::BigRational;

    #[test]
    fn modulus_of_three_four() {
        let z = CBall::new(Ball::from_int(3), Ball::from_int(4));
        assert!(z.norm_sqr().contains_rational(&BigRational::from_integer(BigInt::from(25))));
        assert!(z.abs().contains_rational(&BigRational::from_integer(BigInt::from(5))));
    }

    #[test]
    fn division_inverts_multiplication() {
        let a = CBall::new(Ball::from_int(1).with_prec(100), Ball::from_int(2));
        let b = CBall::new(Ball::from_int(-3), Ball::from_int(5));
        let c = &(&a * &b) / &b;
        assert!(c.re.contains_rational(&BigRational::from_integer(1.into())));
        assert!(c.im.contains_rational(&BigRational::from_integer(2.into())));
    }
}
