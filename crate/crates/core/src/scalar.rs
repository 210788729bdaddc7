//! The scalar abstraction shared by polynomials, length functions and vectors.

use std::fmt::Debug;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_complex::Complex;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};

use crate::numerics::{Ball, CBall, Dyadic};

/// A commutative ring element that integers embed into.
pub trait Scalar:
    Clone + Debug + PartialEq + Zero + One + Add<Output = Self> + Sub<Output = Self> + Mul<Output = Self> + Neg<Output = Self>
{
    fn from_bigint(v: &BigInt) -> Self;

    fn from_i64(v: i64) -> Self {
        Self::from_bigint(&BigInt::from(v))
    }

    fn powu(&self, n: u64) -> Self {
        let mut acc = Self::one();
        let mut base = self.clone();
        let mut e = n;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc * base.clone();
            }
            e >>= 1;
            if e > 0 {
                base = base.clone() * base;
            }
        }
        acc
    }
}

/// A scalar with division.
pub trait Field: Scalar + Div<Output = Self> {
    fn recip(&self) -> Self {
        Self::one() / self.clone()
    }
}

impl Scalar for BigInt {
    fn from_bigint(v: &BigInt) -> Self {
        v.clone()
    }
}

impl Scalar for BigRational {
    fn from_bigint(v: &BigInt) -> Self {
        BigRational::from_integer(v.clone())
    }
}
impl Field for BigRational {}

macro_rules! float_scalar {
    ($t:ty, $conv:ident) => {
        impl Scalar for $t {
            fn from_bigint(v: &BigInt) -> Self {
                v.$conv().unwrap_or(if v.sign() == num_bigint::Sign::Minus { <$t>::NEG_INFINITY } else { <$t>::INFINITY })
            }
            fn powu(&self, n: u64) -> Self {
                match i32::try_from(n) {
                    Ok(k) => self.powi(k),
                    Err(_) => self.powf(n as $t),
                }
            }
        }
        impl Field for $t {}
    };
}
float_scalar!(f32, to_f32);
float_scalar!(f64, to_f64);

impl Scalar for Complex<f64> {
    fn from_bigint(v: &BigInt) -> Self {
        Complex::new(f64::from_bigint(v), 0.0)
    }
}
impl Field for Complex<f64> {}

impl Scalar for Dyadic {
    fn from_bigint(v: &BigInt) -> Self {
        Dyadic::new(v.clone(), 0)
    }
}

impl Scalar for Ball {
    fn from_bigint(v: &BigInt) -> Self {
        Ball::from_bigint(v)
    }
    fn powu(&self, n: u64) -> Self {
        Ball::powu(self, n)
    }
}
impl Field for Ball {}

impl Scalar for CBall {
    fn from_bigint(v: &BigInt) -> Self {
        CBall::real(Ball::from_bigint(v))
    }
    fn powu(&self, n: u64) -> Self {
        CBall::powu(self, n)
    }
}
impl Field for CBall {}
