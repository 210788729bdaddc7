//! Midpoint-radius real enclosures over dyadic rationals.
//!
//! A [`Ball`] represents the interval `[mid - rad, mid + rad]`. Every operation returns
//! an enclosure of the exact result for all inputs inside the operand enclosures.
//! Midpoints are rounded to the working precision of the operands; the rounding error
//! is folded into the radius. Radii carry a short mantissa and are always rounded up.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::decimal;
use super::dyadic::Dyadic;

/// Mantissa bits kept in radii.
const RAD_BITS: u64 = 62;

/// Precision used when an inexact operation meets two exact operands.
pub const DEFAULT_PREC: u32 = 128;

/// An enclosure `mid ± rad` of a real number, with working precision `prec` bits.
///
/// `prec == 0` marks a value that has never been rounded (an exact integer or dyadic).
#[derive(Clone, PartialEq, Eq)]
pub struct Ball {
    mid: Dyadic,
    rad: Dyadic,
    prec: u32,
}

fn rad_add(a: &Dyadic, b: &Dyadic) -> Dyadic {
    (a + b).round_up(RAD_BITS)
}

fn rad_mul(a: &Dyadic, b: &Dyadic) -> Dyadic {
    (a * b).round_up(RAD_BITS)
}

fn mag_up(a: &Dyadic) -> Dyadic {
    a.abs().round_up(RAD_BITS)
}

impl Ball {
    pub fn new(mid: Dyadic, rad: Dyadic, prec: u32) -> Self {
        assert!(!rad.is_negative(), "negative radius");
        let mut b = Ball { mid, rad: rad.round_up(RAD_BITS), prec };
        b.normalise();
        b
    }

    pub fn exact(mid: Dyadic) -> Self {
        Ball { mid, rad: Dyadic::zero(), prec: 0 }
    }

    pub fn from_int<I: Into<BigInt>>(v: I) -> Self {
        Self::exact(Dyadic::from_int(v))
    }

    pub fn from_bigint(v: &BigInt) -> Self {
        Self::exact(Dyadic::new(v.clone(), 0))
    }

    /// Enclosure of a rational at `prec` bits (radius 0 when the rational is dyadic and fits).
    pub fn from_rational(q: &BigRational, prec: u32) -> Self {
        let num = Dyadic::new(q.numer().clone(), 0);
        let den = Dyadic::new(q.denom().clone(), 0);
        let (m, err) = num.div_floor(&den, prec as u64);
        let mut b = Ball { mid: m, rad: err.round_up(RAD_BITS), prec };
        b.normalise();
        b
    }

    /// Enclosure of an f64 value (exact, since f64 is dyadic).
    pub fn from_f64(x: f64) -> Option<Self> {
        Dyadic::from_f64(x).map(Self::exact)
    }

    /// Ball given by a closed interval with dyadic endpoints.
    pub fn from_endpoints(lo: &Dyadic, hi: &Dyadic, prec: u32) -> Self {
        assert!(lo <= hi, "empty interval");
        let sum = lo + hi;
        let mid = sum.shl(-1);
        let rad = (hi - lo).shl(-1);
        Ball::new(mid, rad, prec)
    }

    pub fn mid(&self) -> &Dyadic {
        &self.mid
    }

    pub fn rad(&self) -> &Dyadic {
        &self.rad
    }

    pub fn prec(&self) -> u32 {
        self.prec
    }

    /// Same value with a different working precision (rounds the midpoint if needed).
    pub fn with_prec(&self, prec: u32) -> Self {
        let mut b = self.clone();
        b.prec = prec;
        b.normalise();
        b
    }

    fn normalise(&mut self) {
        if self.prec == 0 {
            return;
        }
        let (m, err) = self.mid.round_floor(self.prec as u64);
        if !err.is_zero() {
            self.mid = m;
            self.rad = rad_add(&self.rad, &err);
        }
    }

    fn join_prec(&self, other: &Ball) -> u32 {
        self.prec.max(other.prec)
    }

    pub fn lower(&self) -> Dyadic {
        &self.mid - &self.rad
    }

    pub fn upper(&self) -> Dyadic {
        &self.mid + &self.rad
    }

    pub fn is_exact(&self) -> bool {
        self.rad.is_zero()
    }

    pub fn contains_zero(&self) -> bool {
        self.mid.abs() <= self.rad
    }

    pub fn is_positive(&self) -> bool {
        self.lower().sign() == num_bigint::Sign::Plus
    }

    pub fn is_negative(&self) -> bool {
        self.upper().is_negative()
    }

    /// Certified sign: `Some` only when the enclosure excludes zero (or is exactly zero).
    pub fn sign(&self) -> Option<Ordering> {
        if self.is_positive() {
            Some(Ordering::Greater)
        } else if self.is_negative() {
            Some(Ordering::Less)
        } else if self.mid.is_zero() && self.rad.is_zero() {
            Some(Ordering::Equal)
        } else {
            None
        }
    }

    pub fn contains_rational(&self, q: &BigRational) -> bool {
        self.lower().to_rational() <= *q && *q <= self.upper().to_rational()
    }

    pub fn contains_dyadic(&self, x: &Dyadic) -> bool {
        self.lower() <= *x && *x <= self.upper()
    }

    /// True when `other` lies entirely inside `self`.
    pub fn contains(&self, other: &Ball) -> bool {
        self.lower() <= other.lower() && other.upper() <= self.upper()
    }

    pub fn overlaps(&self, other: &Ball) -> bool {
        self.lower() <= other.upper() && other.lower() <= self.upper()
    }

    /// Certified `self < other`.
    pub fn lt(&self, other: &Ball) -> bool {
        self.upper() < other.lower()
    }

    /// Certified `self < q`.
    pub fn lt_rational(&self, q: &BigRational) -> bool {
        self.upper().to_rational() < *q
    }

    /// Certified `self > q`.
    pub fn gt_rational(&self, q: &BigRational) -> bool {
        self.lower().to_rational() > *q
    }

    pub fn abs(&self) -> Ball {
        if self.mid.is_negative() {
            -self
        } else {
            self.clone()
        }
    }

    /// Upper bound on `|x|` over the enclosure.
    pub fn abs_upper(&self) -> Dyadic {
        &self.mid.abs() + &self.rad
    }

    /// Lower bound on `|x|` (zero if the ball contains zero).
    pub fn abs_lower(&self) -> Dyadic {
        let l = &self.mid.abs() - &self.rad;
        if l.is_negative() {
            Dyadic::zero()
        } else {
            l
        }
    }

    pub fn to_f64(&self) -> f64 {
        self.mid.to_f64()
    }

    /// `ln |mid|` as f64, valid outside the f64 exponent range.
    pub fn ln_abs(&self) -> f64 {
        self.mid.ln_abs()
    }

    /// `log2` of the radius (`None` for an exact ball).
    pub fn rad_log2(&self) -> Option<i64> {
        self.rad.log2_floor().map(|e| e + 1)
    }

    /// Radius at most `2^-bits`.
    pub fn rad_at_most_pow2(&self, neg_bits: i64) -> bool {
        self.rad <= Dyadic::pow2(-neg_bits)
    }

    /// Reciprocal; `None` when the enclosure contains zero.
    pub fn checked_recip(&self) -> Option<Ball> {
        Ball::from_int(1).checked_div(self)
    }

    /// Quotient; `None` when the divisor contains zero.
    pub fn checked_div(&self, rhs: &Ball) -> Option<Ball> {
        if rhs.contains_zero() {
            return None;
        }
        let prec = match self.join_prec(rhs) {
            0 => DEFAULT_PREC,
            p => p,
        };
        let p = prec as u64;
        let (q, err) = self.mid.div_floor(&rhs.mid, p + 4);
        // |x/y - a/b| <= (|a| s + |b| r) / (|b| (|b| - s))
        let rad = if self.rad.is_zero() && rhs.rad.is_zero() {
            Dyadic::zero()
        } else {
            let a = mag_up(&self.mid);
            let b_up = mag_up(&rhs.mid);
            let num = rad_add(&rad_mul(&a, &rhs.rad), &rad_mul(&b_up, &self.rad));
            let b_lo = rhs.mid.abs().round_down(RAD_BITS);
            let gap = (&b_lo - &rhs.rad).round_down(RAD_BITS);
            let den = (&b_lo * &gap).round_down(RAD_BITS);
            num.div_up(&den, RAD_BITS)
        };
        Some(Ball::new(q, rad_add(&rad, &err.abs()), prec))
    }

    /// Square root; `None` when the enclosure reaches below zero.
    pub fn sqrt(&self) -> Option<Ball> {
        if self.lower().is_negative() {
            return None;
        }
        let prec = match self.prec {
            0 => DEFAULT_PREC,
            p => p,
        };
        if self.mid.is_zero() {
            // [0, r]: sqrt lies in [0, sqrt(r)]
            let (s, e) = self.rad.sqrt_floor(RAD_BITS);
            let hi = rad_add(&s, &e);
            return Some(Ball::new(hi.shl(-1), hi.shl(-1).round_up(RAD_BITS), prec));
        }
        let (s, err) = self.mid.sqrt_floor(prec as u64 + 4);
        // |sqrt(x) - sqrt(m)| <= r / sqrt(m)
        let rad = if self.rad.is_zero() {
            Dyadic::zero()
        } else {
            let lo = s.round_down(RAD_BITS);
            self.rad.div_up(&lo, RAD_BITS)
        };
        Some(Ball::new(s, rad_add(&rad, &err), prec))
    }

    /// `self^n` by repeated squaring.
    pub fn powu(&self, n: u64) -> Ball {
        let mut result = Ball::from_int(1).with_prec(self.prec);
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

    /// Decimal rendering of the midpoint with `digits` significant digits.
    pub fn mid_to_decimal(&self, digits: usize) -> String {
        decimal::format_sig(&self.mid.to_rational(), digits)
    }

    /// `mid ± rad`, midpoint to `digits` significant digits, radius to 3.
    pub fn to_decimal(&self, digits: usize) -> String {
        let rad = if self.rad.is_zero() {
            "0".to_string()
        } else {
            decimal::format_sci(&self.rad.to_rational(), 3)
        };
        format!("{} ± {}", self.mid_to_decimal(digits), rad)
    }
}

impl<'a> Add<&'a Ball> for &'a Ball {
    type Output = Ball;
    fn add(self, rhs: &Ball) -> Ball {
        let mut b = Ball { mid: &self.mid + &rhs.mid, rad: rad_add(&self.rad, &rhs.rad), prec: self.join_prec(rhs) };
        b.normalise();
        b
    }
}

impl<'a> Sub<&'a Ball> for &'a Ball {
    type Output = Ball;
    fn sub(self, rhs: &Ball) -> Ball {
        let mut b = Ball { mid: &self.mid - &rhs.mid, rad: rad_add(&self.rad, &rhs.rad), prec: self.join_prec(rhs) };
        b.normalise();
        b
    }
}

impl<'a> Mul<&'a Ball> for &'a Ball {
    type Output = Ball;
    fn mul(self, rhs: &Ball) -> Ball {
        let rad = if self.rad.is_zero() && rhs.rad.is_zero() {
            Dyadic::zero()
        } else {
            let t1 = rad_mul(&mag_up(&self.mid), &rhs.rad);
            let t2 = rad_mul(&mag_up(&rhs.mid), &self.rad);
            let t3 = rad_mul(&self.rad, &rhs.rad);
            rad_add(&rad_add(&t1, &t2), &t3)
        };
        let mut b = Ball { mid: &self.mid * &rhs.mid, rad, prec: self.join_prec(rhs) };
        b.normalise();
        b
    }
}

impl<'a> Div<&'a Ball> for &'a Ball {
    type Output = Ball;
    /// Panics when the divisor encloses zero; use [`Ball::checked_div`] on uncertain input.
    fn div(self, rhs: &Ball) -> Ball {
        self.checked_div(rhs).expect("ball division by an enclosure of zero")
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr<Ball> for Ball {
            type Output = Ball;
            fn $m(self, rhs: Ball) -> Ball {
                (&self).$m(&rhs)
            }
        }
        impl<'a> $tr<&'a Ball> for Ball {
            type Output = Ball;
            fn $m(self, rhs: &Ball) -> Ball {
                (&self).$m(rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);
forward_owned!(Div, div);

impl Neg for &Ball {
    type Output = Ball;
    fn neg(self) -> Ball {
        Ball { mid: -&self.mid, rad: self.rad.clone(), prec: self.prec }
    }
}

impl Neg for Ball {
    type Output = Ball;
    fn neg(self) -> Ball {
        -&self
    }
}

impl Zero for Ball {
    fn zero() -> Self {
        Ball::exact(Dyadic::zero())
    }
    fn is_zero(&self) -> bool {
        self.mid.is_zero() && self.rad.is_zero()
    }
}

impl One for Ball {
    fn one() -> Self {
        Ball::exact(Dyadic::one())
    }
}

impl fmt::Debug for Ball {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Ball({} ± {:e}, prec={})", self.mid.to_f64(), self.rad.to_f64(), self.prec)
    }
}

impl fmt::Display for Ball {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_decimal(30))
    }
}

impl Ball {
    /// Exact rational enclosure endpoints.
    pub fn endpoints_rational(&self) -> (BigRational, BigRational) {
        (self.lower().to_rational(), self.upper().to_rational())
    }

    /// Certified `|self - q| <= tol`.
    pub fn within(&self, q: &BigRational, tol: &BigRational) -> bool {
        let (lo, hi) = self.endpoints_rational();
        (&lo - q).abs() <= *tol && (&hi - q).abs() <= *tol
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::FromPrimitive;

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    #[test]
    fn rational_enclosure_contains_value() {
        let third = q(1, 3);
        let b = Ball::from_rational(&third, 100);
        assert!(b.contains_rational(&third));
        assert!(b.rad_at_most_pow2(99));
        let half = Ball::from_rational(&q(1, 2), 100);
        assert!(half.is_exact());
    }

    #[test]
    fn arithmetic_encloses_exact_results() {
        let a = Ball::from_rational(&q(1, 3), 80);
        let b = Ball::from_rational(&q(2, 7), 80);
        let exact_sum = q(1, 3) + q(2, 7);
        let exact_prod = q(1, 3) * q(2, 7);
        let exact_quot = q(1, 3) / q(2, 7);
        assert!((&a + &b).contains_rational(&exact_sum));
        assert!((&a - &b).contains_rational(&(q(1, 3) - q(2, 7))));
        assert!((&a * &b).contains_rational(&exact_prod));
        assert!((&a / &b).contains_rational(&exact_quot));
        assert!((&a / &b).rad_at_most_pow2(70));
    }

    #[test]
    fn division_by_zero_enclosure_is_refused() {
        let z = Ball::new(Dyadic::zero(), Dyadic::pow2(-10), 64);
        assert!(Ball::from_int(1).checked_div(&z).is_none());
    }

    #[test]
    fn sqrt_two_squared_contains_two() {
        let two = Ball::from_int(2).with_prec(200);
        let s = two.sqrt().unwrap();
        assert!((&s * &s).contains_rational(&q(2, 1)));
        assert!(s.rad_at_most_pow2(190));
        assert!((s.to_f64() - 2f64.sqrt()).abs() < 1e-15);
    }

    #[test]
    fn powers_keep_relative_accuracy() {
        let lam = Ball::from_rational(&q(17, 4), 300).with_prec(300);
        let p = lam.powu(100);
        let exact = BigRational::from_i64(17).unwrap().pow(100) / BigRational::from_i64(4).unwrap().pow(100);
        assert!(p.contains_rational(&exact));
        assert!(p.is_exact() || p.rad_log2().unwrap() < 209 - 280);
    }

    #[test]
    fn exact_integers_stay_exact() {
        let a = Ball::from_int(12345);
        let b = Ball::from_int(-678);
        let c = &(&a * &b) + &a;
        assert!(c.is_exact());
        assert_eq!(c.mid(), &Dyadic::from_int(12345 * -678 + 12345));
    }
}
