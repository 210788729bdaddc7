//! Exact dyadic rationals `m * 2^e`.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::{BigInt, Sign};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

/// A dyadic rational `mant * 2^exp`, kept normalised (odd mantissa, or zero with `exp = 0`).
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Dyadic {
    mant: BigInt,
    exp: i64,
}

impl Dyadic {
    pub fn new(mant: BigInt, exp: i64) -> Self {
        if mant.is_zero() {
            return Self::zero();
        }
        let tz = mant.trailing_zeros().unwrap_or(0);
        if tz == 0 {
            Dyadic { mant, exp }
        } else {
            Dyadic { mant: mant >> tz, exp: exp + tz as i64 }
        }
    }

    pub fn zero() -> Self {
        Dyadic { mant: BigInt::zero(), exp: 0 }
    }

    pub fn one() -> Self {
        Dyadic { mant: BigInt::one(), exp: 0 }
    }

    pub fn from_int<I: Into<BigInt>>(v: I) -> Self {
        Self::new(v.into(), 0)
    }

    /// `2^e`.
    pub fn pow2(e: i64) -> Self {
        Dyadic { mant: BigInt::one(), exp: e }
    }

    pub fn mantissa(&self) -> &BigInt {
        &self.mant
    }

    pub fn exponent(&self) -> i64 {
        self.exp
    }

    pub fn is_zero(&self) -> bool {
        self.mant.is_zero()
    }

    pub fn sign(&self) -> Sign {
        self.mant.sign()
    }

    pub fn is_negative(&self) -> bool {
        self.mant.is_negative()
    }

    pub fn abs(&self) -> Self {
        Dyadic { mant: self.mant.abs(), exp: self.exp }
    }

    /// Bit length of the mantissa.
    pub fn bits(&self) -> u64 {
        self.mant.bits()
    }

    /// `floor(log2 |x|)`; `None` for zero.
    pub fn log2_floor(&self) -> Option<i64> {
        if self.is_zero() {
            None
        } else {
            Some(self.mant.bits() as i64 - 1 + self.exp)
        }
    }

    /// Multiply by `2^k`.
    pub fn shl(&self, k: i64) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        Dyadic { mant: self.mant.clone(), exp: self.exp + k }
    }

    pub fn to_rational(&self) -> BigRational {
        if self.exp >= 0 {
            BigRational::from_integer(&self.mant << self.exp as u64)
        } else {
            BigRational::new(self.mant.clone(), BigInt::one() << (-self.exp) as u64)
        }
    }

    pub fn to_f64(&self) -> f64 {
        if self.is_zero() {
            return 0.0;
        }
        let bits = self.mant.bits() as i64;
        let shift = (bits - 60).max(0);
        let top = (&self.mant >> shift as u64).to_f64().unwrap_or(0.0);
        ldexp(top, self.exp + shift)
    }

    /// Natural log of `|x|` as f64, valid far outside the f64 exponent range.
    pub fn ln_abs(&self) -> f64 {
        if self.is_zero() {
            return f64::NEG_INFINITY;
        }
        let bits = self.mant.bits() as i64;
        let shift = bits - 60;
        let top = if shift >= 0 {
            (&self.mant >> shift as u64).abs()
        } else {
            self.mant.abs() << (-shift) as u64
        };
        let top = top.to_f64().unwrap_or(1.0);
        top.ln() + ((self.exp + shift) as f64) * std::f64::consts::LN_2
    }

    /// Exact conversion from an f64 (finite values only).
    pub fn from_f64(x: f64) -> Option<Self> {
        if !x.is_finite() {
            return None;
        }
        if x == 0.0 {
            return Some(Self::zero());
        }
        let bits = x.to_bits();
        let sign = if bits >> 63 == 0 { 1i64 } else { -1 };
        let exp_bits = ((bits >> 52) & 0x7ff) as i64;
        let frac = bits & ((1u64 << 52) - 1);
        let (m, e) = if exp_bits == 0 {
            (frac, -1074)
        } else {
            (frac | (1u64 << 52), exp_bits - 1075)
        };
        Some(Self::new(BigInt::from(m) * sign, e))
    }

    /// Round to at most `prec` mantissa bits toward negative infinity.
    /// Returns the rounded value and an upper bound on the absolute error.
    pub fn round_floor(&self, prec: u64) -> (Dyadic, Dyadic) {
        let bits = self.mant.bits();
        if bits <= prec {
            return (self.clone(), Dyadic::zero());
        }
        let shift = bits - prec;
        // BigInt >> rounds toward negative infinity.
        let m = &self.mant >> shift;
        let e = self.exp + shift as i64;
        (Dyadic::new(m, e), Dyadic::pow2(e))
    }

    /// Smallest dyadic with at most `prec` bits that is `>= self`.
    pub fn round_up(&self, prec: u64) -> Dyadic {
        let bits = self.mant.bits();
        if bits <= prec {
            return self.clone();
        }
        let shift = bits - prec;
        let (q, r) = self.mant.div_mod_floor(&(BigInt::one() << shift));
        let q = if r.is_zero() { q } else { q + 1 };
        Dyadic::new(q, self.exp + shift as i64)
    }

    /// Largest dyadic with at most `prec` bits that is `<= self`.
    pub fn round_down(&self, prec: u64) -> Dyadic {
        self.round_floor(prec).0
    }

    /// Floor of `num / den * 2^-shift`-style quotient: returns `q` with
    /// `q <= self / other < q + 2^(q.exp)` for positive operands, having about `prec` bits.
    /// The second component is the ulp bound.
    pub fn div_floor(&self, other: &Dyadic, prec: u64) -> (Dyadic, Dyadic) {
        assert!(!other.is_zero(), "dyadic division by zero");
        if self.is_zero() {
            return (Dyadic::zero(), Dyadic::zero());
        }
        // choose s so that (|a| << s) / |b| has about prec + 1 bits
        let s = prec as i64 + 1 + other.mant.bits() as i64 - self.mant.bits() as i64;
        let s = s.max(0);
        let num = &self.mant << s as u64;
        let (q, r) = num.div_mod_floor(&other.mant);
        let e = self.exp - other.exp - s;
        let err = if r.is_zero() { Dyadic::zero() } else { Dyadic::pow2(e) };
        (Dyadic::new(q, e), err)
    }

    /// Upward-rounded quotient of non-negative values (`other > 0`).
    pub fn div_up(&self, other: &Dyadic, prec: u64) -> Dyadic {
        let (q, err) = self.div_floor(other, prec);
        (&q + &err).round_up(prec)
    }

    /// Floor square root with about `prec` bits; second value bounds the error.
    pub fn sqrt_floor(&self, prec: u64) -> (Dyadic, Dyadic) {
        assert!(!self.is_negative(), "sqrt of negative dyadic");
        if self.is_zero() {
            return (Dyadic::zero(), Dyadic::zero());
        }
        // want mant * 2^exp = M * 2^(2t); pick t so M has about 2*prec bits
        let mut t = (self.exp + self.mant.bits() as i64 - 2 * prec as i64 - 2).div_euclid(2);
        if (self.exp - 2 * t) < 0 {
            t = self.exp.div_euclid(2);
        }
        let shift = self.exp - 2 * t;
        let m: BigInt = &self.mant << shift as u64;
        let r = m.sqrt();
        let exact = &r * &r == m;
        let err = if exact { Dyadic::zero() } else { Dyadic::pow2(t) };
        (Dyadic::new(r, t), err)
    }

    /// Exact comparison with a rational.
    pub fn cmp_rational(&self, q: &BigRational) -> Ordering {
        self.to_rational().cmp(q)
    }
}

pub(crate) fn ldexp(mut x: f64, mut e: i64) -> f64 {
    if e > 2200 {
        return x * f64::INFINITY;
    }
    if e < -2300 {
        return x * 0.0;
    }
    while e > 1000 {
        x *= 2f64.powi(1000);
        e -= 1000;
    }
    while e < -1000 {
        x *= 2f64.powi(-1000);
        e += 1000;
    }
    x * 2f64.powi(e as i32)
}

impl Default for Dyadic {
    fn default() -> Self {
        Self::zero()
    }
}

impl Ord for Dyadic {
    fn cmp(&self, other: &Self) -> Ordering {
        match (self.mant.sign(), other.mant.sign()) {
            (a, b) if a != b => return (a as i8).cmp(&(b as i8)),
            (Sign::NoSign, _) => return Ordering::Equal,
            _ => {}
        }
        let e = self.exp.min(other.exp);
        let a = &self.mant << (self.exp - e) as u64;
        let b = &other.mant << (other.exp - e) as u64;
        a.cmp(&b)
    }
}

impl PartialOrd for Dyadic {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl<'a> Add<&'a Dyadic> for &'a Dyadic {
    type Output = Dyadic;
    fn add(self, rhs: &Dyadic) -> Dyadic {
        if self.is_zero() {
            return rhs.clone();
        }
        if rhs.is_zero() {
            return self.clone();
        }
        let e = self.exp.min(rhs.exp);
        let a = &self.mant << (self.exp - e) as u64;
        let b = &rhs.mant << (rhs.exp - e) as u64;
        Dyadic::new(a + b, e)
    }
}

impl<'a> Sub<&'a Dyadic> for &'a Dyadic {
    type Output = Dyadic;
    fn sub(self, rhs: &Dyadic) -> Dyadic {
        self + &(-rhs)
    }
}

impl<'a> Mul<&'a Dyadic> for &'a Dyadic {
    type Output = Dyadic;
    fn mul(self, rhs: &Dyadic) -> Dyadic {
        if self.is_zero() || rhs.is_zero() {
            return Dyadic::zero();
        }
        Dyadic { mant: &self.mant * &rhs.mant, exp: self.exp + rhs.exp }
    }
}

impl Neg for &Dyadic {
    type Output = Dyadic;
    fn neg(self) -> Dyadic {
        Dyadic { mant: -&self.mant, exp: self.exp }
    }
}

impl Neg for Dyadic {
    type Output = Dyadic;
    fn neg(self) -> Dyadic {
        Dyadic { mant: -self.mant, exp: self.exp }
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr<Dyadic> for Dyadic {
            type Output = Dyadic;
            fn $m(self, rhs: Dyadic) -> Dyadic {
                (&self).$m(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl Zero for Dyadic {
    fn zero() -> Self {
        Dyadic::zero()
    }
    fn is_zero(&self) -> bool {
        self.mant.is_zero()
    }
}

impl One for Dyadic {
    fn one() -> Self {
        Dyadic::one()
    }
}

impl fmt::Debug for Dyadic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}*2^{}", self.mant, self.exp)
    }
}

impl fmt::Display for Dyadic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_rational())
    }
}
