//! Decimal rendering of exact rationals with round-half-to-even.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

fn pow10(e: u32) -> BigInt {
    BigInt::from(10u32).pow(e)
}

/// `floor(log10 |q|)` for nonzero `q`.
fn log10_floor(q: &BigRational) -> i64 {
    let n = q.numer().abs();
    let d = q.denom().clone();
    // crude estimate from digit counts, then correct
    let mut e = n.to_string().len() as i64 - d.to_string().len() as i64;
    loop {
        let (lo_n, lo_d) = scale(&n, &d, e);
        if lo_n < lo_d {
            e -= 1;
            continue;
        }
        let (hi_n, hi_d) = scale(&n, &d, e + 1);
        if hi_n >= hi_d {
            e += 1;
            continue;
        }
        return e;
    }
}

/// Returns `(n', d')` with `n'/d' = (n/d) / 10^e`.
fn scale(n: &BigInt, d: &BigInt, e: i64) -> (BigInt, BigInt) {
    if e >= 0 {
        (n.clone(), d * pow10(e as u32))
    } else {
        (n * pow10((-e) as u32), d.clone())
    }
}

fn round_half_even(n: &BigInt, d: &BigInt) -> BigInt {
    let (q, r) = n.div_mod_floor(d);
    let twice = &r * BigInt::from(2u8);
    match twice.cmp(d) {
        std::cmp::Ordering::Less => q,
        std::cmp::Ordering::Greater => q + 1,
        std::cmp::Ordering::Equal => {
            if q.is_even() {
                q
            } else {
                q + 1
            }
        }
    }
}

/// Significant digits of `|q|` and its decimal exponent: `|q| ≈ 0.d1d2... × 10^(e+1)`.
fn sig_digits(q: &BigRational, digits: usize) -> (String, i64) {
    let digits = digits.max(1);
    let mut e = log10_floor(q);
    let n = q.numer().abs();
    let d = q.denom().clone();
    let shift = digits as i64 - 1 - e;
    let (sn, sd) = scale(&n, &d, -shift);
    let mut m = round_half_even(&sn, &sd);
    if m == pow10(digits as u32) {
        m /= 10;
        e += 1;
    }
    (m.to_string(), e)
}

/// `q` with `digits` significant digits. Fixed notation for moderate exponents,
/// otherwise `d.ddd e±X`.
pub fn format_sig(q: &BigRational, digits: usize) -> String {
    if q.is_zero() {
        return "0".to_string();
    }
    let (s, e) = sig_digits(q, digits);
    let sign = if q.is_negative() { "-" } else { "" };
    let d = s.len() as i64;
    let body = if (-5..d).contains(&e) {
        if e >= 0 {
            let (int, frac) = s.split_at((e + 1) as usize);
            if frac.is_empty() {
                int.to_string()
            } else {
                format!("{int}.{frac}")
            }
        } else {
            format!("0.{}{}", "0".repeat((-e - 1) as usize), s)
        }
    } else {
        sci_body(&s, e)
    };
    format!("{sign}{body}")
}

fn sci_body(s: &str, e: i64) -> String {
    let (first, rest) = s.split_at(1);
    if rest.is_empty() {
        format!("{first}e{e}")
    } else {
        format!("{first}.{rest}e{e}")
    }
}

/// Scientific notation with `digits` significant digits.
pub fn format_sci(q: &BigRational, digits: usize) -> String {
    if q.is_zero() {
        return "0".to_string();
    }
    let (s, e) = sig_digits(q, digits);
    let sign = if q.is_negative() { "-" } else { "" };
    format!("{sign}{}", sci_body(&s, e))
}

/// Exact rendering `p/q` (or `p` for integers).
pub fn format_exact(q: &BigRational) -> String {
    if q.denom().is_one() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}
