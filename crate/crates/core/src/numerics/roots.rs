//! Exact real-root isolation (Descartes bisection) and refinement to enclosures.

use num_bigint::{BigInt, Sign};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::ball::Ball;
use super::dyadic::Dyadic;
use super::poly::Polynomial;
use crate::error::{Error, Result};

type IntPoly = Polynomial<BigInt>;
type RatPoly = Polynomial<BigRational>;

/// A real root isolated either exactly or by an open interval with rational endpoints
/// containing exactly one root.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum IsolatedRoot {
    Exact(BigRational),
    Interval { lo: BigRational, hi: BigRational },
}

impl IsolatedRoot {
    pub fn lo(&self) -> &BigRational {
        match self {
            IsolatedRoot::Exact(q) => q,
            IsolatedRoot::Interval { lo, .. } => lo,
        }
    }

    pub fn hi(&self) -> &BigRational {
        match self {
            IsolatedRoot::Exact(q) => q,
            IsolatedRoot::Interval { hi, .. } => hi,
        }
    }

    pub fn exact(&self) -> Option<&BigRational> {
        match self {
            IsolatedRoot::Exact(q) => Some(q),
            IsolatedRoot::Interval { .. } => None,
        }
    }

    /// Closed-interval membership.
    pub fn contains(&self, x: &BigRational) -> bool {
        self.lo() <= x && x <= self.hi()
    }
}

fn rat(n: BigInt) -> BigRational {
    BigRational::from_integer(n)
}

/// `p / gcd(p, p')` as a primitive integer polynomial.
pub fn squarefree_part(p: &IntPoly) -> IntPoly {
    if p.degree().unwrap_or(0) == 0 {
        return p.primitive();
    }
    let r = p.to_rational();
    let g = r.gcd(&r.derivative());
    IntPoly::from_rational(&r.div_rem(&g).0)
}

fn positive_divisors(n: &BigInt) -> Vec<BigInt> {
    let mut n = n.abs();
    let mut primes: Vec<(BigInt, u32)> = Vec::new();
    let mut d = BigInt::from(2);
    while &d * &d <= n {
        let mut e = 0;
        while (&n % &d).is_zero() {
            n /= &d;
            e += 1;
        }
        if e > 0 {
            primes.push((d.clone(), e));
        }
        d += if d == BigInt::from(2) { 1 } else { 2 };
    }
    if n > BigInt::one() {
        primes.push((n, 1));
    }
    let mut divs = vec![BigInt::one()];
    for (p, e) in primes {
        let mut next = Vec::with_capacity(divs.len() * (e as usize + 1));
        for d in &divs {
            let mut pk = BigInt::one();
            for _ in 0..=e {
                next.push(d * &pk);
                pk *= &p;
            }
        }
        divs = next;
    }
    divs.sort();
    divs
}

/// Distinct rational roots, ascending, found by divisor search on the extreme coefficients.
pub fn rational_roots(p: &IntPoly) -> Vec<BigRational> {
    let mut out = Vec::new();
    if p.degree().unwrap_or(0) == 0 {
        return out;
    }
    let mut f = p.primitive();
    // factor out x
    if f.coeff(0).is_zero() {
        out.push(BigRational::zero());
        let low = f.coeffs().iter().position(|c| !c.is_zero()).unwrap();
        f = IntPoly::new(f.coeffs()[low..].to_vec());
    }
    if f.degree().unwrap_or(0) > 0 {
        let nums = positive_divisors(&f.coeff(0));
        let dens = positive_divisors(f.lead().unwrap());
        for q in &dens {
            for n in &nums {
                if n.gcd(q) != BigInt::one() {
                    continue;
                }
                for s in [n.clone(), -n.clone()] {
                    // p(s/q) = 0  <=>  sum c_i s^i q^(d-i) = 0
                    let d = f.degree().unwrap();
                    let mut acc = BigInt::zero();
                    let mut sp = BigInt::one();
                    let mut qp = q.pow(d as u32);
                    for c in f.coeffs() {
                        acc += c * &sp * &qp;
                        sp *= &s;
                        if !qp.is_one() {
                            qp /= q;
                        } else {
                            qp = BigInt::one();
                        }
                    }
                    if acc.is_zero() {
                        out.push(BigRational::new(s, q.clone()));
                    }
                }
            }
        }
    }
    out.sort();
    out.dedup();
    out
}

/// Power of two strictly exceeding the modulus of every complex root (Cauchy bound).
pub fn root_bound(p: &IntPoly) -> BigInt {
    let lead = p.lead().expect("nonzero").abs();
    let m = p.coeffs()[..p.coeffs().len() - 1].iter().map(|c| c.abs()).max().unwrap_or_default();
    let bound = BigInt::one() + m.div_ceil(&lead);
    let mut b = BigInt::one();
    while b <= bound {
        b <<= 1;
    }
    b
}

fn sign_variations(c: &[BigRational]) -> usize {
    let mut last = Sign::NoSign;
    let mut v = 0;
    for x in c {
        let s = x.numer().sign();
        if s == Sign::NoSign {
            continue;
        }
        if last != Sign::NoSign && s != last {
            v += 1;
        }
        last = s;
    }
    v
}

/// Descartes bound on the number of roots in the open interval `(lo, hi)`.
/// Exact when it returns 0 or 1.
fn descartes(p: &RatPoly, lo: &BigRational, hi: &BigRational) -> usize {
    let d = p.degree().unwrap_or(0);
    let affine = RatPoly::new(vec![lo.clone(), hi - lo]);
    let r = p.compose(&affine);
    let mut c = r.coeffs().to_vec();
    c.resize(d + 1, BigRational::zero());
    c.reverse();
    let q = RatPoly::new(c).taylor_shift(&BigRational::one());
    sign_variations(q.coeffs())
}

fn sign_at(p: &RatPoly, x: &BigRational) -> Sign {
    p.eval(x).numer().sign()
}

/// Sturm sequence of a squarefree polynomial.
fn sturm_chain(p: &RatPoly) -> Vec<RatPoly> {
    let mut chain = vec![p.clone(), p.derivative()];
    loop {
        let n = chain.len();
        if chain[n - 1].is_zero() {
            chain.pop();
            break;
        }
        let r = chain[n - 2].rem(&chain[n - 1]);
        if r.is_zero() {
            break;
        }
        chain.push(-r);
    }
    chain
}

fn sturm_variations(chain: &[RatPoly], x: &BigRational) -> usize {
    let vals: Vec<BigRational> = chain.iter().map(|q| q.eval(x)).collect();
    sign_variations(&vals)
}

/// Number of distinct real roots of `p` in the closed interval `[lo, hi]`.
pub fn count_roots_closed(p: &IntPoly, lo: &BigRational, hi: &BigRational) -> Result<usize> {
    if p.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let f = squarefree_part(p).to_rational();
    if f.degree() == Some(0) {
        return Ok(0);
    }
    let chain = sturm_chain(&f);
    let open_closed = sturm_variations(&chain, lo) - sturm_variations(&chain, hi);
    let at_lo = usize::from(f.eval(lo).is_zero());
    Ok(open_closed + at_lo)
}

/// Disjoint isolating intervals (or exact values), ascending, one per distinct real root.
pub fn isolate_real_roots(p: &IntPoly) -> Result<Vec<IsolatedRoot>> {
    if p.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    if p.degree() == Some(0) {
        return Ok(Vec::new());
    }
    let sqf = squarefree_part(p);
    let exact = rational_roots(&sqf);
    let mut rest = sqf.to_rational();
    for r in &exact {
        let lin = RatPoly::new(vec![-r.clone(), BigRational::one()]);
        rest = rest.div_rem(&lin).0;
    }
    let mut intervals: Vec<(BigRational, BigRational)> = Vec::new();
    if rest.degree().unwrap_or(0) > 0 {
        let b = rat(root_bound(&IntPoly::from_rational(&rest)));
        let mut stack = vec![(-b.clone(), b)];
        while let Some((lo, hi)) = stack.pop() {
            match descartes(&rest, &lo, &hi) {
                0 => {}
                1 => intervals.push((lo, hi)),
                _ => {
                    let mid = (&lo + &hi) / rat(BigInt::from(2));
                    // the midpoint is never a root: `rest` has no rational roots
                    stack.push((mid.clone(), hi));
                    stack.push((lo, mid));
                }
            }
        }
    }
    // shrink intervals until no exact root lies in their closure
    let two = rat(BigInt::from(2));
    for (lo, hi) in intervals.iter_mut() {
        while exact.iter().any(|r| &*lo <= r && r <= &*hi) {
            let mid = (&*lo + &*hi) / &two;
            if sign_at(&rest, lo) != sign_at(&rest, &mid) {
                *hi = mid;
            } else {
                *lo = mid;
            }
        }
    }
    let mut out: Vec<IsolatedRoot> = exact.into_iter().map(IsolatedRoot::Exact).collect();
    out.extend(intervals.into_iter().map(|(lo, hi)| IsolatedRoot::Interval { lo, hi }));
    out.sort_by(|a, b| a.lo().cmp(b.lo()));
    Ok(out)
}

fn dyadic_floor(q: &BigRational, frac_bits: u64) -> Dyadic {
    let scaled = (q.numer() << frac_bits).div_floor(q.denom());
    Dyadic::new(scaled, -(frac_bits as i64))
}

fn dyadic_ceil(q: &BigRational, frac_bits: u64) -> Dyadic {
    let scaled = -((-(q.numer() << frac_bits)).div_floor(q.denom()));
    Dyadic::new(scaled, -(frac_bits as i64))
}

fn magnitude_bits(q: &BigRational) -> u64 {
    let n = q.numer().abs();
    if n.is_zero() {
        return 0;
    }
    (n.bits() as i64 - q.denom().bits() as i64).max(0) as u64 + 1
}

/// Encloses the unique root of `p` in `[lo, hi]` with radius at most `2^-bits`.
pub fn refine_root(p: &IntPoly, lo: &BigRational, hi: &BigRational, bits: u32) -> Result<Ball> {
    if p.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    if lo > hi {
        return Err(Error::RootIsolation("empty interval".into()));
    }
    let n = count_roots_closed(p, lo, hi)?;
    if n != 1 {
        return Err(Error::RootIsolation(format!("interval [{lo}, {hi}] contains {n} roots, expected exactly one")));
    }
    let prec = bits + magnitude_bits(lo).max(magnitude_bits(hi)) as u32 + 8;
    let sqf = squarefree_part(p);
    if let Some(r) = rational_roots(&sqf).into_iter().find(|r| lo <= r && r <= hi) {
        return Ok(Ball::from_rational(&r, prec));
    }
    let f = sqf.to_rational();
    let mut a = lo.clone();
    let mut b = hi.clone();
    let sa = sign_at(&f, &a);
    // coarse rational bisection, then integer bisection on the grid 2^-e
    let coarse = bits.min(64);
    let target = BigRational::new(BigInt::one(), BigInt::one() << coarse);
    let two = rat(BigInt::from(2));
    let mut step = 0u64;
    while &b - &a > target {
        // bisect at a dyadic point near the middle
        let width = &b - &a;
        let frac = magnitude_bits(&(BigRational::one() / &width)) + 2 + step.min(4);
        let mid_q = (&a + &b) / &two;
        let m = dyadic_floor(&mid_q, frac).to_rational();
        let m = if m <= a || m >= b { mid_q } else { m };
        if sign_at(&f, &m) == sa {
            a = m;
        } else {
            b = m;
        }
        step += 1;
    }
    let fb = bits as u64 + 4;
    if coarse == bits {
        return Ok(Ball::from_endpoints(&dyadic_floor(&a, fb), &dyadic_ceil(&b, fb), prec));
    }
    let mut lo_m = grid_index(&dyadic_ceil(&a, fb), fb);
    let mut hi_m = grid_index(&dyadic_floor(&b, fb), fb);
    let grid = |m: &BigInt| Dyadic::new(m.clone(), -(fb as i64));
    if lo_m > hi_m || sign_on_grid(&sqf, &lo_m, fb) != sa {
        return Ok(Ball::from_endpoints(&dyadic_floor(&a, fb), &grid(&lo_m), prec));
    }
    if sign_on_grid(&sqf, &hi_m, fb) == sa {
        return Ok(Ball::from_endpoints(&grid(&hi_m), &dyadic_ceil(&b, fb), prec));
    }
    while &hi_m - &lo_m > BigInt::one() {
        let mid: BigInt = (&lo_m + &hi_m) >> 1;
        if sign_on_grid(&sqf, &mid, fb) == sa {
            lo_m = mid;
        } else {
            hi_m = mid;
        }
    }
    Ok(Ball::from_endpoints(&grid(&lo_m), &grid(&hi_m), prec))
}

/// `m` with `x = m / 2^e`, for `x` on that grid.
fn grid_index(x: &Dyadic, e: u64) -> BigInt {
    let y = x.shl(e as i64);
    y.mantissa() << y.exponent() as usize
}

/// Sign of `p(m / 2^e)` by integer Horner evaluation of `2^{e deg p} p(m / 2^e)`.
fn sign_on_grid(p: &IntPoly, m: &BigInt, e: u64) -> Sign {
    let d = p.degree().unwrap_or(0);
    let mut acc = BigInt::zero();
    for (i, c) in p.coeffs().iter().enumerate().rev() {
        acc = acc * m + (c << (e as usize * (d - i)));
    }
    acc.sign()
}

/// Refines an isolated root to radius at most `2^-bits`.
pub fn refine_isolated(p: &IntPoly, root: &IsolatedRoot, bits: u32) -> Result<Ball> {
    match root {
        IsolatedRoot::Exact(q) => Ok(Ball::from_rational(q, bits + magnitude_bits(q) as u32 + 8)),
        IsolatedRoot::Interval { lo, hi } => refine_root(p, lo, hi, bits),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    #[test]
    fn linear_root_is_exact() {
        let p = IntPoly::from_i64s(&[1, -2]);
        let r = isolate_real_roots(&p).unwrap();
        assert_eq!(r, vec![IsolatedRoot::Exact(q(1, 2))]);
        let b = refine_root(&p, &q(0, 1), &q(1, 1), 64).unwrap();
        assert!(b.is_exact());
        assert!(b.contains_rational(&q(1, 2)));
    }

    #[test]
    fn quadratic_with_rational_roots() {
        let p = IntPoly::from_i64s(&[1, -2, -8]);
        let r = isolate_real_roots(&p).unwrap();
        assert_eq!(r, vec![IsolatedRoot::Exact(q(-1, 2)), IsolatedRoot::Exact(q(1, 4))]);
    }

    #[test]
    fn no_real_roots() {
        assert!(isolate_real_roots(&IntPoly::from_i64s(&[1, 0, 1])).unwrap().is_empty());
    }

    #[test]
    fn zero_polynomial_is_rejected() {
        let e = isolate_real_roots(&IntPoly::zero()).unwrap_err();
        assert_eq!(e.to_string(), "zero polynomial has no root set");
    }

    #[test]
    fn sqrt_two_minus_one() {
        let p = IntPoly::from_i64s(&[1, -2, -1]);
        let b = refine_root(&p, &q(0, 1), &q(1, 1), 128).unwrap();
        assert!(b.rad_at_most_pow2(128));
        let v = b.to_f64();
        assert!((v - (2f64.sqrt() - 1.0)).abs() < 1e-15);
        // (mu + 1)^2 = 2 within the enclosure
        let s = &b + &Ball::from_int(1);
        assert!((&s * &s).contains_rational(&q(2, 1)));
    }

    #[test]
    fn refine_rejects_bad_intervals() {
        let p = IntPoly::from_i64s(&[1, -2, -8]);
        assert!(refine_root(&p, &q(-1, 1), &q(1, 1), 64).is_err());
        assert!(refine_root(&p, &q(1, 2), &q(1, 1), 64).is_err());
    }

    #[test]
    fn mixed_exact_and_irrational_roots() {
        // (2x - 1)(x^2 - 2)(x + 3)^2
        let p = &(&IntPoly::from_i64s(&[-1, 2]) * &IntPoly::from_i64s(&[-2, 0, 1])) * &IntPoly::from_i64s(&[9, 6, 1]);
        let r = isolate_real_roots(&p).unwrap();
        assert_eq!(r.len(), 4);
        for w in r.windows(2) {
            assert!(w[0].hi() < w[1].lo());
        }
        assert_eq!(r[0], IsolatedRoot::Exact(q(-3, 1)));
        assert!(matches!(r[1], IsolatedRoot::Interval { .. }));
        assert!(r.iter().any(|x| x.exact() == Some(&q(1, 2))));
    }
}
