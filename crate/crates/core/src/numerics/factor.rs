//! Factorisation of integer polynomials over the rationals.
//!
//! Squarefree decomposition is exact (Yun). Rational roots come from divisor search.
//! The remaining factors are recovered from numerical roots: every conjugate-closed
//! subset of roots, scaled by a divisor of the leading coefficient, is rounded to an
//! integer polynomial and accepted only if it divides exactly. This is adequate for
//! the low degrees and small coefficients met here; it is not a general-purpose
//! factoriser.

use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{FromPrimitive, One, Signed, ToPrimitive, Zero};

use super::poly::Polynomial;
use super::roots::rational_roots;
use crate::error::{Error, Result};

type IntPoly = Polynomial<BigInt>;

/// `constant * Π factor^multiplicity`, factors primitive, irreducible, positive leading coefficient.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Factorization {
    pub constant: BigRational,
    pub factors: Vec<(IntPoly, u32)>,
}

impl Factorization {
    /// Multiplies everything back together.
    pub fn expand(&self) -> Polynomial<BigRational> {
        let mut acc = Polynomial::constant(self.constant.clone());
        for (f, m) in &self.factors {
            acc = &acc * &f.to_rational().pow(*m);
        }
        acc
    }

    pub fn irreducible_factors(&self) -> impl Iterator<Item = &IntPoly> {
        self.factors.iter().map(|(f, _)| f)
    }
}

/// Yun's squarefree decomposition: primitive `s_i` with `p = c * Π s_i^i`.
fn squarefree_decomposition(p: &IntPoly) -> Vec<(IntPoly, u32)> {
    let f = p.to_rational();
    let mut out = Vec::new();
    let fp = f.derivative();
    let a0 = f.gcd(&fp);
    let mut b = f.div_rem(&a0).0;
    let mut c = fp.div_rem(&a0).0;
    let mut d = &c - &b.derivative();
    let mut i = 1;
    while b.degree().unwrap_or(0) > 0 {
        let a = b.gcd(&d);
        if a.degree().unwrap_or(0) > 0 {
            out.push((IntPoly::from_rational(&a), i));
        }
        b = b.div_rem(&a).0;
        c = d.div_rem(&a).0;
        d = &c - &b.derivative();
        i += 1;
    }
    out
}

/// Aberth–Ehrlich simultaneous iteration for all complex roots.
pub(crate) fn complex_roots_f64(p: &IntPoly) -> Vec<Complex64> {
    let d = p.degree().unwrap_or(0);
    if d == 0 {
        return Vec::new();
    }
    let lead = p.lead().unwrap().to_f64().unwrap_or(1.0);
    let c: Vec<Complex64> = p.coeffs().iter().map(|x| Complex64::new(x.to_f64().unwrap_or(0.0) / lead, 0.0)).collect();
    let eval = |z: Complex64| -> (Complex64, Complex64) {
        let mut v = Complex64::zero();
        let mut dv = Complex64::zero();
        for a in c.iter().rev() {
            dv = dv * z + v;
            v = v * z + a;
        }
        (v, dv)
    };
    let radius = c[..d].iter().map(|a| a.norm()).fold(0.0f64, f64::max).powf(1.0 / d as f64).max(0.5);
    let mut z: Vec<Complex64> = (0..d)
        .map(|k| Complex64::from_polar(radius, 2.0 * std::f64::consts::PI * (k as f64 + 0.25) / d as f64 + 0.4))
        .collect();
    for _ in 0..500 {
        let mut moved = 0.0f64;
        for i in 0..d {
            let (v, dv) = eval(z[i]);
            if v == Complex64::zero() {
                continue;
            }
            let ratio = v / dv;
            let s: Complex64 = (0..d).filter(|&j| j != i).map(|j| Complex64::one() / (z[i] - z[j])).sum();
            let w = ratio / (Complex64::one() - ratio * s);
            if w.is_finite() {
                z[i] -= w;
                moved = moved.max(w.norm() / z[i].norm().max(1e-300));
            }
        }
        if moved < 1e-15 {
            break;
        }
    }
    z
}

fn round_to_int(x: f64) -> Option<BigInt> {
    BigInt::from_f64(x.round())
}

fn candidate_from_roots(roots: &[Complex64], scale: f64) -> Option<IntPoly> {
    let mut c = vec![Complex64::new(scale, 0.0)];
    for r in roots {
        let mut next = vec![Complex64::zero(); c.len() + 1];
        for (i, a) in c.iter().enumerate() {
            next[i + 1] += a;
            next[i] -= a * r;
        }
        c = next;
    }
    let ints: Option<Vec<BigInt>> = c.iter().map(|a| round_to_int(a.re)).collect();
    Some(IntPoly::new(ints?))
}

/// Conjugate-closed groups: real roots alone, complex roots paired with their conjugate.
fn conjugate_groups(roots: &[Complex64]) -> Vec<Vec<Complex64>> {
    let scale = roots.iter().map(|z| z.norm()).fold(1.0, f64::max);
    let tol = 1e-7 * scale;
    let mut used = vec![false; roots.len()];
    let mut groups = Vec::new();
    for i in 0..roots.len() {
        if used[i] {
            continue;
        }
        used[i] = true;
        let z = roots[i];
        if z.im.abs() <= tol {
            groups.push(vec![Complex64::new(z.re, 0.0)]);
            continue;
        }
        let partner = (0..roots.len())
            .filter(|&j| !used[j])
            .min_by(|&a, &b| (roots[a] - z.conj()).norm().partial_cmp(&(roots[b] - z.conj()).norm()).unwrap());
        match partner {
            Some(j) => {
                used[j] = true;
                groups.push(vec![z, z.conj()]);
            }
            None => groups.push(vec![z]),
        }
    }
    groups
}

fn positive_divisors_small(n: &BigInt) -> Vec<BigInt> {
    let n = n.abs();
    let mut out = Vec::new();
    let mut d = BigInt::one();
    while &d * &d <= n {
        if (&n % &d).is_zero() {
            out.push(d.clone());
            let e = &n / &d;
            if e != d {
                out.push(e);
            }
        }
        d += 1;
    }
    out.sort();
    out
}

/// Splits a squarefree primitive polynomial without rational roots into irreducibles.
fn split_squarefree(p: &IntPoly) -> Vec<IntPoly> {
    let mut remaining = p.primitive();
    let mut out = Vec::new();
    loop {
        let d = remaining.degree().unwrap_or(0);
        if d <= 3 {
            // no rational roots and degree <= 3 means irreducible
            if d > 0 {
                out.push(remaining);
            }
            return out;
        }
        let groups = conjugate_groups(&complex_roots_f64(&remaining));
        let divisors = positive_divisors_small(remaining.lead().unwrap());
        let mut found = None;
        // factors containing the first group, smallest degree first
        let rest: Vec<usize> = (1..groups.len()).collect();
        'search: for size in 0..rest.len() {
            for subset in combinations(&rest, size) {
                let mut roots = groups[0].clone();
                for &g in &subset {
                    roots.extend(groups[g].iter().cloned());
                }
                if roots.len() >= d {
                    continue;
                }
                for c in &divisors {
                    let Some(cand) = candidate_from_roots(&roots, c.to_f64().unwrap_or(f64::INFINITY)) else {
                        continue;
                    };
                    if cand.degree() != Some(roots.len()) {
                        continue;
                    }
                    if let Some(q) = remaining.div_exact(&cand) {
                        found = Some((cand.primitive(), q));
                        break 'search;
                    }
                }
            }
        }
        match found {
            Some((f, q)) => {
                out.push(f);
                remaining = q.primitive();
            }
            None => {
                out.push(remaining);
                return out;
            }
        }
    }
}

fn combinations(items: &[usize], k: usize) -> Vec<Vec<usize>> {
    if k == 0 {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for (i, &x) in items.iter().enumerate() {
        for mut tail in combinations(&items[i + 1..], k - 1) {
            tail.insert(0, x);
            out.push(tail);
        }
    }
    out
}

fn sort_key(p: &IntPoly) -> (usize, Vec<BigInt>) {
    (p.degree().unwrap_or(0), p.coeffs().iter().rev().cloned().collect())
}

/// Factors `p` into primitive irreducible integer polynomials with positive leading
/// coefficients; the product with the returned constant reproduces `p` exactly.
pub fn factor_integer_poly(p: &IntPoly) -> Result<Factorization> {
    if p.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let mut factors: Vec<(IntPoly, u32)> = Vec::new();
    for (s, m) in squarefree_decomposition(p) {
        let mut rest = s.clone();
        for r in rational_roots(&s) {
            let lin = IntPoly::new(vec![-r.numer().clone(), r.denom().clone()]).primitive();
            rest = rest.div_exact(&lin).ok_or_else(|| Error::Factorization(format!("root {r} did not divide")))?;
            factors.push((lin, m));
        }
        for f in split_squarefree(&rest) {
            factors.push((f, m));
        }
    }
    factors.sort_by_key(|(f, m)| (sort_key(f), *m));
    let mut prod = IntPoly::one();
    for (f, m) in &factors {
        prod = &prod * &f.pow(*m);
    }
    let lead_ratio = BigRational::new(p.lead().unwrap().clone(), prod.lead().unwrap().clone());
    let fac = Factorization { constant: lead_ratio, factors };
    if fac.expand() != p.to_rational() {
        return Err(Error::Factorization(format!("product check failed for {p}")));
    }
    Ok(fac)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ip(c: &[i64]) -> IntPoly {
        IntPoly::from_i64s(c)
    }

    #[test]
    fn cubic_with_linear_and_quadratic_factor() {
        // 2x^3 - 2x^2 - 3x + 1 = (x + 1)(2x^2 - 4x + 1)
        let f = factor_integer_poly(&ip(&[1, -3, -2, 2])).unwrap();
        assert_eq!(f.factors, vec![(ip(&[1, 1]), 1), (ip(&[1, -4, 2]), 1)]);
    }

    #[test]
    fn repeated_factor() {
        // 4x^3 + 7x^2 + 2x - 1 = (x + 1)^2 (4x - 1)
        let f = factor_integer_poly(&ip(&[-1, 2, 7, 4])).unwrap();
        assert_eq!(f.factors, vec![(ip(&[1, 1]), 2), (ip(&[-1, 4]), 1)]);
        assert_eq!(f.constant, BigRational::one());
    }

    #[test]
    fn linear_normalised_sign() {
        let f = factor_integer_poly(&ip(&[1, -2])).unwrap();
        assert_eq!(f.factors, vec![(ip(&[-1, 2]), 1)]);
        assert_eq!(f.constant, -BigRational::one());
    }

    #[test]
    fn product_of_two_irrational_quadratics() {
        // (x^2 + 1)(x^2 + 2x - 1), the quartic of the (1,1,3,4,...) sequence up to sign
        let p = &ip(&[1, 0, 1]) * &ip(&[-1, 2, 1]);
        let f = factor_integer_poly(&p).unwrap();
        assert_eq!(f.factors, vec![(ip(&[1, 0, 1]), 1), (ip(&[-1, 2, 1]), 1)]);
    }

    #[test]
    fn irreducible_quartic_stays_whole() {
        let f = factor_integer_poly(&ip(&[-2, 0, 0, 0, 1])).unwrap();
        assert_eq!(f.factors, vec![(ip(&[-2, 0, 0, 0, 1]), 1)]);
    }

    #[test]
    fn content_goes_to_constant() {
        let p = ip(&[-6, 0, 3]);
        let f = factor_integer_poly(&p).unwrap();
        assert_eq!(f.factors, vec![(ip(&[-2, 0, 1]), 1)]);
        assert_eq!(f.constant, BigRational::from_integer(3.into()));
    }
}
