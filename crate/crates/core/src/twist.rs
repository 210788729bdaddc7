//! The ℰ-basis `e_0, e_1, ...` of stabilising row vectors, reduction modulo its span,
//! the polynomials `R` and `g` with `x_a R(A) = g(B) e_0`, and the resulting Catalan
//! combinations.

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::catalan::{catalan_table, discrepancy_series, CheckReport};
use crate::error::{Error, Result};
use crate::numerics::linalg::first_dependence;
use crate::numerics::Polynomial;
use crate::sequence::{CountIter, EventuallyConstantSeq};
use crate::spectral::{min_poly_lambda, mu_factor, mu_polynomial};
use crate::stabilizing::{apply_poly, StabilizingVector};

type IntPoly = Polynomial<BigInt>;
type RatPoly = Polynomial<BigRational>;
type RatVec = StabilizingVector<BigRational>;

fn q(n: impl Into<BigInt>) -> BigRational {
    BigRational::from_integer(n.into())
}

/// `x_a = (1, 1, 1, ...) Q(A)`.
pub fn x_a(seq: &EventuallyConstantSeq) -> Result<RatVec> {
    let qpoly = min_poly_lambda(seq)?;
    Ok(apply_poly(seq, &RatVec::ones(), qpoly.coeffs()))
}

/// `e_0 = (-1, a_0, ..., a_{k-1}, a, ...)`; `e_i` is `P` shifted right by `i - 1`.
pub fn e_vector(seq: &EventuallyConstantSeq, i: usize) -> RatVec {
    if i == 0 {
        let mut prefix = vec![q(-1)];
        prefix.extend(seq.prefix().iter().map(|&a| q(a)));
        return RatVec::new(prefix, q(seq.tail()));
    }
    let mut entries = vec![BigRational::zero(); i - 1];
    entries.extend(mu_polynomial(seq).coeffs().iter().map(|c| BigRational::from_integer(c.clone())));
    RatVec::finite(entries)
}

/// `y = c0 e_0 + Σ_{i>=1} quotient_{i-1} e_i + residue`, with `residue` reduced mod `P`.
#[derive(Clone, Debug, PartialEq)]
pub struct Reduction {
    pub c0: BigRational,
    pub quotient: RatPoly,
    pub residue: RatPoly,
}

impl Reduction {
    pub fn in_span(&self) -> bool {
        self.residue.is_zero()
    }

    /// ℰ-coordinates `(c0, c1, ...)`; meaningful when [`Reduction::in_span`].
    pub fn coordinates(&self) -> Vec<BigRational> {
        let mut u = vec![self.c0.clone()];
        u.extend(self.quotient.coeffs().iter().cloned());
        while u.len() > 1 && u.last().is_some_and(|c| c.is_zero()) {
            u.pop();
        }
        u
    }
}

/// Reduces `y ∈ 𝒱` modulo the span of ℰ. Membership in 𝒱 is decided exactly:
/// the finite part of `y - c0 e_0` must vanish at `mu`.
pub fn reduce_mod_e(seq: &EventuallyConstantSeq, y: &RatVec) -> Result<Reduction> {
    let c0 = y.tail() / q(seq.tail());
    let f = y - &e_vector(seq, 0).scale(&c0);
    debug_assert!(f.tail().is_zero());
    let fpoly = RatPoly::new(f.prefix().to_vec());
    let p = mu_polynomial(seq);
    let m = mu_factor(&p)?.to_rational();
    if !fpoly.rem(&m).is_zero() {
        return Err(Error::NotInV(format!("{y} does not pair to zero against (1, mu, mu^2, ...)")));
    }
    let (quotient, residue) = fpoly.div_rem(&p.to_rational());
    Ok(Reduction { c0, quotient, residue })
}

fn padded(p: &RatPoly, n: usize) -> Vec<BigRational> {
    (0..n).map(|i| p.coeff(i)).collect()
}

/// Lowest-degree `R` with `x_a R(A) ∈ ⟨ℰ⟩`, primitive with positive leading coefficient.
pub fn find_r(seq: &EventuallyConstantSeq) -> Result<IntPoly> {
    let dim = mu_polynomial(seq).degree().unwrap_or(0);
    let mut y = x_a(seq)?;
    let mut residues = Vec::new();
    for _ in 0..=dim + 1 {
        residues.push(padded(&reduce_mod_e(seq, &y)?.residue, dim));
        if let Some(c) = first_dependence(&residues) {
            return Ok(IntPoly::from_rational(&RatPoly::new(c)));
        }
        y = y.row_step(seq);
    }
    Err(Error::Contract(format!("no dependence among the first {} residues for {seq}", dim + 2)))
}

/// One step of `B` in ℰ-coordinates: `B e_0 = e_0 + e_1`, `B e_i = e_{i-1} + e_{i+1}`.
pub fn b_prime_step(u: &[BigRational]) -> Vec<BigRational> {
    let mut out = vec![BigRational::zero(); u.len() + 1];
    for (i, c) in u.iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        if i == 0 {
            out[0] += c;
        } else {
            out[i - 1] += c;
        }
        out[i + 1] += c;
    }
    while out.len() > 1 && out.last().is_some_and(|c| c.is_zero()) {
        out.pop();
    }
    out
}

/// ℰ-coordinates of `B^n e_0` for `n = 0..=n_max`.
pub fn b_powers_of_e0(n_max: usize) -> Vec<Vec<BigRational>> {
    let mut out = vec![vec![BigRational::one()]];
    for _ in 0..n_max {
        let next = b_prime_step(out.last().expect("nonempty"));
        out.push(next);
    }
    out
}

/// `g` with `x_a R(A) = g(B) e_0`, verified exactly.
pub fn find_g(seq: &EventuallyConstantSeq, r: &IntPoly) -> Result<IntPoly> {
    let y = apply_poly(seq, &x_a(seq)?, r.coeffs());
    let red = reduce_mod_e(seq, &y)?;
    if !red.in_span() {
        return Err(Error::Contract(format!("x_a R(A) is not in the span of E for R = {r}")));
    }
    let mut u = red.coordinates();
    let top = u.len() - 1;
    let basis = b_powers_of_e0(top);
    let mut gamma = vec![BigInt::zero(); top + 1];
    for m in (0..=top).rev() {
        let c = u.get(m).cloned().unwrap_or_else(BigRational::zero);
        if c.is_zero() {
            continue;
        }
        if !c.is_integer() {
            return Err(Error::Contract(format!("g has a non-integral coefficient {c} at x^{m}")));
        }
        for (i, b) in basis[m].iter().enumerate() {
            u[i] -= &c * b;
        }
        gamma[m] = c.to_integer();
    }
    let g = IntPoly::new(gamma);
    let rebuilt = apply_poly(seq, &e_vector(seq, 0), g.coeffs());
    if rebuilt != y {
        return Err(Error::Contract(format!("g(B) e_0 = {rebuilt} differs from x_a R(A) = {y}")));
    }
    Ok(g)
}

/// `[x_a R(A) A^n]_0 = Σ α_i C_{k+i}` for `n = 2k` and `Σ β_i C_{k+i}` for `n = 2k + 1`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CatalanCombo {
    pub alpha: Vec<BigInt>,
    pub beta: Vec<BigInt>,
    pub r: IntPoly,
    pub q: IntPoly,
    pub g: IntPoly,
}

impl CatalanCombo {
    /// `RQ`, the polynomial whose twist of `d` is the combination.
    pub fn twist_poly(&self) -> IntPoly {
        &self.r * &self.q
    }

    /// The predicted value of `[x_a R(A) A^n]_0` given `C_0, ..., C_{n/2 + p}`.
    pub fn predict(&self, n: usize, cat: &[BigInt]) -> BigInt {
        let k = n / 2;
        let w = if n % 2 == 0 { &self.alpha } else { &self.beta };
        w.iter().enumerate().map(|(i, c)| c * &cat[k + i]).sum()
    }

    /// Largest Catalan index needed by [`CatalanCombo::predict`] up to `n_max`.
    pub fn catalan_reach(&self, n_max: usize) -> usize {
        n_max / 2 + self.alpha.len().max(self.beta.len())
    }
}

impl fmt::Display for CatalanCombo {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let list = |v: &[BigInt]| v.iter().map(|c| c.to_string()).collect::<Vec<_>>().join(", ");
        write!(f, "alpha = ({}), beta = ({})", list(&self.alpha), list(&self.beta))
    }
}

/// `R`, `Q`, `g` and `α_i = -γ_{2i}`, `β_0 = 0`, `β_{i+1} = -γ_{2i+1}`.
pub fn catalan_combo(seq: &EventuallyConstantSeq) -> Result<CatalanCombo> {
    let r = find_r(seq)?;
    let g = find_g(seq, &r)?;
    let qpoly = min_poly_lambda(seq)?;
    let deg = g.degree().unwrap_or(0);
    let alpha = (0..=deg / 2).map(|i| -g.coeff(2 * i)).collect();
    let mut beta = vec![BigInt::zero()];
    beta.extend((0..deg.div_ceil(2)).map(|i| -g.coeff(2 * i + 1)));
    Ok(CatalanCombo { alpha, beta, r, q: qpoly, g })
}

/// Exact check of `[x_a R(A) A^n]_0` against the Catalan combination for `n <= N`,
/// plus a cross-check against the twist `(RQ) * d` of the certified series.
pub fn verify_twist_recurrence(seq: &EventuallyConstantSeq, n_max: usize) -> Result<CheckReport> {
    let combo = catalan_combo(seq)?;
    let y: StabilizingVector<BigInt> = apply_poly(seq, &x_a(seq)?, combo.r.coeffs()).map(|c| c.to_integer());
    let cat = catalan_table(combo.catalan_reach(n_max));
    let twist = combo.twist_poly();
    let span = twist.degree().unwrap_or(0);
    let series = discrepancy_series(seq, n_max + span, None)?;
    let mut report = CheckReport { name: format!("twist recurrence for {seq}"), checked: 0, first_mismatch: None };
    for (n, v) in CountIter::new(seq).take(n_max + 1).enumerate() {
        let got = y.pair(&v);
        let expect = combo.predict(n, &cat);
        report.checked += 1;
        if got != expect {
            report.first_mismatch = Some((n, expect.to_string(), got.to_string()));
            break;
        }
        let t = series.twist(twist.coeffs(), n);
        if !t.contains_rational(&BigRational::from_integer(got.clone())) {
            report.first_mismatch = Some((n, got.to_string(), format!("twisted enclosure {}", t.to_decimal(20))));
            break;
        }
    }
    Ok(report)
}

/// `F(k) / C_k` for `F(k) = Σ c_i C_{k+i}`, reduced, with `q = deg(den) - deg(num)`.
#[derive(Clone, Debug, PartialEq)]
pub struct GrowthExponent {
    pub q: i64,
    pub num: RatPoly,
    /// Monic.
    pub den: RatPoly,
}

impl fmt::Display for GrowthExponent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let num = self.num.display_var("k");
        if self.den.degree() == Some(0) {
            return f.write_str(&num);
        }
        let den = self.den.display_var("k");
        let den = if self.den.coeffs().iter().filter(|c| !c.is_zero()).count() > 1 { format!("({den})") } else { den };
        if self.num.degree() == Some(0) {
            write!(f, "{num}/{den}")
        } else {
            write!(f, "({num})/{den}")
        }
    }
}

/// Growth exponent of `Σ c_i C_{k+i}` via `C_{k+1} = 2(2k+1)/(k+2) C_k`.
pub fn growth_exponent(coeffs: &[BigInt]) -> Result<GrowthExponent> {
    if coeffs.is_empty() || coeffs.iter().all(|c| c.is_zero()) {
        return Err(Error::AllCancelling);
    }
    let p = coeffs.len() - 1;
    let lin = |a: i64, b: i64| RatPoly::new(vec![q(b), q(a)]);
    // C_{k+i}/C_k = Π_{j<i} 2(2k+2j+1) / (k+j+2); common denominator Π_{j<p} (k+j+2)
    let up = |j: usize| lin(4, 4 * j as i64 + 2);
    let down = |j: usize| lin(1, j as i64 + 2);
    let mut num = RatPoly::zero();
    for (i, c) in coeffs.iter().enumerate() {
        let mut t = RatPoly::constant(BigRational::from_integer(c.clone()));
        for j in 0..i {
            t = &t * &up(j);
        }
        for j in i..p {
            t = &t * &down(j);
        }
        num = &num + &t;
    }
    if num.is_zero() {
        return Err(Error::AllCancelling);
    }
    let mut den = (0..p).fold(RatPoly::one(), |acc, j| &acc * &down(j));
    let g = num.gcd(&den);
    num = num.div_rem(&g).0;
    den = den.div_rem(&g).0;
    let lead = den.lead().cloned().unwrap_or_else(BigRational::one);
    num = num.scale(&lead.recip());
    den = den.monic();
    let qexp = den.degree().unwrap_or(0) as i64 - num.degree().unwrap_or(0) as i64;
    if qexp < 0 || qexp > p as i64 {
        return Err(Error::Contract(format!("growth exponent {qexp} outside [0, {p}]")));
    }
    Ok(GrowthExponent { q: qexp, num, den })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn seq(p: &[u64], t: u64) -> EventuallyConstantSeq {
        EventuallyConstantSeq::new(p.to_vec(), t).unwrap()
    }

    fn rv(p: &[i64], t: i64) -> RatVec {
        RatVec::new(p.iter().map(|&x| q(x)).collect(), q(t))
    }

    fn ip(c: &[i64]) -> IntPoly {
        IntPoly::from_i64s(c)
    }

    #[test]
    fn x_a_examples() {
        assert_eq!(x_a(&EventuallyConstantSeq::all_ones()).unwrap(), rv(&[-1], 1));
        assert_eq!(x_a(&seq(&[1], 2)).unwrap(), rv(&[-2, 2], 4));
        assert_eq!(x_a(&seq(&[1, 1, 3], 4)).unwrap(), rv(&[-3, 1, 7, 11], 12));
    }

    #[test]
    fn e_vector_examples() {
        assert_eq!(e_vector(&EventuallyConstantSeq::all_ones(), 0), rv(&[-1], 1));
        assert_eq!(e_vector(&seq(&[1], 2), 1), rv(&[1, -2, -1], 0));
        assert_eq!(e_vector(&seq(&[1, 1, 3], 4), 2), rv(&[0, 1, -2, 0, -2, -1], 0));
    }

    #[test]
    fn reductions() {
        let ones = EventuallyConstantSeq::all_ones();
        let r = reduce_mod_e(&ones, &x_a(&ones).unwrap()).unwrap();
        assert_eq!(r.c0, q(1));
        assert!(r.in_span());
        let s = seq(&[1], 2);
        let r = reduce_mod_e(&s, &x_a(&s).unwrap()).unwrap();
        assert_eq!((r.c0.clone(), r.in_span()), (q(2), true));
        let s = seq(&[1, 1, 3], 4);
        let r = reduce_mod_e(&s, &x_a(&s).unwrap()).unwrap();
        assert_eq!(r.c0, q(3));
        assert!(!r.in_span());
        // (0, -2, 4, 2) has degree 3 < deg P = 4, so it is its own residue
        assert_eq!(r.residue, RatPoly::new(vec![q(0), q(-2), q(4), q(2)]));
    }

    #[test]
    fn not_in_v_is_rejected() {
        let ones = EventuallyConstantSeq::all_ones();
        assert!(matches!(reduce_mod_e(&ones, &RatVec::ones()), Err(Error::NotInV(_))));
    }

    #[test]
    fn r_and_g() {
        let ones = EventuallyConstantSeq::all_ones();
        assert_eq!(find_r(&ones).unwrap(), ip(&[1]));
        assert_eq!(find_g(&ones, &ip(&[1])).unwrap(), ip(&[1]));
        let s = seq(&[1], 2);
        assert_eq!(find_r(&s).unwrap(), ip(&[1]));
        assert_eq!(find_g(&s, &ip(&[1])).unwrap(), ip(&[2]));
        let s = seq(&[1, 1, 3], 4);
        let r = find_r(&s).unwrap();
        assert_eq!(r, ip(&[0, 1]));
        assert_eq!(find_g(&s, &r).unwrap(), ip(&[2, 1]));
        assert_eq!(r.to_string(), "x");
        assert_eq!(find_g(&s, &r).unwrap().to_string(), "x + 2");
    }

    #[test]
    fn combos() {
        let c = catalan_combo(&EventuallyConstantSeq::all_ones()).unwrap();
        assert_eq!((c.alpha, c.beta), (vec![BigInt::from(-1)], vec![BigInt::zero()]));
        let c = catalan_combo(&seq(&[1], 2)).unwrap();
        assert_eq!((c.alpha, c.beta), (vec![BigInt::from(-2)], vec![BigInt::zero()]));
        let c = catalan_combo(&seq(&[1, 1, 3], 4)).unwrap();
        assert_eq!(c.alpha, vec![BigInt::from(-2)]);
        assert_eq!(c.beta, vec![BigInt::zero(), BigInt::from(-1)]);
        assert_eq!(c.twist_poly(), ip(&[0, -8, 0, 1]));
    }

    #[test]
    fn twist_recurrences_small() {
        for s in [EventuallyConstantSeq::all_ones(), seq(&[1], 2), seq(&[1, 1, 3], 4)] {
            let rep = verify_twist_recurrence(&s, 40).unwrap();
            assert!(rep.passed(), "{rep}");
        }
    }

    #[test]
    fn growth_examples() {
        let g = growth_exponent(&[BigInt::from(-1)]).unwrap();
        assert_eq!(g.q, 0);
        assert_eq!(g.to_string(), "-1");
        let g = growth_exponent(&[BigInt::from(-4), BigInt::from(1)]).unwrap();
        assert_eq!(g.q, 1);
        assert_eq!(g.to_string(), "-6/(k + 2)");
        assert_eq!(growth_exponent(&[BigInt::from(-2)]).unwrap().q, 0);
        assert!(matches!(growth_exponent(&[BigInt::zero(), BigInt::zero()]), Err(Error::AllCancelling)));
    }

    #[test]
    fn b_action_laws() {
        let s = seq(&[1, 1, 3], 4);
        let e0 = e_vector(&s, 0);
        assert_eq!(e0.row_step(&s), &e0 + &e_vector(&s, 1));
        for i in 1..10 {
            assert_eq!(e_vector(&s, i).row_step(&s), &e_vector(&s, i - 1) + &e_vector(&s, i + 1));
        }
    }
}
