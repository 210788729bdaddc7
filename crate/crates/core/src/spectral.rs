//! Inflation factor, natural length function, frequencies, density and the
//! classification of the remaining roots of the `mu`-polynomial.

use std::cmp::Ordering;
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::numerics::factor::complex_roots_f64;
use crate::numerics::roots::{count_roots_closed, rational_roots, refine_isolated, squarefree_part};
use crate::numerics::{factor_integer_poly, isolate_real_roots, refine_root, Ball, CBall, Dyadic, Polynomial};
use crate::scalar::{Field, Scalar};
use crate::sequence::EventuallyConstantSeq;
use crate::stabilizing::StabilizingVector;

type IntPoly = Polynomial<BigInt>;

fn rat(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

/// `P(x) = 1 + (-1 - a_0) x + (a_0 - a_1) x^2 + ... + (a_{k-1} - a) x^{k+1}`; `mu` is its root in `(0, 1)`.
pub fn mu_polynomial(seq: &EventuallyConstantSeq) -> IntPoly {
    let k = seq.k();
    let mut c = Vec::with_capacity(k + 2);
    c.push(BigInt::one());
    c.push(-BigInt::one() - BigInt::from(seq.get(0)));
    for j in 2..=k + 1 {
        c.push(BigInt::from(seq.get(j - 2)) - BigInt::from(seq.get(j - 1)));
    }
    IntPoly::new(c)
}

/// Natural length function and derived averages, over any field.
///
/// `ell([j])` is stored for `j <= k`; beyond that `ell([j]) = alpha * mu^j + c`.
#[derive(Clone, Debug, PartialEq)]
pub struct LengthFunction<T> {
    pub mu: T,
    pub lambda: T,
    pub prefix: Vec<T>,
    pub alpha: T,
    pub constant: T,
    pub avg_length: T,
    pub density: T,
    k: usize,
}

impl<T: Field> LengthFunction<T> {
    /// Solves `ell([j+1]) = lambda ell([j]) - ell([j-1]) - a_j` from `ell([0]) = 1`,
    /// `ell([1]) = lambda - a_0`, and takes the bounded solution from `j = k` on.
    pub fn new(seq: &EventuallyConstantSeq, mu: T) -> Self {
        let k = seq.k();
        let a = |j: usize| T::from_i64(seq.get(j) as i64);
        let lambda = mu.clone() + mu.recip();
        let mut prefix = vec![T::one()];
        if k >= 1 {
            prefix.push(lambda.clone() - a(0));
        }
        for j in 1..k {
            let next = lambda.clone() * prefix[j].clone() - prefix[j - 1].clone() - a(j);
            prefix.push(next);
        }
        let two = T::from_i64(2);
        let constant = T::from_i64(seq.tail() as i64) / (lambda.clone() - two);
        let mu_k = mu.powu(k as u64);
        let alpha = (prefix[k].clone() - constant.clone()) / mu_k.clone();
        // sum_{j<k} nu_j ell_j + alpha mu^{2k} / (1 + mu) + c mu^k
        let one_minus = T::one() - mu.clone();
        let mut avg = T::zero();
        let mut mu_j = T::one();
        for l in prefix.iter().take(k) {
            avg = avg + one_minus.clone() * mu_j.clone() * l.clone();
            mu_j = mu_j * mu.clone();
        }
        avg = avg + alpha.clone() * mu_k.clone() * mu_k.clone() / (T::one() + mu.clone()) + constant.clone() * mu_k;
        let density = avg.recip();
        LengthFunction { mu, lambda, prefix, alpha, constant, avg_length: avg, density, k }
    }

    pub fn k(&self) -> usize {
        self.k
    }

    /// `ell([j])`.
    pub fn ell(&self, j: usize) -> T {
        if j <= self.k {
            self.prefix[j].clone()
        } else {
            self.alpha.clone() * self.mu.powu(j as u64) + self.constant.clone()
        }
    }

    /// `nu([j]) = (1 - mu) mu^j`.
    pub fn freq(&self, j: usize) -> T {
        (T::one() - self.mu.clone()) * self.mu.powu(j as u64)
    }

    /// `lambda ell([j]) - a_j - ell([j-1]) - ell([j+1])` for `j >= 1`.
    pub fn eigen_residual(&self, seq: &EventuallyConstantSeq, j: usize) -> T {
        assert!(j >= 1);
        self.lambda.clone() * self.ell(j) - T::from_i64(seq.get(j) as i64) - self.ell(j - 1) - self.ell(j + 1)
    }
}

/// `ell([k]) = mu^k + Σ_{j=1}^{k} Σ_{i>=j} a_i mu^{i+k+1-2j}`, summed in closed form.
///
/// Kept as an independent check on [`LengthFunction`]; also gives the candidate
/// eigenvector `ell_*` for another root `mu_*` with `|mu_*| < 1`.
pub fn closed_form_length<T: Field>(seq: &EventuallyConstantSeq, mu: &T, kk: usize) -> T {
    if kk == 0 {
        return T::one();
    }
    let k = seq.k();
    let tail_geo = (T::one() - mu.clone()).recip();
    let mut total = mu.powu(kk as u64);
    for j in 1..=kk {
        // Σ_{i>=j} a_i mu^i
        let mut inner = T::zero();
        for i in j..k {
            inner = inner + T::from_i64(seq.get(i) as i64) * mu.powu(i as u64);
        }
        inner = inner + T::from_i64(seq.tail() as i64) * mu.powu(j.max(k) as u64) * tail_geo.clone();
        // times mu^{k+1-2j}
        let e = kk as i64 + 1 - 2 * j as i64;
        let factor = if e >= 0 { mu.powu(e as u64) } else { mu.recip().powu((-e) as u64) };
        total = total + inner * factor;
    }
    total
}

/// Minimal polynomial data and the certified length function of one sequence.
#[derive(Clone, Debug)]
pub struct SpectralData {
    pub seq: EventuallyConstantSeq,
    pub p: IntPoly,
    /// Irreducible factor of `P` vanishing at `mu`.
    pub m_mu: IntPoly,
    /// Minimal polynomial of `lambda`.
    pub q: IntPoly,
    pub mu: Ball,
    pub lambda: Ball,
    pub length: LengthFunction<Ball>,
    /// The same data in exact arithmetic when `mu` is rational.
    pub exact: Option<LengthFunction<BigRational>>,
    pub bits: u32,
}

impl SpectralData {
    pub fn length_prefix(&self) -> &[Ball] {
        &self.length.prefix
    }

    pub fn length_alpha(&self) -> &Ball {
        &self.length.alpha
    }

    pub fn length_const(&self) -> &Ball {
        &self.length.constant
    }

    pub fn avg_length(&self) -> &Ball {
        &self.length.avg_length
    }

    pub fn density(&self) -> &Ball {
        &self.length.density
    }

    pub fn mu_exact(&self) -> Option<&BigRational> {
        self.exact.as_ref().map(|l| &l.mu)
    }

    pub fn lambda_exact(&self) -> Option<&BigRational> {
        self.exact.as_ref().map(|l| &l.lambda)
    }

    pub fn density_exact(&self) -> Option<&BigRational> {
        self.exact.as_ref().map(|l| &l.density)
    }
}

/// Enclosure of the root of `P` in `(0, 1)`, exact when rational.
fn mu_enclosure(p: &IntPoly, bits: u32) -> Result<Ball> {
    refine_root(p, &BigRational::zero(), &BigRational::one(), bits)
}

/// Irreducible factor of `P` containing `mu`.
pub fn mu_factor(p: &IntPoly) -> Result<IntPoly> {
    let fac = factor_integer_poly(p)?;
    for f in fac.irreducible_factors() {
        if count_roots_closed(f, &BigRational::zero(), &BigRational::one())? == 1 {
            return Ok(f.clone());
        }
    }
    Err(Error::Factorization(format!("no factor of {p} has a root in (0, 1)")))
}

/// Computes `mu`, `lambda`, the length function and the density, certified to about `bits` bits.
pub fn spectral_data(seq: &EventuallyConstantSeq, bits: u32) -> Result<SpectralData> {
    if bits < 64 {
        return Err(Error::Contract(format!("spectral_data needs at least 64 bits, got {bits}")));
    }
    let p = mu_polynomial(seq);
    let m_mu = mu_factor(&p)?;
    let q = min_poly_from_factor(&m_mu, bits)?;
    let exact = rational_roots(&m_mu).into_iter().next().map(|mu| LengthFunction::new(seq, mu));
    let target = Dyadic::pow2(-(bits as i64));
    let mut guard = 64 + 12 * seq.k() as u32;
    for _ in 0..8 {
        let prec = bits + guard;
        let length = match &exact {
            Some(ex) => {
                let mu = Ball::from_rational(&ex.mu, prec);
                let mut l = LengthFunction::new(seq, mu);
                // exact values, rounded once
                let b = |q: &BigRational| Ball::from_rational(q, prec);
                l.lambda = b(&ex.lambda);
                l.prefix = ex.prefix.iter().map(b).collect();
                l.alpha = b(&ex.alpha);
                l.constant = b(&ex.constant);
                l.avg_length = b(&ex.avg_length);
                l.density = b(&ex.density);
                l
            }
            None => LengthFunction::new(seq, mu_enclosure(&p, prec)?),
        };
        let ok = [&length.lambda, &length.alpha, &length.constant, &length.avg_length, &length.density]
            .into_iter()
            .chain(length.prefix.iter())
            .all(|b| b.rad() <= &target);
        if ok {
            return Ok(SpectralData {
                seq: seq.clone(),
                p,
                m_mu,
                q,
                mu: length.mu.clone(),
                lambda: length.lambda.clone(),
                length,
                exact,
                bits,
            });
        }
        guard *= 2;
    }
    Err(Error::PrecisionInsufficient(format!("could not reach 2^-{bits} for {seq}")))
}

/// Polynomial whose roots are `z + 1/z` over the roots `z` of `f`
/// (resultant of `f(z)` and `z^2 - x z + 1` in `z`), primitive, positive leading coefficient.
pub fn lambda_polynomial(f: &IntPoly) -> IntPoly {
    // z^i = A_i(x) + B_i(x) z  modulo  z^2 - x z + 1
    let x = IntPoly::x();
    let mut a_i = IntPoly::one();
    let mut b_i = IntPoly::zero();
    let mut a = IntPoly::zero();
    let mut b = IntPoly::zero();
    for c in f.coeffs() {
        let cc = IntPoly::constant(c.clone());
        a = &a + &(&cc * &a_i);
        b = &b + &(&cc * &b_i);
        let next_a = -&b_i;
        let next_b = &a_i + &(&x * &b_i);
        a_i = next_a;
        b_i = next_b;
    }
    // Π (A + B z_i) over the two roots z_1 z_2 = 1, z_1 + z_2 = x
    let res = &(&(&a * &a) + &(&(&x * &a) * &b)) + &(&b * &b);
    res.primitive()
}

fn min_poly_from_factor(m_mu: &IntPoly, bits: u32) -> Result<IntPoly> {
    let res = lambda_polynomial(m_mu);
    let fac = factor_integer_poly(&res)?;
    let candidates: Vec<IntPoly> = fac.irreducible_factors().cloned().collect();
    if candidates.len() == 1 {
        return Ok(candidates[0].clone());
    }
    // several factors: select the one vanishing at the numeric lambda
    let mut prec = bits.max(128);
    for _ in 0..6 {
        let mu = refine_root(m_mu, &BigRational::zero(), &BigRational::one(), prec)?;
        let lambda = &mu + &mu.checked_recip().expect("mu > 0");
        let hits: Vec<&IntPoly> = candidates.iter().filter(|g| g.eval_at(&lambda).contains_zero()).collect();
        if hits.len() == 1 {
            return Ok(hits[0].clone());
        }
        prec *= 2;
    }
    Err(Error::Factorization(format!("cannot single out the minimal polynomial of lambda among {candidates:?}")))
}

/// Minimal polynomial `Q` of `lambda`: primitive, irreducible, positive leading coefficient.
pub fn min_poly_lambda(seq: &EventuallyConstantSeq) -> Result<IntPoly> {
    let m_mu = mu_factor(&mu_polynomial(seq))?;
    min_poly_from_factor(&m_mu, 128)
}

/// How a root `mu_*` of `P` enters the spectrum.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum RootClass {
    /// `mu` itself.
    Perron,
    /// `|mu_*| < 1`: `lambda_*` comes with a bounded eigenvector.
    Genuine,
    /// `|mu_*| > 1`: the candidate eigenvector is unbounded.
    Fake,
    /// `|mu_*| = 1`: `lambda_*` is at most an approximate eigenvalue.
    Boundary,
}

impl fmt::Display for RootClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            RootClass::Perron => "perron",
            RootClass::Genuine => "genuine-eigenvalue",
            RootClass::Fake => "fake",
            RootClass::Boundary => "boundary",
        })
    }
}

/// One distinct root of `P`.
#[derive(Clone, Debug)]
pub struct RootInfo {
    pub mu_star: CBall,
    pub lambda_star: CBall,
    pub multiplicity: u32,
    pub class: RootClass,
    /// Irreducible factor of `P` the root belongs to.
    pub factor: IntPoly,
    /// Exact value when the root is rational.
    pub mu_exact: Option<BigRational>,
    /// Exact `lambda_*` when rational.
    pub lambda_exact: Option<BigRational>,
    /// Exact `|mu_*|^2` when known in closed form.
    pub mu_modsq: Option<BigRational>,
    /// Minimal polynomial of `lambda_*`.
    pub lambda_poly: IntPoly,
    /// Exact `|lambda_*|^2` for non-real `lambda_*` of degree two.
    pub lambda_modsq: Option<BigRational>,
}

impl RootInfo {
    pub fn is_real(&self) -> bool {
        self.mu_star.im.is_zero()
    }
}

fn cmp_one_exact(q: &BigRational) -> Ordering {
    q.abs().cmp(&BigRational::one())
}

/// Certified comparison of a modulus-squared enclosure with 1.
fn cmp_one(modsq: &Ball) -> Option<Ordering> {
    let one = BigRational::one();
    if modsq.lt_rational(&one) {
        Some(Ordering::Less)
    } else if modsq.gt_rational(&one) {
        Some(Ordering::Greater)
    } else {
        None
    }
}

/// `h` with `f(x) = x^m h(x + 1/x)`, for palindromic `f` of degree `2m`.
fn trace_polynomial(f: &IntPoly) -> IntPoly {
    let d = f.degree().unwrap();
    let m = d / 2;
    // Laurent coefficients F_s = f_{m+s}, s = -m..m
    let mut laurent: Vec<BigInt> = f.coeffs().to_vec();
    let mut h = vec![BigInt::zero(); m + 1];
    for t in (0..=m).rev() {
        let ht = laurent[m + t].clone();
        if ht.is_zero() {
            continue;
        }
        // subtract ht (x + 1/x)^t = ht Σ_r C(t, r) x^{t - 2r}
        let mut binom = BigInt::one();
        for r in 0..=t {
            let s = m + t - 2 * r;
            laurent[s] -= &ht * &binom;
            binom = binom * BigInt::from(t - r) / BigInt::from(r + 1);
        }
        h[t] = ht;
    }
    IntPoly::new(h)
}

/// Enclosures of all complex roots of a squarefree integer polynomial, certified by
/// disjoint Weierstrass inclusion disks.
pub fn certified_complex_roots(f: &IntPoly, prec: u32) -> Result<Vec<CBall>> {
    let d = f.degree().ok_or(Error::ZeroPolynomial)?;
    if d == 0 {
        return Ok(Vec::new());
    }
    let df = f.derivative();
    let mut z: Vec<CBall> = complex_roots_f64(f).into_iter().map(|r| CBall::from_c64(r, prec)).collect();
    // Newton polishing on midpoints; quadratic convergence from double precision
    let mut iters = 0;
    let mut bits_now = 40u32;
    while bits_now < prec + 16 && iters < 40 {
        for zi in z.iter_mut() {
            let v = f.eval_at(zi);
            let dv = df.eval_at(zi);
            if let Some(step) = v.checked_div(&dv) {
                *zi = (&*zi - &step).midpoint();
            }
        }
        bits_now *= 2;
        iters += 1;
    }
    for _ in 0..2 {
        for zi in z.iter_mut() {
            let v = f.eval_at(zi);
            let dv = df.eval_at(zi);
            if let Some(step) = v.checked_div(&dv) {
                *zi = (&*zi - &step).midpoint();
            }
        }
    }
    let lead = CBall::from_bigint(f.lead().unwrap());
    let mut radii = Vec::with_capacity(d);
    for i in 0..d {
        let mut den = lead.clone();
        for j in 0..d {
            if j != i {
                den = &den * &(&z[i] - &z[j]);
            }
        }
        let w = f
            .eval_at(&z[i])
            .checked_div(&den)
            .ok_or_else(|| Error::RootIsolation("coincident root approximations".into()))?;
        let r = (&w.abs_upper() * &Dyadic::from_int(d as i64)).round_up(64);
        radii.push(r);
    }
    for i in 0..d {
        for j in i + 1..d {
            let gap = (&z[i] - &z[j]).abs().abs_lower();
            if gap <= &radii[i] + &radii[j] {
                return Err(Error::PrecisionInsufficient("root inclusion disks overlap".into()));
            }
        }
    }
    Ok(z.iter().zip(&radii).map(|(zi, r)| zi.inflate(r)).collect())
}

/// Classifies every root of `P`: the Perron root `mu`, genuine (`|mu_*| < 1`),
/// fake (`|mu_*| > 1`) and boundary (`|mu_*| = 1`).
pub fn classify_roots(seq: &EventuallyConstantSeq, bits: u32) -> Result<Vec<RootInfo>> {
    if bits < 64 {
        return Err(Error::Contract(format!("classify_roots needs at least 64 bits, got {bits}")));
    }
    let p = mu_polynomial(seq);
    let fac = factor_integer_poly(&p)?;
    let mu = mu_enclosure(&p, bits + 16)?;
    let mut out: Vec<RootInfo> = Vec::new();
    for (f, mult) in &fac.factors {
        // all roots of the resultant are conjugates of lambda_*, so its squarefree part is irreducible
        let lambda_poly = squarefree_part(&lambda_polynomial(f));
        let deg = f.degree().unwrap();
        let push = |out: &mut Vec<RootInfo>, z: CBall, class: RootClass, exact: Option<BigRational>, modsq: Option<BigRational>, lmodsq: Option<BigRational>| {
            let lambda_star = &z + &CBall::one().checked_div(&z).expect("P(0) = 1, so mu_* != 0");
            let lambda_exact = exact.as_ref().map(|q| q + q.recip());
            out.push(RootInfo {
                mu_star: z,
                lambda_star,
                multiplicity: *mult,
                class,
                factor: f.clone(),
                mu_exact: exact,
                lambda_exact,
                mu_modsq: modsq,
                lambda_poly: lambda_poly.clone(),
                lambda_modsq: lmodsq,
            });
        };
        if deg == 1 {
            let r = BigRational::new(-f.coeff(0), f.coeff(1));
            let class = if r.is_positive() && r < BigRational::one() {
                RootClass::Perron
            } else {
                match cmp_one_exact(&r) {
                    Ordering::Less => RootClass::Genuine,
                    Ordering::Greater => RootClass::Fake,
                    Ordering::Equal => RootClass::Boundary,
                }
            };
            let z = CBall::real(Ball::from_rational(&r, bits + 16));
            let m2 = &r * &r;
            push(&mut out, z, class, Some(r), Some(m2), None);
            continue;
        }
        let real_roots = isolate_real_roots(f)?;
        let has_mu = count_roots_closed(f, &BigRational::zero(), &BigRational::one())? == 1;
        let n_complex = deg - real_roots.len();
        // real roots
        for root in &real_roots {
            let is_mu = has_mu && root.lo() >= &BigRational::zero() && root.hi() <= &BigRational::one() && {
                let b = refine_isolated(f, root, bits + 16)?;
                b.overlaps(&mu)
            };
            let mut prec = bits + 16;
            let (ball, class) = loop {
                let b = refine_isolated(f, root, prec)?;
                if is_mu {
                    break (b, RootClass::Perron);
                }
                match cmp_one(&(&b * &b)) {
                    Some(Ordering::Less) => break (b, RootClass::Genuine),
                    Some(Ordering::Greater) => break (b, RootClass::Fake),
                    _ if prec > 16 * bits => {
                        return Err(Error::IndeterminateModulus(format!("{} of {f}", b.mid_to_decimal(20))));
                    }
                    _ => prec *= 2,
                }
            };
            push(&mut out, CBall::real(ball), class, None, None, None);
        }
        if n_complex == 0 {
            continue;
        }
        if deg == 2 {
            // a x^2 + b x + c with negative discriminant: |z|^2 = c / a exactly
            let (c, b, a) = (f.coeff(0), f.coeff(1), f.coeff(2));
            let modsq = BigRational::new(c.clone(), a.clone());
            let class = match modsq.cmp(&BigRational::one()) {
                Ordering::Less => RootClass::Genuine,
                Ordering::Greater => RootClass::Fake,
                Ordering::Equal => RootClass::Boundary,
            };
            let prec = bits + 16;
            let two_a = Ball::from_bigint(&(&a * BigInt::from(2)));
            let re = Ball::from_bigint(&-b.clone()).with_prec(prec).checked_div(&two_a).unwrap();
            let disc = &b * &b - BigInt::from(4) * &a * &c;
            let im = Ball::from_bigint(&-disc).with_prec(prec).sqrt().unwrap().checked_div(&two_a).unwrap();
            let lmodsq = lambda_modsq(&lambda_poly);
            for sign in [1i64, -1] {
                let z = CBall::new(re.clone(), if sign > 0 { im.clone() } else { -&im });
                push(&mut out, z, class, None, Some(modsq.clone()), lmodsq.clone());
            }
            continue;
        }
        // degree >= 3: certified inclusion disks, keep the non-real ones
        let mut prec = bits + 16;
        let lmodsq = lambda_modsq(&lambda_poly);
        loop {
            let all = certified_complex_roots(f, prec)?;
            let nonreal: Vec<CBall> = all.into_iter().filter(|z| !z.im.contains_zero()).collect();
            let classes: Vec<Option<Ordering>> = nonreal.iter().map(|z| cmp_one(&z.norm_sqr())).collect();
            let ambiguous = classes.iter().filter(|c| c.is_none()).count();
            if nonreal.len() == n_complex {
                let on_circle = if f.is_reciprocal() {
                    let h = trace_polynomial(f);
                    2 * count_roots_closed(&h, &rat(-2), &rat(2))?
                } else {
                    0
                };
                if ambiguous == on_circle {
                    for (z, c) in nonreal.into_iter().zip(classes) {
                        let class = match c {
                            Some(Ordering::Less) => RootClass::Genuine,
                            Some(Ordering::Greater) => RootClass::Fake,
                            _ => RootClass::Boundary,
                        };
                        push(&mut out, z, class, None, None, lmodsq.clone());
                    }
                    break;
                }
            }
            if prec > 16 * bits {
                return Err(Error::IndeterminateModulus(format!("complex root of {f}")));
            }
            prec *= 2;
        }
    }
    out.sort_by_key(|r| r.class != RootClass::Perron);
    Ok(out)
}

/// `|lambda_*|^2` from a quadratic minimal polynomial with complex roots.
fn lambda_modsq(lambda_poly: &IntPoly) -> Option<BigRational> {
    if lambda_poly.degree() != Some(2) {
        return None;
    }
    let (c, b, a) = (lambda_poly.coeff(0), lambda_poly.coeff(1), lambda_poly.coeff(2));
    let disc = &b * &b - BigInt::from(4) * &a * &c;
    disc.is_negative().then(|| BigRational::new(c, a))
}

/// True iff `candidate B = lambda_* candidate` exactly.
pub fn left_eigenvector_check(
    seq: &EventuallyConstantSeq,
    lambda_star: &BigRational,
    candidate: &StabilizingVector<BigRational>,
) -> bool {
    candidate.row_step(seq) == candidate.scale(lambda_star)
}

/// Same check in ball arithmetic: every entry of `yB - lambda_* y` encloses zero.
pub fn left_eigenvector_check_ball(seq: &EventuallyConstantSeq, lambda_star: &Ball, candidate: &StabilizingVector<Ball>) -> bool {
    let diff = &candidate.row_step(seq) - &candidate.scale(lambda_star);
    let n = diff.prefix().len().max(candidate.prefix().len() + seq.k() + 2);
    (0..n).all(|i| diff.get(i).contains_zero()) && diff.tail().contains_zero()
}

/// The eventually constant left eigenvector with `y_0 = 1` at a rational `lambda_*`, if any.
///
/// The eigen-equations fix `y_1 = lambda_* - a_0`, `y_{j+1} = lambda_* y_j - y_{j-1} - a_j`
/// and tail `a / (lambda_* - 2)`; the vector stabilises iff `y_k` and `y_{k+1}` equal the tail.
pub fn stabilising_eigenvector(seq: &EventuallyConstantSeq, lambda_star: &BigRational) -> Option<StabilizingVector<BigRational>> {
    let two = rat(2);
    if *lambda_star == two {
        return None;
    }
    let tail = rat(seq.tail() as i64) / (lambda_star - &two);
    let k = seq.k();
    let mut y = vec![BigRational::one(), lambda_star - rat(seq.get(0) as i64)];
    for j in 1..=k {
        let next = lambda_star * &y[j] - &y[j - 1] - rat(seq.get(j) as i64);
        y.push(next);
    }
    if y[k] != tail || y[k + 1] != tail {
        return None;
    }
    y.truncate(k);
    Some(StabilizingVector::new(y, tail))
}
