//! Catalan numbers, exact pairings `[y A^n]_0`, the discrepancy series and the
//! explicit all-ones identities.

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::numerics::{Ball, Dyadic};
use crate::scalar::Scalar;
use crate::sequence::{CountIter, EventuallyConstantSeq};
use crate::spectral::{spectral_data, SpectralData};
use crate::stabilizing::StabilizingVector;

/// `binom(n, r)`.
pub fn binomial(n: u64, r: u64) -> BigInt {
    if r > n {
        return BigInt::zero();
    }
    let r = r.min(n - r);
    let mut acc = BigInt::one();
    for i in 0..r {
        acc = acc * BigInt::from(n - i) / BigInt::from(i + 1);
    }
    acc
}

/// `C_k = binom(2k, k) / (k + 1)`.
pub fn catalan(k: u64) -> BigInt {
    binomial(2 * k, k) / BigInt::from(k + 1)
}

/// `C_k = binom(2k, k) - binom(2k, k + 1)`.
pub fn catalan_by_difference(k: u64) -> BigInt {
    binomial(2 * k, k) - binomial(2 * k, k + 1)
}

/// `C_0, ..., C_n` by `C_{k+1} = 2(2k+1)/(k+2) C_k`.
pub fn catalan_table(n: usize) -> Vec<BigInt> {
    let mut out = Vec::with_capacity(n + 1);
    let mut c = BigInt::one();
    for k in 0..=n as u64 {
        out.push(c.clone());
        c = c * BigInt::from(2 * (2 * k + 1)) / BigInt::from(k + 2);
    }
    out
}

/// `[y A^n]_0 = Σ_i y_i v_n[i]`, exact.
pub fn exact_pairing<T: Scalar>(seq: &EventuallyConstantSeq, y: &StabilizingVector<T>, n: usize) -> T {
    let v = CountIter::new(seq).nth(n).expect("infinite iterator");
    y.pair(&v)
}

/// `[y A^n]_0` for `n = 0..=n_max`.
pub fn pairing_series<T: Scalar>(seq: &EventuallyConstantSeq, y: &StabilizingVector<T>, n_max: usize) -> Vec<T> {
    CountIter::new(seq).take(n_max + 1).map(|v| y.pair(&v)).collect()
}

/// Default precision `ceil(n log2 lambda) + 128`.
pub fn precision_bits(lambda: f64, n: usize) -> u32 {
    (n as f64 * lambda.log2()).ceil().max(0.0) as u32 + 128
}

/// `#(n)` and `d(n) = #(n) - density * lambda^n` for `n = 0..=N`.
#[derive(Clone, Debug)]
pub struct DiscrepancySeries {
    pub seq: EventuallyConstantSeq,
    pub counts: Vec<BigInt>,
    pub d: Vec<Ball>,
    pub bits: u32,
    pub spectral: SpectralData,
}

impl DiscrepancySeries {
    pub fn len(&self) -> usize {
        self.d.len()
    }

    pub fn is_empty(&self) -> bool {
        self.d.is_empty()
    }

    /// `Σ_j c_j d(n + j)` as an enclosure.
    pub fn twist(&self, coeffs: &[BigInt], n: usize) -> Ball {
        coeffs
            .iter()
            .enumerate()
            .fold(Ball::zero(), |acc, (j, c)| &acc + &(&Ball::from_bigint(c) * &self.d[n + j]))
    }
}

/// An enclosure is meaningful when its radius is at most half its midpoint, or tiny
/// in absolute terms (needed where `d(n)` vanishes identically).
pub fn is_meaningful(b: &Ball) -> bool {
    let half = b.mid().abs().shl(-1);
    b.rad() <= &half || b.rad() <= &Dyadic::pow2(-64)
}

/// Certified discrepancy series; `bits = None` applies the default precision policy.
pub fn discrepancy_series(seq: &EventuallyConstantSeq, n_max: usize, bits: Option<u32>) -> Result<DiscrepancySeries> {
    let probe = spectral_data(seq, 64)?;
    let bits = bits.unwrap_or_else(|| precision_bits(probe.lambda.to_f64(), n_max));
    let spectral = spectral_data(seq, bits.max(64))?;
    let counts: Vec<BigInt> = crate::sequence::tile_counts(seq, n_max);
    let mut d = Vec::with_capacity(counts.len());
    let mut lead = spectral.density().clone();
    for (n, c) in counts.iter().enumerate() {
        let dn = &Ball::from_bigint(c) - &lead;
        if !is_meaningful(&dn) {
            return Err(Error::PrecisionInsufficient(format!(
                "d({n}) = {} is not meaningful at {bits} bits; use at least {} bits",
                dn.to_decimal(6),
                precision_bits(spectral.lambda.to_f64(), n_max) + 64
            )));
        }
        d.push(dn);
        lead = &lead * &spectral.lambda;
    }
    Ok(DiscrepancySeries { seq: seq.clone(), counts, d, bits, spectral })
}

/// `d(2k+1)` for the all-ones sequence: `(1/2)(5/2)^{2k} (5/4 - Σ_{i<=k} (2/5)^{2i} C_i)`.
pub fn allones_explicit_d_exact(k: u64) -> BigRational {
    let ratio = BigRational::new(4.into(), 25.into());
    let mut sum = BigRational::zero();
    let mut pow = BigRational::one();
    for (i, c) in catalan_table(k as usize).into_iter().enumerate() {
        if i > 0 {
            pow = &pow * &ratio;
        }
        sum += &pow * BigRational::from_integer(c);
    }
    let scale = BigRational::new(BigInt::from(25).pow(k as u32), BigInt::from(4).pow(k as u32));
    BigRational::new(1.into(), 2.into()) * scale * (BigRational::new(5.into(), 4.into()) - sum)
}

/// [`allones_explicit_d_exact`] as an enclosure.
pub fn allones_explicit_d(k: u64, bits: u32) -> Ball {
    Ball::from_rational(&allones_explicit_d_exact(k), bits)
}

/// Outcome of an exact verification over `n = 0..=N`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CheckReport {
    pub name: String,
    pub checked: usize,
    /// `(n, expected, found)` of the first failure.
    pub first_mismatch: Option<(usize, String, String)>,
}

impl CheckReport {
    pub fn passed(&self) -> bool {
        self.first_mismatch.is_none()
    }
}

impl fmt::Display for CheckReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.first_mismatch {
            None => write!(f, "PASS {} ({} values)", self.name, self.checked),
            Some((n, e, g)) => write!(f, "FAIL {} at n = {n}: expected {e}, found {g}", self.name),
        }
    }
}

/// `[(-1, 1, 1, ...) A^n]_0 = -C_{n/2}` (even `n`) and `0` (odd `n`) for the all-ones sequence.
pub fn verify_catalan_identity(n_max: usize) -> CheckReport {
    let seq = EventuallyConstantSeq::all_ones();
    let y: StabilizingVector<BigInt> = StabilizingVector::new(vec![BigInt::from(-1)], BigInt::one());
    let cat = catalan_table(n_max / 2 + 1);
    let mut report = CheckReport { name: "catalan identity".into(), checked: 0, first_mismatch: None };
    for (n, v) in CountIter::new(&seq).take(n_max + 1).enumerate() {
        let got = y.pair(&v);
        let expect = if n % 2 == 0 { -cat[n / 2].clone() } else { BigInt::zero() };
        report.checked += 1;
        if got != expect {
            report.first_mismatch = Some((n, expect.to_string(), got.to_string()));
            break;
        }
    }
    report
}

/// Certified all-ones tail bounds for `k <= k_max`:
/// `(2/25) C_{k+1} <= d(2k+1) <= (2/9) C_{k+1}` and `(1/5) C_{k+1} <= d(2k+2) <= (5/9) C_{k+1}`.
pub fn verify_allones_tail_bounds(series: &DiscrepancySeries, k_max: usize) -> CheckReport {
    let cat = catalan_table(k_max + 1);
    let mut report = CheckReport { name: "all-ones tail bounds".into(), checked: 0, first_mismatch: None };
    let bounds = [((2, 25), (2, 9), 1usize), ((1, 5), (5, 9), 2usize)];
    for k in 0..=k_max {
        let c = BigRational::from_integer(cat[k + 1].clone());
        for ((ln, ld), (un, ud), off) in bounds {
            let n = 2 * k + off;
            let Some(d) = series.d.get(n) else {
                report.first_mismatch = Some((n, "d(n) in the series".into(), "series too short".into()));
                return report;
            };
            let lo = BigRational::new(ln.into(), ld.into()) * &c;
            let hi = BigRational::new(un.into(), ud.into()) * &c;
            let (dl, du) = d.endpoints_rational();
            report.checked += 1;
            if dl < lo || du > hi {
                report.first_mismatch = Some((n, format!("[{lo}, {hi}]"), d.to_decimal(20)));
                return report;
            }
        }
    }
    report
}

/// Growth bracket `d(2k) k^{3/2} / 4^k` for the all-ones sequence, as f64 (diagnostic).
pub fn allones_growth_ratio(series: &DiscrepancySeries, k: usize) -> f64 {
    let d = &series.d[2 * k];
    (d.ln_abs() + 1.5 * (k as f64).ln() - (k as f64) * 4f64.ln()).exp() * if d.mid().is_negative() { -1.0 } else { 1.0 }
}

/// `2 d(n+1) - 5 d(n)` against the exact `D(n)` for the all-ones sequence.
pub fn verify_allones_pairing_consistency(series: &DiscrepancySeries) -> CheckReport {
    let y: StabilizingVector<BigInt> = StabilizingVector::new(vec![BigInt::from(-1)], BigInt::one());
    let n_max = series.len().saturating_sub(2);
    let exact = pairing_series(&series.seq, &y, n_max);
    let mut report = CheckReport { name: "2d(n+1) - 5d(n) = D(n)".into(), checked: 0, first_mismatch: None };
    for (n, dn) in exact.iter().enumerate() {
        let t = series.twist(&[BigInt::from(-5), BigInt::from(2)], n);
        report.checked += 1;
        if !t.contains_rational(&BigRational::from_integer(dn.clone())) {
            report.first_mismatch = Some((n, dn.to_string(), t.to_decimal(20)));
            break;
        }
    }
    report
}
