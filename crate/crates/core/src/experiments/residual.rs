use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;

use crate::catalan::{discrepancy_series, is_meaningful, precision_bits};
use crate::error::{Error, Result};
use crate::numerics::Ball;
use crate::sequence::{tile_counts, EventuallyConstantSeq};
use crate::spectral::{left_eigenvector_check, spectral_data, stabilising_eigenvector};

use super::fit::least_squares;

/// `coeff * base^n`.
#[derive(Clone, Debug)]
pub struct Term {
    pub coeff: Ball,
    pub base: Ball,
}

impl Term {
    pub fn new(coeff: Ball, base: Ball) -> Self {
        Term { coeff, base }
    }

    pub fn rational(coeff: &BigRational, base: &BigRational, bits: u32) -> Self {
        Term { coeff: Ball::from_rational(coeff, bits), base: Ball::from_rational(base, bits) }
    }

    /// `density * lambda^n`, certified to `bits`.
    pub fn perron(seq: &EventuallyConstantSeq, bits: u32) -> Result<Self> {
        let sd = spectral_data(seq, bits.max(64))?;
        Ok(Term { coeff: sd.density().clone(), base: sd.lambda.clone() })
    }
}

impl fmt::Display for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} * ({})^n", self.coeff.mid_to_decimal(12), self.base.mid_to_decimal(12))
    }
}

/// `r(n) = #(n) - Σ_j c_j b_j^n` for `n = 0..=N`.
#[derive(Clone, Debug)]
pub struct ResidualSeries {
    pub seq: EventuallyConstantSeq,
    pub r: Vec<Ball>,
    pub terms: Vec<Term>,
}

impl ResidualSeries {
    pub fn len(&self) -> usize {
        self.r.len()
    }

    pub fn is_empty(&self) -> bool {
        self.r.is_empty()
    }
}

/// Precision sufficient to subtract terms with bases up to `max_base` in modulus.
pub fn residual_bits(max_base: f64, n_max: usize) -> u32 {
    precision_bits(max_base.abs().max(2.0), n_max)
}

/// Subtracts `terms` from the exact counts. The terms must be certified to enough bits;
/// see [`residual_bits`].
pub fn residual_series(seq: &EventuallyConstantSeq, n_max: usize, terms: &[Term]) -> Result<ResidualSeries> {
    let counts = tile_counts(seq, n_max);
    let mut powers: Vec<Ball> = terms.iter().map(|t| t.coeff.clone()).collect();
    let mut r = Vec::with_capacity(counts.len());
    for (n, c) in counts.iter().enumerate() {
        let mut x = Ball::from_bigint(c);
        for p in &powers {
            x = &x - p;
        }
        if !is_meaningful(&x) {
            return Err(Error::PrecisionInsufficient(format!(
                "residual r({n}) = {} is not meaningful; certify the terms to more bits",
                x.to_decimal(6)
            )));
        }
        r.push(x);
        for (p, t) in powers.iter_mut().zip(terms) {
            *p = &*p * &t.base;
        }
    }
    Ok(ResidualSeries { seq: seq.clone(), r, terms: terms.to_vec() })
}

/// An empirical coefficient: central value, spread over the window, window.
#[derive(Clone, Debug, PartialEq)]
pub struct CoefficientEstimate {
    pub value: f64,
    pub spread: f64,
    pub window: (usize, usize),
}

impl fmt::Display for CoefficientEstimate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:.6} (spread {:.2e}, n in [{}, {}])", self.value, self.spread, self.window.0, self.window.1)
    }
}

fn check_window(window: (usize, usize), min_points: usize) -> Result<()> {
    if window.0 > window.1 || window.1 - window.0 + 1 < min_points {
        return Err(Error::InsufficientWindow(format!(
            "window [{}, {}] has fewer than {min_points} points",
            window.0, window.1
        )));
    }
    Ok(())
}

fn mean_and_spread(xs: &[f64]) -> (f64, f64) {
    let mean = xs.iter().sum::<f64>() / xs.len() as f64;
    let lo = xs.iter().cloned().fold(f64::INFINITY, f64::min);
    let hi = xs.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
    (mean, hi - lo)
}

/// Average of `d(n) / lambda_*^n` over the window; requires `|lambda_*| > 2`.
pub fn estimate_coefficient(
    seq: &EventuallyConstantSeq,
    lambda_star: &Ball,
    window: (usize, usize),
    bits: Option<u32>,
) -> Result<CoefficientEstimate> {
    if lambda_star.abs_lower() <= crate::numerics::Dyadic::from_int(2) {
        return Err(Error::NotIdentifiable(lambda_star.abs().mid_to_decimal(12)));
    }
    check_window(window, 1)?;
    let series = discrepancy_series(seq, window.1, bits)?;
    let mut pow = lambda_star.powu(window.0 as u64);
    let mut xs = Vec::new();
    for n in window.0..=window.1 {
        let x = series.d[n].checked_div(&pow).ok_or_else(|| {
            Error::PrecisionInsufficient(format!("lambda*^{n} enclosure contains zero"))
        })?;
        xs.push(x.to_f64());
        pow = &pow * lambda_star;
    }
    let (value, spread) = mean_and_spread(&xs);
    Ok(CoefficientEstimate { value, spread, window })
}

/// Average of `#(n) / lambda^n` over the window.
pub fn estimate_leading_coefficient(
    seq: &EventuallyConstantSeq,
    window: (usize, usize),
) -> Result<CoefficientEstimate> {
    check_window(window, 1)?;
    let probe = spectral_data(seq, 64)?;
    let sd = spectral_data(seq, precision_bits(probe.lambda.to_f64(), window.1))?;
    let counts = tile_counts(seq, window.1);
    let mut pow = sd.lambda.powu(window.0 as u64);
    let mut xs = Vec::new();
    for c in &counts[window.0..=window.1] {
        xs.push(Ball::from_bigint(c).checked_div(&pow).expect("lambda^n > 0").to_f64());
        pow = &pow * &sd.lambda;
    }
    let (value, spread) = mean_and_spread(&xs);
    Ok(CoefficientEstimate { value, spread, window })
}

/// Coefficient `c` of `(-2)^n` in `d(n)`, from a least-squares fit of
/// `d(n) / (-2)^n ≈ c + s n^{-1/2} + t (-1)^n n^{-1/2}` over the window.
/// Requires a stabilising left eigenvector at `-2` and at least 200 points.
pub fn estimate_coefficient_at_two(
    seq: &EventuallyConstantSeq,
    window: (usize, usize),
    bits: Option<u32>,
) -> Result<CoefficientEstimate> {
    let minus_two = BigRational::from_integer(BigInt::from(-2));
    match stabilising_eigenvector(seq, &minus_two) {
        Some(y) if left_eigenvector_check(seq, &minus_two, &y) => {}
        _ => return Err(Error::NoEigenvalueAtTwo(seq.to_string())),
    }
    check_window(window, 200)?;
    if window.0 == 0 {
        return Err(Error::InsufficientWindow("window must start at n >= 1".into()));
    }
    let series = discrepancy_series(seq, window.1, bits)?;
    let mut rows = Vec::new();
    let mut ys = Vec::new();
    for n in window.0..=window.1 {
        let scale = Ball::from_int(-2).powu(n as u64);
        ys.push(series.d[n].checked_div(&scale).expect("(-2)^n != 0").to_f64());
        let h = (n as f64).powf(-0.5);
        let sign = if n % 2 == 0 { 1.0 } else { -1.0 };
        rows.push(vec![1.0, h, sign * h]);
    }
    let beta = least_squares(&rows, &ys)
        .ok_or_else(|| Error::Fit { reason: "singular normal equations".into(), indices: vec![] })?;
    let fitted: Vec<f64> = rows.iter().map(|r| r.iter().zip(&beta).map(|(a, b)| a * b).sum()).collect();
    let spread = ys.iter().zip(&fitted).map(|(y, f)| (y - f).abs()).fold(0.0, f64::max);
    Ok(CoefficientEstimate { value: beta[0], spread, window })
}
