use std::fmt;

use crate::error::{Error, Result};

use super::residual::ResidualSeries;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Parity {
    Even,
    Odd,
    All,
}

impl Parity {
    fn admits(self, n: usize) -> bool {
        match self {
            Parity::Even => n % 2 == 0,
            Parity::Odd => n % 2 == 1,
            Parity::All => true,
        }
    }

    fn step(self) -> usize {
        match self {
            Parity::All => 1,
            _ => 2,
        }
    }
}

impl fmt::Display for Parity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Parity::Even => "even",
            Parity::Odd => "odd",
            Parity::All => "all",
        })
    }
}

/// Exponent `p` in `|r(n)| ~ base^n / n^p`.
#[derive(Clone, Debug, PartialEq)]
pub struct FitResult {
    pub p: f64,
    pub parity: Parity,
    pub window: (usize, usize),
    /// Median absolute deviation of the per-pair estimates.
    pub residual: f64,
    pub points: usize,
}

impl fmt::Display for FitResult {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "p = {:.4} (MAD {:.2e}, {} {} points in [{}, {}], median of consecutive ratios)",
            self.p, self.residual, self.points, self.parity, self.window.0, self.window.1
        )
    }
}

fn median(xs: &mut [f64]) -> f64 {
    xs.sort_by(|a, b| a.partial_cmp(b).expect("finite"));
    let m = xs.len() / 2;
    if xs.len() % 2 == 0 {
        (xs[m - 1] + xs[m]) / 2.0
    } else {
        xs[m]
    }
}

/// [`fit_exponent_with_base`] at the Catalan scale `2^n`.
pub fn fit_exponent(series: &ResidualSeries, parity: Parity, window: (usize, usize)) -> Result<FitResult> {
    fit_exponent_with_base(series, parity, window, 2.0)
}

/// Fits `p` from `|r(n+s) / r(n)| = base^s (n / (n+s))^p` over one parity class
/// (`s = 2`, or `s = 1` for [`Parity::All`]), taking the median of the per-pair estimates.
pub fn fit_exponent_with_base(
    series: &ResidualSeries,
    parity: Parity,
    window: (usize, usize),
    base: f64,
) -> Result<FitResult> {
    let hi = window.1.min(series.len().saturating_sub(1));
    let idx: Vec<usize> = (window.0.max(1)..=hi).filter(|&n| parity.admits(n)).collect();
    if idx.len() < 20 {
        return Err(Error::InsufficientWindow(format!(
            "{} {parity} points in [{}, {}]; at least 20 are needed",
            idx.len(),
            window.0,
            window.1
        )));
    }
    let bad: Vec<usize> = idx.iter().copied().filter(|&n| series.r[n].contains_zero()).collect();
    if !bad.is_empty() {
        return Err(Error::Fit { reason: "residual enclosures contain zero".into(), indices: bad });
    }
    let sign0 = series.r[idx[0]].is_positive();
    let flipped: Vec<usize> = idx.iter().copied().filter(|&n| series.r[n].is_positive() != sign0).collect();
    if !flipped.is_empty() {
        return Err(Error::Fit { reason: "residual changes sign".into(), indices: flipped });
    }
    let s = parity.step();
    let mut est: Vec<f64> = idx
        .windows(2)
        .filter(|w| w[1] == w[0] + s)
        .map(|w| {
            let (n, m) = (w[0] as f64, w[1] as f64);
            let lr = series.r[w[1]].ln_abs() - series.r[w[0]].ln_abs() - s as f64 * base.ln();
            lr / (n / m).ln()
        })
        .collect();
    let points = idx.len();
    let p = median(&mut est);
    let mut dev: Vec<f64> = est.iter().map(|e| (e - p).abs()).collect();
    let residual = median(&mut dev);
    Ok(FitResult { p, parity, window: (idx[0], *idx.last().expect("nonempty")), residual, points })
}

/// Ordinary least squares `min |X b - y|` through the normal equations; `None` if singular.
pub fn least_squares(rows: &[Vec<f64>], y: &[f64]) -> Option<Vec<f64>> {
    let m = rows.first()?.len();
    let mut a = vec![vec![0.0; m + 1]; m];
    for (r, yi) in rows.iter().zip(y) {
        for i in 0..m {
            for j in 0..m {
                a[i][j] += r[i] * r[j];
            }
            a[i][m] += r[i] * yi;
        }
    }
    for c in 0..m {
        let piv = (c..m).max_by(|&i, &j| a[i][c].abs().partial_cmp(&a[j][c].abs()).expect("finite"))?;
        if a[piv][c].abs() < 1e-300 {
            return None;
        }
        a.swap(c, piv);
        for i in 0..m {
            if i != c {
                let f = a[i][c] / a[c][c];
                for j in c..=m {
                    a[i][j] -= f * a[c][j];
                }
            }
        }
    }
    Some((0..m).map(|i| a[i][m] / a[i][i]).collect())
}
