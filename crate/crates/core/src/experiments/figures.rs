use std::fs;
use std::path::Path;

use num_rational::BigRational;
use num_traits::{Pow, Zero};

use crate::catalan::discrepancy_series;
use crate::error::{Error, Result};
use crate::numerics::{Ball, Dyadic};
use crate::sequence::EventuallyConstantSeq;
use crate::spectral::{classify_roots, RootClass};

/// What is plotted against `n`.
#[derive(Clone, Debug, PartialEq)]
pub enum FigureKind {
    /// `(d(n) - Σ c b^n) n^{3/2} / 2^n`.
    CatalanScaled { extra: Vec<(BigRational, BigRational)> },
    /// `((d(n) - Σ c b^n) / 2^n)^{-2}`.
    InverseSquare { extra: Vec<(BigRational, BigRational)> },
    /// `d(n) / |lambda_*|^n` for the largest genuine non-real `lambda_*`.
    ModulusScaled,
}

#[derive(Clone, Debug, PartialEq)]
pub struct FigureSpec {
    pub name: &'static str,
    pub seq: EventuallyConstantSeq,
    pub n_max: usize,
    pub kind: FigureKind,
}

fn rat(n: i64, d: i64) -> BigRational {
    BigRational::new(n.into(), d.into())
}

fn seq(p: &[u64], t: u64) -> EventuallyConstantSeq {
    EventuallyConstantSeq::new(p.to_vec(), t).expect("valid sequence")
}

/// The default figure set.
pub fn figure_specs() -> Vec<FigureSpec> {
    vec![
        FigureSpec {
            name: "second_eigenvalue_1-9-9",
            seq: seq(&[1], 9),
            n_max: 200,
            kind: FigureKind::CatalanScaled { extra: vec![(rat(1, 4), rat(-5, 2))] },
        },
        FigureSpec {
            name: "fake_eigenvalue_3-1-1",
            seq: seq(&[3], 1),
            n_max: 200,
            kind: FigureKind::CatalanScaled { extra: vec![] },
        },
        FigureSpec {
            name: "approx_eigenvalue_2-4-2",
            seq: seq(&[2, 4], 2),
            n_max: 2000,
            kind: FigureKind::CatalanScaled { extra: vec![] },
        },
        FigureSpec {
            name: "inverse_square_1-8-12",
            seq: seq(&[1, 8], 12),
            n_max: 2000,
            kind: FigureKind::InverseSquare { extra: vec![(rat(1, 5), rat(-2, 1))] },
        },
        FigureSpec { name: "complex_1-3-27", seq: seq(&[1, 3], 27), n_max: 200, kind: FigureKind::ModulusScaled },
        FigureSpec { name: "complex_1-7-15", seq: seq(&[1, 7], 15), n_max: 200, kind: FigureKind::ModulusScaled },
    ]
}

fn extra_at(extra: &[(BigRational, BigRational)], n: usize, prec: u32) -> Ball {
    extra.iter().fold(Ball::zero(), |acc, (c, b)| {
        let t = c * Pow::pow(b, n as u64);
        &acc + &Ball::from_rational(&t, prec)
    })
}

fn modulus_of_largest_complex(seq: &EventuallyConstantSeq, prec: u32) -> Result<Ball> {
    let roots = classify_roots(seq, 128)?;
    let modsq = roots
        .iter()
        .filter(|r| r.class == RootClass::Genuine && !r.is_real())
        .filter_map(|r| r.lambda_modsq.clone())
        .max()
        .ok_or_else(|| Error::Contract(format!("{seq} has no genuine non-real eigenvalue with exact modulus")))?;
    Ok(Ball::from_rational(&modsq, prec).sqrt().expect("positive"))
}

/// `(n, value)` rows of a figure, for `n = 1..=N`.
pub fn figure_series(spec: &FigureSpec, bits: Option<u32>) -> Result<Vec<(usize, Ball)>> {
    let series = discrepancy_series(&spec.seq, spec.n_max, bits)?;
    let prec = series.bits;
    let mut rows = Vec::with_capacity(spec.n_max);
    match &spec.kind {
        FigureKind::CatalanScaled { extra } => {
            for n in 1..=spec.n_max {
                let r = &series.d[n] - &extra_at(extra, n, prec);
                let nb = Ball::from_int(n as u64).with_prec(prec);
                let scale = &nb * &nb.sqrt().expect("n > 0");
                let v = &(&r * &scale) * &Ball::exact(Dyadic::pow2(-(n as i64)));
                rows.push((n, v));
            }
        }
        FigureKind::InverseSquare { extra } => {
            for n in 1..=spec.n_max {
                let r = &(&series.d[n] - &extra_at(extra, n, prec)) * &Ball::exact(Dyadic::pow2(-(n as i64)));
                if let Some(v) = (&r * &r).checked_recip() {
                    rows.push((n, v));
                }
            }
        }
        FigureKind::ModulusScaled => {
            let m = modulus_of_largest_complex(&spec.seq, prec)?;
            let mut pow = m.clone();
            for n in 1..=spec.n_max {
                let v = series.d[n].checked_div(&pow).expect("positive modulus");
                rows.push((n, v));
                pow = &pow * &m;
            }
        }
    }
    Ok(rows)
}

/// CSV text with header `n,value`, LF line endings and `digits` significant digits.
pub fn render_csv(rows: &[(usize, Ball)], digits: usize) -> String {
    let mut out = String::from("n,value\n");
    for (n, v) in rows {
        out.push_str(&format!("{n},{}\n", v.mid_to_decimal(digits)));
    }
    out
}

pub fn emit_figure_csv(rows: &[(usize, Ball)], path: &Path, digits: usize) -> Result<()> {
    fs::write(path, render_csv(rows, digits))?;
    Ok(())
}
