use std::fmt::Write as _;
use std::fs;
use std::path::PathBuf;

use num_bigint::BigInt;
use num_rational::BigRational;

use infsubst::catalan::{discrepancy_series, verify_catalan_identity};
use infsubst::experiments::{
    bde_report, emit_figure_csv, estimate_coefficient, estimate_coefficient_at_two, estimate_leading_coefficient,
    figure_series, figure_specs, fit_exponent, residual_bits, residual_series, Parity, Term,
};
use infsubst::numerics::decimal::format_exact;
use infsubst::sequence::tile_counts;
use infsubst::spectral::{classify_roots, spectral_data, stabilising_eigenvector, RootClass, RootInfo};
use infsubst::twist::{catalan_combo, growth_exponent, reduce_mod_e, verify_twist_recurrence, x_a};
use infsubst::{Ball, CBall, Error, EventuallyConstantSeq};

use crate::config::{Command, RunConfig};

pub enum Failure {
    Compute(Error),
    /// Report printed, but some quantity could not be computed.
    Incomplete(String),
    Verify(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Compute(e)
    }
}

impl From<std::fmt::Error> for Failure {
    fn from(_: std::fmt::Error) -> Self {
        Failure::Verify("formatting failed".into())
    }
}

type Out = Result<String, Failure>;

pub fn run(cfg: &RunConfig) -> Out {
    match (cfg.command, &cfg.seq) {
        (Command::Figures, _) => figures(cfg),
        (cmd, Some(seq)) => match cmd {
            Command::Spectral => spectral(seq, cfg),
            Command::Count => count(seq, cfg),
            Command::Discrepancy => discrepancy(seq, cfg),
            Command::CatalanCheck => catalan_check(seq, cfg),
            Command::Twist => twist(seq),
            Command::Asymptotics => asymptotics(seq, cfg),
            Command::Figures => unreachable!(),
        },
        (_, None) => unreachable!("parse_config requires a sequence"),
    }
}

fn exact_or(exact: Option<&BigRational>, ball: &Ball, digits: usize) -> String {
    match exact {
        Some(q) => format_exact(q),
        None => ball.to_decimal(digits),
    }
}

fn complex(z: &CBall, digits: usize) -> String {
    if z.im.is_exact() && z.im.mid().is_zero() {
        return z.re.to_decimal(digits);
    }
    let sign = if z.im.mid().is_negative() { "-" } else { "+" };
    let body = format!("{} {sign} {}i", z.re.mid_to_decimal(digits), z.im.abs().mid_to_decimal(digits));
    let rad = z.re.rad().max(z.im.rad());
    if rad.is_zero() {
        body
    } else {
        format!("{body} ± {}", Ball::exact(rad.clone()).mid_to_decimal(3))
    }
}

fn spectral(seq: &EventuallyConstantSeq, cfg: &RunConfig) -> Out {
    let bits = cfg.bits.unwrap_or(128).max((cfg.digits as f64 * 3.33) as u32 + 16);
    let sd = spectral_data(seq, bits)?;
    let d = cfg.digits;
    let mut o = String::new();
    writeln!(o, "sequence = {seq}")?;
    writeln!(o, "P(x) = {}", sd.p)?;
    writeln!(o, "m_mu(x) = {}", sd.m_mu)?;
    writeln!(o, "μ = {}", exact_or(sd.mu_exact(), &sd.mu, d))?;
    writeln!(o, "λ = {}", exact_or(sd.lambda_exact(), &sd.lambda, d))?;
    writeln!(o, "Q(x) = {}", sd.q)?;
    let k = sd.length.k();
    match &sd.exact {
        Some(ex) => {
            for (j, l) in ex.prefix.iter().enumerate() {
                writeln!(o, "ℓ([{j}]) = {}", format_exact(l))?;
            }
            writeln!(
                o,
                "ℓ([j]) = {} + ({})·({})^j for j >= {k}",
                format_exact(&ex.constant),
                format_exact(&ex.alpha),
                format_exact(&ex.mu)
            )?;
            writeln!(o, "average length c_a = {}", format_exact(&ex.avg_length))?;
        }
        None => {
            for (j, l) in sd.length_prefix().iter().enumerate() {
                writeln!(o, "ℓ([{j}]) = {}", l.to_decimal(d))?;
            }
            writeln!(o, "ℓ([j]) = c + α·μ^j for j >= {k}")?;
            writeln!(o, "  c = {}", sd.length_const().to_decimal(d))?;
            writeln!(o, "  α = {}", sd.length_alpha().to_decimal(d))?;
            writeln!(o, "average length c_a = {}", sd.avg_length().to_decimal(d))?;
        }
    }
    writeln!(o, "density = {}", exact_or(sd.density_exact(), sd.density(), d))?;
    writeln!(o, "roots of P:")?;
    for r in classify_roots(seq, bits)? {
        root_line(&mut o, &r, d)?;
    }
    Ok(o)
}

fn root_line(o: &mut String, r: &RootInfo, d: usize) -> std::fmt::Result {
    let mu = r.mu_exact.as_ref().map(format_exact).unwrap_or_else(|| complex(&r.mu_star, d));
    let lam = r.lambda_exact.as_ref().map(format_exact).unwrap_or_else(|| complex(&r.lambda_star, d));
    writeln!(o, "  {}: μ* = {mu}, λ* = {lam}, multiplicity {}", r.class, r.multiplicity)?;
    writeln!(o, "    factor {}, minimal polynomial of λ*: {}", r.factor, r.lambda_poly)?;
    if let Some(m) = &r.mu_modsq {
        writeln!(o, "    |μ*|^2 = {}", format_exact(m))?;
    }
    if let Some(m) = &r.lambda_modsq {
        writeln!(o, "    |λ*|^2 = {}", format_exact(m))?;
    }
    Ok(())
}

fn write_out(cfg: &RunConfig, text: String) -> Out {
    match &cfg.out {
        Some(path) if cfg.command != Command::Figures => {
            fs::write(path, &text).map_err(Error::from)?;
            Ok(format!("wrote {}\n", path.display()))
        }
        _ => Ok(text),
    }
}

fn count(seq: &EventuallyConstantSeq, cfg: &RunConfig) -> Out {
    let mut o = String::from("n,#(n)\n");
    for (n, c) in tile_counts(seq, cfg.n_max).iter().enumerate() {
        writeln!(o, "{n},{c}")?;
    }
    write_out(cfg, o)
}

fn discrepancy(seq: &EventuallyConstantSeq, cfg: &RunConfig) -> Out {
    let s = discrepancy_series(seq, cfg.n_max, cfg.bits)?;
    let mut o = String::new();
    writeln!(o, "# d(n) = #(n) - density·λ^n for {seq}, {} bits", s.bits)?;
    writeln!(o, "n,d(n)")?;
    for (n, d) in s.d.iter().enumerate() {
        writeln!(o, "{n},{}", d.to_decimal(cfg.digits))?;
    }
    write_out(cfg, o)
}

fn catalan_check(seq: &EventuallyConstantSeq, cfg: &RunConfig) -> Out {
    let mut o = String::new();
    let mut failed = false;
    if *seq == EventuallyConstantSeq::all_ones() {
        let r = verify_catalan_identity(cfg.n_max);
        failed |= !r.passed();
        writeln!(o, "{r}")?;
    }
    let r = verify_twist_recurrence(seq, cfg.n_max)?;
    failed |= !r.passed();
    writeln!(o, "{r}")?;
    if failed {
        return Err(Failure::Verify(o));
    }
    Ok(o)
}

fn list(v: &[BigInt]) -> String {
    v.iter().map(|c| c.to_string()).collect::<Vec<_>>().join(", ")
}

fn twist(seq: &EventuallyConstantSeq) -> Out {
    let mut o = String::new();
    let xa = x_a(seq)?;
    writeln!(o, "sequence = {seq}")?;
    writeln!(o, "x_a = {xa}")?;
    let red = reduce_mod_e(seq, &xa)?;
    if red.in_span() {
        writeln!(o, "x_a lies in the span of E; c0 = {}", format_exact(&red.c0))?;
    } else {
        writeln!(o, "x_a = {} e_0 + ..., residue mod P = {}", format_exact(&red.c0), red.residue)?;
    }
    let combo = catalan_combo(seq)?;
    writeln!(o, "R = {}", combo.r)?;
    writeln!(o, "Q = {}", combo.q)?;
    writeln!(o, "g = {}", combo.g)?;
    writeln!(o, "α = ({})", list(&combo.alpha))?;
    writeln!(o, "β = ({})", list(&combo.beta))?;
    writeln!(o, "RQ = {}", combo.twist_poly())?;
    for (name, w) in [("even n = 2k", &combo.alpha), ("odd n = 2k+1", &combo.beta)] {
        match growth_exponent(w) {
            Ok(g) => writeln!(o, "{name}: q = {}, F(k)/C_k = {g}", g.q)?,
            Err(Error::AllCancelling) => writeln!(o, "{name}: combination vanishes identically")?,
            Err(e) => return Err(e.into()),
        }
    }
    write!(o, "{}", bde_report(seq)?)?;
    writeln!(o)?;
    Ok(o)
}

/// Small-denominator rational within `tol` of `x`, by continued fractions.
fn recognise(x: f64, max_den: i64, tol: f64) -> Option<BigRational> {
    let (mut h0, mut h1, mut k0, mut k1) = (0i64, 1i64, 1i64, 0i64);
    let mut r = x;
    for _ in 0..32 {
        let a = r.floor();
        let (h, k) = (a as i64 * h1 + h0, a as i64 * k1 + k0);
        if k > max_den {
            return None;
        }
        if (h as f64 / k as f64 - x).abs() < tol {
            return Some(BigRational::new(h.into(), k.into()));
        }
        (h0, h1, k0, k1) = (h1, h, k1, k);
        let frac = r - a;
        if frac.abs() < 1e-15 {
            return None;
        }
        r = 1.0 / frac;
    }
    None
}

fn asymptotics(seq: &EventuallyConstantSeq, cfg: &RunConfig) -> Out {
    let n = cfg.n_max;
    let window = (n / 2, n);
    let mut o = String::new();
    writeln!(o, "sequence = {seq}, n in [{}, {}]", window.0, window.1)?;
    let lead = estimate_leading_coefficient(seq, window)?;
    writeln!(o, "leading coefficient #(n)/λ^n: {lead}")?;
    let lambda = spectral_data(seq, 64)?.lambda.to_f64();
    let bits = cfg.bits.unwrap_or_else(|| residual_bits(lambda, n));
    let mut terms = vec![Term::perron(seq, bits)?];
    // reasons the residual cannot be reduced to the Catalan scale
    let mut blockers = Vec::new();
    // (base, estimated coefficient, label) of terms to subtract
    let mut candidates: Vec<(BigRational, f64, String)> = Vec::new();
    for r in classify_roots(seq, 256)?.iter().filter(|r| r.class != RootClass::Perron && r.is_real()) {
        let lam = &r.lambda_star.re;
        if lam.abs_lower() <= infsubst::Dyadic::from_int(2) {
            continue;
        }
        let label = format!("{} λ* = {}", r.class, lam.mid_to_decimal(12));
        match estimate_coefficient(seq, lam, window, cfg.bits) {
            Ok(e) => {
                writeln!(o, "{label}: coefficient {e}")?;
                if r.class == RootClass::Genuine {
                    match &r.lambda_exact {
                        Some(base) => candidates.push((base.clone(), e.value, label)),
                        None => blockers.push(label),
                    }
                }
            }
            Err(e) => {
                writeln!(o, "{label}: {e}")?;
                blockers.push(label);
            }
        }
    }
    let minus_two = BigRational::from_integer(BigInt::from(-2));
    if stabilising_eigenvector(seq, &minus_two).is_some() {
        match estimate_coefficient_at_two(seq, window, cfg.bits) {
            Ok(e) => {
                writeln!(o, "coefficient of (-2)^n: {e}")?;
                candidates.push((minus_two.clone(), e.value, "λ* = -2".into()));
            }
            Err(e) => {
                writeln!(o, "coefficient of (-2)^n: {e}")?;
                blockers.push("λ* = -2".into());
            }
        }
    }
    for (base, est, label) in candidates {
        match recognise(est, 64, 1e-4) {
            Some(c) => {
                writeln!(o, "  subtracting {} ({})^n, recognised from the estimate", format_exact(&c), format_exact(&base))?;
                terms.push(Term::rational(&c, &base, bits));
            }
            None => blockers.push(label),
        }
    }
    if !blockers.is_empty() {
        writeln!(o, "exponent fit skipped: no exact coefficient for {}", blockers.join(", "))?;
        return Err(Failure::Incomplete(o));
    }
    let series = residual_series(seq, n, &terms)?;
    let mut complete = true;
    for parity in [Parity::Even, Parity::Odd] {
        match fit_exponent(&series, parity, window) {
            Ok(f) => writeln!(o, "residual ~ 2^n / n^p, {parity} n: {f}")?,
            Err(e) => {
                complete = false;
                writeln!(o, "residual ~ 2^n / n^p, {parity} n: {e}")?
            }
        }
    }
    if complete {
        Ok(o)
    } else {
        Err(Failure::Incomplete(o))
    }
}

fn figures(cfg: &RunConfig) -> Out {
    let dir = cfg.out.clone().unwrap_or_else(|| PathBuf::from("figures"));
    fs::create_dir_all(&dir).map_err(Error::from)?;
    let mut o = String::new();
    for spec in figure_specs() {
        let rows = figure_series(&spec, cfg.bits)?;
        let path = dir.join(format!("{}.csv", spec.name));
        emit_figure_csv(&rows, &path, cfg.digits)?;
        writeln!(o, "wrote {} ({} rows, {})", path.display(), rows.len(), spec.seq)?;
    }
    Ok(o)
}
