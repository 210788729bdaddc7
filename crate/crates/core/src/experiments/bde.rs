use std::fmt;

use crate::error::{Error, Result};
use crate::sequence::EventuallyConstantSeq;
use crate::twist::{catalan_combo, growth_exponent, CatalanCombo, GrowthExponent};

/// Growth certificate for the discrepancy and the resulting bounded-distance verdict.
#[derive(Clone, Debug)]
pub struct BdeReport {
    pub seq: EventuallyConstantSeq,
    /// `None` for constant-length substitutions, where the criterion does not apply.
    pub certificate: Option<(CatalanCombo, GrowthExponent)>,
}

impl BdeReport {
    pub fn applicable(&self) -> bool {
        self.certificate.is_some()
    }
}

fn list(v: &[num_bigint::BigInt]) -> String {
    v.iter().map(|c| c.to_string()).collect::<Vec<_>>().join(", ")
}

impl fmt::Display for BdeReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.certificate {
            None => write!(f, "{}: criterion not applicable (constant-length substitution)", self.seq),
            Some((combo, growth)) => {
                writeln!(f, "{}: not BDE to αZ; certificate: α=({}), q={}", self.seq, list(&combo.alpha), growth.q)?;
                writeln!(f, "  β = ({})", list(&combo.beta))?;
                writeln!(f, "  R = {}, Q = {}, g = {}", combo.r, combo.q, combo.g)?;
                write!(f, "  (RQ) * d grows like C_k * ({growth}), which is unbounded")
            }
        }
    }
}

/// Certifies unbounded discrepancy via the Catalan combination of the twist.
pub fn bde_report(seq: &EventuallyConstantSeq) -> Result<BdeReport> {
    if seq.is_constant_length() {
        return Ok(BdeReport { seq: seq.clone(), certificate: None });
    }
    let combo = catalan_combo(seq)?;
    // the even subsequence carries the certificate unless it cancels entirely
    let growth = match growth_exponent(&combo.alpha) {
        Err(Error::AllCancelling) => growth_exponent(&combo.beta)?,
        other => other?,
    };
    Ok(BdeReport { seq: seq.clone(), certificate: Some((combo, growth)) })
}
