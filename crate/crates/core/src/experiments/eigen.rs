use num_rational::BigRational;
use num_traits::{Signed, Zero};

use crate::sequence::{column_action, EventuallyConstantSeq};

/// `v^(n) = (1/n) ((-1)^n n, (-1)^{n-1} (n-1), ..., -1, 0, ...)`.
pub fn approx_eigenvector(n: usize) -> Vec<BigRational> {
    assert!(n >= 1, "n must be positive");
    (0..=n)
        .map(|i| {
            let m = (n - i) as i64;
            let s = if m % 2 == 0 { 1 } else { -1 };
            BigRational::new((s * m).into(), (n as i64).into())
        })
        .collect()
}

/// `A v^(n) + 2 v^(n)` and its norms, exact.
#[derive(Clone, Debug, PartialEq)]
pub struct ApproxEigenResidual {
    pub residual: Vec<BigRational>,
    pub l1_norm: BigRational,
    pub sup_norm: BigRational,
}

impl ApproxEigenResidual {
    pub fn head(&self) -> BigRational {
        self.residual.first().cloned().unwrap_or_else(BigRational::zero)
    }
}

pub fn approx_eigen_residual(seq: &EventuallyConstantSeq, n: usize) -> ApproxEigenResidual {
    let v = approx_eigenvector(n);
    let mut residual = column_action(seq, &v);
    for (r, x) in residual.iter_mut().zip(&v) {
        *r += x * BigRational::from_integer(2.into());
    }
    while residual.last().is_some_and(Zero::is_zero) {
        residual.pop();
    }
    let l1_norm = residual.iter().map(|x| x.abs()).fold(BigRational::zero(), |a, b| a + b);
    let sup_norm = residual.iter().map(|x| x.abs()).max().unwrap_or_else(BigRational::zero);
    ApproxEigenResidual { residual, l1_norm, sup_norm }
}
