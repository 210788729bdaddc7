//! Exact rational linear algebra.

use num_rational::BigRational;
use num_traits::{One, Zero};

/// Reduced row echelon form in place; returns the pivot columns.
pub fn rref(m: &mut [Vec<BigRational>]) -> Vec<usize> {
    let rows = m.len();
    let cols = m.first().map_or(0, |r| r.len());
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(r, p);
        let inv = BigRational::one() / &m[r][c];
        for x in m[r].iter_mut() {
            *x = &*x * &inv;
        }
        for i in 0..rows {
            if i != r && !m[i][c].is_zero() {
                let f = m[i][c].clone();
                for j in 0..cols {
                    let t = &f * &m[r][j];
                    m[i][j] = &m[i][j] - t;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

/// Coefficients `c` (with `c[last] = 1`) of the first vector in `vs` that is a linear
/// combination of the earlier ones: `Σ c_i vs[i] = 0`.
pub fn first_dependence(vs: &[Vec<BigRational>]) -> Option<Vec<BigRational>> {
    let dim = vs.iter().map(|v| v.len()).max().unwrap_or(0);
    for n in 1..=vs.len() {
        // columns are vectors; solve Σ_{i<n-1} x_i v_i = -v_{n-1}
        let mut m: Vec<Vec<BigRational>> = (0..dim)
            .map(|r| (0..n).map(|i| vs[i].get(r).cloned().unwrap_or_else(BigRational::zero)).collect())
            .collect();
        let pivots = rref(&mut m);
        if pivots.len() < n {
            // the last column is not a pivot iff it depends on earlier columns
            if pivots.contains(&(n - 1)) {
                continue;
            }
            let mut c = vec![BigRational::zero(); n];
            c[n - 1] = BigRational::one();
            for (row, &pc) in pivots.iter().enumerate() {
                c[pc] = -m[row][n - 1].clone();
            }
            return Some(c);
        }
    }
    None
}
