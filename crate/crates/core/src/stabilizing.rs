//! Row vectors with eventually constant entries and the row action `y -> yA`.

use std::fmt;
use std::ops::{Add, Sub};

use num_bigint::BigInt;

use crate::scalar::Scalar;
use crate::sequence::{CountVector, EventuallyConstantSeq};

/// `(y_0, ..., y_{L-1}, t, t, ...)`, kept with a minimal prefix.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct StabilizingVector<T> {
    prefix: Vec<T>,
    tail: T,
}

impl<T: Scalar> StabilizingVector<T> {
    pub fn new(prefix: Vec<T>, tail: T) -> Self {
        let mut v = StabilizingVector { prefix, tail };
        v.normalise();
        v
    }

    /// Finitely supported vector.
    pub fn finite(entries: Vec<T>) -> Self {
        Self::new(entries, T::zero())
    }

    pub fn zero() -> Self {
        Self::new(Vec::new(), T::zero())
    }

    /// `(c, c, c, ...)`.
    pub fn constant(c: T) -> Self {
        Self::new(Vec::new(), c)
    }

    /// `(1, 1, 1, ...)`.
    pub fn ones() -> Self {
        Self::constant(T::one())
    }

    fn normalise(&mut self) {
        while self.prefix.last() == Some(&self.tail) {
            self.prefix.pop();
        }
    }

    pub fn prefix(&self) -> &[T] {
        &self.prefix
    }

    pub fn tail(&self) -> &T {
        &self.tail
    }

    pub fn get(&self, i: usize) -> T {
        self.prefix.get(i).cloned().unwrap_or_else(|| self.tail.clone())
    }

    pub fn is_zero(&self) -> bool {
        self.prefix.is_empty() && self.tail.is_zero()
    }

    /// The first `n` entries.
    pub fn head(&self, n: usize) -> Vec<T> {
        (0..n).map(|i| self.get(i)).collect()
    }

    pub fn scale(&self, c: &T) -> Self {
        Self::new(self.prefix.iter().map(|x| x.clone() * c.clone()).collect(), self.tail.clone() * c.clone())
    }

    pub fn map<U: Scalar>(&self, f: impl Fn(&T) -> U) -> StabilizingVector<U> {
        StabilizingVector::new(self.prefix.iter().map(&f).collect(), f(&self.tail))
    }

    fn zip_with(&self, other: &Self, f: impl Fn(T, T) -> T) -> Self {
        let n = self.prefix.len().max(other.prefix.len());
        let prefix = (0..n).map(|i| f(self.get(i), other.get(i))).collect();
        Self::new(prefix, f(self.tail.clone(), other.tail.clone()))
    }

    /// `y A`: `(yA)_0 = y_0 a_0 + y_1`, `(yA)_j = y_0 a_j + y_{j-1} + y_{j+1}` for `j >= 1`.
    pub fn row_step(&self, seq: &EventuallyConstantSeq) -> Self {
        let y0 = self.get(0);
        let m = seq.k().max(self.prefix.len() + 1);
        let mut out = Vec::with_capacity(m);
        out.push(y0.clone() * T::from_i64(seq.get(0) as i64) + self.get(1));
        for j in 1..m {
            out.push(y0.clone() * T::from_i64(seq.get(j) as i64) + self.get(j - 1) + self.get(j + 1));
        }
        let tail = y0 * T::from_i64(seq.tail() as i64) + self.tail.clone() + self.tail.clone();
        Self::new(out, tail)
    }

    /// `y B^n`.
    pub fn row_steps(&self, seq: &EventuallyConstantSeq, n: usize) -> Self {
        let mut y = self.clone();
        for _ in 0..n {
            y = y.row_step(seq);
        }
        y
    }

    /// `Σ_i y_i v_i` against a finitely supported integer column.
    pub fn pair(&self, v: &CountVector) -> T {
        v.entries()
            .iter()
            .enumerate()
            .fold(T::zero(), |acc, (i, x)| acc + self.get(i) * T::from_bigint(x))
    }

    /// `Σ_i y_i v_i` against a finite column over the same scalar type.
    pub fn pair_slice(&self, v: &[T]) -> T {
        v.iter().enumerate().fold(T::zero(), |acc, (i, x)| acc + self.get(i) * x.clone())
    }
}

/// `y f(A)` for a polynomial `f` given by ascending integer coefficients.
pub fn apply_poly<T: Scalar>(seq: &EventuallyConstantSeq, y: &StabilizingVector<T>, coeffs: &[BigInt]) -> StabilizingVector<T> {
    let mut acc = StabilizingVector::zero();
    let mut power = y.clone();
    for (i, c) in coeffs.iter().enumerate() {
        if i > 0 {
            power = power.row_step(seq);
        }
        acc = &acc + &power.scale(&T::from_bigint(c));
    }
    acc
}

impl<'a, T: Scalar> Add<&'a StabilizingVector<T>> for &'a StabilizingVector<T> {
    type Output = StabilizingVector<T>;
    fn add(self, rhs: &StabilizingVector<T>) -> StabilizingVector<T> {
        self.zip_with(rhs, |a, b| a + b)
    }
}

impl<'a, T: Scalar> Sub<&'a StabilizingVector<T>> for &'a StabilizingVector<T> {
    type Output = StabilizingVector<T>;
    fn sub(self, rhs: &StabilizingVector<T>) -> StabilizingVector<T> {
        self.zip_with(rhs, |a, b| a - b)
    }
}

impl<T: fmt::Display> fmt::Display for StabilizingVector<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("(")?;
        for x in &self.prefix {
            write!(f, "{x}, ")?;
        }
        write!(f, "{t}, {t}, ...)", t = self.tail)
    }
}

impl<T: fmt::Debug> fmt::Debug for StabilizingVector<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("StabilizingVector").field("prefix", &self.prefix).field("tail", &self.tail).finish()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_rational::BigRational;

    type RV = StabilizingVector<BigRational>;

    fn rv(p: &[i64], t: i64) -> RV {
        RV::new(p.iter().map(|&x| BigRational::from_integer(x.into())).collect(), BigRational::from_integer(t.into()))
    }

    #[test]
    fn row_step_examples() {
        let ones = EventuallyConstantSeq::all_ones();
        assert_eq!(RV::ones().row_step(&ones), rv(&[2], 3));
        let s = EventuallyConstantSeq::new(vec![1], 2).unwrap();
        assert_eq!(RV::ones().row_step(&s), rv(&[2], 4));
        assert!(RV::zero().row_step(&s).is_zero());
    }

    #[test]
    fn two_a_minus_five_on_ones() {
        let ones = EventuallyConstantSeq::all_ones();
        let y: RV = apply_poly(&ones, &RV::ones(), &[BigInt::from(-5), BigInt::from(2)]);
        assert_eq!(y, rv(&[-1], 1));
        assert_eq!(y.to_string(), "(-1, 1, 1, ...)");
    }

    #[test]
    fn pairing_matches_column_action_transpose() {
        let s = EventuallyConstantSeq::new(vec![1, 1, 3], 4).unwrap();
        let y = rv(&[-3, 1, 7, 11], 12);
        let mut v = CountVector::unit();
        for _ in 0..8 {
            let next = crate::sequence::abelian_step(&s, &v);
            // (yA) v = y (A v)
            assert_eq!(y.row_step(&s).pair(&v), y.pair(&next));
            v = next;
        }
    }

    #[test]
    fn normalisation() {
        let v = rv(&[1, 2, 2], 2);
        assert_eq!(v.prefix().len(), 1);
        assert_eq!(v.get(7), BigRational::from_integer(2.into()));
    }
}
