//! Parameter sequences, the substitution on letters `[i]`, supertiles and exact
//! abelianised counting.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// `a = (a_0, ..., a_{k-1}, a, a, ...)` with `a_0 > 0` and tail `a >= 1`.
///
/// The prefix is kept minimal: its last entry never equals the tail.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct EventuallyConstantSeq {
    prefix: Vec<u64>,
    tail: u64,
}

impl EventuallyConstantSeq {
    pub fn new(prefix: Vec<u64>, tail: u64) -> Result<Self> {
        if tail == 0 {
            return Err(Error::InvalidSequence("tail must be positive".into()));
        }
        let a0 = prefix.first().copied().unwrap_or(tail);
        if a0 == 0 {
            return Err(Error::InvalidSequence("a0 must be positive".into()));
        }
        let mut prefix = prefix;
        while prefix.last() == Some(&tail) {
            prefix.pop();
        }
        Ok(EventuallyConstantSeq { prefix, tail })
    }

    /// The all-ones sequence.
    pub fn all_ones() -> Self {
        EventuallyConstantSeq { prefix: Vec::new(), tail: 1 }
    }

    pub fn prefix(&self) -> &[u64] {
        &self.prefix
    }

    pub fn tail(&self) -> u64 {
        self.tail
    }

    /// Length `k` of the minimal prefix.
    pub fn k(&self) -> usize {
        self.prefix.len()
    }

    /// `a_i`.
    pub fn get(&self, i: usize) -> u64 {
        self.prefix.get(i).copied().unwrap_or(self.tail)
    }

    /// Length of `rho([i])`.
    pub fn image_len(&self, i: usize) -> u64 {
        if i == 0 {
            self.get(0) + 1
        } else {
            self.get(i) + 2
        }
    }

    /// True when every letter image has the same length.
    pub fn is_constant_length(&self) -> bool {
        // |rho([0])| = a_0 + 1 and |rho([i])| = a_i + 2 agree iff a = (b, b-1, b-1, ...)
        self.prefix.len() == 1 && self.prefix[0] == self.tail + 1
    }

    /// Compact label such as `1,9,9` (prefix then one tail entry).
    pub fn label(&self) -> String {
        let mut parts: Vec<String> = self.prefix.iter().map(|a| a.to_string()).collect();
        parts.push(self.tail.to_string());
        parts.join(",")
    }
}

impl fmt::Display for EventuallyConstantSeq {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{},...)", self.label(), self.tail)
    }
}

/// A finite word over letters `[i]`, `i >= 0`.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct LetterWord(pub Vec<usize>);

impl LetterWord {
    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn letters(&self) -> &[usize] {
        &self.0
    }

    /// Letter multiplicities, indexed by letter.
    pub fn histogram(&self) -> Vec<u64> {
        let top = self.0.iter().copied().max().map_or(0, |m| m + 1);
        let mut h = vec![0u64; top];
        for &l in &self.0 {
            h[l] += 1;
        }
        h
    }
}

impl fmt::Display for LetterWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for l in &self.0 {
            write!(f, "[{l}]")?;
        }
        Ok(())
    }
}

/// `rho([i])`: `[0]^{a_0}[1]` for `i = 0`, `[0]^{a_i}[i-1][i+1]` otherwise.
pub fn substitute(seq: &EventuallyConstantSeq, i: usize) -> LetterWord {
    let mut w = vec![0usize; seq.get(i) as usize];
    if i == 0 {
        w.push(1);
    } else {
        w.push(i - 1);
        w.push(i + 1);
    }
    LetterWord(w)
}

/// The literal word `rho^n([0])`; refuses words longer than `cap`.
pub fn supertile(seq: &EventuallyConstantSeq, n: usize, cap: usize) -> Result<LetterWord> {
    let len = tile_count(seq, n);
    if len > BigInt::from(cap) {
        return Err(Error::SupertileTooLarge { n, len: len.to_string(), cap });
    }
    let mut w = vec![0usize];
    for _ in 0..n {
        let mut next = Vec::with_capacity(w.len() * 2);
        for &l in &w {
            next.extend(substitute(seq, l).0);
        }
        w = next;
    }
    Ok(LetterWord(w))
}

/// Letter multiplicities of `rho^n([0])`, i.e. the column `A^n e_0`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CountVector {
    entries: Vec<BigInt>,
}

impl CountVector {
    /// `e_0 = (1, 0, 0, ...)`.
    pub fn unit() -> Self {
        CountVector { entries: vec![BigInt::from(1)] }
    }

    pub fn from_entries(entries: Vec<BigInt>) -> Self {
        CountVector { entries }
    }

    pub fn entries(&self) -> &[BigInt] {
        &self.entries
    }

    /// Entry `i` (zero beyond the support bound).
    pub fn get(&self, i: usize) -> BigInt {
        self.entries.get(i).cloned().unwrap_or_default()
    }

    /// Index of the last possibly nonzero entry.
    pub fn support_bound(&self) -> usize {
        self.entries.len().saturating_sub(1)
    }

    pub fn total(&self) -> BigInt {
        self.entries.iter().sum()
    }
}

/// Column action `v -> A v` over any scalar type; the output is one entry longer.
pub fn column_action<T: Scalar>(seq: &EventuallyConstantSeq, v: &[T]) -> Vec<T> {
    let s = v.len();
    let at = |j: usize| -> T { v.get(j).cloned().unwrap_or_else(T::zero) };
    let mut out = Vec::with_capacity(s + 1);
    let k = seq.k();
    // v'[0] = sum_j a_j v[j] + v[1]
    let mut head = at(1);
    for (j, x) in v.iter().enumerate().take(k) {
        head = head + T::from_i64(seq.get(j) as i64) * x.clone();
    }
    if s > k {
        let tail_sum = v[k..].iter().cloned().fold(T::zero(), |a, b| a + b);
        head = head + T::from_i64(seq.tail() as i64) * tail_sum;
    }
    out.push(head);
    for j in 1..=s {
        out.push(at(j - 1) + at(j + 1));
    }
    out
}

/// One application of the substitution matrix: `v'[0] = Σ a_j v[j] + v[1]`,
/// `v'[j] = v[j-1] + v[j+1]`.
pub fn abelian_step(seq: &EventuallyConstantSeq, v: &CountVector) -> CountVector {
    let e = &v.entries;
    let s = e.len();
    let mut out = Vec::with_capacity(s + 1);
    let k = seq.k();
    let mut head = e.get(1).cloned().unwrap_or_default();
    let mut tail_sum = BigInt::zero();
    for (j, x) in e.iter().enumerate() {
        if j < k {
            let a = seq.get(j);
            if a != 0 {
                head += x * a;
            }
        } else {
            tail_sum += x;
        }
    }
    head += tail_sum * seq.tail();
    out.push(head);
    for j in 1..=s {
        let lo = &e[j - 1];
        out.push(match e.get(j + 1) {
            Some(hi) => lo + hi,
            None => lo.clone(),
        });
    }
    CountVector { entries: out }
}

/// Streams `v_0, v_1, v_2, ...`.
#[derive(Clone, Debug)]
pub struct CountIter<'a> {
    seq: &'a EventuallyConstantSeq,
    next: Option<CountVector>,
}

impl<'a> CountIter<'a> {
    pub fn new(seq: &'a EventuallyConstantSeq) -> Self {
        CountIter { seq, next: Some(CountVector::unit()) }
    }
}

impl Iterator for CountIter<'_> {
    type Item = CountVector;
    fn next(&mut self) -> Option<CountVector> {
        let cur = self.next.take()?;
        self.next = Some(abelian_step(self.seq, &cur));
        Some(cur)
    }
}

/// `#(n)`, the number of letters of `rho^n([0])`.
pub fn tile_count(seq: &EventuallyConstantSeq, n: usize) -> BigInt {
    CountIter::new(seq).nth(n).expect("infinite iterator").total()
}

/// `#(0), ..., #(n_max)`.
pub fn tile_counts(seq: &EventuallyConstantSeq, n_max: usize) -> Vec<BigInt> {
    CountIter::new(seq).take(n_max + 1).map(|v| v.total()).collect()
}

/// Histogram of a count vector as machine integers (for small `n`).
pub fn count_vector_u64(v: &CountVector) -> Option<Vec<u64>> {
    let mut out: Vec<u64> = v.entries.iter().map(|x| x.to_u64()).collect::<Option<_>>()?;
    while out.last() == Some(&0) {
        out.pop();
    }
    Some(out)
}
