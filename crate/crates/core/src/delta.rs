//! The index set `Δ(δ)` and numerical data of linked chains.

use num_bigint::BigInt;
use num_traits::{ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::Rational;

/// `Δ(δ) = {0, 1/δ1, …, 1, 1 + 1/δ2, …, d}` in increasing order.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct DeltaSet {
    d: usize,
    delta: Vec<usize>,
    indices: Vec<Rational>,
}

impl DeltaSet {
    pub fn new(d: usize, delta: &[usize]) -> Result<Self> {
        if delta.len() != d {
            return Err(Error::InvalidDelta(format!(
                "expected {d} entries, found {}",
                delta.len()
            )));
        }
        if let Some(k) = delta.iter().position(|&x| x == 0) {
            return Err(Error::InvalidDelta(format!("entry {} is zero", k + 1)));
        }
        let mut indices = vec![Rational::zero()];
        for (k, &steps) in delta.iter().enumerate() {
            for s in 1..=steps {
                indices
                    .push(Rational::from_integer(k.into()) + Rational::new(s.into(), steps.into()));
            }
        }
        Ok(Self {
            d,
            delta: delta.to_vec(),
            indices,
        })
    }

    /// `δ = (1, …, 1)`: the index set `{0, 1, …, d}`.
    pub fn unit(d: usize) -> Self {
        Self::new(d, &vec![1; d]).expect("all entries positive")
    }

    pub fn d(&self) -> usize {
        self.d
    }

    pub fn delta(&self) -> &[usize] {
        &self.delta
    }

    pub fn indices(&self) -> &[Rational] {
        &self.indices
    }

    pub fn len(&self) -> usize {
        self.indices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.indices.is_empty()
    }

    pub fn position(&self, i: &Rational) -> Option<usize> {
        self.indices.binary_search(i).ok()
    }

    pub fn is_unit(&self) -> bool {
        self.delta.iter().all(|&x| x == 1)
    }

    /// Adjacent pairs `(i, j)` with nothing of `Δ` strictly between them.
    pub fn consecutive_pairs(&self) -> Vec<(Rational, Rational)> {
        self.indices
            .windows(2)
            .map(|w| (w[0].clone(), w[1].clone()))
            .collect()
    }

    pub fn non_integer_count(&self) -> usize {
        self.delta.iter().map(|&x| x - 1).sum()
    }

    /// Drops the non-integer indices whose `m` vanishes and returns the
    /// resulting `δ'` together with the order isomorphism `Δ(δ') → Δ`, given as
    /// positions into `self.indices()`. Integers are always kept.
    pub fn support_subset(&self, n: &NumericalData) -> Result<(DeltaSet, Vec<usize>)> {
        if n.entries.len() != self.len() {
            return Err(Error::DimensionMismatch {
                expected: self.len(),
                found: n.entries.len(),
            });
        }
        let mut kept = Vec::new();
        let mut new_delta = vec![1usize; self.d];
        for (pos, i) in self.indices.iter().enumerate() {
            if n.entries[pos].index != *i {
                return Err(Error::MissingIndex(i.clone()));
            }
            if i.is_integer() {
                kept.push(pos);
            } else if n.entries[pos].m != 0 {
                kept.push(pos);
                new_delta[floor(i)] += 1;
            }
        }
        Ok((DeltaSet::new(self.d, &new_delta)?, kept))
    }
}

/// `⌊i⌋` for a nonnegative index.
pub fn floor(i: &Rational) -> usize {
    to_usize(&i.floor().to_integer())
}

/// `⌈i⌉` for a nonnegative index.
pub fn ceil(i: &Rational) -> usize {
    to_usize(&i.ceil().to_integer())
}

fn to_usize(n: &BigInt) -> usize {
    n.to_usize().expect("index is a small nonnegative integer")
}

/// `(p_i, q_i, m_i)` at one index.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct NumericalEntry {
    pub index: Rational,
    pub p: usize,
    pub q: usize,
    pub m: i64,
}

/// The numerical data `i ↦ (p_i, q_i, m_i)` with `m_i = (r+1) − p_i − q_i`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct NumericalData {
    pub r: usize,
    pub entries: Vec<NumericalEntry>,
}

impl NumericalData {
    pub fn new(r: usize, indices: &[Rational], pq: &[(usize, usize)]) -> Result<Self> {
        if indices.len() != pq.len() {
            return Err(Error::DimensionMismatch {
                expected: indices.len(),
                found: pq.len(),
            });
        }
        let entries = indices
            .iter()
            .zip(pq)
            .map(|(i, &(p, q))| NumericalEntry {
                index: i.clone(),
                p,
                q,
                m: (r as i64 + 1) - p as i64 - q as i64,
            })
            .collect();
        Ok(Self { r, entries })
    }

    pub fn m_values(&self) -> Vec<i64> {
        self.entries.iter().map(|e| e.m).collect()
    }

    pub fn sum_m(&self) -> i64 {
        self.entries.iter().map(|e| e.m).sum()
    }

    /// `Σ m_i = r + 1`.
    pub fn is_exact(&self) -> bool {
        self.sum_m() == self.r as i64 + 1
    }

    /// `m_i > 0` at every non-integer index.
    pub fn is_minimal(&self) -> bool {
        self.entries.iter().all(|e| e.index.is_integer() || e.m > 0)
    }
}
