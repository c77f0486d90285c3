//! Eventually periodic ε-sequences and the fake μ they define.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::primes::factorize_u64;

/// The defining sequence `(ε_j)_{j≥1}` of a fake μ: a finite prefix followed by
/// a periodic tail.
///
/// Always stored in normal form (primitive period, no trailing copy of the
/// period in the prefix), so derived equality is equality of the infinite
/// sequences.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct EpsilonSequence {
    prefix: Vec<i8>,
    period: Vec<i8>,
}

/// The type trichotomy of nontrivial fake μ's plus the two trivial families.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "kind")]
pub enum Classification {
    /// Indicator of `{1}`: every ε_j is zero.
    TrivialOne,
    /// Indicator of k-th powers: ε_j = 1 exactly when k | j.
    TrivialKthPowers { k: usize },
    /// ε at the initial index k equals −1.
    MobiusType { k: usize },
    /// ε_1 = 1; k is the smallest index with ε_k ≠ 1.
    PowerfreeType { k: usize },
    /// Initial index k ≥ 2 with ε_k = 1.
    PowerfullType { k: usize },
}

impl Classification {
    pub fn is_trivial(&self) -> bool {
        matches!(
            self,
            Classification::TrivialOne | Classification::TrivialKthPowers { .. }
        )
    }

    pub fn name(&self) -> &'static str {
        match self {
            Classification::TrivialOne => "TrivialOne",
            Classification::TrivialKthPowers { .. } => "TrivialKthPowers",
            Classification::MobiusType { .. } => "MobiusType",
            Classification::PowerfreeType { .. } => "PowerfreeType",
            Classification::PowerfullType { .. } => "PowerfullType",
        }
    }

    pub fn k(&self) -> Option<usize> {
        match *self {
            Classification::TrivialOne => None,
            Classification::TrivialKthPowers { k }
            | Classification::MobiusType { k }
            | Classification::PowerfreeType { k }
            | Classification::PowerfullType { k } => Some(k),
        }
    }
}

fn check_entry(v: i64) -> Result<i8> {
    match v {
        -1..=1 => Ok(v as i8),
        _ => Err(Error::InvalidEntry(v)),
    }
}

/// Builds a normalized [`EpsilonSequence`] from raw prefix and period lists.
pub fn normalize(prefix: &[i64], period: &[i64]) -> Result<EpsilonSequence> {
    let prefix = prefix
        .iter()
        .map(|&v| check_entry(v))
        .collect::<Result<Vec<_>>>()?;
    let period = period
        .iter()
        .map(|&v| check_entry(v))
        .collect::<Result<Vec<_>>>()?;
    EpsilonSequence::new(prefix, period)
}

impl EpsilonSequence {
    pub fn new(mut prefix: Vec<i8>, period: Vec<i8>) -> Result<Self> {
        if period.is_empty() {
            return Err(Error::EmptyPeriod);
        }
        for &v in prefix.iter().chain(period.iter()) {
            check_entry(v as i64)?;
        }
        let mut period = primitive_root(period);
        // Absorb trailing prefix entries into the period by rotating it.
        while let Some(&last) = prefix.last() {
            if last != *period.last().unwrap() {
                break;
            }
            prefix.pop();
            period.rotate_right(1);
        }
        Ok(Self { prefix, period })
    }

    /// Sequence with `ε_j = f(j)` for `j ≤ len` and zero afterwards.
    pub fn finite<F: Fn(usize) -> i8>(len: usize, f: F) -> Result<Self> {
        Self::new((1..=len).map(f).collect(), vec![0])
    }

    pub fn prefix(&self) -> &[i8] {
        &self.prefix
    }

    pub fn period(&self) -> &[i8] {
        &self.period
    }

    /// Length of the window `prefix + period` on which every decidable
    /// question about the sequence can be answered.
    pub fn window(&self) -> usize {
        self.prefix.len() + self.period.len()
    }

    /// ε_j for `j ≥ 1`, with the convention ε_0 = 1.
    pub fn at(&self, j: usize) -> i8 {
        if j == 0 {
            return 1;
        }
        let i = j - 1;
        if i < self.prefix.len() {
            self.prefix[i]
        } else {
            self.period[(i - self.prefix.len()) % self.period.len()]
        }
    }

    /// ε_j extended to all integers: ε_0 = 1 and ε_j = 0 for j < 0.
    pub fn at_signed(&self, j: i64) -> i8 {
        if j < 0 {
            0
        } else {
            self.at(j as usize)
        }
    }

    /// Smallest j with ε_j ≠ 0, if any.
    pub fn initial_index(&self) -> Option<usize> {
        (1..=self.window()).find(|&j| self.at(j) != 0)
    }

    pub fn is_all_zero(&self) -> bool {
        self.prefix
            .iter()
            .chain(self.period.iter())
            .all(|&v| v == 0)
    }

    pub fn classify(&self) -> Classification {
        if self.is_all_zero() {
            return Classification::TrivialOne;
        }
        for k in 1..=self.window() {
            if self.prefix.is_empty() && self.period.len() == k {
                let indicator = (1..=k).all(|j| self.at(j) == if j == k { 1 } else { 0 });
                if indicator {
                    return Classification::TrivialKthPowers { k };
                }
            }
        }
        let k = self
            .initial_index()
            .expect("nonzero sequence has an initial index");
        if self.at(k) == -1 {
            return Classification::MobiusType { k };
        }
        if k == 1 {
            // Not the all-ones sequence (that is TrivialKthPowers(1)), so a
            // non-one entry exists inside the window.
            let k = (1..=self.window())
                .find(|&j| self.at(j) != 1)
                .expect("non-constant sequence");
            return Classification::PowerfreeType { k };
        }
        Classification::PowerfullType { k }
    }

    /// f(n) = ∏_{p^e ∥ n} ε_e.
    pub fn evaluate(&self, n: u64) -> Result<i8> {
        if n == 0 {
            return Err(Error::OutOfRange("evaluate requires n >= 1".into()));
        }
        let mut v = 1i8;
        for (_, e) in factorize_u64(n) {
            v *= self.at(e as usize);
            if v == 0 {
                break;
            }
        }
        Ok(v)
    }

    /// Table of ε_e for `0 ≤ e ≤ 64`, enough for every exponent of a `u64`.
    pub fn exponent_table(&self) -> [i8; 65] {
        let mut t = [0i8; 65];
        for (e, slot) in t.iter_mut().enumerate() {
            *slot = self.at(e);
        }
        t
    }
}

impl std::fmt::Display for EpsilonSequence {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let join = |v: &[i8]| {
            v.iter()
                .map(|x| x.to_string())
                .collect::<Vec<_>>()
                .join(",")
        };
        write!(
            f,
            "prefix=[{}];period=[{}]",
            join(&self.prefix),
            join(&self.period)
        )
    }
}

fn primitive_root(period: Vec<i8>) -> Vec<i8> {
    let n = period.len();
    for d in 1..=n {
        if n.is_multiple_of(d) && (d..n).all(|i| period[i] == period[i - d]) {
            return period[..d].to_vec();
        }
    }
    period
}
