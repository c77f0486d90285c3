//! Segmented sieve for the values and partial sums of a fake μ.

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::primes::{isqrt, primes_up_to};
use crate::sequence::EpsilonSequence;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SieveConfig {
    /// Integers per segment.
    pub segment_len: usize,
    /// Largest admissible sieve bound.
    pub max_n: u64,
}

impl Default for SieveConfig {
    fn default() -> Self {
        Self {
            segment_len: 1 << 22,
            max_n: 10_000_000_000,
        }
    }
}

/// Sieve of `f(n)` for a fixed ε-sequence.
#[derive(Debug, Clone)]
pub struct Sieve {
    table: [i8; 65],
    config: SieveConfig,
}

impl Sieve {
    pub fn new(eps: &EpsilonSequence, config: SieveConfig) -> Self {
        Self {
            table: eps.exponent_table(),
            config,
        }
    }

    pub fn with_defaults(eps: &EpsilonSequence) -> Self {
        Self::new(eps, SieveConfig::default())
    }

    pub fn config(&self) -> SieveConfig {
        self.config
    }

    fn check_bound(&self, n: u64) -> Result<()> {
        if n > self.config.max_n {
            return Err(Error::Budget {
                requested: n,
                budget: self.config.max_n,
            });
        }
        Ok(())
    }

    /// `f(n)` for `lo ≤ n < hi`.
    pub fn values(&self, lo: u64, hi: u64) -> Result<Vec<i8>> {
        if lo == 0 {
            return Err(Error::OutOfRange("sieve range must start at n >= 1".into()));
        }
        if hi <= lo {
            return Ok(Vec::new());
        }
        self.check_bound(hi - 1)?;
        let primes = primes_up_to(isqrt(hi - 1));
        let seg = self.config.segment_len.max(1) as u64;
        let starts: Vec<u64> = (lo..hi).step_by(seg as usize).collect();
        let parts: Vec<Vec<i8>> = starts
            .par_iter()
            .map(|&a| self.segment(&primes, a, (a + seg).min(hi)))
            .collect();
        Ok(parts.concat())
    }

    /// Calls `cb(n, f(n), F(n))` for every `1 ≤ n ≤ n_max` in increasing order.
    pub fn for_each<C: FnMut(u64, i8, i64)>(&self, n_max: u64, mut cb: C) -> Result<()> {
        let mut total = 0i64;
        self.for_each_segment(n_max, |lo, vals| {
            for (i, &v) in vals.iter().enumerate() {
                total += v as i64;
                cb(lo + i as u64, v, total);
            }
        })
    }

    /// Streams `(lo, values)` blocks covering `1..=n_max` in increasing order.
    ///
    /// Segments are computed in parallel batches; delivery is sequential.
    pub fn for_each_segment<C: FnMut(u64, &[i8])>(&self, n_max: u64, mut cb: C) -> Result<()> {
        if n_max == 0 {
            return Ok(());
        }
        self.check_bound(n_max)?;
        let primes = primes_up_to(isqrt(n_max));
        let seg = self.config.segment_len.max(1) as u64;
        let batch = rayon::current_num_threads().max(1) as u64;
        let mut lo = 1u64;
        while lo <= n_max {
            let starts: Vec<u64> = (0..batch)
                .map(|i| lo + i * seg)
                .filter(|&a| a <= n_max)
                .collect();
            let blocks: Vec<(u64, Vec<i8>)> = starts
                .par_iter()
                .map(|&a| (a, self.segment(&primes, a, (a + seg).min(n_max + 1))))
                .collect();
            for (a, vals) in &blocks {
                cb(*a, vals);
            }
            lo = starts.last().unwrap() + seg;
        }
        Ok(())
    }

    /// `F(x)` for each sample `x` (any order, duplicates allowed).
    pub fn summatory_at(&self, n_max: u64, samples: &[u64]) -> Result<Vec<i64>> {
        let mut order: Vec<usize> = (0..samples.len()).collect();
        order.sort_by_key(|&i| samples[i]);
        for &x in samples {
            if x > n_max {
                return Err(Error::OutOfRange(format!(
                    "sample {x} exceeds n_max {n_max}"
                )));
            }
        }
        let mut out = vec![0i64; samples.len()];
        let mut next = 0;
        let mut total = 0i64;
        self.for_each_segment(n_max, |lo, vals| {
            let hi = lo + vals.len() as u64;
            let mut i = 0usize;
            while next < order.len() && samples[order[next]] < hi {
                let x = samples[order[next]];
                if x >= lo {
                    let upto = (x - lo + 1) as usize;
                    total += vals[i..upto].iter().map(|&v| v as i64).sum::<i64>();
                    i = upto;
                }
                out[order[next]] = total;
                next += 1;
            }
            total += vals[i..].iter().map(|&v| v as i64).sum::<i64>();
        })?;
        Ok(out)
    }

    /// `F(x) = Σ_{n ≤ x} f(n)`.
    pub fn summatory(&self, x: u64) -> Result<i64> {
        Ok(self.summatory_at(x, &[x])?[0])
    }

    fn segment(&self, primes: &[u64], lo: u64, hi: u64) -> Vec<i8> {
        let len = (hi - lo) as usize;
        let eps1 = self.table[1];
        let mut vals = vec![1i8; len];
        // Product of the prime powers found so far; a shortfall at the end
        // means one prime factor above the base primes, with exponent 1.
        let mut prod = vec![1u64; len];
        let mut exp = vec![0u8; len];
        let first = |m: u64| -> usize { (lo.div_ceil(m) * m - lo) as usize };
        for &p in primes {
            if p * p >= hi {
                let mut i = first(p);
                while i < len {
                    vals[i] *= eps1;
                    prod[i] *= p;
                    i += p as usize;
                }
                continue;
            }
            let mut pk = p;
            loop {
                let mut i = first(pk);
                while i < len {
                    exp[i] += 1;
                    prod[i] *= p;
                    i += pk as usize;
                }
                match pk.checked_mul(p) {
                    Some(v) if v < hi => pk = v,
                    _ => break,
                }
            }
            let mut i = first(p);
            while i < len {
                vals[i] *= self.table[exp[i] as usize];
                exp[i] = 0;
                i += p as usize;
            }
        }
        for (i, n) in (lo..hi).enumerate() {
            if prod[i] != n {
                vals[i] *= eps1;
            }
        }
        vals
    }
}

/// `F(x)` by a one-shot sieve with default configuration.
pub fn sieve_summatory(eps: &EpsilonSequence, x: u64) -> Result<i64> {
    Sieve::with_defaults(eps).summatory(x)
}
