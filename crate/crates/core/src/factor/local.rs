//! Truncated local power series `1 + Σ η_j X^j` at a generic prime
//! (`X = p^{-s}`) and the one-step elimination of `ζ(ts)^{η_t}`.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::scalar::Coefficient;
use crate::sequence::EpsilonSequence;

/// Local Euler factor truncated at `X^{j_max}`.
///
/// Coefficients below `start` (other than the constant 1) are zero.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(bound = "")]
pub struct LocalFactor<C: Coefficient> {
    start: usize,
    #[serde(skip)]
    coeffs: Vec<C>,
}

pub(crate) fn add<C: Coefficient>(a: &C, b: &C) -> Result<C> {
    a.checked_add(b).ok_or(Error::Overflow)
}

pub(crate) fn sub<C: Coefficient>(a: &C, b: &C) -> Result<C> {
    a.checked_sub(b).ok_or(Error::Overflow)
}

pub(crate) fn mul<C: Coefficient>(a: &C, b: &C) -> Result<C> {
    a.checked_mul(b).ok_or(Error::Overflow)
}

/// `series ← series · (1 − X^t)`, in place.
pub(crate) fn mul_one_minus<C: Coefficient>(series: &mut [C], t: usize) -> Result<()> {
    for j in (t..series.len()).rev() {
        let v = sub(&series[j], &series[j - t])?;
        series[j] = v;
    }
    Ok(())
}

/// `series ← series / (1 − X^t)`, in place (stride-`t` prefix sums).
pub(crate) fn div_one_minus<C: Coefficient>(series: &mut [C], t: usize) -> Result<()> {
    for j in t..series.len() {
        let v = add(&series[j], &series[j - t])?;
        series[j] = v;
    }
    Ok(())
}

/// Largest |exponent| handled by [`mul_power`].
pub(crate) const MAX_EXPONENT: u64 = 1 << 16;

/// `series ← series · (1 − X^t)^e` by repeated multiplication or division.
pub(crate) fn mul_power<C: Coefficient>(series: &mut [C], t: usize, e: &C) -> Result<()> {
    let times = e.abs().to_u64().ok_or(Error::Overflow)?;
    if times > MAX_EXPONENT {
        return Err(Error::Unsupported(format!(
            "zeta exponent {e} is too large"
        )));
    }
    for _ in 0..times {
        if e.is_positive() {
            mul_one_minus(series, t)?;
        } else {
            div_one_minus(series, t)?;
        }
    }
    Ok(())
}

impl<C: Coefficient> LocalFactor<C> {
    /// Builds a factor from `η_1..η_{j_max}`; `etas[0]` is `η_1`.
    pub fn new(etas: &[C]) -> Self {
        let mut coeffs = Vec::with_capacity(etas.len() + 1);
        coeffs.push(C::one());
        coeffs.extend_from_slice(etas);
        let start = first_nonzero(&coeffs, 1);
        Self { start, coeffs }
    }

    /// Builds a factor with an explicit start index; coefficients below it
    /// must vanish.
    pub fn with_start(start: usize, etas: &[C]) -> Result<Self> {
        let f = Self::new(etas);
        if start == 0 || f.start < start {
            return Err(Error::OutOfRange(format!(
                "coefficient below start index {start} is nonzero"
            )));
        }
        Ok(Self {
            start,
            coeffs: f.coeffs,
        })
    }

    /// Local factor `1 + Σ ε_j X^j` of a fake μ.
    pub fn from_eps(eps: &EpsilonSequence, j_max: usize) -> Self {
        let etas: Vec<C> = (1..=j_max).map(|j| C::of(eps.at(j) as i64)).collect();
        Self::new(&etas)
    }

    pub(crate) fn from_series(start: usize, coeffs: Vec<C>) -> Self {
        debug_assert!(coeffs[0].is_one());
        Self { start, coeffs }
    }

    pub fn start(&self) -> usize {
        self.start
    }

    pub fn j_max(&self) -> usize {
        self.coeffs.len() - 1
    }

    /// `η_j` (with `η_0 = 1`); zero beyond `j_max` is *not* implied, so this
    /// panics there.
    pub fn eta(&self, j: usize) -> &C {
        &self.coeffs[j]
    }

    /// The whole series `1, η_1, …, η_{j_max}`.
    pub fn series(&self) -> &[C] {
        &self.coeffs
    }

    /// Nonzero `(j, η_j)` pairs with `j ≥ 1`.
    pub fn nonzero(&self) -> Vec<(usize, C)> {
        self.coeffs
            .iter()
            .enumerate()
            .skip(1)
            .filter(|(_, v)| !v.is_zero())
            .map(|(j, v)| (j, v.clone()))
            .collect()
    }

    /// True when every stored coefficient past the constant term vanishes.
    pub fn is_one(&self) -> bool {
        self.coeffs.iter().skip(1).all(|v| v.is_zero())
    }

    /// Extract `ζ(ts)^{η_t}` with `t = start`, without the `2t` spot check.
    pub(crate) fn eliminate(&self) -> Result<(C, LocalFactor<C>)> {
        let t = self.start;
        if t > self.j_max() {
            return Ok((C::zero(), self.clone()));
        }
        let e = self.coeffs[t].clone();
        let mut next = self.coeffs.clone();
        mul_power(&mut next, t, &e)?;
        debug_assert!(next[t].is_zero());
        Ok((e, LocalFactor::from_series(t + 1, next)))
    }

    /// Returns `η_t` and the local factor of `A(s)·ζ(ts)^{-η_t}`, where `t` is
    /// the start index.
    ///
    /// Checks `η'_j = η_j` for `t < j < 2t` and
    /// `η'_{2t} = η_{2t} − (η_t² + η_t)/2` on the result.
    pub fn one_step_factor(&self) -> Result<(C, LocalFactor<C>)> {
        let t = self.start;
        if self.j_max() < 2 * t {
            return Err(Error::InsufficientTruncation {
                j_max: self.j_max(),
                needed: 2 * t,
            });
        }
        let (e, next) = self.eliminate()?;
        for j in t + 1..2 * t {
            if next.coeffs[j] != self.coeffs[j] {
                return Err(Error::Consistency(format!(
                    "coefficient {j} changed by eliminating index {t}"
                )));
            }
        }
        let sq = add(&mul(&e, &e)?, &e)?;
        let half = sq / C::of(2);
        let expect = sub(&self.coeffs[2 * t], &half)?;
        if next.coeffs[2 * t] != expect {
            return Err(Error::Consistency(format!(
                "coefficient {} after eliminating index {t} is {}, expected {}",
                2 * t,
                next.coeffs[2 * t],
                expect
            )));
        }
        Ok((e, next))
    }
}

fn first_nonzero<C: Coefficient>(coeffs: &[C], from: usize) -> usize {
    (from..coeffs.len())
        .find(|&j| !coeffs[j].is_zero())
        .unwrap_or(coeffs.len())
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;
    use num_traits::ToPrimitive;

    fn lf(v: &[i64]) -> LocalFactor<i64> {
        LocalFactor::new(v)
    }

    #[test]
    fn squarefree_step() {
        let f = lf(&[1, 0, 0, 0, 0, 0]);
        let (e, next) = f.one_step_factor().unwrap();
        assert_eq!(e, 1);
        assert_eq!(*next.eta(2), -1);
        assert_eq!(next.start(), 2);
        assert_eq!(next.series(), &[1, 0, -1, 0, 0, 0, 0]);
    }

    #[test]
    fn liouville_step() {
        let f = lf(&[-1, 1, -1, 1, -1, 1]);
        let (e, next) = f.one_step_factor().unwrap();
        assert_eq!(e, -1);
        assert_eq!(*next.eta(2), 1);
        // λ's local factor is 1/(1+X); times 1/(1−X) gives 1/(1−X²).
        assert_eq!(next.series(), &[1, 0, 1, 0, 1, 0, 1]);
    }

    #[test]
    fn zero_exponent_advances() {
        let f = LocalFactor::with_start(2, &[0i64, 0, 1, 1, 0, 0]).unwrap();
        let (e, next) = f.one_step_factor().unwrap();
        assert_eq!(e, 0);
        assert_eq!(next.start(), 3);
        assert_eq!(next.series(), f.series());
    }

    #[test]
    fn truncation_guard() {
        let f = LocalFactor::with_start(3, &[0i64, 0, 1, 1, 0]).unwrap();
        assert_eq!(
            f.one_step_factor(),
            Err(Error::InsufficientTruncation {
                j_max: 5,
                needed: 6
            })
        );
        assert!(LocalFactor::with_start(2, &[1i64, 0]).is_err());
    }

    #[test]
    fn bigint_matches_i64() {
        let v = [1i64, -1, 0, 1, 1, -1, 0, 1, -1, 0];
        let a = lf(&v).one_step_factor().unwrap().1;
        let big: Vec<BigInt> = v.iter().map(|&x| BigInt::from(x)).collect();
        let b = LocalFactor::new(&big).one_step_factor().unwrap().1;
        let b: Vec<i64> = b.series().iter().map(|x| x.to_i64().unwrap()).collect();
        assert_eq!(a.series(), b.as_slice());
    }

    #[test]
    fn overflow_is_reported() {
        let f = LocalFactor::new(&[3, i64::MAX, 0, 0, 0, 0]);
        assert_eq!(f.one_step_factor(), Err(Error::Overflow));
    }
}
