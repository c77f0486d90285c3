//! Partial zeta-factorization `D_f(s) = ∏_{j≤2ℓ} ζ(js)^{a_j} · U(s)`.

use serde::ser::{SerializeMap, Serializer};
use serde::Serialize;

use super::algorithm::{run_algorithm1_capped, DEFAULT_CAP};
use super::local::{add, mul, mul_one_minus, mul_power, sub, LocalFactor};
use crate::error::{Error, Result};
use crate::scalar::Coefficient;
use crate::sequence::{Classification, EpsilonSequence};

/// Coefficient bound `|η_j| ≤ (A·j)^B` for the residual factor.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct TailBound {
    #[serde(rename = "A")]
    pub a: f64,
    #[serde(rename = "B")]
    pub b: f64,
}

impl TailBound {
    /// Checks `|v| ≤ (A·j)^B` in log space.
    pub fn admits<C: Coefficient>(&self, j: usize, v: &C) -> bool {
        if v.is_zero() {
            return true;
        }
        log_abs(v) <= self.b * (self.a * j as f64).ln() + 1e-9
    }
}

/// Natural log of `|v|` for any coefficient size.
pub(crate) fn log_abs<C: Coefficient>(v: &C) -> f64 {
    if let Some(f) = v.to_f64() {
        if f.is_finite() {
            return f.abs().ln();
        }
    }
    let s = v.abs().to_string();
    let lead: f64 = s[..15.min(s.len())].parse().unwrap_or(1.0);
    lead.ln() + (s.len() - 15.min(s.len())) as f64 * std::f64::consts::LN_10
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct FactorOptions {
    /// Truncation order; `None` selects `max(2ℓ+16, 64)`. Always raised to at
    /// least `2ℓ+8`.
    pub j_max: Option<usize>,
    /// Largest admissible critical index.
    pub cap: usize,
}

impl Default for FactorOptions {
    fn default() -> Self {
        Self {
            j_max: None,
            cap: DEFAULT_CAP,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ZetaFactorization<C: Coefficient> {
    source: EpsilonSequence,
    classification: Classification,
    critical_index: usize,
    principal_indices: Vec<usize>,
    exponents: Vec<C>,
    residual: LocalFactor<C>,
    tail_bound: TailBound,
}

/// Critical index, principal indices and `n_ℓ` (absent for Möbius-type).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IndexData {
    pub critical_index: usize,
    pub principal_indices: Vec<usize>,
    pub n_ell: Option<u64>,
}

pub fn index_data(eps: &EpsilonSequence, cap: usize) -> Result<IndexData> {
    match eps.classify() {
        Classification::MobiusType { k } => {
            if k > cap {
                return Err(Error::CriticalIndexCap(cap));
            }
            Ok(IndexData {
                critical_index: k,
                principal_indices: Vec::new(),
                n_ell: None,
            })
        }
        Classification::PowerfreeType { .. } | Classification::PowerfullType { .. } => {
            let out = run_algorithm1_capped(eps, cap)?;
            Ok(IndexData {
                critical_index: out.critical_index,
                principal_indices: out.principal_indices,
                n_ell: Some(out.n_ell),
            })
        }
        other => Err(Error::Unsupported(format!(
            "{} has no critical index",
            other.name()
        ))),
    }
}

/// Truncation order actually used for a given request.
pub fn effective_j_max(ell: usize, requested: Option<usize>) -> usize {
    requested
        .unwrap_or_else(|| (2 * ell + 16).max(64))
        .max(2 * ell + 8)
}

/// Exponents `a_1..a_upto` (index 0 unused) and the remaining local factor,
/// by repeated one-step elimination starting from the ε-series.
pub fn elimination_path<C: Coefficient>(
    eps: &EpsilonSequence,
    upto: usize,
    j_max: usize,
) -> Result<(Vec<C>, LocalFactor<C>)> {
    let mut local = LocalFactor::<C>::from_eps(eps, j_max);
    let mut exps = vec![C::zero(); upto + 1];
    while local.start() <= upto {
        let t = local.start();
        let (e, next) = local.eliminate()?;
        exps[t] = e;
        local = next;
    }
    if local.start() != upto + 1 {
        local = LocalFactor::from_series(upto + 1, local.series().to_vec());
    }
    Ok((exps, local))
}

/// Coefficients `q_0..q_len` of `∏ (1 − X^{c})` over `parts`.
fn signed_subset_poly(parts: &[usize], len: usize) -> Vec<i64> {
    let mut q = vec![0i64; len + 1];
    q[0] = 1;
    for &c in parts {
        for j in (c..=len).rev() {
            q[j] -= q[j - c];
        }
    }
    q
}

/// Exponents `a_1..a_{2ℓ}` from the closed formulas: `a_j = ε_j` on
/// `k ≤ j ≤ 2k` for Möbius-type, the inclusion–exclusion formula after
/// dividing out the principal zetas otherwise.
pub fn closed_form_exponents<C: Coefficient>(
    eps: &EpsilonSequence,
    idx: &IndexData,
) -> Result<Vec<C>> {
    let ell = idx.critical_index;
    let mut a = vec![C::zero(); 2 * ell + 1];
    match idx.n_ell {
        None => {
            for (j, slot) in a.iter_mut().enumerate().skip(ell) {
                *slot = C::of(eps.at(j) as i64);
            }
        }
        Some(n_ell) => {
            for &c in &idx.principal_indices {
                a[c] = C::one();
            }
            let d = C::of(eps.at(ell) as i64 - n_ell as i64);
            a[ell] = d.clone();
            let q = signed_subset_poly(&idx.principal_indices, 2 * ell);
            let theta = |j: usize| -> i64 { (0..=j).map(|i| q[i] * eps.at(j - i) as i64).sum() };
            for (j, slot) in a.iter_mut().enumerate().take(2 * ell).skip(ell + 1) {
                *slot = C::of(theta(j));
            }
            let corr = add(&mul(&d, &d)?, &d)? / C::of(2);
            a[2 * ell] = sub(&C::of(theta(2 * ell)), &corr)?;
        }
    }
    Ok(a)
}

/// `series ← series · (1 − X^t)^e` through the generalized binomial series
/// `Σ_m (−1)^m C(e, m) X^{tm}`.
pub(crate) fn mul_binomial<C: Coefficient>(series: &[C], t: usize, e: &C) -> Result<Vec<C>> {
    let len = series.len();
    let mut d = vec![C::one()];
    let mut m = 0usize;
    while t * (m + 1) < len {
        let next = mul(&d[m], &sub(&C::of(m as i64), e)?)? / C::of(m as i64 + 1);
        d.push(next);
        m += 1;
    }
    let mut out = vec![C::zero(); len];
    for (j, slot) in out.iter_mut().enumerate() {
        let mut acc = C::zero();
        for (m, dm) in d.iter().enumerate() {
            if t * m > j {
                break;
            }
            if !dm.is_zero() && !series[j - t * m].is_zero() {
                acc = add(&acc, &mul(dm, &series[j - t * m])?)?;
            }
        }
        *slot = acc;
    }
    Ok(out)
}

/// The ε-series times `∏ (1 − X^j)^{a_j}`, expanded with binomial series.
pub fn residual_series<C: Coefficient>(
    eps: &EpsilonSequence,
    exponents: &[C],
    j_max: usize,
) -> Result<Vec<C>> {
    let mut series: Vec<C> = (0..=j_max).map(|j| C::of(eps.at(j) as i64)).collect();
    for (j, a) in exponents.iter().enumerate().skip(1) {
        if !a.is_zero() {
            series = mul_binomial(&series, j, a)?;
        }
    }
    Ok(series)
}

fn tail_bound_for(class: Classification, ell: usize, m: usize) -> TailBound {
    match class {
        Classification::MobiusType { k } => TailBound {
            a: 2.0,
            b: 2.0 * (k as f64 + 1.0),
        },
        _ => TailBound {
            a: 2f64.powi(3 * m as i32 + 2),
            b: 4f64.powi(m as i32 + 1) * (ell as f64 + 1.0),
        },
    }
}

/// Factorizes `D_f` for a nontrivial ε-sequence, cross-checking the
/// elimination path against the closed formulas.
pub fn factorize<C: Coefficient>(
    eps: &EpsilonSequence,
    j_max: Option<usize>,
) -> Result<ZetaFactorization<C>> {
    factorize_with(
        eps,
        &FactorOptions {
            j_max,
            ..FactorOptions::default()
        },
    )
}

pub fn factorize_with<C: Coefficient>(
    eps: &EpsilonSequence,
    opts: &FactorOptions,
) -> Result<ZetaFactorization<C>> {
    let classification = eps.classify();
    let idx = index_data(eps, opts.cap)?;
    let ell = idx.critical_index;
    let j_max = effective_j_max(ell, opts.j_max);

    let (exps, residual) = elimination_path::<C>(eps, 2 * ell, j_max)?;
    let first_negative = (1..=2 * ell).find(|&j| exps[j].is_negative());
    if first_negative != Some(ell) {
        return Err(Error::Consistency(format!(
            "elimination gives first negative exponent at {first_negative:?}, expected {ell}"
        )));
    }
    let principal: Vec<usize> = (1..ell).filter(|&j| exps[j].is_positive()).collect();
    if principal != idx.principal_indices && idx.n_ell.is_some() {
        return Err(Error::Consistency(format!(
            "elimination gives principal indices {principal:?}, expected {:?}",
            idx.principal_indices
        )));
    }

    let closed = closed_form_exponents::<C>(eps, &idx)?;
    if closed != exps {
        let j = (1..=2 * ell).find(|&j| closed[j] != exps[j]).unwrap_or(0);
        return Err(Error::Consistency(format!(
            "exponent a_{j}: elimination {} vs closed form {}",
            exps[j], closed[j]
        )));
    }
    let series = residual_series(eps, &closed, j_max)?;
    if series.as_slice() != residual.series() {
        let j = (0..=j_max)
            .find(|&j| series[j] != residual.series()[j])
            .unwrap_or(0);
        return Err(Error::Consistency(format!(
            "residual coefficient {j}: elimination {} vs closed form {}",
            residual.series()[j],
            series[j]
        )));
    }

    Ok(ZetaFactorization {
        source: eps.clone(),
        classification,
        critical_index: ell,
        tail_bound: tail_bound_for(classification, ell, principal.len()),
        principal_indices: principal,
        exponents: exps,
        residual,
    })
}

impl<C: Coefficient> ZetaFactorization<C> {
    pub fn source(&self) -> &EpsilonSequence {
        &self.source
    }

    pub fn classification(&self) -> Classification {
        self.classification
    }

    pub fn critical_index(&self) -> usize {
        self.critical_index
    }

    pub fn principal_indices(&self) -> &[usize] {
        &self.principal_indices
    }

    /// `a_j` for `1 ≤ j ≤ 2ℓ`, zero elsewhere.
    pub fn exponent(&self, j: usize) -> C {
        self.exponents.get(j).cloned().unwrap_or_else(C::zero)
    }

    /// `(j, a_j)` for every nonzero exponent.
    pub fn nonzero_exponents(&self) -> Vec<(usize, C)> {
        (1..self.exponents.len())
            .filter(|&j| !self.exponents[j].is_zero())
            .map(|j| (j, self.exponents[j].clone()))
            .collect()
    }

    /// Local factor of `U`, starting at `2ℓ + 1`.
    pub fn residual(&self) -> &LocalFactor<C> {
        &self.residual
    }

    pub fn j_max(&self) -> usize {
        self.residual.j_max()
    }

    pub fn tail_bound(&self) -> TailBound {
        self.tail_bound
    }

    /// Copy with `a_j` replaced; the residual is left untouched, so the result
    /// is generally not a valid factorization.
    pub fn with_exponent(mut self, j: usize, a: C) -> Self {
        if j >= self.exponents.len() {
            self.exponents.resize(j + 1, C::zero());
        }
        self.exponents[j] = a;
        self
    }

    /// Whether every stored residual coefficient satisfies the tail bound.
    pub fn tail_bound_holds(&self) -> bool {
        self.residual
            .nonzero()
            .iter()
            .all(|(j, v)| self.tail_bound.admits(*j, v))
    }

    /// Continues the elimination through `upto ≤ j_max`: returns all
    /// exponents `a_1..a_upto` and the remaining local factor.
    pub fn extend(&self, upto: usize) -> Result<(Vec<C>, LocalFactor<C>)> {
        let upto = upto.min(self.j_max());
        let mut exps = self.exponents.clone();
        exps.resize(upto.max(2 * self.critical_index) + 1, C::zero());
        let mut local = self.residual.clone();
        while local.start() <= upto {
            let t = local.start();
            let (e, next) = local.eliminate()?;
            exps[t] = e;
            local = next;
        }
        Ok((exps, local))
    }

    /// Whether `U ≡ 1` exactly (not just up to `j_max`).
    ///
    /// Writes the ε-series as `N(X)/(1 − X^P)` and checks the polynomial
    /// identity `N·∏_{a_j>0}(1−X^j)^{a_j} = (1−X^P)·∏_{a_j<0}(1−X^j)^{−a_j}`.
    pub fn residual_is_one(&self) -> Result<bool> {
        if !self.residual.is_one() {
            return Ok(false);
        }
        let prefix = self.source.prefix();
        let period = self.source.period();
        let (a, p) = (prefix.len(), period.len());
        let mut deg_pos = 0usize;
        let mut deg_neg = 0usize;
        for (j, e) in self.nonzero_exponents() {
            let m = e.abs().to_usize().ok_or(Error::Overflow)?;
            if e.is_positive() {
                deg_pos += j * m;
            } else {
                deg_neg += j * m;
            }
        }
        let len = (a + p + deg_pos).max(p + deg_neg) + 1;
        let mut lhs = vec![C::zero(); len];
        lhs[0] = C::one();
        for (i, &v) in prefix.iter().enumerate() {
            lhs[i + 1] = C::of(v as i64);
        }
        // (1 + Σ prefix)(1 − X^P) + X^a Σ period
        let mut n = lhs.clone();
        mul_one_minus(&mut n, p)?;
        for (i, &v) in period.iter().enumerate() {
            n[a + i + 1] = add(&n[a + i + 1], &C::of(v as i64))?;
        }
        let mut rhs = vec![C::zero(); len];
        rhs[0] = C::one();
        mul_one_minus(&mut rhs, p)?;
        for (j, e) in self.nonzero_exponents() {
            if e.is_positive() {
                mul_power(&mut n, j, &e)?;
            } else {
                for _ in 0..e.abs().to_usize().ok_or(Error::Overflow)? {
                    mul_one_minus(&mut rhs, j)?;
                }
            }
        }
        Ok(n == rhs)
    }
}

/// Integer serialized as a JSON number when it fits in `i64`, else a string.
pub(crate) struct JsonInt<'a, C: Coefficient>(pub &'a C);

impl<C: Coefficient> Serialize for JsonInt<'_, C> {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self.0.to_i64() {
            Some(v) => s.serialize_i64(v),
            None => s.serialize_str(&self.0.to_string()),
        }
    }
}

#[derive(Serialize)]
#[serde(bound = "")]
struct ExpEntry<'a, C: Coefficient> {
    j: usize,
    a: JsonInt<'a, C>,
}

#[derive(Serialize)]
#[serde(bound = "")]
struct EtaEntry<'a, C: Coefficient> {
    j: usize,
    eta: JsonInt<'a, C>,
}

impl<C: Coefficient> Serialize for ZetaFactorization<C> {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut map = s.serialize_map(Some(6))?;
        map.serialize_entry("critical_index", &self.critical_index)?;
        map.serialize_entry("principal_indices", &self.principal_indices)?;
        let exps: Vec<_> = (1..self.exponents.len())
            .filter(|&j| !self.exponents[j].is_zero())
            .map(|j| ExpEntry {
                j,
                a: JsonInt(&self.exponents[j]),
            })
            .collect();
        map.serialize_entry("exponents", &exps)?;
        let series = self.residual.series();
        let res: Vec<_> = (1..series.len())
            .filter(|&j| !series[j].is_zero())
            .map(|j| EtaEntry {
                j,
                eta: JsonInt(&series[j]),
            })
            .collect();
        map.serialize_entry("residual", &res)?;
        map.serialize_entry("tail_bound", &self.tail_bound)?;
        map.serialize_entry("j_max", &self.j_max())?;
        map.end()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sequence::normalize;
    use num_bigint::BigInt;

    fn exps(fz: &ZetaFactorization<i64>) -> Vec<(usize, i64)> {
        fz.nonzero_exponents()
    }

    #[test]
    fn squarefull() {
        let fz = factorize::<i64>(&normalize(&[0], &[1]).unwrap(), None).unwrap();
        assert_eq!(exps(&fz), vec![(2, 1), (3, 1), (6, -1)]);
        assert!(fz.residual().is_one());
        assert!(fz.residual_is_one().unwrap());
        assert_eq!(fz.j_max(), 64);
    }

    #[test]
    fn mobius() {
        let fz = factorize::<i64>(&normalize(&[-1], &[0]).unwrap(), None).unwrap();
        assert_eq!(exps(&fz), vec![(1, -1)]);
        assert!(fz.residual_is_one().unwrap());
        assert_eq!(fz.tail_bound(), TailBound { a: 2.0, b: 4.0 });
    }

    #[test]
    fn apostol2() {
        let fz = factorize::<i64>(&normalize(&[1, -1], &[0]).unwrap(), None).unwrap();
        assert_eq!(exps(&fz), vec![(1, 1), (2, -2), (3, 1), (4, -1)]);
        assert!(!fz.residual_is_one().unwrap());
        assert!(fz.tail_bound_holds());
    }

    #[test]
    fn residual_one_detects_truncation_artifacts() {
        // ζ(s)/ζ(2s) residual vanishes identically.
        let fz = factorize::<i64>(&normalize(&[1], &[0]).unwrap(), Some(20)).unwrap();
        assert!(fz.residual_is_one().unwrap());
        // Liouville: 1/(1+X) = (1−X)/(1−X²), exactly ζ(2s)/ζ(s).
        let fz = factorize::<i64>(&normalize(&[], &[-1, 1]).unwrap(), None).unwrap();
        assert_eq!(exps(&fz), vec![(1, -1), (2, 1)]);
        assert!(fz.residual_is_one().unwrap());
    }

    #[test]
    fn generic_coefficients_agree() {
        let eps = normalize(&[0, 0, 0], &[1]).unwrap();
        let a = factorize::<i64>(&eps, None).unwrap();
        let b = factorize::<BigInt>(&eps, None).unwrap();
        let c = factorize::<i128>(&eps, None).unwrap();
        for j in 1..=2 * a.critical_index() {
            assert_eq!(BigInt::from(a.exponent(j)), b.exponent(j));
            assert_eq!(a.exponent(j) as i128, c.exponent(j));
        }
    }

    #[test]
    fn auto_grows_truncation() {
        let fz = factorize::<i64>(&normalize(&[0], &[1]).unwrap(), Some(3)).unwrap();
        assert_eq!(fz.j_max(), 20);
    }

    #[test]
    fn trivial_rejected() {
        assert!(factorize::<i64>(&normalize(&[], &[0]).unwrap(), None).is_err());
        assert!(factorize::<i64>(&normalize(&[], &[1]).unwrap(), None).is_err());
    }

    #[test]
    fn json_shape() {
        let fz = factorize::<i64>(&normalize(&[0], &[1]).unwrap(), None).unwrap();
        let v = serde_json::to_value(&fz).unwrap();
        assert_eq!(v["critical_index"], 6);
        assert_eq!(v["principal_indices"], serde_json::json!([2, 3]));
        assert_eq!(
            v["exponents"],
            serde_json::json!([{"j": 2, "a": 1}, {"j": 3, "a": 1}, {"j": 6, "a": -1}])
        );
        assert_eq!(v["residual"], serde_json::json!([]));
        assert_eq!(v["tail_bound"]["A"], 256.0);
    }
}
