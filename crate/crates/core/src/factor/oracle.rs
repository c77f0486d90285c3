//! Exact Dirichlet coefficients of a factorization, used to verify it
//! against the fake μ it came from.

use serde::Serialize;

use super::factorization::ZetaFactorization;
use super::local::{add, mul, sub};
use crate::error::{Error, Result};
use crate::scalar::Coefficient;
use crate::sequence::EpsilonSequence;
use crate::sieve::{Sieve, SieveConfig};

/// Largest `N` accepted by the coefficient oracle.
pub const ORACLE_MAX_N: u64 = 10_000_000;

/// Smallest prime factor table for `0..=n`.
fn spf_table(n: usize) -> Vec<u32> {
    let mut spf = vec![0u32; n + 1];
    for i in 2..=n {
        if spf[i] == 0 {
            let mut m = i;
            while m <= n {
                if spf[m] == 0 {
                    spf[m] = i as u32;
                }
                m += i;
            }
        }
    }
    spf
}

/// Values `g(1..=n)` of the multiplicative function with `g(p^e) = local(e)`;
/// `None` from `local` marks an unknown value, reported through the mask.
fn multiplicative<C: Coefficient>(
    spf: &[u32],
    n: usize,
    local: &dyn Fn(usize) -> Option<C>,
) -> Result<(Vec<C>, Vec<bool>)> {
    let mut vals = vec![C::zero(); n + 1];
    let mut unknown = vec![false; n + 1];
    if n >= 1 {
        vals[1] = C::one();
    }
    for i in 2..=n {
        let p = spf[i] as usize;
        let mut m = i;
        let mut e = 0;
        while m % p == 0 {
            m /= p;
            e += 1;
        }
        match local(e) {
            Some(v) => {
                unknown[i] = unknown[m];
                vals[i] = mul(&v, &vals[m])?;
            }
            None => unknown[i] = true,
        }
    }
    Ok((vals, unknown))
}

/// Coefficients of `(1 − X)^{−a}`: `g_0 = 1`, `g_{e+1} = g_e (a + e)/(e + 1)`.
fn divisor_power_coeffs<C: Coefficient>(a: &C, len: usize) -> Result<Vec<C>> {
    let mut g = vec![C::one()];
    for e in 0..len {
        let num = add(a, &C::of(e as i64))?;
        let next = mul(&g[e], &num)? / C::of(e as i64 + 1);
        g.push(next);
    }
    Ok(g)
}

fn check_budget(n: u64) -> Result<()> {
    if n > ORACLE_MAX_N {
        return Err(Error::Budget {
            requested: n,
            budget: ORACLE_MAX_N,
        });
    }
    Ok(())
}

/// Coefficients and an "unknown" mask for `n ≤ N`. A coefficient is unknown
/// when `n` has a prime power beyond the residual's truncation order.
fn coefficients_masked<C: Coefficient>(
    fz: &ZetaFactorization<C>,
    n: usize,
) -> Result<(Vec<C>, Vec<bool>)> {
    let spf = spf_table(n);
    let series = fz.residual().series();
    let j_max = fz.j_max();
    let (mut acc, unknown) =
        multiplicative::<C>(&spf, n, &|e| (e <= j_max).then(|| series[e].clone()))?;

    for (j, a) in fz.nonzero_exponents() {
        // ζ(js)^a: coefficient d_a(m) at m^j.
        let mut roots = Vec::new();
        let mut m = 1usize;
        while let Some(mj) = m.checked_pow(j as u32).filter(|&v| v <= n) {
            roots.push(mj);
            m += 1;
        }
        let g = divisor_power_coeffs(&a, 64)?;
        let (d, _) = multiplicative::<C>(&spf, roots.len(), &|e| Some(g[e].clone()))?;
        let mut out = vec![C::zero(); n + 1];
        for (idx, &mj) in roots.iter().enumerate() {
            let dm = &d[idx + 1];
            if dm.is_zero() {
                continue;
            }
            for q in 1..=n / mj {
                if !acc[q].is_zero() {
                    out[q * mj] = add(&out[q * mj], &mul(dm, &acc[q])?)?;
                }
            }
        }
        acc = out;
    }
    Ok((acc, unknown))
}

/// Dirichlet coefficients of `∏ ζ(js)^{a_j} · U(s)` for `n ≤ N`; entry `n`
/// of the result holds the coefficient of `n^{-s}` (entry 0 is unused).
pub fn coefficients_of_factorization<C: Coefficient>(
    fz: &ZetaFactorization<C>,
    n: u64,
) -> Result<Vec<C>> {
    check_budget(n)?;
    if fz.j_max() < 63 && n >= 1u64 << (fz.j_max() + 1) {
        return Err(Error::OutOfRange(format!(
            "N = {n} reaches 2^{} where the truncated residual is incomplete",
            fz.j_max() + 1
        )));
    }
    Ok(coefficients_masked(fz, n as usize)?.0)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct VerificationReport {
    pub ok: bool,
    pub first_mismatch: Option<u64>,
    pub checked_up_to: u64,
    /// Count of `n` skipped because of the residual truncation.
    pub skipped: u64,
    pub note: Option<String>,
}

/// Compares the factorization's coefficients with `f(n)` for `n ≤ N`.
pub fn verify_factorization<C: Coefficient>(
    eps: &EpsilonSequence,
    fz: &ZetaFactorization<C>,
    n: u64,
) -> Result<VerificationReport> {
    check_budget(n)?;
    if n == 0 {
        return Ok(VerificationReport {
            ok: true,
            first_mismatch: None,
            checked_up_to: 0,
            skipped: 0,
            note: None,
        });
    }
    let (coeffs, unknown) = coefficients_masked(fz, n as usize)?;
    let sieve = Sieve::new(
        eps,
        SieveConfig {
            segment_len: 1 << 16,
            max_n: ORACLE_MAX_N,
        },
    );
    let f = sieve.values(1, n + 1)?;
    let mut skipped = 0;
    let mut first_mismatch = None;
    for i in 1..=n as usize {
        if unknown[i] {
            skipped += 1;
            continue;
        }
        let expect = C::of(f[i - 1] as i64);
        if sub(&coeffs[i], &expect)? != C::zero() {
            first_mismatch = Some(i as u64);
            break;
        }
    }
    let note = (skipped > 0).then(|| {
        format!(
            "skipped {skipped} values of n divisible by a prime power beyond exponent {}",
            fz.j_max()
        )
    });
    Ok(VerificationReport {
        ok: first_mismatch.is_none(),
        first_mismatch,
        checked_up_to: n,
        skipped,
        note,
    })
}
