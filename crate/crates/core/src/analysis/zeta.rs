//! Riemann zeta by Euler–Maclaurin summation.

use std::sync::OnceLock;

use num_complex::Complex;

use super::dd::{Cdd, Dd};
use crate::error::{Error, Result};
use crate::scalar::Real;

/// Number of Bernoulli correction terms.
pub const EM_ORDER: usize = 12;
/// Minimum number of directly summed terms.
pub const EM_TERMS: usize = 40;

/// `B_{2k}` as (numerator, denominator) for `k = 1..=12`.
const BERNOULLI: [(f64, f64); EM_ORDER] = [
    (1.0, 6.0),
    (-1.0, 30.0),
    (1.0, 42.0),
    (-1.0, 30.0),
    (5.0, 66.0),
    (-691.0, 2730.0),
    (7.0, 6.0),
    (-3617.0, 510.0),
    (43867.0, 798.0),
    (-174611.0, 330.0),
    (854513.0, 138.0),
    (-236364091.0, 2730.0),
];

/// `B_{2k}/(2k)!` in double-double.
fn bernoulli_dd() -> &'static [Dd; EM_ORDER] {
    static TABLE: OnceLock<[Dd; EM_ORDER]> = OnceLock::new();
    TABLE.get_or_init(|| {
        let mut out = [Dd::ZERO; EM_ORDER];
        let mut fact = Dd::ONE;
        for (k, slot) in out.iter_mut().enumerate() {
            let m = 2 * (k + 1);
            fact = fact * Dd::new((m - 1) as f64) * Dd::new(m as f64);
            let (num, den) = BERNOULLI[k];
            *slot = Dd::new(num) / (Dd::new(den) * fact);
        }
        out
    })
}

fn ln_dd(n: usize) -> Dd {
    static TABLE: OnceLock<Vec<Dd>> = OnceLock::new();
    let table = TABLE.get_or_init(|| {
        (0..=1024)
            .map(|n| {
                if n == 0 {
                    Dd::ZERO
                } else {
                    Dd::new(n as f64).ln()
                }
            })
            .collect()
    });
    table
        .get(n)
        .copied()
        .unwrap_or_else(|| Dd::new(n as f64).ln())
}

fn truncation(t: f64) -> usize {
    EM_TERMS.max(t.abs().ceil() as usize)
}

fn check_pole(sr: f64, si: f64) -> Result<()> {
    if sr == 1.0 && si == 0.0 {
        return Err(Error::Pole("1".into()));
    }
    if !(sr.is_finite() && si.is_finite()) {
        return Err(Error::Numerical(format!("non-finite argument {sr}+{si}i")));
    }
    Ok(())
}

/// `n^{-s}` in double-double.
fn npow_dd(n: usize, s_re: Dd, s_im: Dd) -> Cdd {
    let l = ln_dd(n);
    let mag = (-(s_re * l)).exp();
    let (sin, cos) = (s_im * l).sin_cos();
    Cdd::new(mag * cos, -(mag * sin))
}

/// ζ(s) computed internally in double-double precision.
///
/// Relative error stays near the precision of `T` even close to zeros on the
/// critical line; intended for `Re(s) > −2` and moderate `|Im(s)|`.
pub fn zeta<T: Real>(s: Complex<T>) -> Result<Complex<T>> {
    let sr = s.re.to_f64().unwrap();
    let si = s.im.to_f64().unwrap();
    check_pole(sr, si)?;
    let n = truncation(si);
    let (s_re, s_im) = (Dd::new(sr), Dd::new(si));
    let s_dd = Cdd::new(s_re, s_im);
    let mut sum = Cdd::default();
    for k in 1..n {
        sum = sum + npow_dd(k, s_re, s_im);
    }
    let n_dd = Dd::new(n as f64);
    let n_pow = npow_dd(n, s_re, s_im);
    let one = Cdd::real(Dd::ONE);
    sum = sum + n_pow.scale(n_dd) / (s_dd - one);
    sum = sum + n_pow.scale(Dd::new(0.5));
    // Correction terms B_{2k}/(2k)! · s(s+1)…(s+2k−2) · N^{−s−2k+1}.
    let inv_n = Dd::ONE / n_dd;
    let inv_n2 = inv_n.sqr();
    let mut poch = s_dd;
    let mut npow = n_pow.scale(inv_n);
    for (k, b) in bernoulli_dd().iter().enumerate() {
        if k > 0 {
            let a = (2 * k - 1) as f64;
            poch = poch * (s_dd + Cdd::real(Dd::new(a))) * (s_dd + Cdd::real(Dd::new(a + 1.0)));
            npow = npow.scale(inv_n2);
        }
        sum = sum + (poch * npow).scale(*b);
    }
    Ok(Complex::new(T::c(sum.re.to_f64()), T::c(sum.im.to_f64())))
}

/// ζ(s) in the native precision of `T`; fast, with absolute (not relative)
/// error near the precision of `T`.
pub fn zeta_std<T: Real>(s: Complex<T>) -> Result<Complex<T>> {
    check_pole(s.re.to_f64().unwrap(), s.im.to_f64().unwrap())?;
    if s.re >= T::c(8.0) {
        return Ok(zeta_minus_one_direct(s) + T::one());
    }
    let n = truncation(s.im.to_f64().unwrap());
    let one = Complex::new(T::one(), T::zero());
    let npow = |k: usize| -> Complex<T> { (-s * T::c(k as f64).ln()).exp() };
    let mut sum = Complex::new(T::zero(), T::zero());
    for k in 1..n {
        sum = sum + npow(k);
    }
    let nt = T::c(n as f64);
    let n_pow = npow(n);
    sum = sum + n_pow * nt / (s - one) + n_pow * T::c(0.5);
    let mut poch = s;
    let mut np = n_pow / nt;
    let inv_n2 = T::one() / (nt * nt);
    let mut fact = 1.0f64;
    for (k, &(num, den)) in BERNOULLI.iter().enumerate() {
        let m = 2 * (k + 1);
        fact *= ((m - 1) * m) as f64;
        if k > 0 {
            let a = T::c((2 * k - 1) as f64);
            poch = poch * (s + a) * (s + a + T::one());
            np = np * inv_n2;
        }
        sum = sum + poch * np * T::c(num / (den * fact));
    }
    Ok(sum)
}

/// `ζ(s) − 1 = Σ_{n≥2} n^{−s}` by direct summation; for `Re(s) ≥ 8`.
fn zeta_minus_one_direct<T: Real>(s: Complex<T>) -> Complex<T> {
    let sigma = s.re.to_f64().unwrap();
    let mut sum = Complex::new(T::zero(), T::zero());
    // Stop once n^{−σ} is negligible next to 2^{−σ}.
    let limit = (2.0 * 10f64.powf(18.0 / sigma)).min(1e6);
    let mut n = 2usize;
    while (n as f64) <= limit.max(3.0) {
        sum = sum + (-s * T::c(n as f64).ln()).exp();
        n += 1;
    }
    sum
}

/// `ζ(s) − 1`, keeping relative accuracy when `ζ(s)` is close to 1.
pub fn zeta_minus_one<T: Real>(s: Complex<T>) -> Result<Complex<T>> {
    if s.re >= T::c(8.0) {
        return Ok(zeta_minus_one_direct(s));
    }
    Ok(zeta_std(s)? - T::one())
}

/// `log ζ(s)` (principal branch; accurate when `ζ(s)` is near 1).
pub fn log_zeta<T: Real>(s: Complex<T>) -> Result<Complex<T>> {
    if s.re >= T::c(8.0) {
        let d = zeta_minus_one_direct(s);
        return Ok(ln_1p(d));
    }
    Ok(zeta_std(s)?.ln())
}

/// `log(1 + z)` for small `|z|` without cancellation.
pub(crate) fn ln_1p<T: Real>(z: Complex<T>) -> Complex<T> {
    if z.norm() < T::c(1e-4) {
        // series to z^5 is exact to double precision at this size
        let mut term = z;
        let mut sum = z;
        for k in 2..=6 {
            term = -term * z;
            sum = sum + term / T::c(k as f64);
        }
        sum
    } else {
        (z + T::one()).ln()
    }
}
