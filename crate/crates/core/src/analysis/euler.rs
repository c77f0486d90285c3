//! Numeric evaluation of the residual Euler product `U` and of `D_f`.

use num_bigint::BigInt;
use num_complex::Complex;
use num_traits::{Signed, ToPrimitive, Zero};

use super::zeta::{ln_1p, log_zeta};
use crate::error::{Error, Result};
use crate::factor::factorization::{log_abs, mul_binomial, residual_series};
use crate::factor::ZetaFactorization;
use crate::primes::primes_up_to;
use crate::scalar::{Coefficient, Real};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EulerOptions {
    /// Target bound on the neglected part of `log U`.
    pub tol: f64,
    /// Required distance of `Re(s)` from the convergence boundary `1/(2ℓ+1)`.
    pub margin: f64,
    /// Largest prime the product may run to.
    pub max_prime: u64,
}

impl Default for EulerOptions {
    fn default() -> Self {
        Self {
            tol: 1e-12,
            margin: 0.02,
            max_prime: 2_000_000,
        }
    }
}

/// How far the extra elimination is pushed: until `(J+1)·σ` reaches this.
const EXTENSION_TARGET: f64 = 6.0;
/// Coefficients past the extension used to estimate the tail.
const TAIL_TERMS: usize = 16;
/// Hard limit on extra eliminated indices.
const MAX_EXTENSION: usize = 160;
/// Largest prime used to sum the tail of an extra zeta factor directly.
const DIRECT_CAP: f64 = 131_072.0;
/// Error allowed in one directly summed tail, as a fraction of `tol`.
const DIRECT_SHARE: f64 = 0.01;
/// Assumed relative error of the prime-number-theorem estimate of the
/// remainder `Σ_{p>Q} p^{−w} ≈ E_1((w − 1) log Q)`.
const REMAINDER_REL: f64 = 0.05;

/// Precomputed plan for evaluating `U(s)` on `Re(s) ≥ σ_min`.
///
/// `U` is rewritten as `∏_{2ℓ<t≤J} ζ(ts)^{b_t} · R(s)`, where `R`'s local
/// factors start at `X^{J+1}`; the zeta powers are evaluated directly and
/// `R` as a finite product over primes, each local factor in closed form.
///
/// For `p ≤ P` the factors `(1 − p^{−ts})^{−b_t}` inside `ζ(ts)^{b_t}` cancel
/// against those in `R_p`, so only their tails over `p > P` are evaluated.
/// The `b_t` grow geometrically in `t`, so a tail is summed prime by prime
/// when that is cheap and taken as `log ζ(ts) + Σ_{p≤P} log(1 − p^{−ts})`
/// otherwise (then `b_t` is small and the cancellation harmless).
#[derive(Debug, Clone)]
pub struct UEvaluator {
    identically_one: bool,
    sigma_min: f64,
    prefix: Vec<f64>,
    period: Vec<f64>,
    exponents: Vec<(usize, f64)>,
    extension: Vec<(usize, f64)>,
    /// Per extension entry: number of leading primes summed directly beyond
    /// the cutoff, or 0 for the `log ζ` route.
    direct: Vec<(usize, f64)>,
    primes: Vec<u64>,
    cutoff: usize,
}

fn convergence_check(sigma: f64, ell: usize, margin: f64, s: String) -> Result<()> {
    let bound = 1.0 / (2 * ell + 1) as f64 + margin;
    if sigma <= bound {
        return Err(Error::Convergence { s, bound });
    }
    Ok(())
}

fn big_to_f64(v: &BigInt) -> f64 {
    v.to_f64()
        .unwrap_or(if v.is_negative() { f64::MIN } else { f64::MAX })
}

impl UEvaluator {
    pub fn new<C: Coefficient>(
        fz: &ZetaFactorization<C>,
        sigma_min: f64,
        opts: &EulerOptions,
    ) -> Result<Self> {
        let ell = fz.critical_index();
        convergence_check(sigma_min, ell, opts.margin, format!("{sigma_min}"))?;
        let eps = fz.source();
        let exponents: Vec<(usize, f64)> = fz
            .nonzero_exponents()
            .into_iter()
            .map(|(j, a)| (j, a.to_f64().unwrap_or(f64::NAN)))
            .collect();
        let mut plan = UEvaluator {
            identically_one: false,
            sigma_min,
            prefix: eps.prefix().iter().map(|&v| v as f64).collect(),
            period: eps.period().iter().map(|&v| v as f64).collect(),
            exponents,
            extension: Vec::new(),
            direct: Vec::new(),
            primes: Vec::new(),
            cutoff: 0,
        };
        if fz.residual_is_one()? {
            plan.identically_one = true;
            return Ok(plan);
        }

        let start = 2 * ell + 1;
        let mut stop = start - 1;
        while ((stop + 1) as f64) * sigma_min < EXTENSION_TARGET && stop < 2 * ell + MAX_EXTENSION {
            stop += 1;
        }
        let len = stop + TAIL_TERMS;
        let big: Vec<BigInt> = (0..=2 * ell).map(|j| fz.exponent(j).to_big()).collect();
        let mut series = residual_series::<BigInt>(eps, &big, len)?;
        for t in start..=stop {
            let b = series[t].clone();
            if !b.is_zero() {
                series = mul_binomial(&series, t, &b)?;
                plan.extension.push((t, big_to_f64(&b)));
            }
        }
        let rest: Vec<(usize, f64)> = (stop + 1..=len)
            .filter(|&j| !series[j].is_zero())
            .map(|j| (j, log_abs(&series[j])))
            .collect();

        // Σ_{p>P} p^{−jσ} ≤ 2·P^{1−jσ}/(jσ−1) for jσ > 1.
        let tail = |p: f64| -> f64 {
            rest.iter()
                .map(|&(j, la)| {
                    let e = j as f64 * sigma_min;
                    2.0 * (la + (1.0 - e) * p.ln()).exp() / (e - 1.0)
                })
                .sum()
        };
        let mut p = 16.0f64;
        while tail(p) > opts.tol {
            p *= 2.0;
            if p > opts.max_prime as f64 {
                return Err(Error::Tolerance {
                    tol: opts.tol,
                    reason: format!(
                        "Euler product at Re(s) = {sigma_min} needs primes beyond {}",
                        opts.max_prime
                    ),
                });
            }
        }
        let mut q_max = p;
        let direct_q: Vec<Option<f64>> = plan
            .extension
            .iter()
            .map(|&(t, b)| {
                let e = t as f64 * sigma_min;
                let mut q = p;
                while b.abs().ln() + (1.0 - e) * q.ln() - ((e - 1.0) * q.ln()).ln()
                    + REMAINDER_REL.ln()
                    > (DIRECT_SHARE * opts.tol).ln()
                {
                    q *= 2.0;
                    if q > DIRECT_CAP {
                        return None;
                    }
                }
                q_max = q_max.max(q);
                Some(q)
            })
            .collect();
        plan.primes = primes_up_to(q_max as u64);
        plan.cutoff = plan.primes.partition_point(|&x| (x as f64) <= p);
        plan.direct = direct_q
            .iter()
            .map(|q| match q {
                Some(q) => (plan.primes.partition_point(|&x| (x as f64) <= *q), *q),
                None => (0, 0.0),
            })
            .collect();
        Ok(plan)
    }

    pub fn sigma_min(&self) -> f64 {
        self.sigma_min
    }

    /// Number of primes in the finite product (0 when `U ≡ 1`).
    pub fn prime_count(&self) -> usize {
        self.cutoff
    }

    /// Indices `t` and exponents `b_t` of the extra zeta factors.
    pub fn extension(&self) -> &[(usize, f64)] {
        &self.extension
    }

    /// Per extension entry, whether its prime tail is summed directly.
    pub fn direct_routes(&self) -> Vec<bool> {
        self.direct.iter().map(|&(d, _)| d > 0).collect()
    }

    pub fn is_identically_one(&self) -> bool {
        self.identically_one
    }

    /// `log` of the local factor at `X = p^{−s}` with the extension factors
    /// left out, given `pw[k] = X^k`; `None` when it vanishes.
    fn log_local<T: Real>(&self, pw: &[Complex<T>]) -> Option<Complex<T>> {
        let one = Complex::new(T::one(), T::zero());
        let per = self.period.len();
        let a = self.prefix.len();
        let mut head = one;
        for (i, &v) in self.prefix.iter().enumerate() {
            head = head + pw[i + 1] * T::c(v);
        }
        let mut num = head * (one - pw[per]);
        for (i, &v) in self.period.iter().enumerate() {
            num = num + pw[a + i + 1] * T::c(v);
        }
        if num.norm() == T::zero() {
            return None;
        }
        let mut acc = num.ln() - ln_1p(-pw[per]);
        for &(j, e) in &self.exponents {
            acc = acc + ln_1p(-pw[j]) * T::c(e);
        }
        Some(acc)
    }

    fn powers<T: Real>(x: Complex<T>, upto: usize, out: &mut Vec<Complex<T>>) {
        out.clear();
        let mut w = Complex::new(T::one(), T::zero());
        out.push(w);
        for _ in 0..upto {
            w = w * x;
            out.push(w);
        }
    }

    pub fn eval<T: Real>(&self, s: Complex<T>) -> Result<Complex<T>> {
        let one = Complex::new(T::one(), T::zero());
        if self.identically_one {
            return Ok(one);
        }
        let sigma = s.re.to_f64().unwrap();
        if sigma < self.sigma_min - 1e-12 {
            return Err(Error::Convergence {
                s: format!("{s}"),
                bound: self.sigma_min,
            });
        }
        let zero = Complex::new(T::zero(), T::zero());
        let via_zeta: Vec<(usize, usize)> = (0..self.extension.len())
            .filter(|&i| self.direct[i].0 == 0)
            .map(|i| (i, self.extension[i].0))
            .collect();
        let local_top = (self.prefix.len() + self.period.len())
            .max(self.exponents.iter().map(|e| e.0).max().unwrap_or(0));
        let top = via_zeta.iter().map(|e| e.1).fold(local_top, usize::max);
        let mut pw = Vec::with_capacity(top + 1);
        let mut log = zero;
        let mut head = vec![zero; self.extension.len()];
        for &p in &self.primes[..self.cutoff] {
            Self::powers((-s * T::c(p as f64).ln()).exp(), top, &mut pw);
            match self.log_local(&pw) {
                Some(l) => log = log + l,
                None => return Ok(zero),
            }
            for &(i, t) in &via_zeta {
                head[i] = head[i] + ln_1p(-pw[t]);
            }
        }
        for (i, &(t, b)) in self.extension.iter().enumerate() {
            let (n, q) = self.direct[i];
            if n == 0 {
                log = log + (log_zeta(s * T::c(t as f64))? + head[i]) * T::c(b);
            } else {
                let z = (s * T::c(t as f64) - T::one()) * T::c(q.ln());
                log = log + exp_integral_asymptotic(z) * T::c(b);
            }
        }
        // direct tails, entries ordered by how far they reach
        let mut direct: Vec<(usize, usize, f64)> = self
            .extension
            .iter()
            .zip(&self.direct)
            .filter(|(_, d)| d.0 > 0)
            .map(|(&(t, b), d)| (d.0, t, b))
            .collect();
        direct.sort_unstable_by_key(|d| std::cmp::Reverse(d.0));
        let far = direct.first().map_or(0, |d| d.0);
        for (idx, &p) in self.primes.iter().enumerate().take(far).skip(self.cutoff) {
            let live = direct.partition_point(|d| d.0 > idx);
            let reach = direct[..live].iter().map(|d| d.1).max().unwrap_or(0);
            Self::powers((-s * T::c(p as f64).ln()).exp(), reach, &mut pw);
            for &(_, t, b) in &direct[..live] {
                log = log - ln_1p(-pw[t]) * T::c(b);
            }
        }
        Ok(log.exp())
    }
}

/// `E_1(z) ≈ e^{−z}/z · Σ_k (−1)^k k!/z^k` for large `|z|`.
fn exp_integral_asymptotic<T: Real>(z: Complex<T>) -> Complex<T> {
    let mut term = Complex::new(T::one(), T::zero());
    let mut sum = term;
    for k in 1..6 {
        term = -term * T::c(k as f64) / z;
        sum = sum + term;
    }
    (-z).exp() / z * sum
}

/// `U(s)` to within `tol` in log-modulus.
#[allow(non_snake_case)]
pub fn evaluate_U<T: Real, C: Coefficient>(
    fz: &ZetaFactorization<C>,
    s: Complex<T>,
    opts: &EulerOptions,
) -> Result<Complex<T>> {
    let sigma = s.re.to_f64().unwrap();
    convergence_check(sigma, fz.critical_index(), opts.margin, format!("{s}"))?;
    UEvaluator::new(fz, sigma, opts)?.eval(s)
}

/// `D_f(s) = ∏ ζ(js)^{a_j} · U(s)` evaluated through a reusable plan.
#[derive(Debug, Clone)]
pub struct DirichletSeries {
    ell: usize,
    exponents: Vec<(usize, i64)>,
    u: UEvaluator,
}

impl DirichletSeries {
    pub fn new<C: Coefficient>(
        fz: &ZetaFactorization<C>,
        sigma_min: f64,
        opts: &EulerOptions,
    ) -> Result<Self> {
        let exponents = fz
            .nonzero_exponents()
            .into_iter()
            .map(|(j, a)| a.to_i64().map(|a| (j, a)).ok_or(Error::Overflow))
            .collect::<Result<Vec<_>>>()?;
        Ok(Self {
            ell: fz.critical_index(),
            exponents,
            u: UEvaluator::new(fz, sigma_min, opts)?,
        })
    }

    pub fn u(&self) -> &UEvaluator {
        &self.u
    }

    pub fn critical_index(&self) -> usize {
        self.ell
    }

    /// The zeta part `∏ ζ(js)^{a_j}` alone.
    pub fn zeta_part<T: Real>(&self, s: Complex<T>) -> Result<Complex<T>> {
        let mut out = Complex::new(T::one(), T::zero());
        for &(j, a) in &self.exponents {
            let w = s * T::c(j as f64);
            if w.re == T::one() && w.im == T::zero() {
                if a > 0 {
                    return Err(Error::Pole(format!("{s}")));
                }
                return Ok(Complex::new(T::zero(), T::zero()));
            }
            let z = if w.re >= T::c(8.0) {
                log_zeta(w)?.exp()
            } else {
                super::zeta::zeta_std(w)?
            };
            out = out * z.powi(a as i32);
        }
        Ok(out)
    }

    pub fn eval<T: Real>(&self, s: Complex<T>) -> Result<Complex<T>> {
        let z = self.zeta_part(s)?;
        if z.norm() == T::zero() {
            return Ok(z);
        }
        Ok(z * self.u.eval(s)?)
    }
}

/// `D_f(s)` through the factorization.
#[allow(non_snake_case)]
pub fn evaluate_Df<T: Real, C: Coefficient>(
    fz: &ZetaFactorization<C>,
    s: Complex<T>,
    opts: &EulerOptions,
) -> Result<Complex<T>> {
    let sigma = s.re.to_f64().unwrap();
    convergence_check(sigma, fz.critical_index(), opts.margin, format!("{s}"))?;
    DirichletSeries::new(fz, sigma, opts)?.eval(s)
}
