//! The lowest zero of ζ and the 81-case Euler-factor bound at it.

use num_complex::Complex;
use serde::{Deserialize, Serialize};

use super::zeta::zeta;
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ZeroOfZeta {
    pub gamma_1: f64,
}

impl ZeroOfZeta {
    /// `1/2 + iγ₁`.
    pub fn rho_1(&self) -> Complex<f64> {
        Complex::new(0.5, self.gamma_1)
    }
}

/// Riemann–Siegel theta, asymptotic series (ample for `t ≥ 10`).
fn theta(t: f64) -> f64 {
    use std::f64::consts::PI;
    t / 2.0 * (t / (2.0 * PI)).ln() - t / 2.0 - PI / 8.0
        + 1.0 / (48.0 * t)
        + 7.0 / (5760.0 * t.powi(3))
        + 31.0 / (80640.0 * t.powi(5))
        + 127.0 / (430080.0 * t.powi(7))
}

/// `Z(t) = e^{iθ(t)} ζ(1/2 + it)`, real on the critical line.
fn hardy_z(t: f64) -> Result<f64> {
    let z = zeta(Complex::new(0.5, t))?;
    Ok((Complex::from_polar(1.0, theta(t)) * z).re)
}

/// Locate `γ₁` by bisecting the sign change of `Z` on `[14, 14.5]`.
pub fn first_zero() -> Result<ZeroOfZeta> {
    let (mut lo, mut hi) = (14.0f64, 14.5f64);
    let (mut zlo, zhi) = (hardy_z(lo)?, hardy_z(hi)?);
    if zlo * zhi >= 0.0 {
        return Err(Error::Numerical(format!(
            "Z(t) does not change sign on [14, 14.5]: {zlo}, {zhi}"
        )));
    }
    while hi - lo > 1e-13 {
        let mid = 0.5 * (lo + hi);
        let zm = hardy_z(mid)?;
        if zm == 0.0 {
            return Ok(ZeroOfZeta { gamma_1: mid });
        }
        if (zm < 0.0) == (zlo < 0.0) {
            lo = mid;
            zlo = zm;
        } else {
            hi = mid;
        }
    }
    Ok(ZeroOfZeta {
        gamma_1: 0.5 * (lo + hi),
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GapCheck {
    pub min_margin: f64,
    /// `(ε₃, ε₄, ε₅, ε₆)` attaining the minimum.
    pub argmin: [i8; 4],
}

/// `1/(4√2 − 4)`, the bound on the neglected part of the 2-factor.
pub fn two_factor_tail() -> f64 {
    1.0 / (4.0 * 2f64.sqrt() - 4.0)
}

/// `1 − 2/(3√3 − 3)`, the lower bound on the factors at `p ≥ 3`.
pub fn odd_prime_bound() -> f64 {
    1.0 - 2.0 / (3.0 * 3f64.sqrt() - 3.0)
}

/// Minimum over `(ε₃, …, ε₆) ∈ {−1, 0, 1}⁴` of
/// `|1 + (1+ε₃)2^{−3ρ} + Σ_{j=4}^{6} (ε_{j−1}+ε_j) 2^{−jρ}| − 1/(4√2−4)`
/// at the lowest zero `ρ` of ζ.
pub fn gap_check_example31() -> Result<GapCheck> {
    let rho = first_zero()?.rho_1();
    Ok(gap_check_at(rho))
}

pub fn gap_check_at(rho: Complex<f64>) -> GapCheck {
    let w: Vec<Complex<f64>> = (0..=6)
        .map(|j| (-rho * (j as f64) * 2f64.ln()).exp())
        .collect();
    let tail = two_factor_tail();
    let mut best = GapCheck {
        min_margin: f64::INFINITY,
        argmin: [0; 4],
    };
    for code in 0..81 {
        let mut e = [0i8; 7];
        let mut c = code;
        for slot in e.iter_mut().skip(3) {
            *slot = (c % 3) as i8 - 1;
            c /= 3;
        }
        let mut v = Complex::new(1.0, 0.0) + w[3] * f64::from(1 + e[3]);
        for j in 4..=6 {
            v += w[j] * f64::from(e[j - 1] + e[j]);
        }
        let margin = v.norm() - tail;
        if margin < best.min_margin {
            best = GapCheck {
                min_margin: margin,
                argmin: [e[3], e[4], e[5], e[6]],
            };
        }
    }
    best
}
