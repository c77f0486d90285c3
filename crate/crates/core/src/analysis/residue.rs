//! Main terms: Laurent data of `D_f(s)/s` at the real poles `s = 1/j`.
//!
//! For a pole of order ξ at `σ₀` with `D_f(s)/s = Σ_m c_m (s − σ₀)^m`, the
//! residue of `D_f(s) x^s / s` is `P(log x) x^{σ₀}` where
//! `P(t) = Σ_{i<ξ} c_{−1−i} t^i / i!`.

use num_complex::Complex;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::euler::{DirichletSeries, EulerOptions};
use crate::error::{Error, Result};
use crate::factor::{closed_form_exponents, index_data, ZetaFactorization, DEFAULT_CAP};
use crate::scalar::Coefficient;
use crate::sequence::{Classification, EpsilonSequence};

/// One pole contribution `P_j(log x) x^{1/j}`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MainTermTerm {
    pub j: usize,
    /// Pole order of `D_f` at `1/j`.
    pub xi: usize,
    /// Coefficients of `P_j`, increasing degree; length `xi`.
    pub poly: Vec<f64>,
    /// `j · Res(D_f, 1/j)`, present when `xi ≤ 2`.
    pub a: Option<f64>,
    /// `j² · Res((s − 1/j) D_f, 1/j)`, present when `xi ≤ 2`.
    pub b: Option<f64>,
}

impl MainTermTerm {
    pub fn eval(&self, x: f64) -> f64 {
        let t = x.ln();
        let mut p = 0.0;
        for &c in self.poly.iter().rev() {
            p = p * t + c;
        }
        p * x.powf(1.0 / self.j as f64)
    }
}

/// `G_f(x) = Σ_j P_j(log x) x^{1/j}` over the nonzero pole contributions.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MainTermModel {
    pub critical_index: usize,
    pub terms: Vec<MainTermTerm>,
    /// `j` with `|U(1/j)| < 1e-6`: the residual product (nearly) vanishes at
    /// the pole and lowers its order.
    pub vanishing_residual: Vec<usize>,
}

impl MainTermModel {
    pub fn empty(critical_index: usize) -> Self {
        Self {
            critical_index,
            terms: Vec::new(),
            vanishing_residual: Vec::new(),
        }
    }

    pub fn term(&self, j: usize) -> Option<&MainTermTerm> {
        self.terms.iter().find(|t| t.j == j)
    }

    /// `(j, ξ_j)` of every nonzero term.
    pub fn structure(&self) -> Vec<(usize, usize)> {
        self.terms.iter().map(|t| (t.j, t.xi)).collect()
    }

    pub fn eval(&self, x: f64) -> f64 {
        self.terms.iter().map(|t| t.eval(x)).sum()
    }

    /// Apparent bias at scale `√x`: twice the residue of `D_f` at `1/2`.
    pub fn apparent_bias(&self) -> f64 {
        self.term(2).and_then(|t| t.a).unwrap_or(0.0)
    }
}

/// `G_f(x)`.
pub fn main_term(model: &MainTermModel, x: f64) -> f64 {
    model.eval(x)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ResidueOptions {
    /// Circle radius as a fraction of the distance to the nearest other pole
    /// `1/j'` with `j' ≤ 2ℓ+1`.
    pub radius_scale: f64,
    pub min_nodes: usize,
    pub max_nodes: usize,
    /// Agreement required between successive node counts, relative to
    /// `max(1, |c|)`.
    pub tol: f64,
    /// Coefficients below `zero_threshold · (1 + max |c|)` count as zero.
    pub zero_threshold: f64,
    pub euler: EulerOptions,
}

impl Default for ResidueOptions {
    fn default() -> Self {
        Self {
            radius_scale: 0.25,
            min_nodes: 64,
            max_nodes: 4096,
            tol: 1e-10,
            zero_threshold: 1e-9,
            euler: EulerOptions {
                margin: 0.0,
                ..EulerOptions::default()
            },
        }
    }
}

pub fn main_term_model<C: Coefficient>(fz: &ZetaFactorization<C>) -> Result<MainTermModel> {
    main_term_model_with(fz, &ResidueOptions::default())
}

fn contour_radius(j: usize, ell: usize, scale: f64) -> f64 {
    let s0 = 1.0 / j as f64;
    (1..=2 * ell + 1)
        .filter(|&k| k != j)
        .map(|k| (s0 - 1.0 / k as f64).abs())
        .fold(f64::INFINITY, f64::min)
        * scale
}

/// Laurent coefficients `c_{−1}, …, c_{−orders}` of `h` at `center` from
/// trapezoid sums on a circle, doubling the node count until two successive
/// estimates agree. A count of `2n` reuses the `n` nodes already evaluated.
fn laurent_coefficients<F>(
    h: F,
    center: f64,
    radius: f64,
    orders: usize,
    opts: &ResidueOptions,
) -> Result<Vec<f64>>
where
    F: Fn(Complex<f64>) -> Result<Complex<f64>> + Sync,
{
    let node = |k: usize, n: usize| -> Complex<f64> {
        Complex::from_polar(radius, std::f64::consts::TAU * k as f64 / n as f64)
    };
    let mut n = opts.min_nodes.max(2);
    let mut vals: Vec<Complex<f64>> = (0..n)
        .into_par_iter()
        .map(|k| h(Complex::new(center, 0.0) + node(k, n)))
        .collect::<Result<_>>()?;
    let estimate = |vals: &[Complex<f64>], step: usize| -> Vec<f64> {
        let m = vals.len() / step;
        (1..=orders)
            .map(|ord| {
                let mut acc = Complex::new(0.0, 0.0);
                for k in 0..m {
                    acc += vals[k * step] * node(k, m).powu(ord as u32);
                }
                acc.re / m as f64
            })
            .collect()
    };
    let mut prev = estimate(&vals, 2);
    loop {
        let cur = estimate(&vals, 1);
        let ok = cur
            .iter()
            .zip(&prev)
            .all(|(a, b)| (a - b).abs() <= opts.tol * a.abs().max(1.0));
        if ok {
            return Ok(cur);
        }
        if 2 * n > opts.max_nodes {
            return Err(Error::Numerical(format!(
                "contour quadrature at {center} did not settle with {n} nodes"
            )));
        }
        let odd: Vec<Complex<f64>> = (0..n)
            .into_par_iter()
            .map(|k| h(Complex::new(center, 0.0) + node(2 * k + 1, 2 * n)))
            .collect::<Result<_>>()?;
        let mut merged = Vec::with_capacity(2 * n);
        for (e, o) in vals.iter().zip(&odd) {
            merged.push(*e);
            merged.push(*o);
        }
        vals = merged;
        n *= 2;
        prev = cur;
    }
}

/// Main-term model from contour quadrature around `1/j`, `1 ≤ j ≤ 2ℓ`.
///
/// `U` is analytic on `Re(s) > 1/(2ℓ+1)` and no `ζ(j's)` with `j' ≠ j`
/// is singular or zero at `1/j`, so only `j` with `a_j > 0` can carry a
/// pole. Those are examined, with the quadrature carried one order past
/// `a_j` so the detected order can be checked against it.
pub fn main_term_model_with<C: Coefficient>(
    fz: &ZetaFactorization<C>,
    opts: &ResidueOptions,
) -> Result<MainTermModel> {
    let ell = fz.critical_index();
    let mut model = MainTermModel::empty(ell);
    if opts.radius_scale <= 0.0 || opts.radius_scale >= 1.0 {
        return Err(Error::OutOfRange(format!(
            "contour radius scale {} must lie in (0, 1)",
            opts.radius_scale
        )));
    }
    for j in 1..=2 * ell {
        let s0 = 1.0 / j as f64;
        let predicted = fz.exponent(j).to_i64().unwrap_or(0).max(0) as usize;
        if predicted == 0 {
            continue;
        }
        let r = contour_radius(j, ell, opts.radius_scale);
        let series = DirichletSeries::new(fz, s0 - r, &opts.euler)?;
        let h = |s: Complex<f64>| -> Result<Complex<f64>> { Ok(series.eval(s)? / s) };
        let c = laurent_coefficients(h, s0, r, predicted + 1, opts)?;
        let u = series.u().eval(Complex::new(s0, 0.0))?;
        if u.norm() < 1e-6 {
            model.vanishing_residual.push(j);
        }
        let big = c.iter().fold(0.0f64, |m, v| m.max(v.abs()));
        let floor = opts.zero_threshold * (1.0 + big);
        let xi = match c.iter().rposition(|v| v.abs() >= floor) {
            Some(i) => i + 1,
            None => continue,
        };
        let mut poly = Vec::with_capacity(xi);
        let mut fact = 1.0;
        for (i, &ci) in c.iter().take(xi).enumerate() {
            if i > 0 {
                fact *= i as f64;
            }
            poly.push(ci / fact);
        }
        let jf = j as f64;
        let (a, b) = match xi {
            1 => (Some(c[0]), Some(0.0)),
            2 => (Some(c[0] + jf * c[1]), Some(jf * c[1])),
            _ => (None, None),
        };
        model.terms.push(MainTermTerm { j, xi, poly, a, b });
    }
    Ok(model)
}

/// Poles of `D_f` on `1/(2ℓ) ≤ s ≤ 1` and their orders, read off the
/// sequence: `j ∈ (k, 2k]` with `ε_j = 1` for Möbius-type; `j = 1`, the
/// upward steps `ε_j > ε_{j−1}` on `(k, 2k)` and `ε_{2k} − ε_{2k−1} + ε_k`
/// at `2k` for powerfree-type; the principal indices and the positive
/// closed-form exponents on `(ℓ, 2ℓ]` for powerfull-type.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PredictedStructure {
    pub classification: Classification,
    pub critical_index: usize,
    /// `(j, ξ_j)` in increasing `j`.
    pub terms: Vec<(usize, usize)>,
}

pub fn predicted_main_term_structure(eps: &EpsilonSequence) -> Result<PredictedStructure> {
    let class = eps.classify();
    let e = |j: usize| eps.at(j) as i64;
    let (ell, mut terms) = match class {
        Classification::MobiusType { k } => (
            k,
            (k + 1..=2 * k)
                .filter(|&j| e(j) == 1)
                .map(|j| (j, 1))
                .collect::<Vec<_>>(),
        ),
        Classification::PowerfreeType { k } => {
            let mut t = vec![(1, 1)];
            for j in k + 1..2 * k {
                let d = e(j) - e(j - 1);
                if d > 0 {
                    t.push((j, d as usize));
                }
            }
            let d = e(2 * k) - e(2 * k - 1) + e(k);
            if d > 0 {
                t.push((2 * k, d as usize));
            }
            (k, t)
        }
        Classification::PowerfullType { .. } => {
            let idx = index_data(eps, DEFAULT_CAP)?;
            let ell = idx.critical_index;
            let a = closed_form_exponents::<i64>(eps, &idx)?;
            let mut t: Vec<(usize, usize)> =
                idx.principal_indices.iter().map(|&c| (c, 1)).collect();
            t.extend(
                (ell + 1..=2 * ell)
                    .filter(|&j| a[j] > 0)
                    .map(|j| (j, a[j] as usize)),
            );
            (ell, t)
        }
        other => {
            return Err(Error::Unsupported(format!(
                "{} has no main-term structure",
                other.name()
            )))
        }
    };
    terms.sort_unstable();
    Ok(PredictedStructure {
        classification: class,
        critical_index: ell,
        terms,
    })
}
