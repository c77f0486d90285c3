//! Error-term scans: `E_f(x) = F_f(x) − G_f(x)` sampled over `x ≤ x_max`.

use std::io::Write;
use std::path::Path;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::analysis::MainTermModel;
use crate::error::{Error, Result};
use crate::factor::ZetaFactorization;
use crate::scalar::Coefficient;
use crate::sequence::EpsilonSequence;
use crate::sieve::{Sieve, SieveConfig};

/// One sample of a scan.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ScanRecord {
    pub x: u64,
    #[serde(rename = "F")]
    pub f: i64,
    #[serde(rename = "G")]
    pub g: f64,
    #[serde(rename = "E")]
    pub e: f64,
    pub e_norm: f64,
}

/// `x^{1/2ℓ} (log x)^{|a_ℓ|−1}`, the scale of the oscillations of `E_f`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Normalization {
    pub critical_index: usize,
    pub log_power: i64,
}

impl Normalization {
    pub fn from_factorization<C: Coefficient>(fz: &ZetaFactorization<C>) -> Result<Self> {
        let ell = fz.critical_index();
        let a = fz.exponent(ell).to_i64().ok_or(Error::Overflow)?;
        Ok(Self {
            critical_index: ell,
            log_power: a.abs() - 1,
        })
    }

    pub fn scale(&self, x: f64) -> f64 {
        let l = if x < 3.0 { 1.0 } else { x.ln() };
        x.powf(1.0 / (2 * self.critical_index) as f64) * l.powi(self.log_power as i32)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum Grid {
    /// `points` values spaced geometrically from 2 to `x_max`.
    Geometric {
        points: usize,
    },
    /// Every `step`-th integer, plus `x_max`.
    Linear {
        step: u64,
    },
    Explicit(Vec<u64>),
}

#[derive(Debug, Clone, PartialEq)]
pub struct ScanOptions {
    pub grid: Grid,
    /// Add the two integers around every sign change of `E`.
    pub refine: bool,
    pub sieve: SieveConfig,
}

impl Default for ScanOptions {
    fn default() -> Self {
        Self {
            grid: Grid::Geometric { points: 1000 },
            refine: true,
            sieve: SieveConfig::default(),
        }
    }
}

/// Sorted, deduplicated sample points in `1..=x_max`.
pub fn grid_points(grid: &Grid, x_max: u64) -> Vec<u64> {
    let mut v: Vec<u64> = match grid {
        Grid::Geometric { points } => {
            let lo = 2u64.min(x_max);
            let n = (*points).max(2);
            let ratio = (x_max as f64 / lo as f64).ln() / (n - 1) as f64;
            // Rounding collapses the low end; push duplicates up so the grid
            // keeps its point count whenever the range allows it.
            let mut prev = 0u64;
            (0..n)
                .map(|i| {
                    let x = ((lo as f64) * (ratio * i as f64).exp()).round() as u64;
                    prev = x.max(prev + 1).min(x_max);
                    prev
                })
                .chain([x_max])
                .collect()
        }
        Grid::Linear { step } => (1..=x_max)
            .step_by((*step).max(1) as usize)
            .chain([x_max])
            .collect(),
        Grid::Explicit(xs) => xs.clone(),
    };
    v.retain(|&x| (1..=x_max).contains(&x));
    v.sort_unstable();
    v.dedup();
    v
}

/// Main term at integer arguments, with the per-term constants hoisted.
struct MainTermEval {
    terms: Vec<(f64, Vec<f64>)>,
}

impl MainTermEval {
    fn new(model: &MainTermModel) -> Self {
        Self {
            terms: model
                .terms
                .iter()
                .map(|t| (1.0 / t.j as f64, t.poly.clone()))
                .collect(),
        }
    }

    fn eval(&self, x: f64) -> f64 {
        let mut g = 0.0;
        let mut lx = f64::NAN;
        for (inv_j, poly) in &self.terms {
            let p = if poly.len() == 1 {
                poly[0]
            } else {
                if lx.is_nan() {
                    lx = x.ln();
                }
                poly.iter().rev().fold(0.0, |acc, &c| acc * lx + c)
            };
            let w = if *inv_j == 1.0 { x } else { x.powf(*inv_j) };
            g += p * w;
        }
        g
    }
}

/// What one segment contributes: grid samples and the integers around sign
/// changes inside it, plus its outermost integers with `E ≠ 0` so changes
/// across segment borders can be stitched.
struct SegmentScan {
    picks: Vec<(u64, i64)>,
    first: Option<(u64, i64, bool)>,
    last: Option<(u64, i64, bool)>,
}

/// Sample `E_f` on the grid; with `refine`, also both integers around each
/// sign change of `E` (zeros of `E` are skipped when looking for changes).
pub fn scan<C: Coefficient>(
    eps: &EpsilonSequence,
    fz: &ZetaFactorization<C>,
    model: &MainTermModel,
    x_max: u64,
    opts: &ScanOptions,
) -> Result<Vec<ScanRecord>> {
    if x_max == 0 {
        return Err(Error::OutOfRange("x_max must be positive".into()));
    }
    if x_max > opts.sieve.max_n {
        return Err(Error::Budget {
            requested: x_max,
            budget: opts.sieve.max_n,
        });
    }
    let norm = Normalization::from_factorization(fz)?;
    let main = MainTermEval::new(model);
    let sieve = Sieve::new(eps, opts.sieve);
    let grid = grid_points(&opts.grid, x_max);
    let seg = opts.sieve.segment_len.max(1) as u64;
    let batch = rayon::current_num_threads().max(1) as u64;

    let mut picks: Vec<(u64, i64)> = Vec::with_capacity(grid.len());
    let mut total = 0i64;
    let mut last: Option<(u64, i64, bool)> = None;
    let mut lo = 1u64;
    while lo <= x_max {
        let starts: Vec<u64> = (0..batch)
            .map(|i| lo + i * seg)
            .filter(|&a| a <= x_max)
            .collect();
        let blocks: Vec<(u64, Vec<i8>)> = starts
            .par_iter()
            .map(|&a| Ok((a, sieve.values(a, (a + seg).min(x_max + 1))?)))
            .collect::<Result<_>>()?;
        let mut offsets = Vec::with_capacity(blocks.len());
        for (_, vals) in &blocks {
            offsets.push(total);
            total += vals.iter().map(|&v| v as i64).sum::<i64>();
        }
        let found: Vec<SegmentScan> = blocks
            .par_iter()
            .zip(&offsets)
            .map(|((a, vals), &off)| scan_segment(*a, vals, off, &grid, &main, opts.refine))
            .collect();
        for block in found {
            if let (Some((px, pf, ppos)), Some((x, f, pos))) = (last, block.first) {
                if ppos != pos {
                    picks.push((px, pf));
                    picks.push((x, f));
                }
            }
            picks.extend(block.picks);
            last = block.last.or(last);
        }
        lo = starts.last().unwrap() + seg;
    }
    picks.sort_unstable();
    picks.dedup();
    Ok(picks
        .into_iter()
        .map(|(x, f)| make_record(x, f, &main, &norm))
        .collect())
}

fn make_record(x: u64, f: i64, main: &MainTermEval, norm: &Normalization) -> ScanRecord {
    let xf = x as f64;
    let g = main.eval(xf);
    let e = f as f64 - g;
    ScanRecord {
        x,
        f,
        g,
        e,
        e_norm: e / norm.scale(xf),
    }
}

fn scan_segment(
    a: u64,
    vals: &[i8],
    off: i64,
    grid: &[u64],
    main: &MainTermEval,
    refine: bool,
) -> SegmentScan {
    let hi = a + vals.len() as u64;
    let mut picks = Vec::new();
    let g1 = grid.partition_point(|&x| x < hi);
    let mut gi = grid.partition_point(|&x| x < a);
    let mut f = off;
    let mut first = None;
    let mut prev: Option<(u64, i64, bool)> = None;
    for (i, &v) in vals.iter().enumerate() {
        f += v as i64;
        let x = a + i as u64;
        if gi < g1 && grid[gi] == x {
            picks.push((x, f));
            gi += 1;
        }
        if refine {
            let e = f as f64 - main.eval(x as f64);
            if e != 0.0 {
                let pos = e > 0.0;
                match prev {
                    Some((px, pf, ppos)) if ppos != pos => {
                        picks.push((px, pf));
                        picks.push((x, f));
                    }
                    None => first = Some((x, f, pos)),
                    _ => {}
                }
                prev = Some((x, f, pos));
            }
        }
    }
    SegmentScan {
        picks,
        first,
        last: prev,
    }
}

/// Pairs `(x₁, x₂)` of records with `E(x₁)·E(x₂) < 0` and only zero `E`
/// between them.
pub fn sign_changes(records: &[ScanRecord]) -> Vec<(u64, u64)> {
    let mut out = Vec::new();
    let mut prev: Option<&ScanRecord> = None;
    for r in records {
        if r.e == 0.0 {
            continue;
        }
        if let Some(p) = prev {
            if (p.e > 0.0) != (r.e > 0.0) {
                out.push((p.x, r.x));
            }
        }
        prev = Some(r);
    }
    out
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Extrema {
    pub sup_norm: f64,
    pub inf_norm: f64,
    pub arg_sup: u64,
    pub arg_inf: u64,
}

/// Largest and smallest `e_norm` over the records.
pub fn extrema(records: &[ScanRecord]) -> Result<Extrema> {
    let first = records
        .first()
        .ok_or_else(|| Error::OutOfRange("no records".into()))?;
    let mut out = Extrema {
        sup_norm: first.e_norm,
        inf_norm: first.e_norm,
        arg_sup: first.x,
        arg_inf: first.x,
    };
    for r in &records[1..] {
        if r.e_norm > out.sup_norm {
            out.sup_norm = r.e_norm;
            out.arg_sup = r.x;
        }
        if r.e_norm < out.inf_norm {
            out.inf_norm = r.e_norm;
            out.arg_inf = r.x;
        }
    }
    Ok(out)
}

/// Reference curves drawn next to `E`: the unconditional bound
/// `x^{1/ℓ} exp(−c (log x)^{3/5} / (log log x)^{1/5})` and the conditional
/// `x^{1/2k} exp(C log x / log log x)` with `k` the initial index. The
/// constants are user-chosen; nothing is asserted about them.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Envelope {
    /// `c` in the unconditional bound.
    pub decay: f64,
    /// `C` in the conditional curve.
    pub growth: f64,
    pub critical_index: usize,
    pub initial_index: usize,
}

impl Envelope {
    pub fn for_factorization<C: Coefficient>(
        fz: &ZetaFactorization<C>,
        decay: f64,
        growth: f64,
    ) -> Result<Self> {
        let initial_index = fz
            .source()
            .initial_index()
            .ok_or_else(|| Error::Unsupported("sequence has no initial index".into()))?;
        Ok(Self {
            decay,
            growth,
            critical_index: fz.critical_index(),
            initial_index,
        })
    }

    /// `(env_lo, env_hi)`; `None` for `x ≤ e` where `log log x ≤ 0`.
    pub fn at(&self, x: f64) -> Option<(f64, f64)> {
        let l = x.ln();
        let ll = l.ln();
        if ll.is_nan() || ll <= 0.0 {
            return None;
        }
        let lo = (l / (2 * self.initial_index) as f64 + self.growth * l / ll).exp();
        let hi = (l / self.critical_index as f64 - self.decay * l.powf(0.6) / ll.powf(0.2)).exp();
        Some((lo, hi))
    }
}

/// `v` with 12 significant digits, plain decimal where reasonable.
pub fn format_sig(v: f64) -> String {
    if v == 0.0 {
        return "0".into();
    }
    if !v.is_finite() {
        return format!("{v}");
    }
    let exp = v.abs().log10().floor() as i32;
    if (-5..12).contains(&exp) {
        let decimals = (11 - exp).max(0) as usize;
        let s = format!("{v:.decimals$}");
        let s = if s.contains('.') {
            s.trim_end_matches('0').trim_end_matches('.').to_string()
        } else {
            s
        };
        // rounding can carry into a new digit; the value is still right
        if s == "-0" {
            "0".into()
        } else {
            s
        }
    } else {
        format!("{v:.11e}")
    }
}

/// CSV with header `x,F,G,E,e_norm` (plus `env_lo,env_hi` with an envelope).
pub fn write_csv<W: Write>(
    records: &[ScanRecord],
    envelope: Option<&Envelope>,
    out: W,
) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    let io = |e: csv::Error| Error::Io(e.to_string());
    let mut header = vec!["x", "F", "G", "E", "e_norm"];
    if envelope.is_some() {
        header.extend(["env_lo", "env_hi"]);
    }
    w.write_record(&header).map_err(io)?;
    for r in records {
        let mut row = vec![
            r.x.to_string(),
            r.f.to_string(),
            format_sig(r.g),
            format_sig(r.e),
            format_sig(r.e_norm),
        ];
        if let Some(env) = envelope {
            match env.at(r.x as f64) {
                Some((lo, hi)) => row.extend([format_sig(lo), format_sig(hi)]),
                None => row.extend([String::new(), String::new()]),
            }
        }
        w.write_record(&row).map_err(io)?;
    }
    w.flush().map_err(|e| Error::Io(e.to_string()))?;
    Ok(())
}

pub fn export_csv(records: &[ScanRecord], path: &Path) -> Result<()> {
    export_csv_with(records, None, path)
}

pub fn export_csv_with(
    records: &[ScanRecord],
    envelope: Option<&Envelope>,
    path: &Path,
) -> Result<()> {
    let file =
        std::fs::File::create(path).map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
    write_csv(records, envelope, std::io::BufWriter::new(file))
}

/// Parses a file written by [`write_csv`] back into records.
pub fn read_csv(path: &Path) -> Result<Vec<ScanRecord>> {
    let mut rd = csv::Reader::from_path(path).map_err(|e| Error::Io(e.to_string()))?;
    let mut out = Vec::new();
    for row in rd.records() {
        let row = row.map_err(|e| Error::Io(e.to_string()))?;
        let num = |i: usize| -> Result<f64> {
            row.get(i)
                .and_then(|s| s.parse().ok())
                .ok_or_else(|| Error::Io(format!("bad field {i} in {row:?}")))
        };
        out.push(ScanRecord {
            x: row
                .get(0)
                .and_then(|s| s.parse().ok())
                .ok_or_else(|| Error::Io(format!("bad x in {row:?}")))?,
            f: row
                .get(1)
                .and_then(|s| s.parse().ok())
                .ok_or_else(|| Error::Io(format!("bad F in {row:?}")))?,
            g: num(2)?,
            e: num(3)?,
            e_norm: num(4)?,
        });
    }
    Ok(out)
}
