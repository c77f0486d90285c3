//! Critical index and principal indices of powerfree- and powerfull-type
//! sequences, with a full execution trace.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::sequence::{Classification, EpsilonSequence};

/// Default upper limit on the critical index.
pub const DEFAULT_CAP: usize = 64;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum StepAction {
    /// Neither condition fired.
    Continue,
    /// `n_j = 0` and `ε_j = 1`: j becomes a principal index.
    AddPrincipal,
    /// `n_j > ε_j`: j is the critical index.
    Stop,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TraceStep {
    pub j: usize,
    pub n_j: u64,
    pub action: StepAction,
}

/// `(r_m, s_m, t_m)` for one level, `None` when not found inside the window.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LevelTriple {
    pub m: usize,
    pub r: Option<usize>,
    pub s: Option<usize>,
    pub t: Option<usize>,
}

impl LevelTriple {
    pub fn min(&self) -> Option<usize> {
        [self.r, self.s, self.t].into_iter().flatten().min()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AlgorithmTrace {
    pub steps: Vec<TraceStep>,
    /// `theta[m][j]` for `0 ≤ m ≤ M`, `0 ≤ j ≤ 2ℓ`: ε convolved with
    /// `∏_{i≤m} (1 − X^{c_i})`.
    pub theta: Vec<Vec<i64>>,
    /// One triple per level `1 ≤ m ≤ M`, searched over `1 ≤ j ≤ 2ℓ`.
    pub triples: Vec<LevelTriple>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AlgorithmOutput {
    pub critical_index: usize,
    pub principal_indices: Vec<usize>,
    /// Number of representations of ℓ from the principal indices.
    pub n_ell: u64,
    pub eps_ell: i8,
    pub trace: AlgorithmTrace,
}

/// `counts[j]` = number of representations of `j` as a nonnegative
/// combination of `parts`, for `0 ≤ j ≤ len`.
pub fn representation_counts(parts: &[usize], len: usize) -> Vec<u64> {
    let mut counts = vec![0u64; len + 1];
    counts[0] = 1;
    for &c in parts {
        for j in c..=len {
            counts[j] = counts[j].saturating_add(counts[j - c]);
        }
    }
    counts
}

/// Runs the critical-index algorithm with the default cap.
pub fn run_algorithm1(eps: &EpsilonSequence) -> Result<AlgorithmOutput> {
    run_algorithm1_capped(eps, DEFAULT_CAP)
}

pub fn run_algorithm1_capped(eps: &EpsilonSequence, cap: usize) -> Result<AlgorithmOutput> {
    let c1 = match eps.classify() {
        Classification::PowerfreeType { .. } | Classification::PowerfullType { .. } => {
            eps.initial_index().expect("nontrivial")
        }
        other => {
            return Err(Error::Unsupported(format!(
                "critical-index algorithm needs a powerfree- or powerfull-type sequence, got {}",
                other.name()
            )))
        }
    };
    let mut principal = vec![c1];
    let mut steps = Vec::new();
    let mut j = c1 + 1;
    let (ell, n_ell) = loop {
        if j > cap {
            return Err(Error::CriticalIndexCap(cap));
        }
        let n_j = representation_counts(&principal, j)[j];
        let e = eps.at(j) as i64;
        let mut action = StepAction::Continue;
        if n_j == 0 && e == 1 {
            principal.push(j);
            action = StepAction::AddPrincipal;
        }
        if (n_j as i64) > e {
            steps.push(TraceStep {
                j,
                n_j,
                action: StepAction::Stop,
            });
            break (j, n_j);
        }
        steps.push(TraceStep { j, n_j, action });
        j += 1;
    };

    let window = 2 * ell;
    let mut theta = vec![(0..=window).map(|j| eps.at(j) as i64).collect::<Vec<_>>()];
    for &c in &principal {
        let prev = theta.last().unwrap();
        let next: Vec<i64> = (0..=window)
            .map(|j| prev[j] - if j >= c { prev[j - c] } else { 0 })
            .collect();
        theta.push(next);
    }

    let triples = (1..=principal.len())
        .map(|m| {
            let counts = representation_counts(&principal[..m], window);
            let find = |pred: &dyn Fn(usize) -> bool| (1..=window).find(|&j| pred(j));
            LevelTriple {
                m,
                r: find(&|j| eps.at(j) != 0 && counts[j] == 0),
                s: find(&|j| eps.at(j) != 1 && counts[j] == 1),
                t: find(&|j| counts[j] >= 2),
            }
        })
        .collect();

    Ok(AlgorithmOutput {
        critical_index: ell,
        principal_indices: principal,
        n_ell,
        eps_ell: eps.at(ell),
        trace: AlgorithmTrace {
            steps,
            theta,
            triples,
        },
    })
}
