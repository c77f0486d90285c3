#![allow(dead_code)]

pub mod zeta_grid;

use fakemu::EpsilonSequence;

pub fn seq(prefix: &[i64], period: &[i64]) -> EpsilonSequence {
    fakemu::normalize(prefix, period).unwrap()
}

pub fn mu() -> EpsilonSequence {
    seq(&[-1], &[0])
}

pub fn liouville() -> EpsilonSequence {
    seq(&[], &[-1, 1])
}

/// (−1)^j below k, zero from k on.
pub fn tanaka(k: usize) -> EpsilonSequence {
    let p: Vec<i64> = (1..k).map(|j| if j % 2 == 0 { 1 } else { -1 }).collect();
    seq(&p, &[0])
}

pub fn kfree(k: usize) -> EpsilonSequence {
    seq(&vec![1; k - 1], &[0])
}

pub fn apostol(k: usize) -> EpsilonSequence {
    let mut p = vec![1; k - 1];
    p.push(-1);
    seq(&p, &[0])
}

pub fn kfull(k: usize) -> EpsilonSequence {
    seq(&vec![0; k - 1], &[1])
}

pub fn bege(k: usize, m: usize) -> EpsilonSequence {
    let mut p = vec![0; m];
    for v in p.iter_mut().take(k - 1) {
        *v = 1;
    }
    p[m - 1] = -1;
    seq(&p, &[0])
}

/// ε = 1 below k, −1 on [k, 2k−1], then 0; Dirichlet series ζ(s)/ζ(ks)².
pub fn gk(k: usize) -> EpsilonSequence {
    let mut p = vec![1; k - 1];
    p.extend(std::iter::repeat_n(-1, k));
    seq(&p, &[0])
}

/// ε_j = 1 exactly when j is a nonnegative combination of k and k2.
pub fn lcm_family(k: usize, k2: usize) -> EpsilonSequence {
    let g = gcd(k, k2);
    let len = (k * k2 / g + k + k2).div_ceil(g) * g;
    let p: Vec<i64> = (1..=len)
        .map(|j| (0..=j / k).any(|a| (j - a * k).is_multiple_of(k2)) as i64)
        .collect();
    let mut period = vec![0; g];
    period[g - 1] = 1;
    seq(&p, &period)
}

pub fn gcd(a: usize, b: usize) -> usize {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

/// Named corpus used by the corpus-wide property tests.
pub fn presets() -> Vec<(String, EpsilonSequence)> {
    let mut v = vec![
        ("mu".to_string(), mu()),
        ("lambda".to_string(), liouville()),
    ];
    for k in 3..=7 {
        v.push((format!("tanaka:{k}"), tanaka(k)));
    }
    for k in 2..=6 {
        v.push((format!("kfree:{k}"), kfree(k)));
    }
    for k in 1..=4 {
        v.push((format!("apostol:{k}"), apostol(k)));
    }
    for k in 2..=4 {
        v.push((format!("kfull:{k}"), kfull(k)));
    }
    for (k, m) in [(2, 3), (2, 5), (3, 4)] {
        v.push((format!("bege:{k},{m}"), bege(k, m)));
    }
    for k in 1..=4 {
        v.push((format!("gk:{k}"), gk(k)));
    }
    for (k, k2) in [(2, 3), (3, 4), (2, 5), (3, 5)] {
        v.push((format!("lcm:{k},{k2}"), lcm_family(k, k2)));
    }
    v
}

/// Deterministic corpus of nontrivial random ε-sequences: prefix length
/// 0..=8, period length 1..=4, entries in {−1, 0, 1}.
pub fn random_corpus(count: usize, seed: u64) -> Vec<EpsilonSequence> {
    use rand::{Rng, SeedableRng};
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::with_capacity(count);
    while out.len() < count {
        let a = rng.gen_range(0..=8usize);
        let b = rng.gen_range(1..=4usize);
        let prefix: Vec<i64> = (0..a).map(|_| rng.gen_range(-1..=1)).collect();
        let period: Vec<i64> = (0..b).map(|_| rng.gen_range(-1..=1)).collect();
        let eps = seq(&prefix, &period);
        if !eps.classify().is_trivial() {
            out.push(eps);
        }
    }
    out
}

pub const CORPUS_SEED: u64 = 0x5eed_f00d;
