mod common;

use common::*;
use fakemu::factor::*;
use fakemu::sieve::{Sieve, SieveConfig};
use fakemu::{normalize, EpsilonSequence};
use num_bigint::BigInt;
use proptest::prelude::*;

fn entries(max: usize) -> impl Strategy<Value = Vec<i64>> {
    prop::collection::vec(-1i64..=1, 0..=max)
}

fn raw_sequence() -> impl Strategy<Value = (Vec<i64>, Vec<i64>)> {
    (entries(8), prop::collection::vec(-1i64..=1, 1..=4))
}

fn nontrivial() -> impl Strategy<Value = EpsilonSequence> {
    raw_sequence()
        .prop_map(|(p, q)| normalize(&p, &q).unwrap())
        .prop_filter("nontrivial", |e| !e.classify().is_trivial())
}

fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

/// Ω(n) by plain trial division.
fn big_omega(mut n: u64) -> u32 {
    let mut count = 0;
    let mut d = 2;
    while d * d <= n {
        while n.is_multiple_of(d) {
            n /= d;
            count += 1;
        }
        d += 1;
    }
    count + (n > 1) as u32
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn multiplicative_on_coprime_pairs(pick in any::<prop::sample::Index>(), m in 1u64..=10_000, n in 1u64..=10_000) {
        prop_assume!(gcd(m, n) == 1);
        let all = presets();
        let (_, eps) = &all[pick.index(all.len())];
        prop_assert_eq!(
            eps.evaluate(m * n).unwrap(),
            eps.evaluate(m).unwrap() * eps.evaluate(n).unwrap()
        );
    }

    #[test]
    fn encodings_normalize_alike((p, q) in raw_sequence(), rot in 0usize..4, rep in 1usize..4) {
        let a = normalize(&p, &q).unwrap();
        let r = rot % q.len();
        let mut p2 = p.clone();
        p2.extend_from_slice(&q[..r]);
        let mut q2: Vec<i64> = q[r..].iter().chain(&q[..r]).copied().collect();
        q2 = q2.repeat(rep);
        let b = normalize(&p2, &q2).unwrap();
        prop_assert_eq!(&a, &b);
        prop_assert_eq!(a.classify(), b.classify());
        for j in 1..40 {
            let raw = |pre: &[i64], per: &[i64]| {
                if j <= pre.len() { pre[j - 1] } else { per[(j - 1 - pre.len()) % per.len()] }
            };
            prop_assert_eq!(a.at(j) as i64, raw(&p, &q));
            prop_assert_eq!(b.at(j) as i64, raw(&p2, &q2));
        }
    }

    #[test]
    fn tail_bound_holds(eps in nontrivial()) {
        if let Ok(fz) = factorize::<BigInt>(&eps, None) {
            prop_assert!(fz.tail_bound_holds());
        }
    }

    #[test]
    fn representation_counts_match_enumeration(eps in nontrivial()) {
        if let Ok(out) = run_algorithm1(&eps) {
            let ell = out.critical_index;
            let parts = &out.principal_indices;
            let counts = representation_counts(parts, ell);
            // Count solutions of Σ α_i c_i = j by recursion over the parts.
            fn brute(parts: &[usize], j: usize) -> u64 {
                match parts.split_first() {
                    None => (j == 0) as u64,
                    Some((&c, rest)) => (0..=j / c).map(|a| brute(rest, j - a * c)).sum(),
                }
            }
            for (j, &n) in counts.iter().enumerate() {
                prop_assert_eq!(n, brute(parts, j));
            }
            for step in &out.trace.steps {
                let before: Vec<usize> = parts.iter().copied().filter(|&c| c < step.j).collect();
                prop_assert_eq!(step.n_j, brute(&before, step.j));
            }
            prop_assert_eq!(out.n_ell, counts[ell]);
        }
    }

    #[test]
    fn inclusion_exclusion(eps in nontrivial()) {
        if let Ok(out) = run_algorithm1(&eps) {
            let ell = out.critical_index;
            let c = &out.principal_indices;
            let m = c.len();
            let theta = &out.trace.theta[m];
            for (j, &th) in theta.iter().enumerate().take(2 * ell + 1) {
                let mut direct = 0i64;
                for mask in 0u32..(1 << m) {
                    let s: usize = (0..m).filter(|i| mask & (1 << i) != 0).map(|i| c[i]).sum();
                    if s <= j {
                        let sign = if mask.count_ones() % 2 == 0 { 1 } else { -1 };
                        direct += sign * eps.at(j - s) as i64;
                    }
                }
                prop_assert_eq!(th, direct, "j={}", j);
            }
        }
    }

    #[test]
    fn one_step_matches_convolution(
        t in 1usize..=4,
        body in prop::collection::vec(-3i64..=3, 24),
    ) {
        let mut etas = body.clone();
        for v in etas.iter_mut().take(t - 1) {
            *v = 0;
        }
        prop_assume!(etas[t - 1] != 0);
        let local = LocalFactor::<i64>::new(&etas);
        let (e, next) = local.one_step_factor().unwrap();
        prop_assert_eq!(e, etas[t - 1]);
        // (1 − X^t)^e as a truncated series, then naive convolution.
        let len = 25;
        let mut factor = vec![0i64; len];
        factor[0] = 1;
        for _ in 0..e.unsigned_abs() {
            let mut out = vec![0i64; len];
            for i in 0..len {
                if e > 0 {
                    out[i] = factor[i] - if i >= t { factor[i - t] } else { 0 };
                } else {
                    out[i] = (0..=i / t).map(|m| factor[i - m * t]).sum();
                }
            }
            factor = out;
        }
        let series: Vec<i64> = std::iter::once(1).chain(etas.iter().copied()).collect();
        for j in 0..len {
            let conv: i64 = (0..=j).map(|i| series[i] * factor[j - i]).sum();
            prop_assert_eq!(next.series()[j], conv, "j={}", j);
        }
        prop_assert!(next.start() > t);
    }
}

#[test]
fn sieve_agrees_with_evaluate_to_a_million() {
    let cfg = SieveConfig {
        segment_len: 1 << 18,
        max_n: 1 << 40,
    };
    for (name, eps) in presets() {
        let vals = Sieve::new(&eps, cfg).values(1, 1_000_001).unwrap();
        for (i, &v) in vals.iter().enumerate() {
            let n = i as u64 + 1;
            assert_eq!(v, eps.evaluate(n).unwrap(), "{name} n={n}");
        }
    }
}

#[test]
fn liouville_is_parity_of_omega() {
    let lambda = liouville();
    for n in 1..=100_000u64 {
        let want = if big_omega(n).is_multiple_of(2) {
            1
        } else {
            -1
        };
        assert_eq!(lambda.evaluate(n).unwrap(), want, "n={n}");
    }
}
