mod common;

use common::*;
use fakemu::factor::*;
use fakemu::{Classification, EpsilonSequence, Factorization};
use num_bigint::BigInt;

fn exps(eps: &EpsilonSequence) -> Vec<(usize, i64)> {
    factorize::<i64>(eps, None).unwrap().nonzero_exponents()
}

/// Nonzero exponents through `upto` after continuing the elimination, and
/// whether the remaining factor vanishes identically.
fn extended(eps: &EpsilonSequence, upto: usize) -> (Vec<(usize, i64)>, bool) {
    let fz = factorize::<i64>(eps, Some(upto.max(64))).unwrap();
    let (a, rest) = fz.extend(upto).unwrap();
    let nz = (1..a.len())
        .filter(|&j| a[j] != 0)
        .map(|j| (j, a[j]))
        .collect();
    (nz, rest.is_one())
}

#[test]
fn tanaka_identity() {
    for k in [3usize, 5, 7] {
        let eps = tanaka(k);
        assert_eq!(exps(&eps), vec![(1, -1), (2, 1)]);
        let (nz, one) = extended(&eps, 4 * k);
        assert_eq!(nz, vec![(1, -1), (2, 1), (k, 1), (2 * k, -1)], "k={k}");
        assert!(one);
    }
}

#[test]
fn kfree_identity() {
    for k in 2..=6 {
        let fz = factorize::<i64>(&kfree(k), None).unwrap();
        assert_eq!(fz.nonzero_exponents(), vec![(1, 1), (k, -1)]);
        assert_eq!(fz.critical_index(), k);
        assert_eq!(fz.principal_indices(), &[1]);
        assert!(fz.residual_is_one().unwrap());
    }
}

#[test]
fn squarefull_identity() {
    let fz = factorize::<i64>(&kfull(2), None).unwrap();
    assert_eq!(fz.nonzero_exponents(), vec![(2, 1), (3, 1), (6, -1)]);
    assert!(fz.residual_is_one().unwrap());
}

#[test]
fn cubefull_display() {
    let fz = factorize::<i64>(&kfull(3), None).unwrap();
    assert_eq!(fz.critical_index(), 8);
    assert_eq!(fz.principal_indices(), &[3, 4, 5]);
    assert_eq!(
        fz.nonzero_exponents(),
        vec![
            (3, 1),
            (4, 1),
            (5, 1),
            (8, -1),
            (9, -1),
            (10, -1),
            (13, 1),
            (14, 1)
        ]
    );
}

#[test]
fn fourfull_display() {
    let fz = factorize::<i64>(&kfull(4), None).unwrap();
    assert_eq!(fz.critical_index(), 10);
    assert_eq!(
        fz.nonzero_exponents(),
        vec![
            (4, 1),
            (5, 1),
            (6, 1),
            (7, 1),
            (10, -1),
            (11, -1),
            (12, -2),
            (13, -1),
            (14, -1),
            (16, 1),
            (17, 2),
            (18, 2),
            (19, 2),
            (20, 1)
        ]
    );
}

#[test]
fn lcm_family_identity() {
    for (k, k2) in [(2, 3), (3, 4), (2, 5)] {
        let l = k * k2 / gcd(k, k2);
        let fz = factorize::<i64>(&lcm_family(k, k2), None).unwrap();
        assert_eq!(fz.critical_index(), l);
        assert_eq!(fz.principal_indices(), &[k, k2]);
        assert_eq!(fz.nonzero_exponents(), vec![(k, 1), (k2, 1), (l, -1)]);
        assert!(fz.residual_is_one().unwrap(), "({k},{k2})");
    }
}

#[test]
fn g_k_and_apostol() {
    let fz = factorize::<i64>(&gk(2), None).unwrap();
    assert_eq!(fz.nonzero_exponents(), vec![(1, 1), (2, -2)]);
    assert!(fz.residual_is_one().unwrap());
    let fz = factorize::<i64>(&apostol(2), None).unwrap();
    assert_eq!(
        fz.nonzero_exponents(),
        vec![(1, 1), (2, -2), (3, 1), (4, -1)]
    );
    assert!(!fz.residual_is_one().unwrap());
    assert!(verify_factorization(&apostol(2), &fz, 10_000).unwrap().ok);
}

#[test]
fn bigint_and_i64_agree_on_presets() {
    for (name, eps) in presets() {
        let small = factorize::<i64>(&eps, None).unwrap();
        let big: Factorization = factorize::<BigInt>(&eps, None).unwrap();
        let a: Vec<(usize, i64)> = big
            .nonzero_exponents()
            .into_iter()
            .map(|(j, v)| (j, i64::try_from(v).unwrap()))
            .collect();
        assert_eq!(a, small.nonzero_exponents(), "{name}");
    }
}

fn check_dual_paths(name: &str, eps: &EpsilonSequence) {
    let idx = index_data(eps, DEFAULT_CAP).unwrap();
    let ell = idx.critical_index;
    let j_max = effective_j_max(ell, None);
    let (elim, rest) = elimination_path::<BigInt>(eps, 2 * ell, j_max).unwrap();
    let closed = closed_form_exponents::<BigInt>(eps, &idx).unwrap();
    assert_eq!(elim[..=2 * ell], closed[..], "{name}");
    let series = residual_series::<BigInt>(eps, &closed, j_max).unwrap();
    assert_eq!(rest.series(), &series[..], "{name}");
    let fz = factorize::<BigInt>(eps, None).unwrap();
    assert_eq!(fz.critical_index(), ell);
    assert_eq!(fz.principal_indices(), &idx.principal_indices[..]);
    assert!(fz.tail_bound_holds(), "{name}");
    assert!(fz.residual().start() > 2 * ell);
}

#[test]
fn elimination_matches_closed_forms() {
    for (name, eps) in presets() {
        check_dual_paths(&name, &eps);
    }
    for (i, eps) in random_corpus(200, CORPUS_SEED).iter().enumerate() {
        check_dual_paths(&format!("random #{i} {eps}"), eps);
    }
}

#[test]
fn oracle_on_presets_and_corpus() {
    let mut all = presets();
    all.extend(
        random_corpus(200, CORPUS_SEED)
            .into_iter()
            .enumerate()
            .map(|(i, e)| (format!("random #{i}"), e)),
    );
    for (name, eps) in all {
        let fz = factorize::<BigInt>(&eps, None).unwrap();
        let rep = verify_factorization(&eps, &fz, 10_000).unwrap();
        assert!(rep.ok, "{name} {eps}: {rep:?}");
        assert_eq!(rep.checked_up_to, 10_000);
    }
}

#[test]
fn coefficient_examples() {
    let c = coefficients_of_factorization(&factorize::<i64>(&kfree(2), None).unwrap(), 12).unwrap();
    assert_eq!(c[1..], [1, 1, 1, 0, 1, 1, 1, 0, 0, 1, 1, 0]);
    let c = coefficients_of_factorization(&factorize::<i64>(&kfull(2), None).unwrap(), 9).unwrap();
    assert_eq!(c[1..], [1, 0, 0, 1, 0, 0, 0, 1, 1]);
    let c = coefficients_of_factorization(&factorize::<i64>(&mu(), None).unwrap(), 6).unwrap();
    assert_eq!(c[1..], [1, -1, -1, 0, -1, 1]);
}

#[test]
fn perturbed_exponent_is_caught() {
    let fz = factorize::<i64>(&mu(), None).unwrap();
    let bad = fz.clone().with_exponent(2, 1);
    let rep = verify_factorization(&mu(), &bad, 1000).unwrap();
    assert!(!rep.ok);
    assert_eq!(rep.first_mismatch, Some(4));
    assert!(verify_factorization(&mu(), &fz, 1).unwrap().ok);
}

#[test]
fn mobius_type_exponents_copy_epsilon() {
    let mut all = presets();
    all.extend(
        random_corpus(200, CORPUS_SEED)
            .into_iter()
            .map(|e| (e.to_string(), e)),
    );
    for (name, eps) in all {
        if let Classification::MobiusType { k } = eps.classify() {
            let fz = factorize::<BigInt>(&eps, None).unwrap();
            assert_eq!(fz.critical_index(), k, "{name}");
            for j in 1..=2 * k {
                let want = if j < k { 0 } else { eps.at(j) as i64 };
                assert_eq!(fz.exponent(j), BigInt::from(want), "{name} j={j}");
            }
        }
    }
}

#[test]
fn powerfree_type_exponents() {
    let mut all = presets();
    all.extend(
        random_corpus(200, CORPUS_SEED)
            .into_iter()
            .map(|e| (e.to_string(), e)),
    );
    for (name, eps) in all {
        if let Classification::PowerfreeType { k } = eps.classify() {
            let fz = factorize::<i64>(&eps, None).unwrap();
            let e = |j: usize| eps.at(j) as i64;
            let mut want = vec![0i64; 2 * k + 1];
            want[1] += 1;
            want[k] += -(1 + e(k).abs());
            for (j, w) in want.iter_mut().enumerate().take(2 * k).skip(k + 1) {
                *w = e(j) - e(j - 1);
            }
            want[2 * k] = e(2 * k) - e(2 * k - 1) - e(k).abs();
            for (j, &w) in want.iter().enumerate().skip(1) {
                assert_eq!(fz.exponent(j), w, "{name} j={j}");
            }
        }
    }
}

/// `a_j` for the k-full indicator by enumerating all subsets of `{1..k}`.
fn kfull_brute(k: usize, j: usize) -> i64 {
    let mut total = 0i64;
    for mask in 0u32..(1 << k) {
        let t = mask.count_ones();
        let sum: usize = (1..=k)
            .filter(|i| mask & (1 << (i - 1)) != 0)
            .map(|i| k + i - 1)
            .sum();
        let hit = (j >= sum + k) as i64 + (j == sum) as i64;
        total += if t % 2 == 0 { hit } else { -hit };
    }
    total
}

#[test]
fn kfull_exponent_formulas() {
    for k in 5..=12 {
        let fz = factorize::<i64>(&kfull(k), None).unwrap();
        assert_eq!(fz.critical_index(), 2 * k + 2);
        for j in 2 * k + 3..=4 * k + 4 {
            let closed = kfull_exponents(k, j).unwrap();
            assert_eq!(closed, fz.exponent(j), "k={k} j={j}");
            assert_eq!(closed, kfull_brute(k, j), "k={k} j={j}");
            if j < 3 * k {
                assert_eq!(closed, k as i64 - (j / 2) as i64);
            }
        }
        assert_eq!(fz.exponent(2 * k), 0);
        assert_eq!(fz.exponent(2 * k + 1), 0);
        assert_eq!(fz.exponent(2 * k + 2), -1);
    }
}

#[test]
fn algorithm_examples() {
    let out = run_algorithm1(&kfull(3)).unwrap();
    assert_eq!(
        (out.critical_index, out.principal_indices.clone()),
        (8, vec![3, 4, 5])
    );
    for k in 2..=6 {
        let out = run_algorithm1(&kfree(k)).unwrap();
        assert_eq!((out.critical_index, out.principal_indices), (k, vec![1]));
    }
    // k = 3, h = 2: ε = (0, 0, 1, ε_4, −1, …)
    for e4 in [0i64, 1] {
        let eps = seq(&[0, 0, 1, e4, -1], &[0]);
        let out = run_algorithm1(&eps).unwrap();
        assert_eq!(out.critical_index, 5);
        let want: Vec<usize> = if e4 == 1 { vec![3, 4] } else { vec![3] };
        assert_eq!(out.principal_indices, want);
    }
    let out = run_algorithm1(&lcm_family(2, 3)).unwrap();
    assert_eq!((out.critical_index, out.principal_indices), (6, vec![2, 3]));
    assert!(run_algorithm1(&mu()).is_err());
}
