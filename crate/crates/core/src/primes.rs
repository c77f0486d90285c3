//! Small prime utilities: a plain Eratosthenes sieve and trial-division
//! factorization for single `u64` values.

/// All primes `p ≤ n`.
pub fn primes_up_to(n: u64) -> Vec<u64> {
    if n < 2 {
        return Vec::new();
    }
    let n = n as usize;
    let mut composite = vec![false; n + 1];
    let mut out = Vec::new();
    for i in 2..=n {
        if composite[i] {
            continue;
        }
        out.push(i as u64);
        let mut m = i.saturating_mul(i);
        while m <= n {
            composite[m] = true;
            m += i;
        }
    }
    out
}

/// Integer square root, exact for all `u64`.
pub fn isqrt(n: u64) -> u64 {
    let mut r = (n as f64).sqrt() as u64;
    while r.checked_mul(r).is_none_or(|v| v > n) {
        r -= 1;
    }
    while (r + 1).checked_mul(r + 1).is_some_and(|v| v <= n) {
        r += 1;
    }
    r
}

/// Prime factorization of `n` as `(p, e)` pairs in increasing `p`.
///
/// Trial division; fine for the sizes handled by `evaluate` and tests.
pub fn factorize_u64(mut n: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    let mut push = |p: u64, n: &mut u64| {
        let mut e = 0;
        while (*n).is_multiple_of(p) {
            *n /= p;
            e += 1;
        }
        if e > 0 {
            out.push((p, e));
        }
    };
    push(2, &mut n);
    push(3, &mut n);
    let mut p = 5u64;
    while p.saturating_mul(p) <= n {
        push(p, &mut n);
        push(p + 2, &mut n);
        p += 6;
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}
