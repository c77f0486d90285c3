mod common;

use common::*;
use fakemu::analysis::{evaluate_Df, EulerOptions};
use fakemu::factor::factorize;
use fakemu::sieve::{Sieve, SieveConfig};
use num_complex::Complex;

/// `D_f(s)` against `Σ_{n≤N} f(n) n^{-s}`, allowing the crude tail bound
/// `N^{1−σ}/(σ−1)` on top of the tolerance.
#[test]
fn euler_product_matches_partial_sums() {
    const N: u64 = 2_000_000;
    let points = [
        Complex::new(1.5, 0.0),
        Complex::new(2.0, 0.0),
        Complex::new(2.5, 0.0),
        Complex::new(3.0, 1.0),
    ];
    let cfg = SieveConfig {
        segment_len: 1 << 20,
        max_n: 1 << 40,
    };
    for (name, eps) in presets() {
        let fz = factorize::<i64>(&eps, None).unwrap();
        let f = Sieve::new(&eps, cfg).values(1, N + 1).unwrap();
        for s in points {
            // Sum from the small end backwards to keep the rounding down.
            let mut partial = Complex::new(0.0, 0.0);
            for (i, &v) in f.iter().enumerate().rev() {
                if v != 0 {
                    let n = (i + 1) as f64;
                    partial += Complex::new(v as f64, 0.0) * (-s * n.ln()).exp();
                }
            }
            let d = evaluate_Df(&fz, s, &EulerOptions::default()).unwrap();
            let sigma = s.re;
            let tail = (N as f64).powf(1.0 - sigma) / (sigma - 1.0);
            let err = (d - partial).norm();
            assert!(
                err <= tail + 1e-6,
                "{name} at {s}: D = {d}, partial = {partial}, err {err:e}"
            );
        }
    }
}
