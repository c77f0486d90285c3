//! Closed forms for the exponents of the k-full indicator beyond its
//! critical index `2k + 2`.

use crate::error::{Error, Result};

fn floor_quarter_sq(x: i64) -> i64 {
    (x * x).div_euclid(4)
}

fn binom2(n: i64) -> i64 {
    if n < 2 {
        0
    } else {
        n * (n - 1) / 2
    }
}

fn s_t(t: usize, k: i64, j: i64) -> i64 {
    match t {
        0 => 1,
        1 => k.min(j - 2 * k + 1),
        2 => {
            if j <= 3 * k {
                0
            } else if j < 4 * k {
                floor_quarter_sq(j - 3 * k + 1)
            } else {
                floor_quarter_sq(j - 3 * k + 1) - binom2(j - 4 * k + 2)
            }
        }
        3 => (j - 4 * k - 2).max(0),
        _ => 0,
    }
}

fn t_t(t: usize, k: i64, j: i64) -> i64 {
    match t {
        2 => {
            if j <= 4 * k - 2 {
                (k - (j - 3 * k + 1).abs()).div_euclid(2)
            } else {
                0
            }
        }
        3 => {
            // nearest integer to (j − 3k)²/12; never a tie since squares are
            // not ≡ 6 mod 12
            let nearest = |x: i64| (x * x + 6).div_euclid(12);
            if j <= 3 * k {
                0
            } else if j <= 4 * k {
                nearest(j - 3 * k)
            } else {
                nearest(j - 3 * k) - floor_quarter_sq(j - 4 * k + 1)
            }
        }
        _ => 0,
    }
}

/// `a_j` for the k-full indicator, `k ≥ 5` and `2k+3 ≤ j ≤ 4k+4`, as
/// `Σ_{t=0}^{3} (−1)^t (S_t(j) + T_t(j))`.
pub fn kfull_exponents(k: usize, j: usize) -> Result<i64> {
    if k < 5 {
        return Err(Error::OutOfRange(format!("k = {k} must be at least 5")));
    }
    if j < 2 * k + 3 || j > 4 * k + 4 {
        return Err(Error::OutOfRange(format!(
            "j = {j} must lie in [{}, {}]",
            2 * k + 3,
            4 * k + 4
        )));
    }
    let (k, j) = (k as i64, j as i64);
    Ok((0..=3)
        .map(|t| {
            let sign = if t % 2 == 0 { 1 } else { -1 };
            sign * (s_t(t, k, j) + t_t(t, k, j))
        })
        .sum())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn low_range_simplifies() {
        for k in 5..=12 {
            for j in 2 * k + 3..=3 * k - 1 {
                assert_eq!(kfull_exponents(k, j).unwrap(), k as i64 - (j / 2) as i64);
            }
            assert_eq!(kfull_exponents(k, 2 * k + 3).unwrap(), -1);
        }
    }

    #[test]
    fn range_checked() {
        assert!(kfull_exponents(4, 12).is_err());
        assert!(kfull_exponents(5, 12).is_err());
        assert!(kfull_exponents(5, 25).is_err());
    }
}
