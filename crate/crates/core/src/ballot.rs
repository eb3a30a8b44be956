//! Exact binomial, Catalan, and ballot-number combinatorics, plus the
//! lattice-path oracle used to cross-check them.
//!
//! `extension_count(n, k)` weights how many arms of length `n` descend from a
//! smooth arm of length `k`; everything here is exact integer arithmetic.

use num_bigint::BigUint;
use num_traits::{One, Zero};

/// Binomial coefficient `n choose k`, exact. Returns 0 when `k > n`.
///
/// Multiplicative evaluation with an exact division at every step: after
/// multiplying by `n-k+i` the running product is divisible by `i`, so no
/// intermediate blowup and no floats.
pub fn binomial(n: u64, k: u64) -> BigUint {
    if k > n {
        return BigUint::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigUint::one();
    for i in 1..=k {
        acc *= BigUint::from(n - k + i);
        acc /= BigUint::from(i);
    }
    acc
}

/// The Catalan number `binom(2n, n) / (n + 1)`.
pub fn catalan(n: u64) -> BigUint {
    binomial(2 * n, n) / BigUint::from(n + 1)
}

/// Ballot number `B(s, t) = ((s - t + 1) / (s + 1)) * binom(s + t, s)`,
/// defined for `s >= t >= 0`.
pub fn ballot(s: u64, t: u64) -> BigUint {
    assert!(s >= t, "ballot numbers require s >= t");
    let num = binomial(s + t, s) * BigUint::from(s - t + 1);
    let den = BigUint::from(s + 1);
    debug_assert!((&num % &den).is_zero());
    num / den
}

/// `C(n, k) = (k / n) * binom(2n - k - 1, n - 1)`: the number of ways an arm
/// of length `k` extends to an arm of length `n`. Zero outside `1 <= k <= n`.
pub fn extension_count(n: u64, k: i64) -> BigUint {
    assert!(n >= 1, "extension_count requires n >= 1");
    if k < 1 || k as u64 > n {
        return BigUint::zero();
    }
    let k = k as u64;
    let num = binomial(2 * n - k - 1, n - 1) * BigUint::from(k);
    let den = BigUint::from(n);
    debug_assert!((&num % &den).is_zero());
    num / den
}

/// All of `C(n, 1) ..= C(n, n)` in one pass.
///
/// Walks down from `C(n, n) = 1` using
/// `C(n, k) = C(n, k + 1) * k * (2n - k - 1) / ((k + 1)(n - k))`,
/// so a full row costs O(n) big-integer operations instead of O(n^2).
pub fn extension_count_row(n: u64) -> Vec<BigUint> {
    assert!(n >= 1, "extension_count_row requires n >= 1");
    let n_us = n as usize;
    let mut row = vec![BigUint::zero(); n_us];
    row[n_us - 1] = BigUint::one();
    for k in (1..n).rev() {
        let num = &row[k as usize] * BigUint::from(k * (2 * n - k - 1));
        let den = BigUint::from((k + 1) * (n - k));
        debug_assert!((&num % &den).is_zero());
        row[k as usize - 1] = num / den;
    }
    row
}

/// Monotone lattice paths from (0, 0) to (`right`, `up`) that never enter the
/// region x > y.
///
/// Straight dynamic-programming table fill; this is the independent oracle for
/// `extension_count` and `catalan`, so it deliberately shares no code with the
/// binomial formulas.
pub fn lattice_path_count(right: u64, up: u64) -> BigUint {
    if right > up {
        return BigUint::zero();
    }
    let (right, up) = (right as usize, up as usize);
    let mut table = vec![vec![BigUint::zero(); up + 1]; right + 1];
    for x in 0..=right {
        for y in 0..=up {
            if x > y {
                continue;
            }
            if x == 0 && y == 0 {
                table[x][y] = BigUint::one();
                continue;
            }
            let mut ways = BigUint::zero();
            if x > 0 {
                ways += &table[x - 1][y];
            }
            if y > 0 {
                ways += &table[x][y - 1];
            }
            table[x][y] = ways;
        }
    }
    table[right][up].clone()
}
