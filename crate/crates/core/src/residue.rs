//! The least-residue recurrence that generates smooth arms, its length
//! function, and the construction of a smooth structure from a junction pair.
//!
//! Starting from `x_1 > 0`, `x_2 >= 0`, each later term is the least residue
//! of `-x_{i-2}` modulo `x_{i-1}`, so the sequence strictly decreases from
//! `x_2` on while positive and always reaches 0. The index of the last
//! positive term determines arm lengths: the coprime junction pair
//! `(a_1, b_1)` yields arms of lengths `len(2*b_1, a_1) - 1` and
//! `len(2*a_1, b_1) - 1`.

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::One;

use crate::structure::{ArithStructure, StructureError};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum PairError {
    #[error("junction pair ({a1},{b1}) is not coprime")]
    NotCoprime { a1: BigUint, b1: BigUint },
    #[error("pair produced an invalid structure: {0}")]
    Structure(#[from] StructureError),
}

/// Least residue of `-a` modulo `b`, the unique value in `[0, b)`.
/// For `b = 1` this is 0, which is what terminates arms.
pub fn least_negative_residue<T: Integer + Clone>(a: &T, b: &T) -> T {
    let r = a.mod_floor(b);
    if r.is_zero() {
        T::zero()
    } else {
        b.clone() - r
    }
}

/// The full sequence `x_1, x_2, ...` up to and including its first zero term.
pub fn residue_sequence<T: Integer + Clone>(x1: T, x2: T) -> Vec<T> {
    assert!(!x1.is_zero(), "residue sequence needs x1 > 0");
    let mut seq = vec![x1, x2];
    while !seq.last().unwrap().is_zero() {
        let next = least_negative_residue(&seq[seq.len() - 2], seq.last().unwrap());
        seq.push(next);
    }
    seq
}

/// Index of the last positive term of the residue sequence (1-based).
/// `residue_length(x, 0) = 1` for every `x > 0`.
pub fn residue_length<T: Integer + Clone>(x1: T, x2: T) -> u64 {
    assert!(!x1.is_zero(), "residue length needs x1 > 0");
    if x2.is_zero() {
        return 1;
    }
    let mut prev = x1;
    let mut cur = x2;
    let mut i = 2u64;
    loop {
        let next = least_negative_residue(&prev, &cur);
        if next.is_zero() {
            return i;
        }
        prev = cur;
        cur = next;
        i += 1;
    }
}

/// `residue_length(x1, x2)` if it is at most `cap`, otherwise `None`.
///
/// u64 fast path for the pair scans: arm lengths there are tiny, so bailing
/// out at the cap makes the per-pair cost O(cap) instead of O(x2).
pub fn residue_length_capped(x1: u64, x2: u64, cap: u64) -> Option<u64> {
    debug_assert!(x1 > 0);
    if x2 == 0 {
        return (cap >= 1).then_some(1);
    }
    let mut prev = x1;
    let mut cur = x2;
    let mut i = 2u64;
    loop {
        if i > cap {
            return None;
        }
        let r = prev % cur;
        let next = if r == 0 { 0 } else { cur - r };
        if next == 0 {
            return Some(i);
        }
        prev = cur;
        cur = next;
        i += 1;
    }
}

/// Closed form for `residue_length(4, x)`: `(x + e) / 4` with
/// `e = 4, 7, 6, 13` according to `x mod 4 = 0, 1, 2, 3`.
pub fn residue_length_base4(x: u64) -> u64 {
    assert!(x >= 1);
    let e = match x % 4 {
        0 => 4,
        1 => 7,
        2 => 6,
        _ => 13,
    };
    (x + e) / 4
}

/// One arm of the smooth structure generated by a junction pair: the entries
/// `x_2, x_3, ...` of the residue sequence, truncated before the first zero.
fn arm_from(x1: BigUint, x2: BigUint) -> Vec<BigUint> {
    let seq = residue_sequence(x1, x2);
    seq[1..seq.len() - 1].to_vec()
}

/// Build the unique smooth structure with junction labels `(a_1, b_1)`.
///
/// The a-arm continues `a_1` by the residue recurrence seeded with `2 b_1`
/// (the doubled edge), and symmetrically for the b-arm; the result is
/// canonical, valid, and smooth, with shape
/// `(residue_length(2 b_1, a_1) - 1, residue_length(2 a_1, b_1) - 1)`.
pub fn smooth_from_pair(a1: &BigUint, b1: &BigUint) -> Result<ArithStructure, PairError> {
    if !a1.gcd(b1).is_one() {
        return Err(PairError::NotCoprime {
            a1: a1.clone(),
            b1: b1.clone(),
        });
    }
    let a = arm_from(b1 * 2u32, a1.clone());
    let b = arm_from(a1 * 2u32, b1.clone());
    Ok(ArithStructure::new(a, b)?)
}
