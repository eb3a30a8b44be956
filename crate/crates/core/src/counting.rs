//! Closed-form counts of smooth and total structures for arm lengths up to 3,
//! the convolution that turns smooth counts into total counts, and exact
//! asymptotic constants.
//!
//! The total count on shape (m, n) is
//! `sum over (m', n') of C(m, m') C(n, n') * smooth(m', n')`
//! with `C = extension_count`. Closed forms exist for m = 1, 2, 3; their
//! validity ranges are pinned here (below range the convolution is the
//! authority, and the two routes are tested equal everywhere both apply).

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

use crate::ballot::{binomial, catalan, extension_count_row};

/// Exact rational used for asymptotic constants and ratio diagnostics.
/// Always stored reduced with a positive denominator.
pub type ExactRational = BigRational;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum CountingError {
    #[error("shape arms must both be at least 1")]
    InvalidShape,
    #[error("no closed-form smooth count for arm length {m}; use enumeration")]
    UnsupportedFamily { m: u32 },
    #[error("closed form for family {family} needs n >= {min_n} (got {n}); use the convolution")]
    ClosedFormRange { family: u32, n: u32, min_n: u32 },
    #[error("{what} needs an argument >= {min} (got {got})")]
    ArgumentRange {
        what: &'static str,
        min: u32,
        got: u32,
    },
    #[error("smooth count for ({m},{n}) missing from the table")]
    MissingEntry { m: u32, n: u32 },
    #[error("closed form for family {family} at n = {n} did not evaluate to an integer")]
    NonIntegral { family: u32, n: u32 },
    #[error("gamma must exceed 2 (got {gamma})")]
    GammaTooSmall { gamma: u64 },
}

/// How a table entry was produced.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Provenance {
    #[serde(rename = "closed-form")]
    ClosedForm,
    #[serde(rename = "convolution")]
    Convolution,
    #[serde(rename = "enumeration")]
    Enumeration,
}

impl fmt::Display for Provenance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Provenance::ClosedForm => write!(f, "closed-form"),
            Provenance::Convolution => write!(f, "convolution"),
            Provenance::Enumeration => write!(f, "enumeration"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CountEntry {
    pub smooth: BigUint,
    pub total: Option<BigUint>,
    pub provenance: Provenance,
}

/// Map (m, n) -> exact counts with provenance. Serializes to CSV with columns
/// `m,n,smooth,total,provenance` (total blank when unknown) and to a JSON
/// array of row objects.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct CountTable {
    entries: BTreeMap<(u32, u32), CountEntry>,
}

impl CountTable {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn insert(&mut self, m: u32, n: u32, entry: CountEntry) {
        self.entries.insert((m, n), entry);
    }

    pub fn get(&self, m: u32, n: u32) -> Option<&CountEntry> {
        self.entries.get(&(m, n))
    }

    pub fn smooth(&self, m: u32, n: u32) -> Option<&BigUint> {
        self.get(m, n).map(|e| &e.smooth)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&(u32, u32), &CountEntry)> {
        self.entries.iter()
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn to_csv(&self) -> String {
        let mut out = String::from("m,n,smooth,total,provenance\n");
        for ((m, n), e) in &self.entries {
            let total = e.total.as_ref().map(|t| t.to_string()).unwrap_or_default();
            out.push_str(&format!("{m},{n},{},{total},{}\n", e.smooth, e.provenance));
        }
        out
    }

    pub fn to_json(&self) -> serde_json::Value {
        let rows: Vec<serde_json::Value> = self
            .entries
            .iter()
            .map(|((m, n), e)| {
                serde_json::json!({
                    "m": m,
                    "n": n,
                    "smooth": big_to_number(&e.smooth),
                    "total": e.total.as_ref().map(big_to_number),
                    "provenance": e.provenance,
                })
            })
            .collect();
        serde_json::Value::Array(rows)
    }
}

pub(crate) fn big_to_number(x: &BigUint) -> serde_json::Number {
    x.to_string()
        .parse()
        .expect("decimal digits parse as a JSON number")
}

/// Ordered triples of nonnegative integers summing to n: `binom(n+2, 2)`.
/// Zero for negative n.
pub fn triple_count(n: i64) -> u64 {
    if n < 0 {
        return 0;
    }
    let n = n as u64;
    (n + 2) * (n + 1) / 2
}

/// Ordered pairs of nonnegative integers summing to n: `n + 1`.
/// Zero for negative n.
pub fn pair_count(n: i64) -> u64 {
    if n < 0 {
        0
    } else {
        n as u64 + 1
    }
}

/// Ordered triples (x, y, z) of nonnegative integers with x + y + z = n and
/// 4 | x. Zero for negative n. Satisfies
/// `triple_count_div4(n + 4) = triple_count_div4(n) + n + 5`.
pub fn triple_count_div4(n: i64) -> u64 {
    if n < 0 {
        return 0;
    }
    let n = n as u64;
    (0..=n).step_by(4).map(|x| n - x + 1).sum()
}

/// Ordered pairs (x, y) with x + y = n and 4 | x: `floor((n + 4) / 4)`.
/// Zero for negative n.
pub fn pair_count_div4(n: i64) -> u64 {
    if n < 0 {
        0
    } else {
        (n as u64 + 4) / 4
    }
}

/// Number of smooth structures on shape (m, n) for m <= 3, any n >= 1.
/// For n < m the transposed count is returned (the graph is symmetric).
pub fn smooth_count(m: u32, n: u32) -> Result<BigUint, CountingError> {
    if m == 0 || n == 0 {
        return Err(CountingError::InvalidShape);
    }
    if n < m {
        return smooth_count(n, m);
    }
    let value: u128 = match m {
        1 => {
            if n <= 2 {
                3
            } else {
                4
            }
        }
        2 => match n {
            2 => 8,
            3 => 17,
            _ => 9 * n as u128 - 11 + (n as u128 - 3) / 4,
        },
        3 => match n {
            3 => 48,
            4 => 95,
            _ => {
                // piecewise quadratic (47 n^2 - 144 n + c) / 4 by n mod 4
                let c: u128 = match n % 4 {
                    0 => 208,
                    1 => 205,
                    2 => 204,
                    _ => 209,
                };
                let n = n as u128;
                let num = 47 * n * n + c - 144 * n;
                debug_assert_eq!(num % 4, 0);
                num / 4
            }
        },
        _ => return Err(CountingError::UnsupportedFamily { m }),
    };
    Ok(BigUint::from(value))
}

/// Smooth count on (3, n) by direct evaluation of the case aggregate, valid
/// for n >= 3. Must equal `smooth_count(3, n)`; the two routes share nothing
/// but the composition-counting helpers.
pub fn smooth_count_m3_casewise(n: u32) -> Result<BigUint, CountingError> {
    if n < 3 {
        return Err(CountingError::ArgumentRange {
            what: "casewise smooth count",
            min: 3,
            got: n,
        });
    }
    let n = n as i64;
    let p = triple_count;
    let pd = triple_count_div4;
    let q = pair_count;
    let qd = pair_count_div4;
    let total = 4 * p(n - 1)
        + 4 * p(n - 2)
        + 6 * p(n - 3)
        + 3 * p(n - 4)
        + 4 * p(n - 5)
        + p(n - 7)
        + 2 * pd(n - 6)
        + 2 * pd(n - 7)
        + pd(n - 8)
        + pd(n - 9)
        + q(n - 2)
        + 3 * q(n - 3)
        + 2 * q(n - 5)
        + qd(n - 7)
        + 1;
    Ok(BigUint::from(total))
}

/// The correction term `h(n)` separating the (3, n) smooth count from the
/// plain quadratic `11 n^2 - 30 n + 40`, for n >= 5. Satisfies
/// `h(n + 4) = h(n) + 6 n - 12`.
pub fn smooth_count_m3_correction(n: u32) -> Result<u64, CountingError> {
    if n < 5 {
        return Err(CountingError::ArgumentRange {
            what: "smooth-count correction",
            min: 5,
            got: n,
        });
    }
    let n = n as i64;
    Ok(2 * triple_count_div4(n - 6)
        + 2 * triple_count_div4(n - 7)
        + triple_count_div4(n - 8)
        + triple_count_div4(n - 9)
        + pair_count_div4(n - 7))
}

/// Closed-form smooth counts for all cells (m <= max_m, n <= max_n),
/// max_m <= 3; the usual input to the convolution.
pub fn smooth_table_closed(max_m: u32, max_n: u32) -> Result<CountTable, CountingError> {
    if max_m > 3 {
        return Err(CountingError::UnsupportedFamily { m: max_m });
    }
    let mut table = CountTable::new();
    for m in 1..=max_m {
        for n in 1..=max_n {
            table.insert(
                m,
                n,
                CountEntry {
                    smooth: smooth_count(m, n)?,
                    total: None,
                    provenance: Provenance::ClosedForm,
                },
            );
        }
    }
    Ok(table)
}

/// Total structures on (m, n) by the double convolution of extension counts
/// against a smooth-count table covering every (m', n') <= (m, n).
pub fn total_count_convolution(
    m: u32,
    n: u32,
    smooth: &CountTable,
) -> Result<BigUint, CountingError> {
    if m == 0 || n == 0 {
        return Err(CountingError::InvalidShape);
    }
    let row_m = extension_count_row(m as u64);
    let row_n = extension_count_row(n as u64);
    let mut total = BigUint::zero();
    for mp in 1..=m {
        for np in 1..=n {
            let s = smooth
                .smooth(mp, np)
                .ok_or(CountingError::MissingEntry { m: mp, n: np })?;
            total += &row_m[mp as usize - 1] * &row_n[np as usize - 1] * s;
        }
    }
    Ok(total)
}

fn catalan_int(k: i64) -> BigInt {
    debug_assert!(k >= 0);
    BigInt::from(catalan(k as u64))
}

fn ratio(num: i64, den: i64) -> BigRational {
    BigRational::new(BigInt::from(num), BigInt::from(den))
}

/// Closed-form total count. Validity ranges: family 1 and 2 need n >= 2,
/// family 3 needs n >= 3; below these the convolution is the authority.
/// Fractional coefficients must combine to an integer, which is asserted, not
/// rounded.
pub fn total_count_closed(m: u32, n: u32) -> Result<BigUint, CountingError> {
    if m == 0 || n == 0 {
        return Err(CountingError::InvalidShape);
    }
    let range_err = |min_n: u32| CountingError::ClosedFormRange {
        family: m,
        n,
        min_n,
    };
    match m {
        1 => {
            if n < 2 {
                return Err(range_err(2));
            }
            let n = n as i64;
            let v = 4 * catalan_int(n) - 2 * catalan_int(n - 1);
            Ok(v.to_biguint().expect("total count is nonnegative"))
        }
        2 => {
            if n < 2 {
                return Err(range_err(2));
            }
            let row = extension_count_row(n as u64 + 1);
            let mut tail = BigInt::zero();
            let mut j = 2u32;
            while 4 * j <= n + 1 {
                tail += BigInt::from(row[(4 * j) as usize - 1].clone());
                j += 1;
            }
            let n = n as i64;
            let v = 9 * catalan_int(n + 1) - 16 * catalan_int(n) + 5 * catalan_int(n - 1)
                - catalan_int(n - 2)
                + tail;
            Ok(v.to_biguint().expect("total count is nonnegative"))
        }
        3 => {
            if n < 3 {
                return Err(range_err(3));
            }
            let row = extension_count_row(n as u64);
            let mut by_class = [BigInt::zero(), BigInt::zero(), BigInt::zero()];
            for k in 1..=n {
                let idx = match k % 4 {
                    1 => 0,
                    3 => 1,
                    0 => 2,
                    _ => continue,
                };
                by_class[idx] += BigInt::from(row[k as usize - 1].clone());
            }
            let ni = n as i64;
            let v = ratio(47, 2) * catalan_int(ni + 2) - ratio(305, 4) * catalan_int(ni + 1)
                + ratio(253, 4) * catalan_int(ni)
                - ratio(21, 1) * catalan_int(ni - 1)
                + ratio(2, 1) * catalan_int(ni - 2)
                + ratio(3, 4) * &by_class[0]
                + ratio(11, 4) * &by_class[1]
                + ratio(2, 1) * &by_class[2];
            if !v.is_integer() || v.is_negative() {
                return Err(CountingError::NonIntegral { family: 3, n });
            }
            Ok(v.to_integer().to_biguint().expect("checked nonnegative"))
        }
        _ => Err(CountingError::UnsupportedFamily { m }),
    }
}

/// Total count for m <= 3 and any n: the closed form where it is valid, the
/// convolution below its range.
pub fn total_count(m: u32, n: u32) -> Result<BigUint, CountingError> {
    match total_count_closed(m, n) {
        Ok(v) => Ok(v),
        Err(CountingError::ClosedFormRange { .. }) => {
            let table = smooth_table_closed(m, n)?;
            total_count_convolution(m, n, &table)
        }
        Err(e) => Err(e),
    }
}

/// Smooth and total counts for one family, n = 1..=max_n, totals by
/// convolution. Rows are `(n, smooth, total)`.
pub fn family_rows(family: u32, max_n: u32) -> Result<Vec<(u32, BigUint, BigUint)>, CountingError> {
    if !(1..=3).contains(&family) {
        return Err(CountingError::UnsupportedFamily { m: family });
    }
    let table = smooth_table_closed(family, max_n)?;
    (1..=max_n)
        .map(|n| {
            let smooth = smooth_count(family, n)?;
            let total = total_count_convolution(family, n, &table)?;
            Ok((n, smooth, total))
        })
        .collect()
}

/// Which Catalan number the asymptotic ratio is taken against.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CatalanShift {
    /// ratio against `C_n`
    N,
    /// ratio against `C_{n+1}`
    NPlus1,
}

impl fmt::Display for CatalanShift {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CatalanShift::N => write!(f, "C_n"),
            CatalanShift::NPlus1 => write!(f, "C_(n+1)"),
        }
    }
}

/// `sum_{j >= j0} (alpha j + beta) q^j` in exact rationals, |q| < 1.
fn geometric_tail(
    alpha: &BigRational,
    beta: &BigRational,
    q: &BigRational,
    j0: u64,
) -> BigRational {
    let one = BigRational::one();
    let denom = &one - q;
    let full = alpha * q / (&denom * &denom) + beta / &denom;
    let mut head = BigRational::zero();
    let mut q_pow = BigRational::one();
    for j in 0..j0 {
        head += (alpha * BigRational::from(BigInt::from(j)) + beta) * &q_pow;
        q_pow *= q;
    }
    full - head
}

/// The exact limiting constant of `total(family, n)` against its reference
/// Catalan number, evaluated from the defining geometric series: the tail
/// weights are `lim extension_count(n, k) / C_n = k / 2^(k+1)` and each
/// Catalan shift contributes a factor of 4.
pub fn asymptotic_constant(family: u32) -> Result<(ExactRational, CatalanShift), CountingError> {
    // r = lim C_{n-1} / C_n, q = r^2 spaces the mod-4 tail sums
    let r = ratio(1, 4);
    let q = ratio(1, 16);
    match family {
        1 => Ok((ratio(4, 1) - ratio(2, 1) * &r, CatalanShift::N)),
        2 => {
            // tail terms 4j / 2^(4j+1) = 2j q^j, from j = 2 on
            let tail = geometric_tail(&ratio(2, 1), &ratio(0, 1), &q, 2);
            let base = ratio(9, 1) - ratio(16, 1) * &r + ratio(5, 1) * &r * &r
                - BigRational::from(BigInt::one()) * &r * &r * &r;
            Ok((base + tail, CatalanShift::NPlus1))
        }
        3 => {
            // (4j+1)/2^(4j+2), (4j+3)/2^(4j+4), (4j+4)/2^(4j+5) as q^j series
            let s1 = geometric_tail(&ratio(1, 1), &ratio(1, 4), &q, 0);
            let s3 = geometric_tail(&ratio(1, 4), &ratio(3, 16), &q, 0);
            let s0 = geometric_tail(&ratio(1, 8), &ratio(1, 8), &q, 0);
            let v = ratio(47, 2) * ratio(16, 1) - ratio(305, 4) * ratio(4, 1) + ratio(253, 4)
                - ratio(21, 1) * &r
                + ratio(2, 1) * &r * &r
                + ratio(3, 4) * s1
                + ratio(11, 4) * s3
                + ratio(2, 1) * s0;
            Ok((v, CatalanShift::N))
        }
        _ => Err(CountingError::UnsupportedFamily { m: family }),
    }
}

/// `total(family, n)` divided by the family's reference Catalan number, as an
/// exact rational.
pub fn total_catalan_ratio(family: u32, n: u32) -> Result<ExactRational, CountingError> {
    let (_, shift) = asymptotic_constant(family)?;
    let total = total_count(family, n)?;
    let reference = match shift {
        CatalanShift::N => catalan(n as u64),
        CatalanShift::NPlus1 => catalan(n as u64 + 1),
    };
    Ok(BigRational::new(
        BigInt::from(total),
        BigInt::from(reference),
    ))
}

/// Render an exact rational with `places` decimal digits, rounding half away
/// from zero on the last digit.
pub fn decimal_string(r: &ExactRational, places: u32) -> String {
    let sign = if r.is_negative() { "-" } else { "" };
    let abs = r.abs();
    let scale = BigInt::from(10u32).pow(places);
    // round(|r| * scale) = floor((2 * num * scale + den) / (2 * den))
    let scaled = (abs.numer() * &scale * 2 + abs.denom()) / (abs.denom() * 2);
    let (int_part, frac_part) = scaled.div_rem(&scale);
    if places == 0 {
        return format!("{sign}{int_part}");
    }
    format!(
        "{sign}{int_part}.{:0>width$}",
        frac_part.to_string(),
        width = places as usize
    )
}

/// Integer interval on which `x^2 - gamma x + 1` is negative: exactly
/// `[1, gamma - 1]` for integer gamma > 2.
pub fn quadratic_negativity_range(gamma: u64) -> Result<(u64, u64), CountingError> {
    if gamma <= 2 {
        return Err(CountingError::GammaTooSmall { gamma });
    }
    Ok((1, gamma - 1))
}

/// One row of the growth-rate probe: smooth count against
/// `binom(m + n - 1, n)`, with no claim attached.
#[derive(Debug, Clone)]
pub struct ProbeRow {
    pub m: u32,
    pub n: u32,
    pub smooth: BigUint,
    pub reference: BigUint,
    pub ratio: ExactRational,
}

/// Compare smooth counts in `table` against `binom(m + n - 1, n)` for every
/// cell up to (max_m, max_n). Purely diagnostic output for the growth-rate
/// question; emits ratios, decides nothing.
pub fn conjecture_probe(
    table: &CountTable,
    max_m: u32,
    max_n: u32,
) -> Result<Vec<ProbeRow>, CountingError> {
    let mut rows = Vec::new();
    for m in 1..=max_m {
        for n in 1..=max_n {
            let smooth = table
                .smooth(m, n)
                .ok_or(CountingError::MissingEntry { m, n })?
                .clone();
            let reference = binomial((m + n - 1) as u64, n as u64);
            let ratio = BigRational::new(
                BigInt::from(smooth.clone()),
                BigInt::from(reference.clone()),
            );
            rows.push(ProbeRow {
                m,
                n,
                smooth,
                reference,
                ratio,
            });
        }
    }
    Ok(rows)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn big(x: u64) -> BigUint {
        BigUint::from(x)
    }

    #[test]
    fn composition_counts() {
        assert_eq!(triple_count(5), 21);
        assert_eq!(triple_count(-1), 0);
        assert_eq!(pair_count(3), 4);
        assert_eq!(triple_count_div4(0), 1);
        assert_eq!(triple_count_div4(4), 6);
        assert_eq!(pair_count_div4(0), 1);
        assert_eq!(pair_count_div4(7), 2);
    }

    #[test]
    fn triple_div4_recurrence() {
        for n in 0..500i64 {
            assert_eq!(
                triple_count_div4(n + 4),
                triple_count_div4(n) + (n as u64) + 5
            );
        }
    }

    #[test]
    fn smooth_count_examples() {
        assert_eq!(smooth_count(1, 5).unwrap(), big(4));
        assert_eq!(smooth_count(1, 1).unwrap(), big(3));
        assert_eq!(smooth_count(2, 10).unwrap(), big(80));
        assert_eq!(smooth_count(3, 10).unwrap(), big(866));
        assert_eq!(smooth_count(3, 5).unwrap(), big(165));
        // transposes
        assert_eq!(smooth_count(2, 1).unwrap(), big(3));
        assert_eq!(smooth_count(3, 2).unwrap(), big(17));
        assert!(matches!(
            smooth_count(4, 4),
            Err(CountingError::UnsupportedFamily { m: 4 })
        ));
    }

    #[test]
    fn casewise_matches_examples() {
        assert_eq!(smooth_count_m3_casewise(3).unwrap(), big(48));
        assert_eq!(smooth_count_m3_casewise(4).unwrap(), big(95));
        assert_eq!(smooth_count_m3_casewise(12).unwrap(), big(1312));
        assert!(smooth_count_m3_casewise(2).is_err());
    }

    #[test]
    fn casewise_equals_piecewise() {
        for n in 3..=500 {
            assert_eq!(
                smooth_count_m3_casewise(n).unwrap(),
                smooth_count(3, n).unwrap(),
                "n = {n}"
            );
        }
    }

    #[test]
    fn correction_values_and_recurrence() {
        assert_eq!(smooth_count_m3_correction(5).unwrap(), 0);
        assert_eq!(smooth_count_m3_correction(6).unwrap(), 2);
        assert_eq!(smooth_count_m3_correction(7).unwrap(), 7);
        assert_eq!(smooth_count_m3_correction(8).unwrap(), 12);
        assert_eq!(smooth_count_m3_correction(9).unwrap(), 18);
        assert_eq!(smooth_count_m3_correction(10).unwrap(), 26);
        for n in 5..=500u32 {
            assert_eq!(
                smooth_count_m3_correction(n + 4).unwrap(),
                smooth_count_m3_correction(n).unwrap() + 6 * n as u64 - 12,
                "n = {n}"
            );
        }
        // correction plus the plain quadratic reproduces the piecewise count
        for n in 5..=500u32 {
            let base = 11 * (n as u64) * (n as u64) - 30 * n as u64 + 40;
            assert_eq!(
                big(base + smooth_count_m3_correction(n).unwrap()),
                smooth_count(3, n).unwrap()
            );
        }
    }

    #[test]
    fn convolution_examples() {
        let table = smooth_table_closed(3, 20).unwrap();
        assert_eq!(total_count_convolution(2, 5, &table).unwrap(), big(581));
        assert_eq!(total_count_convolution(3, 1, &table).unwrap(), big(16));
        assert_eq!(total_count_convolution(1, 1, &table).unwrap(), big(3));
        assert_eq!(
            total_count_convolution(3, 20, &table).unwrap(),
            BigUint::parse_bytes(b"670633847016", 10).unwrap()
        );
    }

    #[test]
    fn closed_form_examples() {
        assert_eq!(total_count_closed(1, 3).unwrap(), big(16));
        assert_eq!(total_count_closed(2, 7).unwrap(), big(6625));
        assert_eq!(total_count_closed(3, 5).unwrap(), big(2433));
        assert_eq!(total_count_closed(3, 4).unwrap(), big(698));
        assert_eq!(total_count_closed(3, 3).unwrap(), big(200));
        assert!(matches!(
            total_count_closed(1, 1),
            Err(CountingError::ClosedFormRange { .. })
        ));
        assert!(matches!(
            total_count_closed(3, 2),
            Err(CountingError::ClosedFormRange { .. })
        ));
    }

    #[test]
    fn closed_form_out_of_range_falls_back() {
        assert_eq!(total_count(1, 1).unwrap(), big(3));
        assert_eq!(total_count(2, 1).unwrap(), big(6));
        assert_eq!(total_count(3, 2).unwrap(), big(55));
    }

    #[test]
    fn asymptotic_constants_exact() {
        let (c1, s1) = asymptotic_constant(1).unwrap();
        assert_eq!(c1, ratio(7, 2));
        assert_eq!(s1, CatalanShift::N);

        let (c2, s2) = asymptotic_constant(2).unwrap();
        assert_eq!(c2, ratio(76523, 14400));
        assert_eq!(s2, CatalanShift::NPlus1);

        let (c3, s3) = asymptotic_constant(3).unwrap();
        assert_eq!(c3, ratio(78157, 600));
        assert_eq!(s3, CatalanShift::N);

        // reduced, positive denominators
        for f in 1..=3 {
            let (c, _) = asymptotic_constant(f).unwrap();
            assert!(c.denom().is_positive());
            assert!(c.numer().gcd(c.denom()).is_one());
        }
    }

    #[test]
    fn decimal_rendering() {
        assert_eq!(decimal_string(&ratio(76523, 14400), 10), "5.3140972222");
        assert_eq!(decimal_string(&ratio(78157, 600), 10), "130.2616666667");
        assert_eq!(decimal_string(&ratio(7, 2), 10), "3.5000000000");
        assert_eq!(decimal_string(&ratio(-1, 3), 4), "-0.3333");
        assert_eq!(decimal_string(&ratio(1, 2), 0), "1");
    }

    #[test]
    fn negativity_range() {
        assert_eq!(quadratic_negativity_range(5).unwrap(), (1, 4));
        assert_eq!(quadratic_negativity_range(3).unwrap(), (1, 2));
        assert_eq!(quadratic_negativity_range(7).unwrap(), (1, 6));
        assert!(quadratic_negativity_range(2).is_err());
        // f(x) = x^2 - gamma x + 1 negative exactly on the returned interval
        for gamma in 3..=60i64 {
            let (lo, hi) = quadratic_negativity_range(gamma as u64).unwrap();
            for x in -3..=gamma + 3 {
                let f = x * x - gamma * x + 1;
                let inside = x >= lo as i64 && x <= hi as i64;
                assert_eq!(f < 0, inside, "gamma = {gamma}, x = {x}");
            }
        }
    }

    #[test]
    fn probe_rows() {
        let table = smooth_table_closed(3, 10).unwrap();
        let rows = conjecture_probe(&table, 3, 10).unwrap();
        assert_eq!(rows.len(), 30);
        // (1, n >= 3): smooth 4 against binom(n, n) = 1
        let r = rows.iter().find(|r| r.m == 1 && r.n == 5).unwrap();
        assert_eq!(r.ratio, ratio(4, 1));
        let r = rows.iter().find(|r| r.m == 3 && r.n == 10).unwrap();
        assert_eq!(r.smooth, big(866));
        assert_eq!(r.reference, big(66));
    }

    #[test]
    fn count_table_serialization() {
        let mut table = CountTable::new();
        table.insert(
            2,
            3,
            CountEntry {
                smooth: big(17),
                total: Some(big(55)),
                provenance: Provenance::Convolution,
            },
        );
        table.insert(
            1,
            1,
            CountEntry {
                smooth: big(3),
                total: None,
                provenance: Provenance::Enumeration,
            },
        );
        assert_eq!(
            table.to_csv(),
            "m,n,smooth,total,provenance\n1,1,3,,enumeration\n2,3,17,55,convolution\n"
        );
        let json = table.to_json();
        assert_eq!(json[1]["total"], serde_json::json!(55));
        assert_eq!(json[0]["provenance"], serde_json::json!("enumeration"));
    }

    #[test]
    fn family_rows_smoke() {
        let rows = family_rows(2, 3).unwrap();
        assert_eq!(rows[2], (3, big(17), big(55)));
        assert!(family_rows(4, 3).is_err());
    }
}
