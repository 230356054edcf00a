//! Exact integer combinatorics primitives and the closed-form bound report.

use num_bigint::BigUint;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Arbitrary-precision nonnegative count. Serializes as a decimal string.
pub type BigCount = BigUint;

/// Exact binomial coefficient; `0` when `k > n`.
pub fn binom(n: u64, k: u64) -> BigCount {
    if k > n {
        return BigCount::zero();
    }
    let k = k.min(n - k);
    let mut result = BigCount::one();
    for i in 0..k {
        result = result * BigUint::from(n - i) / BigUint::from(i + 1);
    }
    result
}

/// The largest integer `l >= 1` with `l^l <= m`. Requires `m >= 1`.
pub fn ell(m: u64) -> u64 {
    assert!(m >= 1, "ell(m) requires m >= 1");
    let mut l = 1u64;
    loop {
        let next = l + 1;
        match checked_self_power(next) {
            Some(p) if p <= u128::from(m) => l = next,
            _ => return l,
        }
    }
}

fn checked_self_power(l: u64) -> Option<u128> {
    let base = u128::from(l);
    let mut acc: u128 = 1;
    for _ in 0..l {
        acc = acc.checked_mul(base)?;
    }
    Some(acc)
}

/// All closed-form bound values for a given `m`, in exact integers.
///
/// `thm_i` is reported for every `m` but only claimed asymptotically, hence
/// the `thm_i_asymptotic` flag.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BoundsReport {
    pub m: u64,
    pub ell: u64,
    #[serde(with = "big_string")]
    pub thm_i: BigCount,
    pub thm_i_asymptotic: bool,
    #[serde(with = "big_string")]
    pub thm_ii: BigCount,
    #[serde(with = "big_string")]
    pub prop_lower: BigCount,
    #[serde(with = "big_string")]
    pub akm_upper: BigCount,
}

/// Computes the report:
/// - `thm_i    = C(2m − ℓ(m) + 4, m)`
/// - `thm_ii   = C(2m − 1, m)`
/// - `prop_lower = C(⌊3m/2⌋, m)`
/// - `akm_upper  = C(⌈m(ln m + 1)⌉, m)`
///
/// The only floating-point step is the single `ln m`; rounding the top
/// argument up preserves the upper-bound direction.
pub fn bounds_report(m: u64) -> Result<BoundsReport> {
    if m == 0 {
        return Err(Error::Domain("bounds_report requires m >= 1".into()));
    }
    let l = ell(m);
    let akm_top = (m as f64 * ((m as f64).ln() + 1.0)).ceil() as u64;
    Ok(BoundsReport {
        m,
        ell: l,
        thm_i: binom(2 * m + 4 - l, m),
        thm_i_asymptotic: true,
        thm_ii: binom(2 * m - 1, m),
        prop_lower: binom(3 * m / 2, m),
        akm_upper: binom(akm_top, m),
    })
}

/// Serde adapter: `BigUint` as a decimal string.
pub mod big_string {
    use num_bigint::BigUint;
    use serde::de::Error as _;
    use serde::{Deserialize, Deserializer, Serializer};
    use std::str::FromStr;

    pub fn serialize<S: Serializer>(v: &BigUint, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.serialize_str(&v.to_string())
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(deserializer: D) -> Result<BigUint, D::Error> {
        let s = String::deserialize(deserializer)?;
        BigUint::from_str(&s).map_err(D::Error::custom)
    }
}
