//! Counting cycles of exact length `n` of a degree-3 map with `3^n` points
//! of period dividing `n`: the recursion over divisors and its Möbius
//! inverted closed form (necklace numbers in base three).

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Pow, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Divisors of `n` in increasing order, by trial division up to `sqrt n`.
pub fn divisors(n: u64) -> Vec<u64> {
    assert!(n >= 1);
    let mut small = Vec::new();
    let mut large = Vec::new();
    let mut d = 1;
    while d * d <= n {
        if n.is_multiple_of(d) {
            small.push(d);
            if d * d != n {
                large.push(n / d);
            }
        }
        d += 1;
    }
    small.extend(large.into_iter().rev());
    small
}

pub fn moebius(n: u64) -> i8 {
    assert!(n >= 1, "moebius needs n >= 1");
    let mut m = n;
    let mut sign = 1i8;
    let mut p = 2;
    while p * p <= m {
        if m.is_multiple_of(p) {
            m /= p;
            if m.is_multiple_of(p) {
                return 0;
            }
            sign = -sign;
        }
        p += 1;
    }
    if m > 1 {
        sign = -sign;
    }
    sign
}

pub fn moebius_divisor_sum(n: u64) -> i64 {
    divisors(n).into_iter().map(|d| moebius(d) as i64).sum()
}

fn three_pow(n: u64) -> BigInt {
    Pow::pow(BigInt::from(3), n as u32)
}

/// `B_n = (3^n - sum_{d | n, d < n} d B_d) / n`, memoized in `memo`.
pub fn count_orbits_recursive_memo(n: u64, memo: &mut BTreeMap<u64, BigInt>) -> Result<BigInt> {
    if let Some(b) = memo.get(&n) {
        return Ok(b.clone());
    }
    let mut rest = three_pow(n);
    for d in divisors(n) {
        if d < n {
            let bd = count_orbits_recursive_memo(d, memo)?;
            rest -= bd * BigInt::from(d);
        }
    }
    let (q, r) = rest.div_rem(&BigInt::from(n));
    if !r.is_zero() || q.is_negative() {
        return Err(Error::NonIntegralCount { n });
    }
    memo.insert(n, q.clone());
    Ok(q)
}

pub fn count_orbits_recursive(n: u64) -> Result<BigInt> {
    count_orbits_recursive_memo(n, &mut BTreeMap::new())
}

/// `B_n = (1/n) sum_{d | n} mu(d) 3^(n/d)`.
pub fn count_orbits_closed(n: u64) -> Result<BigInt> {
    let mut sum = BigInt::zero();
    for d in divisors(n) {
        match moebius(d) {
            1 => sum += three_pow(n / d),
            -1 => sum -= three_pow(n / d),
            _ => {}
        }
    }
    let (q, r) = sum.div_rem(&BigInt::from(n));
    if !r.is_zero() || q.is_negative() {
        return Err(Error::NonIntegralCount { n });
    }
    Ok(q)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum CountMethod {
    Recursive,
    Closed,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct OrbitCountTable {
    pub method: CountMethod,
    /// Counts as decimal strings, since they outgrow 64 bits at `n = 41`.
    #[serde(with = "bigint_map")]
    pub entries: BTreeMap<u64, BigInt>,
}

impl OrbitCountTable {
    pub fn build(max_n: u64, method: CountMethod) -> Result<Self> {
        let mut entries = BTreeMap::new();
        match method {
            CountMethod::Recursive => {
                for n in 1..=max_n {
                    count_orbits_recursive_memo(n, &mut entries)?;
                }
            }
            CountMethod::Closed => {
                for n in 1..=max_n {
                    entries.insert(n, count_orbits_closed(n)?);
                }
            }
        }
        Ok(Self { method, entries })
    }

    pub fn to_csv(&self) -> String {
        let mut out = String::from("n,count\n");
        for (n, b) in &self.entries {
            out.push_str(&format!("{n},{b}\n"));
        }
        out
    }

    /// `sum_{d | n} d B_d = 3^n` for every `n` whose divisors are present.
    pub fn conserves_points(&self) -> bool {
        self.entries.keys().all(|&n| {
            let total: Option<BigInt> = divisors(n)
                .into_iter()
                .map(|d| self.entries.get(&d).map(|b| b * BigInt::from(d)))
                .sum();
            total.is_some_and(|t| t == three_pow(n))
        })
    }
}

mod bigint_map {
    use std::collections::BTreeMap;

    use num_bigint::BigInt;
    use serde::{de::Error, Deserialize, Deserializer, Serialize, Serializer};

    pub fn serialize<S: Serializer>(m: &BTreeMap<u64, BigInt>, s: S) -> Result<S::Ok, S::Error> {
        let rows: Vec<(u64, String)> = m.iter().map(|(k, v)| (*k, v.to_string())).collect();
        rows.serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<BTreeMap<u64, BigInt>, D::Error> {
        let rows: Vec<(u64, String)> = Vec::deserialize(d)?;
        rows.into_iter()
            .map(|(k, v)| v.parse::<BigInt>().map(|b| (k, b)).map_err(D::Error::custom))
            .collect()
    }
}
