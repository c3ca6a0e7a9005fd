//! Exact values of rho(Q_n) = mu_n and of nu_m through their mutual
//! recursion, entirely in integer arithmetic:
//!
//! * mu_n = 5 on [4, 12] and nu_m = 4 on [5, 11];
//! * for n >= 13, rho(Q_n) is the unique m with
//!   2^(m-2) - nu_(m-1) + 1 <= n <= 2^(m-1) - nu_m;
//! * for m >= 12, nu_m is the unique n with
//!   2^(n-1) - mu_(n-1) + 1 <= m <= 2^n - mu_n.
//!
//! Candidates are probed around the bit length, so a query costs an
//! iterated-logarithm tower of small lookups. No floating point anywhere;
//! ceil(log2 n) comes from the bit length with an exact power-of-two test.

use std::collections::BTreeMap;
use std::sync::Mutex;

use num_bigint::BigUint;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// ceil(log2 n) for n >= 1.
pub fn ceil_log2(n: &BigUint) -> u64 {
    if n <= &BigUint::one() {
        return 0;
    }
    let bits = n.bits();
    if n.count_ones() == 1 {
        bits - 1
    } else {
        bits
    }
}

/// Det(Q_n) = 1 + ceil(log2 n), for n >= 2.
pub fn det_qn(n: &BigUint) -> Result<u64> {
    if n < &BigUint::from(2u8) {
        return Err(Error::OutOfRange(format!("det needs n >= 2, got {n}")));
    }
    Ok(1 + ceil_log2(n))
}

#[derive(Default)]
struct Memo {
    mu: BTreeMap<BigUint, u64>,
    nu: BTreeMap<BigUint, u64>,
}

/// Memoized rho/nu queries. Shared references may query concurrently; the
/// memo only ever gains idempotent entries.
pub struct CostTable {
    memo: Mutex<Memo>,
}

impl Default for CostTable {
    fn default() -> Self {
        Self::new()
    }
}

impl CostTable {
    pub fn new() -> Self {
        CostTable {
            memo: Mutex::new(Memo::default()),
        }
    }

    /// rho(Q_n) = mu_n, the fewest rows of an asymmetric matrix with n
    /// columns; defined for n >= 4.
    pub fn rho(&self, n: &BigUint) -> Result<u64> {
        if n < &BigUint::from(4u8) {
            return Err(Error::NotTwoDistinguishable(n.to_string()));
        }
        if n <= &BigUint::from(12u8) {
            return Ok(5);
        }
        if let Some(&v) = self.memo.lock().unwrap().mu.get(n) {
            return Ok(v);
        }
        let m0 = 1 + ceil_log2(n);
        let mut hit = None;
        for m in [m0, m0 + 1] {
            if m < 6 {
                continue;
            }
            let lo =
                (BigUint::one() << (m - 2)) - BigUint::from(self.nu_small(m - 1)?) + BigUint::one();
            let hi = (BigUint::one() << (m - 1)) - BigUint::from(self.nu_small(m)?);
            if &lo <= n && n <= &hi {
                assert!(hit.is_none(), "rho interval uniqueness violated at n = {n}");
                hit = Some(m);
            }
        }
        let m = hit.unwrap_or_else(|| panic!("no rho interval contains n = {n}"));
        self.memo.lock().unwrap().mu.insert(n.clone(), m);
        Ok(m)
    }

    /// nu_m, the fewest columns of an asymmetric matrix with m rows;
    /// defined for m >= 5.
    pub fn nu(&self, m: &BigUint) -> Result<u64> {
        if m < &BigUint::from(5u8) {
            return Err(Error::OutOfRange(format!("nu needs m >= 5, got {m}")));
        }
        if m <= &BigUint::from(11u8) {
            return Ok(4);
        }
        if let Some(&v) = self.memo.lock().unwrap().nu.get(m) {
            return Ok(v);
        }
        let n0 = m.bits();
        let mut hit = None;
        for n in [n0.saturating_sub(1), n0, n0 + 1] {
            if n < 5 {
                continue;
            }
            let lo = (BigUint::one() << (n - 1)) - BigUint::from(self.rho(&BigUint::from(n - 1))?)
                + BigUint::one();
            let hi = (BigUint::one() << n) - BigUint::from(self.rho(&BigUint::from(n))?);
            if &lo <= m && m <= &hi {
                assert!(hit.is_none(), "nu interval uniqueness violated at m = {m}");
                hit = Some(n);
            }
        }
        let n = hit.unwrap_or_else(|| panic!("no nu interval contains m = {m}"));
        self.memo.lock().unwrap().nu.insert(m.clone(), n);
        Ok(n)
    }

    fn nu_small(&self, m: u64) -> Result<u64> {
        self.nu(&BigUint::from(m))
    }

    /// The exact integer interval of n on which rho(Q_n) = m, for m >= 6.
    pub fn rho_interval(&self, m: u64) -> Result<(BigUint, BigUint)> {
        if m < 6 {
            return Err(Error::OutOfRange(format!(
                "rho_interval needs m >= 6, got {m}"
            )));
        }
        let lo =
            (BigUint::one() << (m - 2)) - BigUint::from(self.nu_small(m - 1)?) + BigUint::one();
        let hi = (BigUint::one() << (m - 1)) - BigUint::from(self.nu_small(m)?);
        Ok((lo, hi))
    }

    /// Serializes the memo as the versioned cache object.
    pub fn to_cache_json(&self) -> String {
        let memo = self.memo.lock().unwrap();
        let file = CacheFile {
            format: 1,
            nu: memo.nu.iter().map(|(k, &v)| (k.to_string(), v)).collect(),
            mu: memo.mu.iter().map(|(k, &v)| (k.to_string(), v)).collect(),
        };
        serde_json::to_string(&file).expect("cache serialization cannot fail")
    }

    /// Loads a cache file, revalidating every entry against the two-value
    /// bound before accepting it.
    pub fn from_cache_json(s: &str) -> Result<Self> {
        let file: CacheFile =
            serde_json::from_str(s).map_err(|e| Error::CacheInvalid(e.to_string()))?;
        if file.format != 1 {
            return Err(Error::CacheInvalid(format!(
                "unsupported format {}",
                file.format
            )));
        }
        let mut memo = Memo::default();
        for (key, v) in &file.mu {
            let n: BigUint = key
                .parse()
                .map_err(|_| Error::CacheInvalid(format!("bad mu key {key:?}")))?;
            let valid = if n < BigUint::from(4u8) {
                false
            } else if n <= BigUint::from(12u8) {
                *v == 5
            } else {
                let c = ceil_log2(&n);
                *v == 1 + c || *v == 2 + c
            };
            if !valid {
                return Err(Error::CacheInvalid(format!(
                    "mu[{key}] = {v} violates the two-value bound"
                )));
            }
            memo.mu.insert(n, *v);
        }
        for (key, v) in &file.nu {
            let m: BigUint = key
                .parse()
                .map_err(|_| Error::CacheInvalid(format!("bad nu key {key:?}")))?;
            let valid = if m < BigUint::from(5u8) {
                false
            } else if m <= BigUint::from(11u8) {
                *v == 4
            } else {
                // nu_m in [5, floor(m/2)] for m >= 12
                *v >= 5 && BigUint::from(2 * *v) <= m
            };
            if !valid {
                return Err(Error::CacheInvalid(format!(
                    "nu[{key}] = {v} out of bounds"
                )));
            }
            memo.nu.insert(m, *v);
        }
        Ok(CostTable {
            memo: Mutex::new(memo),
        })
    }
}

#[derive(Serialize, Deserialize)]
struct CacheFile {
    format: u32,
    nu: BTreeMap<String, u64>,
    mu: BTreeMap<String, u64>,
}

/// Convenience for callers holding machine integers.
pub fn rho_u64(n: u64) -> Result<u64> {
    CostTable::new().rho(&BigUint::from(n))
}

pub fn nu_u64(m: u64) -> Result<u64> {
    CostTable::new().nu(&BigUint::from(m))
}

/// True when n is exactly a power of two (used by interval tests).
pub fn is_power_of_two(n: &BigUint) -> bool {
    !n.is_zero() && n.count_ones() == 1
}

#[cfg(test)]
mod tests {
    use super::*;

    fn big(n: u64) -> BigUint {
        BigUint::from(n)
    }

    #[test]
    fn base_values() {
        let t = CostTable::new();
        for n in 4..=12 {
            assert_eq!(t.rho(&big(n)).unwrap(), 5, "rho({n})");
        }
        for m in 5..=11 {
            assert_eq!(t.nu(&big(m)).unwrap(), 4, "nu({m})");
        }
        assert_eq!(t.nu(&big(12)).unwrap(), 5);
        assert_eq!(t.nu(&big(100)).unwrap(), 7);
    }

    #[test]
    fn small_n_is_rejected() {
        let t = CostTable::new();
        assert!(matches!(
            t.rho(&big(3)),
            Err(Error::NotTwoDistinguishable(_))
        ));
        assert!(matches!(t.nu(&big(4)), Err(Error::OutOfRange(_))));
    }

    #[test]
    fn first_recursive_values() {
        let t = CostTable::new();
        assert_eq!(t.rho(&big(13)).unwrap(), 6);
        assert_eq!(t.rho(&big(1020)).unwrap(), 11);
        assert_eq!(t.rho(&big(1021)).unwrap(), 12);
        assert_eq!(t.rho(&big(1_000_000)).unwrap(), 21);
        assert_eq!(t.rho(&big((1 << 26) - 5)).unwrap(), 27);
    }

    #[test]
    fn det_examples() {
        assert_eq!(det_qn(&big(16)).unwrap(), 5);
        assert_eq!(det_qn(&big(17)).unwrap(), 6);
        assert_eq!(det_qn(&big(4)).unwrap(), 3);
        assert!(matches!(det_qn(&big(1)), Err(Error::OutOfRange(_))));
    }

    #[test]
    fn interval_examples() {
        let t = CostTable::new();
        assert_eq!(t.rho_interval(6).unwrap(), (big(13), big(28)));
        assert_eq!(t.rho_interval(12).unwrap(), (big(1021), big(2043)));
        assert_eq!(t.rho_interval(13).unwrap(), (big(2044), big(4091)));
        assert!(matches!(t.rho_interval(5), Err(Error::OutOfRange(_))));
    }

    #[test]
    fn ceil_log2_handles_powers_of_two_exactly() {
        assert_eq!(ceil_log2(&big(1)), 0);
        assert_eq!(ceil_log2(&big(2)), 1);
        assert_eq!(ceil_log2(&big(3)), 2);
        assert_eq!(ceil_log2(&big(4)), 2);
        assert_eq!(ceil_log2(&big(5)), 3);
        assert_eq!(ceil_log2(&(BigUint::one() << 100)), 100);
        assert_eq!(ceil_log2(&((BigUint::one() << 100) + BigUint::one())), 101);
    }

    #[test]
    fn cache_round_trip_and_validation() {
        let t = CostTable::new();
        t.rho(&big(13)).unwrap();
        t.nu(&big(12)).unwrap();
        let json = t.to_cache_json();
        assert!(json.contains("\"format\":1"));
        let restored = CostTable::from_cache_json(&json).unwrap();
        assert_eq!(restored.rho(&big(13)).unwrap(), 6);

        // corrupted value: rho(13) = 9 violates the two-value bound
        let bad = r#"{"format":1,"nu":{},"mu":{"13":9}}"#;
        assert!(matches!(
            CostTable::from_cache_json(bad),
            Err(Error::CacheInvalid(_))
        ));
        let bad = r#"{"format":2,"nu":{},"mu":{}}"#;
        assert!(matches!(
            CostTable::from_cache_json(bad),
            Err(Error::CacheInvalid(_))
        ));
        let bad = r#"{"format":1,"nu":{"12":4},"mu":{}}"#;
        assert!(matches!(
            CostTable::from_cache_json(bad),
            Err(Error::CacheInvalid(_))
        ));
    }

    #[test]
    fn deep_recursion_terminates() {
        let t = CostTable::new();
        // a few hundred bits forces several recursion layers
        let n = BigUint::one() << 300;
        let r = t.rho(&n).unwrap();
        assert_eq!(r, 302); // 1 + ceil(log2(n + nu)) with nu small
        let c = ceil_log2(&n);
        assert!(r == 1 + c || r == 2 + c);
    }
}
