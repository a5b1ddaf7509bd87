//! The rank of apparition `z(m)` (smallest n with m | F(n)) and the derived
//! function `ell(m) = lcm(m, z(m))`, with a shared memoization cache.
//!
//! Computation strategy:
//!
//! * prime p: `z(p)` divides p - (p/5), where (p/5) is the Legendre symbol,
//!   so scanning the divisors of that target ascending and testing
//!   `F(d) mod p == 0` finds the minimum directly;
//! * prime power p^e: `z(p^e) = z(p) * p^j` for some `0 <= j < e`, so the
//!   candidates are walked upward until `p^e` divides the residue. No
//!   closed-form lift is assumed (a naive valuation formula is wrong at
//!   p = 2, where z(8) = 6, not 12), and no conjecture about squarefree
//!   Fibonacci valuations is relied on;
//! * composite m: lcm of the prime-power values.
//!
//! The bounds `z(m) <= 2m` and `ell(m) <= 2m^2` keep all of this inside u64
//! for any m below roughly 3 * 10^9; larger inputs report overflow.

use std::collections::HashMap;
use std::sync::atomic::{AtomicU64, Ordering};
use std::sync::{OnceLock, RwLock};

use serde::{Deserialize, Serialize};

use crate::arith::{self, Factorization};
use crate::fib::fib_mod;
use crate::{Error, Result};

/// Default capacity of the shared cache, in records.
pub const CACHE_CAPACITY: usize = 1 << 20;

const SHARD_COUNT: usize = 16;

/// How a rank record was obtained.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Method {
    /// Divisor scan of p - (p/5) (primes, and m = 1).
    #[serde(rename = "direct-scan")]
    DirectScan,
    /// Prime-power walk above the prime value.
    #[serde(rename = "prime-power-lift")]
    PrimePowerLift,
    /// lcm over prime-power constituents.
    #[serde(rename = "lcm-combine")]
    LcmCombine,
}

/// `m` together with its rank of apparition and `ell(m) = lcm(m, z(m))`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EntryPointRecord {
    pub m: u64,
    pub z: u64,
    pub ell: u64,
    pub method: Method,
}

struct Slot {
    record: EntryPointRecord,
    touched: AtomicU64,
}

/// Sharded, bounded memoization cache for [`EntryPointRecord`]s.
///
/// Lookups take only a shard read lock and refresh an atomic recency stamp,
/// so concurrent readers never serialize against each other. Inserting the
/// same key twice is idempotent (the recomputed record is identical). When a
/// shard fills up, the stalest half of its entries is dropped.
pub struct RankCache {
    shards: Vec<RwLock<HashMap<u64, Slot>>>,
    per_shard_cap: usize,
    tick: AtomicU64,
}

impl RankCache {
    pub fn with_capacity(capacity: usize) -> Self {
        let per_shard_cap = (capacity / SHARD_COUNT).max(1);
        RankCache {
            shards: (0..SHARD_COUNT).map(|_| RwLock::new(HashMap::new())).collect(),
            per_shard_cap,
            tick: AtomicU64::new(0),
        }
    }

    fn shard_of(&self, m: u64) -> usize {
        (m.wrapping_mul(0x9E37_79B9_7F4A_7C15) >> 60) as usize % SHARD_COUNT
    }

    pub fn get(&self, m: u64) -> Option<EntryPointRecord> {
        let shard = self.shards[self.shard_of(m)].read().unwrap();
        shard.get(&m).map(|slot| {
            slot.touched
                .store(self.tick.fetch_add(1, Ordering::Relaxed), Ordering::Relaxed);
            slot.record
        })
    }

    pub fn insert(&self, record: EntryPointRecord) {
        let mut shard = self.shards[self.shard_of(record.m)].write().unwrap();
        if shard.len() >= self.per_shard_cap && !shard.contains_key(&record.m) {
            let mut stamps: Vec<(u64, u64)> = shard
                .iter()
                .map(|(&k, slot)| (slot.touched.load(Ordering::Relaxed), k))
                .collect();
            stamps.sort_unstable();
            for &(_, key) in &stamps[..stamps.len() / 2 + 1] {
                shard.remove(&key);
            }
        }
        shard.insert(
            record.m,
            Slot {
                record,
                touched: AtomicU64::new(self.tick.fetch_add(1, Ordering::Relaxed)),
            },
        );
    }

    pub fn len(&self) -> usize {
        self.shards.iter().map(|s| s.read().unwrap().len()).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }
}

fn global_cache() -> &'static RankCache {
    static CACHE: OnceLock<RankCache> = OnceLock::new();
    CACHE.get_or_init(|| RankCache::with_capacity(CACHE_CAPACITY))
}

/// Rank of apparition of a prime: the smallest n with `p | F(n)`.
pub fn entry_point_prime(p: u64) -> Result<u64> {
    if !arith::is_prime(p) {
        return Err(Error::precondition(format!("{p} is not prime")));
    }
    prime_entry_unchecked(p)
}

/// Core prime scan; the caller guarantees primality.
fn prime_entry_unchecked(p: u64) -> Result<u64> {
    if p == 5 {
        return Ok(5);
    }
    // Legendre symbol (p/5): squares mod 5 are {1, 4}.
    let target = match p % 5 {
        1 | 4 => p - 1,
        _ => p.checked_add(1).ok_or(Error::Overflow {
            what: "entry point search target",
        })?,
    };
    for d in arith::divisors(target)? {
        if fib_mod(d, p).f_n == 0 {
            return Ok(d);
        }
    }
    Err(Error::Defect(format!(
        "no divisor of {target} is an apparition index for prime {p}"
    )))
}

/// Rank of apparition of `p^e`: the smallest n with `p^e | F(n)`.
///
/// Candidates are `z(p) * p^j` for ascending j; the first one whose residue
/// vanishes mod `p^e` is the answer.
pub fn entry_point_prime_power(p: u64, e: u32) -> Result<u64> {
    if e == 0 {
        return Err(Error::precondition("prime-power exponent must be >= 1"));
    }
    if !arith::is_prime(p) {
        return Err(Error::precondition(format!("{p} is not prime")));
    }
    let base = record(p)?.z;
    lift_prime_power(p, e, base)
}

fn lift_prime_power(p: u64, e: u32, z_of_p: u64) -> Result<u64> {
    let pe = p.checked_pow(e).ok_or(Error::Overflow {
        what: "prime power modulus",
    })?;
    let mut n = z_of_p;
    for _ in 0..e {
        if fib_mod(n, pe).f_n == 0 {
            return Ok(n);
        }
        n = n.checked_mul(p).ok_or(Error::Overflow {
            what: "prime power apparition index",
        })?;
    }
    Err(Error::Defect(format!(
        "apparition index of {p}^{e} not of the expected p-power shape"
    )))
}

/// Full cached record for `m >= 1`.
pub fn record(m: u64) -> Result<EntryPointRecord> {
    if m == 0 {
        return Err(Error::precondition("rank of apparition requires m >= 1"));
    }
    if let Some(hit) = global_cache().get(m) {
        return Ok(hit);
    }
    let rec = compute_record(m)?;
    global_cache().insert(rec);
    Ok(rec)
}

fn compute_record(m: u64) -> Result<EntryPointRecord> {
    let (z, method) = if m == 1 {
        // 1 divides F(1); the minimal index is 1.
        (1, Method::DirectScan)
    } else {
        let f = arith::factorize(m);
        match f.factors() {
            [(p, 1)] => (prime_entry_unchecked(*p)?, Method::DirectScan),
            [(p, e)] => {
                let base = record(*p)?.z;
                (lift_prime_power(*p, *e, base)?, Method::PrimePowerLift)
            }
            parts => {
                let mut z = 1u64;
                for &(p, e) in parts {
                    let base = record(p)?.z;
                    z = arith::lcm(z, lift_prime_power(p, e, base)?)?;
                }
                (z, Method::LcmCombine)
            }
        }
    };
    let ell = arith::lcm(m, z)?;
    Ok(EntryPointRecord { m, z, ell, method })
}

/// `z(m)`: smallest n >= 1 with `m | F(n)`.
pub fn entry_point(m: u64) -> Result<u64> {
    record(m).map(|r| r.z)
}

/// `ell(m) = lcm(m, z(m))`: `m | gcd(n, F(n))` holds exactly when
/// `ell(m) | n`.
pub fn entry_lcm(m: u64) -> Result<u64> {
    record(m).map(|r| r.ell)
}

/// `ell(p)` for a prime, as u128 so witnesses far beyond the u64 `ell`
/// range stay testable. Uses `ell(p) = p * z(p)` for p != 5 and
/// `ell(5) = 5`; falls back to a direct scan only when the 64-bit record
/// overflows.
pub(crate) fn prime_ell_wide(p: u64) -> Result<u128> {
    match record(p) {
        Ok(rec) => Ok(rec.ell as u128),
        Err(Error::Overflow { .. }) => {
            let z = prime_entry_unchecked(p)?;
            Ok(p as u128 * z as u128)
        }
        Err(e) => Err(e),
    }
}

/// Totient of `ell(m)`, computed from the factorizations of m and z(m)
/// without refactoring `ell(m)` itself.
pub fn phi_ell(m: u64) -> Result<u64> {
    let rec = record(m)?;
    let fm = arith::factorize(m);
    let fz: Factorization = arith::factorize(rec.z);
    Ok(arith::phi_of_lcm(&fm, &fz))
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Independent oracle: step the pair recurrence mod m until F(n) hits 0.
    fn z_brute(m: u64) -> u64 {
        if m == 1 {
            return 1;
        }
        let (mut a, mut b) = (0u64, 1 % m);
        let mut n = 0u64;
        loop {
            let next = ((a as u128 + b as u128) % m as u128) as u64;
            a = b;
            b = next;
            n += 1;
            if a == 0 {
                return n;
            }
            assert!(n <= 2 * m, "apparition bound breached for m = {m}");
        }
    }

    #[test]
    fn prime_examples() {
        assert_eq!(entry_point_prime(2).unwrap(), 3); // F(3) = 2
        assert_eq!(entry_point_prime(5).unwrap(), 5); // F(5) = 5
        assert_eq!(entry_point_prime(17).unwrap(), 9); // F(9) = 34
        assert!(entry_point_prime(6).is_err());
    }

    #[test]
    fn prime_power_examples() {
        assert_eq!(entry_point_prime_power(2, 3).unwrap(), 6); // F(6) = 8
        assert_eq!(entry_point_prime_power(5, 2).unwrap(), 25);
        for p in [2u64, 3, 7, 13] {
            assert_eq!(
                entry_point_prime_power(p, 1).unwrap(),
                entry_point_prime(p).unwrap()
            );
        }
        assert!(matches!(
            entry_point_prime_power(2, 64),
            Err(Error::Overflow { .. })
        ));
        assert!(entry_point_prime_power(2, 0).is_err());
    }

    #[test]
    fn prime_power_matches_brute() {
        for (p, max_e) in [(2u64, 10u32), (3, 7), (5, 5), (7, 4), (13, 3)] {
            for e in 1..=max_e {
                let pe = p.pow(e);
                assert_eq!(
                    entry_point_prime_power(p, e).unwrap(),
                    z_brute(pe),
                    "p = {p}, e = {e}"
                );
            }
        }
    }

    #[test]
    fn composite_examples() {
        assert_eq!(entry_point(1).unwrap(), 1);
        assert_eq!(entry_point(10).unwrap(), 15); // 10 | F(15) = 610
        assert_eq!(entry_point(153).unwrap(), 36);
        assert!(entry_point(0).is_err());
    }

    #[test]
    fn ell_examples() {
        assert_eq!(entry_lcm(10).unwrap(), 30);
        assert_eq!(entry_lcm(17).unwrap(), 153);
        assert_eq!(entry_lcm(1).unwrap(), 1);
        assert_eq!(entry_lcm(5).unwrap(), 5);
    }

    #[test]
    fn minimality_small() {
        for m in 1..=500u64 {
            assert_eq!(entry_point(m).unwrap(), z_brute(m), "m = {m}");
        }
    }

    #[test]
    fn record_invariants() {
        for m in 1..=300u64 {
            let rec = record(m).unwrap();
            assert_eq!(fib_mod(rec.z, m).f_n, 0);
            assert_eq!(rec.ell, arith::lcm(m, rec.z).unwrap());
            assert!(rec.z <= 2 * m);
            assert!(rec.ell <= 2 * m * m);
        }
    }

    #[test]
    fn method_labels() {
        assert_eq!(record(1).unwrap().method, Method::DirectScan);
        assert_eq!(record(17).unwrap().method, Method::DirectScan);
        assert_eq!(record(8).unwrap().method, Method::PrimePowerLift);
        assert_eq!(record(10).unwrap().method, Method::LcmCombine);
    }

    #[test]
    fn phi_ell_matches_direct() {
        for m in 1..=400u64 {
            let ell = entry_lcm(m).unwrap();
            assert_eq!(phi_ell(m).unwrap(), arith::euler_phi(ell), "m = {m}");
        }
    }

    #[test]
    fn overflow_reported_for_huge_m() {
        // ell(m) <= 2m^2 is the only bound, and for m near 2^63 the lcm
        // genuinely exceeds u64 here.
        let p = 9_223_372_036_854_775_783u64; // prime just under 2^63
        assert!(matches!(entry_lcm(p), Err(Error::Overflow { .. })));
    }

    #[test]
    fn cache_concurrent_use() {
        let cache = RankCache::with_capacity(64);
        std::thread::scope(|scope| {
            for _ in 0..4 {
                scope.spawn(|| {
                    for m in 1..=200u64 {
                        let rec = compute_record(m).unwrap();
                        cache.insert(rec);
                        let got = cache.get(m);
                        assert!(got.is_none() || got == Some(rec));
                    }
                });
            }
        });
        assert!(cache.len() <= 64 + SHARD_COUNT);
    }

    #[test]
    fn cache_eviction_keeps_recent() {
        let cache = RankCache::with_capacity(SHARD_COUNT * 4);
        for m in 1..=1_000u64 {
            cache.insert(compute_record(m).unwrap());
        }
        assert!(cache.len() <= SHARD_COUNT * 4 + SHARD_COUNT);
    }
}
