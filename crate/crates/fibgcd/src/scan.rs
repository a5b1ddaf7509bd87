//! Empirical ground truth: enumerate primes, evaluate the shifted gcd
//! `gcd(p - 1, F(p - 1))` for each, and aggregate histograms and counting
//! functions.
//!
//! The scan is embarrassingly parallel: the integer range is cut into
//! contiguous chunks, each chunk sieves and processes its own primes into a
//! local histogram, and the merge is key-wise addition. Commutativity makes
//! the result independent of chunk size and thread count; the per-prime work
//! never touches a big integer, only residues mod p - 1.

use std::collections::BTreeMap;
use std::time::Instant;

use rayon::prelude::*;

use crate::arith;
use crate::classify;
use crate::fib::fib_mod;
use crate::{Error, Result};

/// Largest scan limit accepted.
pub const SCAN_X_MAX: u64 = 100_000_000;

/// Smallest chunk width accepted.
pub const MIN_CHUNK: u64 = 1_000;

/// Histogram of shifted gcd values over all primes up to a limit.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ScanReport {
    /// Scan limit (inclusive).
    pub x: u64,
    /// Number of primes up to x.
    pub prime_count: u64,
    /// Key k maps to the number of primes p <= x with gcd(p-1, F(p-1)) = k.
    pub histogram: BTreeMap<u64, u64>,
    /// Wall-clock time of the scan. Diagnostic only; excluded from
    /// machine-readable output so identical scans stay byte-identical.
    pub elapsed_ms: u64,
    /// Number of contiguous chunks the range was split into.
    pub chunk_count: u64,
}

/// `gcd(p - 1, F(p - 1))` for a prime p, via the residue of F mod p - 1.
pub fn shifted_gcd(p: u64) -> u64 {
    debug_assert!(arith::is_prime(p));
    let m = p - 1;
    if m == 0 {
        return 1;
    }
    arith::gcd(m, fib_mod(m, m).f_n)
}

/// Scan all primes `p <= x` and histogram their shifted gcd values.
pub fn scan_primes(x: u64, chunk: u64) -> Result<ScanReport> {
    if x < 2 {
        return Err(Error::precondition("scan limit must be >= 2"));
    }
    if x > SCAN_X_MAX {
        return Err(Error::Capacity {
            what: "scan limit",
            requested: x,
            max: SCAN_X_MAX,
        });
    }
    if chunk < MIN_CHUNK {
        return Err(Error::precondition(format!(
            "chunk width must be >= {MIN_CHUNK}"
        )));
    }
    let started = Instant::now();
    let base = arith::sieve_primes(x.isqrt())?;

    let mut ranges = Vec::new();
    let mut lo = 2u64;
    while lo <= x {
        let hi = lo.saturating_add(chunk - 1).min(x);
        ranges.push((lo, hi));
        lo = hi + 1;
    }
    let chunk_count = ranges.len() as u64;

    let histogram = ranges
        .par_iter()
        .map(|&(lo, hi)| {
            let mut local = BTreeMap::new();
            for p in arith::primes_in_range(lo, hi, &base) {
                *local.entry(shifted_gcd(p)).or_insert(0u64) += 1;
            }
            local
        })
        .reduce(BTreeMap::new, merge_histograms);

    let prime_count = histogram.values().sum();
    Ok(ScanReport {
        x,
        prime_count,
        histogram,
        elapsed_ms: started.elapsed().as_millis() as u64,
        chunk_count,
    })
}

fn merge_histograms(mut a: BTreeMap<u64, u64>, b: BTreeMap<u64, u64>) -> BTreeMap<u64, u64> {
    for (k, v) in b {
        *a.entry(k).or_insert(0) += v;
    }
    a
}

/// Observed frequency of the class of k in a scan: `count / prime_count`,
/// zero when k never occurred.
pub fn empirical_density(report: &ScanReport, k: u64) -> f64 {
    let count = report.histogram.get(&k).copied().unwrap_or(0);
    count as f64 / report.prime_count as f64
}

/// Number of `k <= x` attained as gcd(n, F(n)).
pub fn count_attained(x: u64) -> Result<u64> {
    if x == 0 {
        return Err(Error::precondition("counting requires x >= 1"));
    }
    (1..=x)
        .into_par_iter()
        .map(|k| Ok(u64::from(classify::gcd_at_ell(k)? == k)))
        .try_reduce(|| 0, |a, b| Ok(a + b))
}

/// Number of `k <= x` whose class has positive relative density.
pub fn count_positive_density(x: u64) -> Result<u64> {
    if x == 0 {
        return Err(Error::precondition("counting requires x >= 1"));
    }
    (1..=x)
        .into_par_iter()
        .map(|k| Ok(u64::from(classify::has_positive_density(k)?)))
        .try_reduce(|| 0, |a, b| Ok(a + b))
}

/// Support-class membership: the shifted gcd of p is a multiple of k whose
/// prime factors all divide k.
pub fn in_support_class(p: u64, k: u64) -> bool {
    debug_assert!(k >= 1);
    let g = shifted_gcd(p);
    g.is_multiple_of(k)
        && arith::factorize(g)
            .factors()
            .iter()
            .all(|&(q, _)| k.is_multiple_of(q))
}
