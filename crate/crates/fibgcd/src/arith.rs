//! Elementary arithmetic: primes, factorization, multiplicative functions.
//!
//! Everything is exact `u64` arithmetic with `u128` intermediates for modular
//! products, so any 64-bit modulus is safe. The factorizer trial-divides by a
//! shared table of sieved primes and falls back to Brent's cycle-finding
//! method, with a deterministic Miller-Rabin test deciding primality of
//! cofactors the table cannot reach.

use std::sync::OnceLock;

use crate::{Error, Result};

/// Largest `limit` accepted by [`sieve_primes`].
pub const SIEVE_MAX: u64 = 2_000_000_000;

/// Trial-division bound used by [`factorize`] before switching to Brent rho.
pub const TRIAL_BOUND: u64 = 1_000_000;

/// Largest divisor count [`divisors`] will materialize. Reachable: the
/// busiest 64-bit integers have just over 10^5 divisors.
pub const DIVISOR_MAX: u64 = 100_000;

const SEGMENT: usize = 1 << 16;

/// All primes in `[2, limit]`, ascending.
///
/// Segmented internally: memory stays O(sqrt(limit) + segment) beyond the
/// output vector itself.
pub fn sieve_primes(limit: u64) -> Result<Vec<u64>> {
    if limit > SIEVE_MAX {
        return Err(Error::Capacity {
            what: "sieve limit",
            requested: limit,
            max: SIEVE_MAX,
        });
    }
    if limit < 2 {
        return Ok(Vec::new());
    }
    let root = limit.isqrt().max(2);
    let base = simple_sieve(root);
    let mut primes = base.clone();

    let mut block = vec![false; SEGMENT];
    let mut lo = root + 1;
    while lo <= limit {
        let hi = (lo + SEGMENT as u64 - 1).min(limit);
        let len = (hi - lo + 1) as usize;
        block[..len].fill(false);
        for &p in &base {
            if p * p > hi {
                break;
            }
            let mut at = (p * p).max(lo.div_ceil(p) * p);
            while at <= hi {
                block[(at - lo) as usize] = true;
                at += p;
            }
        }
        for (i, &composite) in block[..len].iter().enumerate() {
            if !composite {
                primes.push(lo + i as u64);
            }
        }
        lo = hi + 1;
    }
    Ok(primes)
}

/// Primes in `[lo, hi]` given base primes covering sqrt(hi).
pub(crate) fn primes_in_range(lo: u64, hi: u64, base: &[u64]) -> Vec<u64> {
    let lo = lo.max(2);
    if lo > hi {
        return Vec::new();
    }
    let len = (hi - lo + 1) as usize;
    let mut composite = vec![false; len];
    for &p in base {
        if p * p > hi {
            break;
        }
        let mut at = (p * p).max(lo.div_ceil(p) * p);
        while at <= hi {
            composite[(at - lo) as usize] = true;
            at += p;
        }
    }
    composite
        .iter()
        .enumerate()
        .filter(|(_, &c)| !c)
        .map(|(i, _)| lo + i as u64)
        .collect()
}

fn simple_sieve(limit: u64) -> Vec<u64> {
    if limit < 2 {
        return Vec::new();
    }
    let n = limit as usize;
    let mut composite = vec![false; n + 1];
    let mut primes = Vec::new();
    for i in 2..=n {
        if !composite[i] {
            primes.push(i as u64);
            let mut j = i * i;
            while j <= n {
                composite[j] = true;
                j += i;
            }
        }
    }
    primes
}

#[inline]
pub(crate) fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

pub(crate) fn pow_mod(mut base: u64, mut exp: u64, m: u64) -> u64 {
    if m == 1 {
        return 0;
    }
    let mut acc = 1u64;
    base %= m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base, m);
        }
        base = mul_mod(base, base, m);
        exp >>= 1;
    }
    acc
}

/// Greatest common divisor. `gcd(x, 0) = x`.
pub fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

/// Least common multiple with overflow detection.
pub fn lcm(a: u64, b: u64) -> Result<u64> {
    if a == 0 || b == 0 {
        return Ok(0);
    }
    (a / gcd(a, b))
        .checked_mul(b)
        .ok_or(Error::Overflow { what: "lcm" })
}

/// Deterministic 64-bit primality test.
pub fn is_prime(n: u64) -> bool {
    const SMALL: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];
    if n < 2 {
        return false;
    }
    for &p in &SMALL {
        if n == p {
            return true;
        }
        if n.is_multiple_of(p) {
            return false;
        }
    }
    let r = (n - 1).trailing_zeros();
    let d = (n - 1) >> r;
    // Witness set valid for all 64-bit integers, found by Jim Sinclair
    // (see miller-rabin.appspot.com).
    const WITNESSES: [u64; 7] = [2, 325, 9375, 28178, 450775, 9780504, 1795265022];
    'witness: for &a in &WITNESSES {
        let a = a % n;
        if a == 0 {
            continue;
        }
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..r {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

fn small_primes() -> &'static [u32] {
    static TABLE: OnceLock<Vec<u32>> = OnceLock::new();
    TABLE.get_or_init(|| {
        simple_sieve(TRIAL_BOUND)
            .into_iter()
            .map(|p| p as u32)
            .collect()
    })
}

/// Prime factorization of a positive integer, exponents collected and primes
/// strictly ascending.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Factorization {
    value: u64,
    factors: Vec<(u64, u32)>,
}

impl Factorization {
    /// The factored integer.
    pub fn value(&self) -> u64 {
        self.value
    }

    /// `(prime, exponent)` pairs, primes ascending.
    pub fn factors(&self) -> &[(u64, u32)] {
        &self.factors
    }

    /// Euler's totient, from the factorization.
    pub fn phi(&self) -> u64 {
        let mut out = 1u64;
        for &(p, e) in &self.factors {
            out *= p - 1;
            for _ in 1..e {
                out *= p;
            }
        }
        out
    }

    /// Moebius value: 0 with a squared factor, else (-1)^(distinct primes).
    pub fn mobius(&self) -> i8 {
        if self.factors.iter().any(|&(_, e)| e > 1) {
            0
        } else if self.factors.len().is_multiple_of(2) {
            1
        } else {
            -1
        }
    }

    pub fn is_squarefree(&self) -> bool {
        self.factors.iter().all(|&(_, e)| e == 1)
    }

    /// All divisors of the value, ascending.
    pub fn divisors(&self) -> Result<Vec<u64>> {
        let count: u64 = self.factors.iter().map(|&(_, e)| e as u64 + 1).product();
        if count > DIVISOR_MAX {
            return Err(Error::Capacity {
                what: "divisor count",
                requested: count,
                max: DIVISOR_MAX,
            });
        }
        let mut out = vec![1u64];
        for &(p, e) in &self.factors {
            let prev = out.len();
            let mut pk = 1u64;
            for _ in 0..e {
                pk *= p;
                for i in 0..prev {
                    out.push(out[i] * pk);
                }
            }
        }
        out.sort_unstable();
        Ok(out)
    }
}

/// Totient of `lcm(a, b)` computed from the two factorizations, never
/// materializing the lcm itself. The caller guarantees the lcm fits in
/// 64 bits, which makes the totient fit as well.
pub(crate) fn phi_of_lcm(a: &Factorization, b: &Factorization) -> u64 {
    let mut out = 1u64;
    let (mut i, mut j) = (0, 0);
    let fa = a.factors();
    let fb = b.factors();
    let mut apply = |p: u64, e: u32| {
        out *= p - 1;
        for _ in 1..e {
            out *= p;
        }
    };
    while i < fa.len() && j < fb.len() {
        let (pa, ea) = fa[i];
        let (pb, eb) = fb[j];
        if pa < pb {
            apply(pa, ea);
            i += 1;
        } else if pb < pa {
            apply(pb, eb);
            j += 1;
        } else {
            apply(pa, ea.max(eb));
            i += 1;
            j += 1;
        }
    }
    for &(p, e) in &fa[i..] {
        apply(p, e);
    }
    for &(p, e) in &fb[j..] {
        apply(p, e);
    }
    out
}

/// Factor `n >= 1`. Deterministic: identical inputs yield identical output.
pub fn factorize(n: u64) -> Factorization {
    assert!(n >= 1, "factorize requires n >= 1");
    let value = n;
    let mut factors: Vec<(u64, u32)> = Vec::new();
    let mut rem = n;
    if rem > 1 && is_prime(rem) {
        return Factorization {
            value,
            factors: vec![(rem, 1)],
        };
    }
    for &p in small_primes() {
        let p = p as u64;
        if p * p > rem {
            break;
        }
        if rem.is_multiple_of(p) {
            let mut e = 0u32;
            while rem.is_multiple_of(p) {
                rem /= p;
                e += 1;
            }
            factors.push((p, e));
            if rem == 1 {
                break;
            }
            if is_prime(rem) {
                factors.push((rem, 1));
                rem = 1;
                break;
            }
        }
    }
    if rem > 1 {
        if is_prime(rem) {
            factors.push((rem, 1));
        } else {
            // No factor below TRIAL_BOUND survives here, so rem is a product
            // of at least two large primes; Brent rho splits it.
            let mut large = Vec::new();
            split_composite(rem, &mut large);
            large.sort_unstable();
            for p in large {
                match factors.iter_mut().find(|(q, _)| *q == p) {
                    Some((_, e)) => *e += 1,
                    None => factors.push((p, 1)),
                }
            }
        }
    }
    factors.sort_unstable_by_key(|&(p, _)| p);
    Factorization { value, factors }
}

fn split_composite(n: u64, out: &mut Vec<u64>) {
    if is_prime(n) {
        out.push(n);
        return;
    }
    let d = rho_factor(n);
    split_composite(d, out);
    split_composite(n / d, out);
}

/// Nontrivial factor of an odd composite via Brent's variant of the rho
/// method. The polynomial offset is escalated deterministically, so repeated
/// runs return the same factor.
fn rho_factor(n: u64) -> u64 {
    debug_assert!(n > 1 && !is_prime(n));
    if n.is_multiple_of(2) {
        return 2;
    }
    for c in 1u64.. {
        if let Some(d) = brent_cycle(n, c) {
            return d;
        }
    }
    unreachable!("rho offset escalation is unbounded")
}

fn brent_cycle(n: u64, c: u64) -> Option<u64> {
    let step = |x: u64| ((x as u128 * x as u128 + c as u128) % n as u128) as u64;
    let mut y = 2u64;
    let mut r = 1u64;
    let mut q = 1u64;
    let mut g = 1u64;
    let mut x = 0u64;
    let mut ys = 0u64;
    while g == 1 {
        x = y;
        for _ in 0..r {
            y = step(y);
        }
        let mut k = 0;
        while k < r && g == 1 {
            ys = y;
            let span = 128.min(r - k);
            for _ in 0..span {
                y = step(y);
                q = mul_mod(q, x.abs_diff(y), n);
            }
            g = gcd(q, n);
            k += span;
        }
        r <<= 1;
    }
    if g == n {
        // Backtrack one step at a time to recover the factor the batched
        // gcd skipped over.
        loop {
            ys = step(ys);
            g = gcd(x.abs_diff(ys), n);
            if g > 1 {
                break;
            }
        }
    }
    if g == n {
        None
    } else {
        Some(g)
    }
}

/// Moebius function.
pub fn mobius(n: u64) -> i8 {
    factorize(n).mobius()
}

/// Euler's totient function.
pub fn euler_phi(n: u64) -> u64 {
    factorize(n).phi()
}

/// All divisors of `n >= 1`, ascending.
pub fn divisors(n: u64) -> Result<Vec<u64>> {
    factorize(n).divisors()
}
