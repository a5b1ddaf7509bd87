//! Fibonacci values: exact integers for small indices, residues for
//! everything else.
//!
//! The modular kernel is the fast-doubling pair step
//!
//! ```text
//! F(2i)   = F(i) * (2*F(i+1) - F(i))
//! F(2i+1) = F(i)^2 + F(i+1)^2
//! ```
//!
//! consumed high bit to low, which costs O(log n) products mod m and works
//! for any 64-bit modulus. `fib_exact` deliberately runs the plain additive
//! recurrence instead, so the exact and modular paths stay independent
//! checks of one another.

use num_bigint::BigUint;

use crate::arith;
use crate::{Error, Result};

/// Largest index [`fib_exact`] accepts. F(10^4) has roughly 2090 digits.
pub const FIB_EXACT_CAP: u64 = 10_000;

/// Exact Fibonacci number, `F(0) = 0, F(1) = F(2) = 1`.
pub fn fib_exact(n: u64) -> Result<BigUint> {
    if n > FIB_EXACT_CAP {
        return Err(Error::Capacity {
            what: "exact Fibonacci index",
            requested: n,
            max: FIB_EXACT_CAP,
        });
    }
    let mut a = BigUint::from(0u8);
    let mut b = BigUint::from(1u8);
    for _ in 0..n {
        let next = &a + &b;
        a = b;
        b = next;
    }
    Ok(a)
}

/// A consecutive Fibonacci residue pair `(F(n), F(n+1)) mod modulus`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct FibPairMod {
    pub index: u64,
    pub modulus: u64,
    pub f_n: u64,
    pub f_n1: u64,
}

impl FibPairMod {
    /// Advance one index: `(F(n), F(n+1)) -> (F(n+1), F(n+2))`.
    pub fn step(self) -> FibPairMod {
        FibPairMod {
            index: self.index + 1,
            modulus: self.modulus,
            f_n: self.f_n1,
            f_n1: ((self.f_n as u128 + self.f_n1 as u128) % self.modulus as u128) as u64,
        }
    }
}

/// `(F(n) mod m, F(n+1) mod m)` by fast doubling.
pub fn fib_mod(n: u64, m: u64) -> FibPairMod {
    assert!(m >= 1, "fib_mod requires modulus >= 1");
    let modulus = m as u128;
    let mut a: u128 = 0;
    let mut b: u128 = 1 % modulus;
    let bits = 64 - n.leading_zeros();
    for i in (0..bits).rev() {
        let doubled = a * ((2 * b + modulus - a) % modulus) % modulus;
        let doubled_next = (a * a + b * b) % modulus;
        if (n >> i) & 1 == 0 {
            a = doubled;
            b = doubled_next;
        } else {
            a = doubled_next;
            b = (doubled + doubled_next) % modulus;
        }
    }
    FibPairMod {
        index: n,
        modulus: m,
        f_n: a as u64,
        f_n1: b as u64,
    }
}

/// `gcd(n, F(n))`, exact, without ever materializing F(n):
/// `gcd(n, F(n)) = gcd(n, F(n) mod n)`.
pub fn fib_gcd(n: u64) -> u64 {
    assert!(n >= 1, "fib_gcd requires n >= 1");
    arith::gcd(n, fib_mod(n, n).f_n)
}
