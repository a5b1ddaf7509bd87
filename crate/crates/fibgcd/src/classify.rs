//! Classification of a target gcd value k: is k attained as gcd(n, F(n)) at
//! all, and does its class of shifted primes carry positive relative density?
//!
//! The decision runs in three steps.
//!
//! 1. Attainability: k is a value of gcd(n, F(n)) exactly when
//!    `gcd(ell(k), F(ell(k))) == k`. One modular evaluation settles it.
//! 2. Parity obstruction: when `ell(k)` is odd, a single prime p coprime to
//!    k with `ell(p*k) == 2 * ell(k)` forces every qualifying prime into
//!    the residue class of 1 mod `2*ell(k)` while forbidding it, leaving at
//!    most the prime 2 in the class. Such a p is reported as the witness.
//! 3. Otherwise the class has positive relative density.
//!
//! The witness search space is finite: `ell(p*k) = lcm(ell(p), ell(k))`
//! for p coprime to k, so the condition forces `ell(p) | 2*ell(k)`, and
//! p divides `ell(p)`. The candidates are therefore exactly the primes
//! dividing `2*ell(k)` that do not divide k; `witness_brute_force` in the
//! tests cross-checks this reduction.

use serde::{Deserialize, Serialize};

use crate::arith;
use crate::fib::fib_mod;
use crate::rank;
use crate::{Error, Result};

/// Largest k [`classify`] accepts; keeps every intermediate ell inside u64.
pub const CLASSIFY_K_MAX: u64 = 100_000_000;

/// Verdict for the class of a target gcd value k.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Verdict {
    /// k is never attained as gcd(n, F(n)); its shifted-prime class is empty.
    Unattained,
    /// k is attained, but the parity obstruction confines the class to at
    /// most the prime 2; the relative density is zero. For k = 1 the class
    /// would still contain 2 itself (this nuance never fires: the verdict
    /// for k = 1 is PositiveDensity).
    Degenerate,
    /// The class of k holds a positive fraction of all primes.
    PositiveDensity,
}

/// Machine-checkable classification of k.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Classification {
    pub k: u64,
    pub verdict: Verdict,
    /// For [`Verdict::Degenerate`]: a prime p, coprime to k, with
    /// `ell(p * k) == 2 * ell(k)`.
    pub witness: Option<u64>,
    /// `gcd(ell(k), F(ell(k)))`; equals k exactly when k is attained.
    pub gcd_attained: u64,
}

/// `gcd(ell(k), F(ell(k)))`, the attainability probe for k.
pub fn gcd_at_ell(k: u64) -> Result<u64> {
    let lk = rank::entry_lcm(k)?;
    Ok(arith::gcd(lk, fib_mod(lk, lk).f_n))
}

/// Classify k per the three-step decision above.
pub fn classify(k: u64) -> Result<Classification> {
    if k == 0 {
        return Err(Error::precondition("classification requires k >= 1"));
    }
    if k > CLASSIFY_K_MAX {
        return Err(Error::Capacity {
            what: "classification input",
            requested: k,
            max: CLASSIFY_K_MAX,
        });
    }
    let attained = gcd_at_ell(k)?;
    if attained != k {
        return Ok(Classification {
            k,
            verdict: Verdict::Unattained,
            witness: None,
            gcd_attained: attained,
        });
    }
    let lk = rank::entry_lcm(k)?;
    if lk % 2 == 1 {
        if let Some(p) = degeneracy_witness(k, lk)? {
            return Ok(Classification {
                k,
                verdict: Verdict::Degenerate,
                witness: Some(p),
                gcd_attained: attained,
            });
        }
    }
    Ok(Classification {
        k,
        verdict: Verdict::PositiveDensity,
        witness: None,
        gcd_attained: attained,
    })
}

/// Smallest prime p with p coprime to k and `ell(p*k) == 2 * ell(k)`,
/// searched over the primes dividing `2 * ell(k)`.
///
/// For such candidates `ell(p*k) = lcm(ell(p), ell(k))`, so the equation
/// holds exactly when `ell(p)` divides `2*ell(k)` but not `ell(k)`. Testing
/// it this way never forms `ell(p*k)` itself, which may exceed u64 for
/// large candidate primes even though the comparison is decidable.
fn degeneracy_witness(k: u64, lk: u64) -> Result<Option<u64>> {
    debug_assert_eq!(lk % 2, 1);
    let two_lk = 2 * lk; // lk <= 2k^2 <= 2e16, no overflow
    for &(p, _) in arith::factorize(two_lk).factors() {
        if k.is_multiple_of(p) {
            continue;
        }
        let ell_p = rank::prime_ell_wide(p)?;
        if (two_lk as u128).is_multiple_of(ell_p) && !(lk as u128).is_multiple_of(ell_p) {
            return Ok(Some(p));
        }
    }
    Ok(None)
}

/// Whether the class of k carries positive relative density.
pub fn has_positive_density(k: u64) -> Result<bool> {
    Ok(classify(k)?.verdict == Verdict::PositiveDensity)
}

/// The increasing sequence of residue constraints governing membership in
/// the class of k, truncated at `prime_bound`.
///
/// The first element is `ell(k)` and must divide a qualifying n; every later
/// element must not. The full set is `{ell(k)}`, `{p * ell(k)}` over primes
/// p dividing k, and `{ell(p*k)}` over primes p coprime to k; both prime
/// families are cut off at `prime_bound`. Every element is a multiple of
/// `ell(k)`.
pub fn constraint_moduli(k: u64, prime_bound: u64) -> Result<Vec<u64>> {
    if prime_bound < 2 {
        return Err(Error::precondition("prime bound must be >= 2"));
    }
    let attained = gcd_at_ell(k)?;
    if attained != k {
        return Err(Error::precondition(format!(
            "{k} is not attained as gcd(n, F(n)); no constraint sequence exists"
        )));
    }
    let lk = rank::entry_lcm(k)?;
    let mut out = vec![lk];
    for p in arith::sieve_primes(prime_bound)? {
        let entry = if k.is_multiple_of(p) {
            p.checked_mul(lk).ok_or(Error::Overflow {
                what: "constraint modulus",
            })?
        } else {
            let pk = p.checked_mul(k).ok_or(Error::Overflow {
                what: "constraint modulus",
            })?;
            rank::entry_lcm(pk)?
        };
        out.push(entry);
    }
    out.sort_unstable();
    out.dedup();
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn gcd_at_ell_examples() {
        assert_eq!(gcd_at_ell(10).unwrap(), 10);
        assert_eq!(gcd_at_ell(17).unwrap(), 17);
        assert_eq!(gcd_at_ell(3).unwrap(), 12); // ell(3) = 12, F(12) = 144
    }

    #[test]
    fn classify_examples() {
        let c17 = classify(17).unwrap();
        assert_eq!(c17.verdict, Verdict::Degenerate);
        assert_eq!(c17.witness, Some(2));
        assert_eq!(c17.gcd_attained, 17);

        let c10 = classify(10).unwrap();
        assert_eq!(c10.verdict, Verdict::PositiveDensity);
        assert_eq!(c10.witness, None);

        let c3 = classify(3).unwrap();
        assert_eq!(c3.verdict, Verdict::Unattained);
        assert_eq!(c3.gcd_attained, 12);
    }

    #[test]
    fn positive_density_examples() {
        assert!(has_positive_density(1).unwrap());
        assert!(!has_positive_density(17).unwrap());
        assert!(has_positive_density(10).unwrap());
    }

    #[test]
    fn classify_bounds() {
        assert!(classify(0).is_err());
        assert!(matches!(
            classify(CLASSIFY_K_MAX + 1),
            Err(Error::Capacity { .. })
        ));
    }

    #[test]
    fn constraint_moduli_examples() {
        assert_eq!(constraint_moduli(1, 7).unwrap(), vec![1, 5, 6, 12, 56]);
        assert_eq!(constraint_moduli(17, 2).unwrap(), vec![153, 306]);
        assert_eq!(constraint_moduli(10, 2).unwrap(), vec![30, 60]);
    }

    #[test]
    fn constraint_moduli_structure() {
        for k in [1u64, 2, 5, 10, 12, 17] {
            let ms = constraint_moduli(k, 50).unwrap();
            let lk = rank::entry_lcm(k).unwrap();
            assert_eq!(ms[0], lk);
            assert!(ms.windows(2).all(|w| w[0] < w[1]));
            assert!(ms.iter().all(|&m| m % lk == 0));
        }
    }

    #[test]
    fn constraint_moduli_rejects_unattained() {
        assert!(constraint_moduli(3, 10).is_err());
        assert!(constraint_moduli(1, 1).is_err());
    }

    /// The candidate reduction (witnesses divide 2*ell(k)) against a brute
    /// scan over all primes up to 1000.
    #[test]
    fn witness_search_matches_brute_force() {
        let primes = arith::sieve_primes(1_000).unwrap();
        for k in 1..=200u64 {
            if gcd_at_ell(k).unwrap() != k {
                continue;
            }
            let lk = rank::entry_lcm(k).unwrap();
            if lk.is_multiple_of(2) {
                continue;
            }
            let brute = primes.iter().copied().find(|&p| {
                k % p != 0 && rank::entry_lcm(p * k).unwrap() == 2 * lk
            });
            let found = degeneracy_witness(k, lk).unwrap();
            assert_eq!(found.is_some(), brute.is_some(), "k = {k}");
            if let (Some(a), Some(b)) = (found, brute) {
                assert_eq!(a, b, "k = {k}");
            }
        }
    }

    /// Degenerate witnesses really do satisfy the defining equation.
    #[test]
    fn witness_equation_holds() {
        for k in 1..=300u64 {
            let c = classify(k).unwrap();
            if let Some(p) = c.witness {
                assert_eq!(c.verdict, Verdict::Degenerate);
                assert!(arith::is_prime(p));
                assert_ne!(k % p, 0);
                let lk = rank::entry_lcm(k).unwrap();
                assert_eq!(lk % 2, 1);
                assert_eq!(rank::entry_lcm(p * k).unwrap(), 2 * lk, "k = {k}");
            }
        }
    }
}
