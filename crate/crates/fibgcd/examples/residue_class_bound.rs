//! Product lower bound for constrained residue classes of primes.
//!
//! For moduli a_0 | a_1, ..., a_n, the primes p with p = 1 mod a_0 but
//! p != 1 mod every a_i have relative density at least
//! (1/phi(a_0)) * prod(1 - phi(a_0)/phi(a_i)). Feeding it the constraint
//! moduli of a class k (first element required, the rest forbidden) gives a
//! crude positive certificate; the bound collapses to zero exactly in the
//! degenerate situation.
//!
//! Usage: cargo run -p fibgcd --example residue_class_bound [k]

use fibgcd::{classify, density};

fn main() {
    let k: u64 = std::env::args()
        .nth(1)
        .and_then(|s| s.parse().ok())
        .unwrap_or(10);

    println!("warm-up: a0 = 1, forbidden [6]      -> {}", density::residue_class_lower_bound(1, &[6]).unwrap());
    println!("degenerate: a0 = 153, forbidden [306] -> {}\n", density::residue_class_lower_bound(153, &[306]).unwrap());

    match classify::constraint_moduli(k, 100) {
        Ok(ms) => {
            let (required, forbidden) = ms.split_first().expect("nonempty");
            println!("class k = {k}: required modulus {required}, {} forbidden moduli from primes <= 100", forbidden.len());
            for upto in [1usize, 2, 5, 10, forbidden.len()] {
                let upto = upto.min(forbidden.len());
                let bound = density::residue_class_lower_bound(*required, &forbidden[..upto])
                    .expect("moduli are multiples of ell(k)");
                println!("  first {upto:>2} constraints: bound >= {bound:.6}");
            }
            let series = density::density_exact(k, 10_000).expect("in range").value;
            println!("  full series value:    {series:.6}");
        }
        Err(e) => println!("class k = {k}: {e}"),
    }
}
