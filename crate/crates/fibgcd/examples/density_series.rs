//! Truncated density series for one class, with its convergence trace.
//!
//! The relative density of primes p with gcd(p-1, F(p-1)) = k is the series
//! sum over d of mu(d) / phi(ell(d*k)). The partial sums are sampled at
//! powers of two; the tail estimate is twice the squarefree mass of the
//! next dyadic block.
//!
//! Usage: cargo run --release -p fibgcd --example density_series [k] [terms]

use fibgcd::density;

fn main() {
    let mut args = std::env::args().skip(1);
    let k: u64 = args.next().and_then(|s| s.parse().ok()).unwrap_or(1);
    let terms: u64 = args.next().and_then(|s| s.parse().ok()).unwrap_or(10_000);

    let est = density::density_exact(k, terms).expect("series in range");
    println!("class k = {k}, {} terms\n", est.terms_used);
    println!("{:>10}  partial sum", "d");
    let mut d = 1u64;
    for (i, s) in est.partial_sums.iter().enumerate() {
        let at = if i + 1 == est.partial_sums.len() { est.terms_used } else { d };
        println!("{at:>10}  {s:+.9}");
        d *= 2;
    }
    println!("\nvalue         {:+.9}", est.value);
    println!("tail estimate  {:.3e}", est.tail_estimate);
    if est.value.abs() <= est.tail_estimate {
        println!("verdict: indistinguishable from zero at this truncation");
    } else {
        println!("verdict: positive (clears the tail estimate)");
    }
}
