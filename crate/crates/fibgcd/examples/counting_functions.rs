//! Growth of the two counting functions.
//!
//! "Attained" counts k <= x that occur as gcd(n, F(n)); "positive" counts
//! those whose shifted-prime class has positive relative density. The
//! positive set is contained in the attained set, grows at least like
//! x / log x, and occupies a shrinking fraction of all integers.
//!
//! Usage: cargo run --release -p fibgcd --example counting_functions [max_exponent]

use fibgcd::scan;

fn main() {
    let max_exp: u32 = std::env::args()
        .nth(1)
        .and_then(|s| s.parse().ok())
        .unwrap_or(4);

    println!(
        "{:>8} {:>10} {:>10} {:>12} {:>14}",
        "x", "attained", "positive", "attained/x", "pos*ln(x)/x"
    );
    for exp in 2..=max_exp {
        let x = 10u64.pow(exp);
        let attained = scan::count_attained(x).expect("in range");
        let positive = scan::count_positive_density(x).expect("in range");
        println!(
            "{x:>8} {attained:>10} {positive:>10} {:>12.4} {:>14.3}",
            attained as f64 / x as f64,
            positive as f64 * (x as f64).ln() / x as f64
        );
    }
}
