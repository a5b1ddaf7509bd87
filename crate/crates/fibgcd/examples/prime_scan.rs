//! Empirical scan: histogram of gcd(p-1, F(p-1)) over all primes p <= x.
//!
//! Usage: cargo run --release -p fibgcd --example prime_scan [x]

use fibgcd::scan;

fn main() {
    let x: u64 = std::env::args()
        .nth(1)
        .and_then(|s| s.parse().ok())
        .unwrap_or(1_000_000);

    let report = scan::scan_primes(x, 1 << 16).expect("scan in range");
    println!(
        "x = {}, pi(x) = {}, {} distinct gcd values, {} ms\n",
        report.x,
        report.prime_count,
        report.histogram.len(),
        report.elapsed_ms
    );

    let mut rows: Vec<(u64, u64)> = report.histogram.iter().map(|(&k, &c)| (k, c)).collect();
    rows.sort_by(|a, b| b.1.cmp(&a.1).then(a.0.cmp(&b.0)));
    println!("{:>8} {:>10} {:>12}", "k", "count", "frequency");
    for (k, count) in rows.iter().take(15) {
        println!(
            "{k:>8} {count:>10} {:>12.6}",
            *count as f64 / report.prime_count as f64
        );
    }
    println!("(top 15 of {})", rows.len());
}
