//! Analytic densities against observed frequencies, side by side.
//!
//! The truncated series and the prime scan are fully independent: one never
//! looks at actual primes, the other never evaluates the series. Agreement
//! across every well-populated class is the strongest end-to-end evidence
//! the whole stack is right.
//!
//! Usage: cargo run --release -p fibgcd --example series_vs_scan [x] [terms]

use fibgcd::{classify, density, scan, Verdict};

fn main() {
    let mut args = std::env::args().skip(1);
    let x: u64 = args.next().and_then(|s| s.parse().ok()).unwrap_or(1_000_000);
    let terms: u64 = args.next().and_then(|s| s.parse().ok()).unwrap_or(10_000);

    let report = scan::scan_primes(x, 1 << 16).expect("scan in range");
    println!("x = {}, pi(x) = {}, series truncated at {terms}\n", x, report.prime_count);
    println!(
        "{:>6} {:>10} {:>12} {:>12} {:>10}",
        "k", "count", "empirical", "series", "gap"
    );

    let mut worst = 0.0f64;
    for (&k, &count) in &report.histogram {
        if count < 200 {
            continue;
        }
        if classify::classify(k).expect("in range").verdict != Verdict::PositiveDensity {
            continue;
        }
        let empirical = scan::empirical_density(&report, k);
        let series = density::density_exact(k, terms).expect("in range").value;
        let gap = (empirical - series).abs();
        worst = worst.max(gap);
        println!("{k:>6} {count:>10} {empirical:>12.6} {series:>12.6} {gap:>10.2e}");
    }
    println!("\nworst absolute gap: {worst:.2e}");
}
