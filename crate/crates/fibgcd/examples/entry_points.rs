//! Rank of apparition and its lcm for a range of moduli.
//!
//! For each m the table shows z(m), the smallest index n with m | F(n), the
//! derived period ell(m) = lcm(m, z(m)) governing when m divides
//! gcd(n, F(n)), and how the value was computed. The two bounds on display
//! are z(m) <= 2m and ell(m) <= 2m^2.
//!
//! Usage: cargo run -p fibgcd --example entry_points [max_m]

use fibgcd::rank;

fn main() {
    let max_m: u64 = std::env::args()
        .nth(1)
        .and_then(|s| s.parse().ok())
        .unwrap_or(30);

    println!("{:>6} {:>8} {:>12} {:>8} {:>8}  method", "m", "z(m)", "ell(m)", "z/m", "ell/m^2");
    for m in 1..=max_m {
        let rec = rank::record(m).expect("in range");
        println!(
            "{:>6} {:>8} {:>12} {:>8.3} {:>8.3}  {:?}",
            m,
            rec.z,
            rec.ell,
            rec.z as f64 / m as f64,
            rec.ell as f64 / (m as f64 * m as f64),
            rec.method,
        );
    }

    println!();
    for m in [10u64, 17, 153] {
        let rec = rank::record(m).expect("in range");
        println!("ell({m}) = {} (z = {})", rec.ell, rec.z);
    }
}
