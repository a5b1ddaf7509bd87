//! Classification of target gcd values.
//!
//! Every k falls into one of three classes: never attained as gcd(n, F(n)),
//! attained but with a degenerate shifted-prime class (at most the prime 2
//! qualifies, so the relative density is zero), or positive density. The
//! degenerate rows print the witness prime p with ell(p*k) = 2*ell(k).
//!
//! Usage: cargo run -p fibgcd --example classify_range [max_k]

use fibgcd::{classify, rank, Verdict};

fn main() {
    let max_k: u64 = std::env::args()
        .nth(1)
        .and_then(|s| s.parse().ok())
        .unwrap_or(40);

    let mut counts = [0u32; 3];
    println!(
        "{:>6} {:>12} {:>18} {:>9} {:>14}",
        "k", "ell(k)", "verdict", "witness", "gcd at ell(k)"
    );
    for k in 1..=max_k {
        let c = classify::classify(k).expect("k in range");
        let ell = rank::entry_lcm(k).expect("k in range");
        let witness = c.witness.map(|w| w.to_string()).unwrap_or_else(|| "-".into());
        println!(
            "{:>6} {:>12} {:>18} {:>9} {:>14}",
            k,
            ell,
            format!("{:?}", c.verdict),
            witness,
            c.gcd_attained
        );
        counts[match c.verdict {
            Verdict::Unattained => 0,
            Verdict::Degenerate => 1,
            Verdict::PositiveDensity => 2,
        }] += 1;
    }
    println!(
        "\n{} unattained, {} degenerate, {} positive density",
        counts[0], counts[1], counts[2]
    );
    println!("smallest degenerate value: k = 17 (ell = 153 is odd and ell(2*17) = 306 = 2*153)");
}
