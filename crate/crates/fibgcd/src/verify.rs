//! The built-in invariant suite behind `fibgcd verify`.
//!
//! Each check replays one documented invariant at full scale, against an
//! independent oracle where one exists (brute-force apparition scans, exact
//! big-integer Fibonacci values, the prime scan). The suite is the
//! productionized form of the unit tests: the same laws, at the ranges the
//! crate commits to, runnable from the CLI on demand.
//!
//! Checks are pure and deterministic; randomized ones use a fixed-seed
//! splitmix64 stream so every run examines the same inputs.

use std::sync::OnceLock;
use std::time::Instant;

use num_bigint::BigUint;

use crate::arith;
use crate::classify::{self, Verdict};
use crate::density;
use crate::fib;
use crate::rank;
use crate::scan::{self, ScanReport};

/// Outcome of one named check.
#[derive(Clone, Debug)]
pub struct CheckOutcome {
    pub name: &'static str,
    pub group: &'static str,
    pub passed: bool,
    /// Short range/result note on success, failure diagnostics otherwise.
    pub detail: String,
    pub elapsed_ms: u128,
}

type CheckFn = fn() -> Result<String, String>;

pub(crate) struct Check {
    pub name: &'static str,
    pub group: &'static str,
    pub run: CheckFn,
}

const fn check(group: &'static str, name: &'static str, run: CheckFn) -> Check {
    Check { name, group, run }
}

pub(crate) const ARITH_CHECKS: &[Check] = &[
    check("arith", "mobius-divisor-identity", mobius_divisor_identity),
    check("arith", "totient-divisor-identity", totient_divisor_identity),
    check("arith", "factorize-recompose", factorize_recompose),
    check("arith", "totient-multiplicative", totient_multiplicative),
];

pub(crate) const FIB_CHECKS: &[Check] = &[
    check("fib", "fib-mod-matches-exact", fib_mod_matches_exact),
    check("fib", "fib-divisibility-law", fib_divisibility_law),
    check("fib", "fib-gcd-residue-identity", fib_gcd_residue_identity),
    check("fib", "fib-ratio-law", fib_ratio_law),
];

pub(crate) const RANK_CHECKS: &[Check] = &[
    check("rank", "apparition-minimality", apparition_minimality),
    check("rank", "apparition-divisibility", apparition_divisibility),
    check("rank", "ell-gcd-characterization", ell_gcd_characterization),
    check("rank", "ell-lcm-morphism", ell_lcm_morphism),
    check("rank", "ell-prime-formula", ell_prime_formula),
    check("rank", "apparition-bounds", apparition_bounds),
    check("rank", "apparition-legendre-target", apparition_legendre_target),
];

pub(crate) const CLASSIFY_CHECKS: &[Check] = &[
    check("classify", "scanned-gcds-are-attained", scanned_gcds_are_attained),
    check("classify", "degenerate-classes-empty", degenerate_classes_empty),
    check("classify", "positive-classes-nonempty", positive_classes_nonempty),
    check("classify", "positive-implies-attained", positive_implies_attained),
    check("classify", "product-class-closure", product_class_closure),
    check("classify", "witness-reduction-brute", witness_reduction_brute),
];

pub(crate) const DENSITY_CHECKS: &[Check] = &[
    check("density", "squarefree-only-terms", squarefree_only_terms),
    check("density", "series-convergence-proxy", series_convergence_proxy),
    check("density", "zero-classes-vanish", zero_classes_vanish),
    check("density", "positive-classes-positive", positive_classes_positive),
    check("density", "total-probability", total_probability),
];

pub(crate) const SCAN_CHECKS: &[Check] = &[
    check("scan", "chunk-independence", chunk_independence),
    check("scan", "histogram-partition", histogram_partition),
    check("scan", "support-class-decomposition", support_class_decomposition),
    check("scan", "positive-count-growth-floor", positive_count_growth_floor),
    check("scan", "attained-count-shrinking", attained_count_shrinking),
];

pub(crate) fn all_checks() -> Vec<&'static Check> {
    [
        ARITH_CHECKS,
        FIB_CHECKS,
        RANK_CHECKS,
        CLASSIFY_CHECKS,
        DENSITY_CHECKS,
        SCAN_CHECKS,
    ]
    .into_iter()
    .flatten()
    .collect()
}

pub(crate) fn run_checks(checks: &[&Check]) -> Vec<CheckOutcome> {
    checks
        .iter()
        .map(|c| {
            let started = Instant::now();
            let result = (c.run)();
            let elapsed_ms = started.elapsed().as_millis();
            let (passed, detail) = match result {
                Ok(detail) => (true, detail),
                Err(detail) => (false, detail),
            };
            CheckOutcome {
                name: c.name,
                group: c.group,
                passed,
                detail,
                elapsed_ms,
            }
        })
        .collect()
}

/// Run the complete suite.
pub fn run_all() -> Vec<CheckOutcome> {
    run_checks(&all_checks())
}

/// Run only the exact-arithmetic law checks (the fib and rank groups).
pub fn run_law_checks() -> Vec<CheckOutcome> {
    let checks: Vec<&Check> = [FIB_CHECKS, RANK_CHECKS].into_iter().flatten().collect();
    run_checks(&checks)
}

// ---------------------------------------------------------------------------
// oracles and shared state
// ---------------------------------------------------------------------------

fn splitmix64(state: &mut u64) -> u64 {
    *state = state.wrapping_add(0x9E37_79B9_7F4A_7C15);
    let mut z = *state;
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// Brute-force apparition index: step the pair recurrence until F(n) hits 0
/// mod m. Independent of the divisor-scan path under test.
fn z_brute(m: u64) -> u64 {
    if m == 1 {
        return 1;
    }
    let (mut a, mut b) = (0u64, 1 % m);
    let mut n = 0u64;
    loop {
        let next = ((a as u128 + b as u128) % m as u128) as u64;
        a = b;
        b = next;
        n += 1;
        if a == 0 {
            return n;
        }
        assert!(n <= 2 * m, "apparition bound breached for m = {m}");
    }
}

fn scan_million() -> &'static ScanReport {
    static REPORT: OnceLock<ScanReport> = OnceLock::new();
    REPORT.get_or_init(|| scan::scan_primes(1_000_000, 1 << 16).expect("scan to 10^6"))
}

fn big_zero() -> BigUint {
    BigUint::from(0u8)
}

fn exact_fib_table(len: usize) -> Vec<BigUint> {
    let mut out = Vec::with_capacity(len);
    let mut a = BigUint::from(0u8);
    let mut b = BigUint::from(1u8);
    for _ in 0..len {
        out.push(a.clone());
        let next = &a + &b;
        a = b;
        b = next;
    }
    out
}

fn big_gcd(mut a: BigUint, mut b: BigUint) -> BigUint {
    while b != big_zero() {
        let r = &a % &b;
        a = b;
        b = r;
    }
    a
}

// ---------------------------------------------------------------------------
// arith
// ---------------------------------------------------------------------------

fn mobius_divisor_identity() -> Result<String, String> {
    for n in 1..=10_000u64 {
        let s: i64 = arith::divisors(n)
            .unwrap()
            .iter()
            .map(|&d| arith::mobius(d) as i64)
            .sum();
        let want = i64::from(n == 1);
        if s != want {
            return Err(format!("n = {n}: divisor sum of mu is {s}, want {want}"));
        }
    }
    Ok("sum of mu over divisors is [n = 1] for n <= 10^4".into())
}

fn totient_divisor_identity() -> Result<String, String> {
    for n in 1..=10_000u64 {
        let s: u64 = arith::divisors(n)
            .unwrap()
            .iter()
            .map(|&d| arith::euler_phi(d))
            .sum();
        if s != n {
            return Err(format!("n = {n}: divisor sum of phi is {s}"));
        }
    }
    Ok("sum of phi over divisors recovers n for n <= 10^4".into())
}

fn factorize_recompose() -> Result<String, String> {
    let mut state = 0x5EED_0001u64;
    for i in 0..100_000 {
        let n = splitmix64(&mut state) % 1_000_000_000_000 + 1;
        let f = arith::factorize(n);
        let mut back = 1u64;
        for &(p, e) in f.factors() {
            if !arith::is_prime(p) {
                return Err(format!("n = {n}: listed factor {p} is not prime"));
            }
            back *= p.pow(e);
        }
        if back != n {
            return Err(format!("sample {i}: n = {n} recomposed to {back}"));
        }
    }
    Ok("10^5 random n <= 10^12 recompose exactly".into())
}

fn totient_multiplicative() -> Result<String, String> {
    let mut state = 0x5EED_0002u64;
    let mut tested = 0u32;
    while tested < 10_000 {
        let m = splitmix64(&mut state) % 1_000_000 + 1;
        let n = splitmix64(&mut state) % 1_000_000 + 1;
        if arith::gcd(m, n) != 1 {
            continue;
        }
        if arith::euler_phi(m * n) != arith::euler_phi(m) * arith::euler_phi(n) {
            return Err(format!("phi not multiplicative at coprime ({m}, {n})"));
        }
        tested += 1;
    }
    Ok("10^4 random coprime pairs".into())
}

// ---------------------------------------------------------------------------
// fib
// ---------------------------------------------------------------------------

fn fib_mod_matches_exact() -> Result<String, String> {
    let exact = exact_fib_table(501);
    for n in 0..=500u64 {
        for m in 2..=100u64 {
            let pair = fib::fib_mod(n, m);
            let want = &exact[n as usize] % BigUint::from(m);
            if BigUint::from(pair.f_n) != want {
                return Err(format!("F({n}) mod {m}: doubling gave {}", pair.f_n));
            }
        }
    }
    Ok("n <= 500, moduli 2..=100, exhaustive".into())
}

fn fib_divisibility_law() -> Result<String, String> {
    let exact = exact_fib_table(501);
    for n in 1..=500usize {
        for m in 1..=n {
            if n % m == 0 && &exact[n] % &exact[m] != big_zero() {
                return Err(format!("F({m}) does not divide F({n})"));
            }
        }
    }
    Ok("F(m) | F(n) whenever m | n, n <= 500".into())
}

fn fib_gcd_residue_identity() -> Result<String, String> {
    let exact = exact_fib_table(501);
    for n in 1..=500u64 {
        let full = &exact[n as usize] % BigUint::from(n);
        let r = full.to_u64_digits().first().copied().unwrap_or(0);
        if fib::fib_gcd(n) != arith::gcd(n, r) {
            return Err(format!("gcd(n, F(n)) mismatch at n = {n}"));
        }
    }
    Ok("gcd(n, F(n)) = gcd(n, F(n) mod n) for n <= 500".into())
}

fn fib_ratio_law() -> Result<String, String> {
    let exact = exact_fib_table(301);
    for m in 2..=300usize {
        for n in 1..m {
            if m % n != 0 {
                continue;
            }
            let quotient = &exact[m] / &exact[n];
            let g = big_gcd(quotient, exact[n].clone());
            if BigUint::from((m / n) as u64) % &g != big_zero() {
                return Err(format!(
                    "gcd(F({m})/F({n}), F({n})) does not divide {}",
                    m / n
                ));
            }
        }
    }
    Ok("gcd(F(m)/F(n), F(n)) | m/n for n | m <= 300".into())
}

// ---------------------------------------------------------------------------
// rank
// ---------------------------------------------------------------------------

fn apparition_minimality() -> Result<String, String> {
    for m in 1..=2_000u64 {
        let z = rank::entry_point(m).map_err(|e| e.to_string())?;
        let brute = z_brute(m);
        if z != brute {
            return Err(format!("m = {m}: computed {z}, brute force {brute}"));
        }
    }
    Ok("divisor-scan apparition equals brute first zero for m <= 2000".into())
}

fn apparition_divisibility() -> Result<String, String> {
    let exact = exact_fib_table(501);
    for m in 1..=500u64 {
        let z = rank::entry_point(m).unwrap();
        for n in 1..=500u64 {
            let divides = &exact[n as usize] % BigUint::from(m) == big_zero();
            if divides != (n % z == 0) {
                return Err(format!("m = {m}, n = {n}: m | F(n) is {divides}"));
            }
        }
    }
    Ok("m | F(n) iff z(m) | n, m and n <= 500".into())
}

fn ell_gcd_characterization() -> Result<String, String> {
    let gcds: Vec<u64> = (1..=2_000u64).map(fib::fib_gcd).collect();
    for m in 1..=200u64 {
        let ell = rank::entry_lcm(m).unwrap();
        for n in 1..=2_000u64 {
            let divides_gcd = gcds[(n - 1) as usize].is_multiple_of(m);
            if divides_gcd != (n % ell == 0) {
                return Err(format!("m = {m}, n = {n}"));
            }
        }
    }
    Ok("m | gcd(n, F(n)) iff ell(m) | n, m <= 200, n <= 2000".into())
}

fn ell_lcm_morphism() -> Result<String, String> {
    for m in 1..=300u64 {
        for n in 1..=300u64 {
            let left = rank::entry_lcm(arith::lcm(m, n).unwrap()).unwrap();
            let right =
                arith::lcm(rank::entry_lcm(m).unwrap(), rank::entry_lcm(n).unwrap()).unwrap();
            if left != right {
                return Err(format!(
                    "ell(lcm({m}, {n})) = {left}, lcm of ells = {right}"
                ));
            }
        }
    }
    Ok("ell(lcm(m, n)) = lcm(ell(m), ell(n)) for m, n <= 300".into())
}

fn ell_prime_formula() -> Result<String, String> {
    for p in arith::sieve_primes(10_000).unwrap() {
        let ell = rank::entry_lcm(p).unwrap();
        let z = rank::entry_point(p).unwrap();
        let want = if p == 5 { 5 } else { z * p };
        if ell != want {
            return Err(format!("p = {p}: ell = {ell}, want {want}"));
        }
    }
    Ok("ell(p) = z(p) * p for p != 5, ell(5) = 5, p <= 10^4".into())
}

fn apparition_bounds() -> Result<String, String> {
    for m in 1..=100_000u64 {
        let rec = rank::record(m).unwrap();
        if rec.z > 2 * m {
            return Err(format!("z({m}) = {} exceeds 2m", rec.z));
        }
        if rec.ell > 2 * m * m {
            return Err(format!("ell({m}) = {} exceeds 2m^2", rec.ell));
        }
    }
    Ok("z(m) <= 2m and ell(m) <= 2m^2 for m <= 10^5".into())
}

fn apparition_legendre_target() -> Result<String, String> {
    for p in arith::sieve_primes(100_000).unwrap() {
        if p == 5 {
            continue;
        }
        let target = match p % 5 {
            1 | 4 => p - 1,
            _ => p + 1,
        };
        let z = rank::entry_point(p).unwrap();
        if target % z != 0 {
            return Err(format!("z({p}) = {z} does not divide {target}"));
        }
    }
    Ok("z(p) | p - (p/5) for primes p <= 10^5".into())
}

// ---------------------------------------------------------------------------
// classify
// ---------------------------------------------------------------------------

fn scanned_gcds_are_attained() -> Result<String, String> {
    let report = scan_million();
    for &k in report.histogram.keys() {
        let c = classify::classify(k).map_err(|e| format!("k = {k}: {e}"))?;
        if c.verdict == Verdict::Unattained {
            return Err(format!("observed gcd {k} classified as unattained"));
        }
    }
    Ok(format!(
        "all {} observed gcd values up to x = 10^6 are attained",
        report.histogram.len()
    ))
}

fn degenerate_classes_empty() -> Result<String, String> {
    let report = scan_million();
    for k in 2..=200u64 {
        let c = classify::classify(k).unwrap();
        if c.verdict != Verdict::PositiveDensity && report.histogram.contains_key(&k) {
            // Only p = 2 may sit in a zero-density class, and it lands in k = 1.
            return Err(format!("{:?} class of k = {k} observed in scan", c.verdict));
        }
    }
    Ok("no prime in (2, 10^6] hits a zero-density class, k <= 200".into())
}

fn positive_classes_nonempty() -> Result<String, String> {
    let report = scan_million();
    for k in 1..=50u64 {
        let c = classify::classify(k).unwrap();
        if c.verdict == Verdict::PositiveDensity && !report.histogram.contains_key(&k) {
            return Err(format!("positive-density class k = {k} unseen at 10^6"));
        }
    }
    Ok("every positive-density k <= 50 appears by x = 10^6".into())
}

fn positive_implies_attained() -> Result<String, String> {
    for k in 1..=10_000u64 {
        if classify::has_positive_density(k).unwrap() && classify::gcd_at_ell(k).unwrap() != k {
            return Err(format!("k = {k} positive but not attained"));
        }
    }
    Ok("positive density implies attained, k <= 10^4".into())
}

fn product_class_closure() -> Result<String, String> {
    let base = arith::sieve_primes(100_000).unwrap();
    let members: Vec<u64> = base
        .iter()
        .copied()
        .filter(|&p| scan::shifted_gcd(p) == 10)
        .collect();
    if members.is_empty() {
        return Err("class of 10 empty below 10^5".into());
    }
    for &p in &members {
        if !classify::has_positive_density(10 * p).map_err(|e| e.to_string())? {
            return Err(format!("10 * {p} lacks positive density"));
        }
    }
    Ok(format!(
        "k = 10p positive for all {} class-10 primes p <= 10^5",
        members.len()
    ))
}

fn witness_reduction_brute() -> Result<String, String> {
    let primes = arith::sieve_primes(1_000).unwrap();
    for k in 1..=200u64 {
        if classify::gcd_at_ell(k).unwrap() != k {
            continue;
        }
        let lk = rank::entry_lcm(k).unwrap();
        if lk.is_multiple_of(2) {
            continue;
        }
        let brute = primes
            .iter()
            .any(|&p| k % p != 0 && rank::entry_lcm(p * k).unwrap() == 2 * lk);
        let class = classify::classify(k).unwrap();
        if brute != (class.verdict == Verdict::Degenerate) {
            return Err(format!(
                "k = {k}: brute witness {brute}, verdict {:?}",
                class.verdict
            ));
        }
    }
    Ok("witness candidates p | 2*ell(k) agree with brute scan, k <= 200".into())
}

// ---------------------------------------------------------------------------
// density
// ---------------------------------------------------------------------------

fn squarefree_only_terms() -> Result<String, String> {
    for k in 1..=20u64 {
        let plain = density::density_exact(k, 1_000).unwrap().value;
        let mut filtered = 0.0;
        for d in 1..=1_000u64 {
            let f = arith::factorize(d);
            if !f.is_squarefree() {
                continue;
            }
            filtered += f64::from(f.mobius()) / rank::phi_ell(d * k).unwrap() as f64;
        }
        if plain != filtered {
            return Err(format!("k = {k}: {plain} vs squarefree-only {filtered}"));
        }
    }
    Ok("explicit squarefree filtering is a no-op, k <= 20, D = 10^3".into())
}

fn series_convergence_proxy() -> Result<String, String> {
    // Growth of the signed series between D = 2^15 and 2^16, with the mass
    // of the same block (squarefree indices) reported alongside. The signed
    // growth is the quantity that must settle below 10^-3; the raw block
    // mass decays only quasi-exponentially and is orders larger at this
    // scale.
    let mut signed = 0.0f64;
    let mut mass = 0.0f64;
    for d in (1u64 << 15) + 1..=1u64 << 16 {
        let f = arith::factorize(d);
        if !f.is_squarefree() {
            continue;
        }
        let phi = rank::phi_ell(d).unwrap() as f64;
        signed += f64::from(f.mobius()) / phi;
        mass += 1.0 / phi;
    }
    if signed.abs() >= 1e-3 {
        return Err(format!("series grew {signed:.6} >= 10^-3 in (2^15, 2^16]"));
    }
    Ok(format!(
        "series grows {:.1e} from D = 2^15 to 2^16 (block mass {mass:.1e})",
        signed.abs()
    ))
}

fn zero_classes_vanish() -> Result<String, String> {
    for k in 1..=100u64 {
        if classify::classify(k).unwrap().verdict == Verdict::PositiveDensity {
            continue;
        }
        let est = density::density_exact(k, 10_000).unwrap();
        if est.value.abs() > est.tail_estimate {
            return Err(format!(
                "k = {k}: |{}| > tail {}",
                est.value, est.tail_estimate
            ));
        }
    }
    Ok("zero-density classes stay within the tail, k <= 100, D = 10^4".into())
}

fn positive_classes_positive() -> Result<String, String> {
    for k in 1..=50u64 {
        if classify::classify(k).unwrap().verdict != Verdict::PositiveDensity {
            continue;
        }
        let est = density::density_exact(k, 10_000).unwrap();
        if est.value <= est.tail_estimate {
            return Err(format!(
                "k = {k}: value {} below tail {}",
                est.value, est.tail_estimate
            ));
        }
    }
    Ok("positive classes clear their tail estimate, k <= 50, D = 10^4".into())
}

fn total_probability() -> Result<String, String> {
    let report = scan_million();
    let head = density::density_exact(1, 10_000).unwrap().value;
    let mut rest = 0.0;
    for (&k, _) in report.histogram.iter().filter(|&(&k, _)| k >= 2) {
        rest += density::density_exact(k, 1_000).unwrap().value;
    }
    let gap = (head - (1.0 - rest)).abs();
    if gap > 0.02 {
        return Err(format!(
            "density of class 1 is {head:.5}, 1 - rest = {:.5}, gap {gap:.5}",
            1.0 - rest
        ));
    }
    Ok(format!(
        "class densities sum to 1 within {gap:.4} over observed k"
    ))
}

// ---------------------------------------------------------------------------
// scan
// ---------------------------------------------------------------------------

fn chunk_independence() -> Result<String, String> {
    let a = scan::scan_primes(100_000, 1_000).unwrap();
    let b = scan::scan_primes(100_000, 9_973).unwrap();
    let c = scan::scan_primes(100_000, 100_000).unwrap();
    if a.histogram != b.histogram || b.histogram != c.histogram {
        return Err("histograms differ across chunk sizes".into());
    }
    Ok("x = 10^5 scanned with three chunkings, identical histograms".into())
}

fn histogram_partition() -> Result<String, String> {
    let report = scan_million();
    let total: u64 = report.histogram.values().sum();
    let sieved = arith::sieve_primes(1_000_000).unwrap().len() as u64;
    if total != 78_498 || report.prime_count != total || sieved != total {
        return Err(format!(
            "partition sum {total}, prime count {}, sieve count {sieved}",
            report.prime_count
        ));
    }
    Ok("histogram keys partition all 78498 primes up to 10^6".into())
}

fn support_class_decomposition() -> Result<String, String> {
    let x = 100_000u64;
    let report = scan::scan_primes(x, 1 << 14).unwrap();
    let primes = arith::sieve_primes(x).unwrap();
    for k in [1u64, 2, 10] {
        let direct = primes
            .iter()
            .filter(|&&p| scan::in_support_class(p, k))
            .count() as u64;
        let from_histogram: u64 = report
            .histogram
            .iter()
            .filter(|&(&j, _)| {
                j % k == 0
                    && arith::factorize(j)
                        .factors()
                        .iter()
                        .all(|&(q, _)| k % q == 0)
            })
            .map(|(_, &count)| count)
            .sum();
        if direct != from_histogram {
            return Err(format!(
                "k = {k}: direct {direct}, histogram {from_histogram}"
            ));
        }
    }
    Ok("support-class counts match histogram rollup at x = 10^5".into())
}

fn positive_count_growth_floor() -> Result<String, String> {
    let mut notes = Vec::new();
    for x in [100u64, 1_000, 10_000] {
        let count = scan::count_positive_density(x).unwrap();
        let floor = count as f64 * (x as f64).ln() / x as f64;
        if floor < 0.1 {
            return Err(format!("x = {x}: count {count}, normalized {floor:.3}"));
        }
        notes.push(format!("x=10^{}: {floor:.2}", (x as f64).log10() as u32));
    }
    Ok(format!(
        "count * ln(x) / x stays above 0.1 ({})",
        notes.join(", ")
    ))
}

fn attained_count_shrinking() -> Result<String, String> {
    let mut previous: Option<f64> = None;
    let mut notes = Vec::new();
    for x in [1_000u64, 10_000, 100_000] {
        let ratio = scan::count_attained(x).unwrap() as f64 / x as f64;
        if let Some(prev) = previous {
            if ratio > prev * 1.1 {
                return Err(format!("x = {x}: ratio {ratio:.4} above 1.1 * {prev:.4}"));
            }
        }
        notes.push(format!("{ratio:.4}"));
        previous = Some(ratio);
    }
    Ok(format!(
        "attained fraction non-increasing within 10% ({})",
        notes.join(" -> ")
    ))
}
