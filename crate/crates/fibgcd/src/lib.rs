//! Entry points of Fibonacci numbers and the arithmetic of `gcd(n, F(n))`.
//!
//! For a positive integer m, the rank of apparition `z(m)` is the smallest
//! index n with `m | F(n)`, and `ell(m) = lcm(m, z(m))` characterizes the
//! gcd statistic: `m | gcd(n, F(n))` holds exactly when `ell(m) | n`. On top
//! of these two functions the crate builds
//!
//! * a classifier deciding, for any target value k, whether k is attained
//!   as gcd(n, F(n)) and whether the primes p with
//!   `gcd(p - 1, F(p - 1)) = k` make up a positive fraction of all primes
//!   ([`mod@classify`]);
//! * a truncated evaluator for the density series of that fraction, with an
//!   empirical tail estimate and a reproducible summation order
//!   ([`density`]);
//! * a parallel scan of the primes themselves, histogramming the observed
//!   gcd values as independent ground truth ([`scan`]);
//! * counting functions for the set of attained values and the set of
//!   positive-density values ([`scan::count_attained`],
//!   [`scan::count_positive_density`]).
//!
//! # Examples
//!
//! Each major capability has a runnable example:
//!
//! ```bash
//! cargo run --release -p fibgcd --example entry_points
//! cargo run --release -p fibgcd --example classify_range
//! cargo run --release -p fibgcd --example density_series
//! cargo run --release -p fibgcd --example inclusion_exclusion
//! cargo run --release -p fibgcd --example residue_class_bound
//! cargo run --release -p fibgcd --example prime_scan
//! cargo run --release -p fibgcd --example series_vs_scan
//! cargo run --release -p fibgcd --example counting_functions
//! ```
//!
//! The `fibgcd` binary exposes the same operations as subcommands with JSON
//! and CSV output; `fibgcd verify` runs the built-in invariant suite.

pub mod arith;
pub mod classify;
pub mod cli;
pub mod density;
pub mod fib;
pub mod rank;
pub mod scan;
pub mod verify;

mod error;

pub use classify::{classify, has_positive_density, Classification, Verdict};
pub use density::{
    density_exact, density_support, exact_from_support, residue_class_lower_bound,
    DensityEstimate, DensityMode,
};
pub use error::{Error, Result};
pub use fib::{fib_exact, fib_gcd, fib_mod, FibPairMod};
pub use rank::{entry_lcm, entry_point, EntryPointRecord};
pub use scan::{
    count_attained, count_positive_density, empirical_density, scan_primes, shifted_gcd,
    ScanReport,
};
