//! Versioned wire schemas for machine-readable output.
//!
//! Every report carries `schema_version: 1`. Densities are rounded to 12
//! significant digits before serialization, and no report contains timing
//! or other run-varying data, so identical configurations serialize to
//! identical bytes. Each struct deserializes from its own output with full
//! fidelity.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::cli::{round_density, series_token, RunConfig};
use crate::classify::{Classification, Verdict};
use crate::density::DensityEstimate;
use crate::rank::{EntryPointRecord, Method};
use crate::scan::ScanReport;
use crate::verify::CheckOutcome;

pub const SCHEMA_VERSION: u32 = 1;

fn schema_version() -> u32 {
    SCHEMA_VERSION
}

/// `z` and `ell` output: the full apparition record.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EntryReport {
    #[serde(default = "schema_version")]
    pub schema_version: u32,
    pub m: u64,
    pub z: u64,
    pub ell: u64,
    pub method: Method,
}

impl From<EntryPointRecord> for EntryReport {
    fn from(rec: EntryPointRecord) -> Self {
        EntryReport {
            schema_version: SCHEMA_VERSION,
            m: rec.m,
            z: rec.z,
            ell: rec.ell,
            method: rec.method,
        }
    }
}

/// `classify` output.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassifyReport {
    #[serde(default = "schema_version")]
    pub schema_version: u32,
    pub k: u64,
    pub verdict: Verdict,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub witness: Option<u64>,
    pub ell: u64,
    pub gcd_attained: u64,
}

impl From<Classification> for ClassifyReport {
    fn from(c: Classification) -> Self {
        ClassifyReport {
            schema_version: SCHEMA_VERSION,
            k: c.k,
            verdict: c.verdict,
            witness: c.witness,
            ell: crate::rank::entry_lcm(c.k).expect("ell of classified k"),
            gcd_attained: c.gcd_attained,
        }
    }
}

/// `density` output.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct DensityReport {
    #[serde(default = "schema_version")]
    pub schema_version: u32,
    pub k: u64,
    /// Which series produced the value: `exact-class`, `support-class`, or
    /// `recombined-exact-class`.
    pub series: String,
    pub terms_used: u64,
    pub value: f64,
    /// Absent for the recombined series, which mixes truncation depths.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub tail_estimate: Option<f64>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub partial_sums: Vec<f64>,
}

impl DensityReport {
    pub(crate) fn new(
        k: u64,
        config: &RunConfig,
        estimate: Option<&DensityEstimate>,
        value: f64,
    ) -> Self {
        DensityReport {
            schema_version: SCHEMA_VERSION,
            k,
            series: series_token(config.series, estimate),
            terms_used: config.terms,
            value: round_density(value),
            tail_estimate: estimate.map(|e| round_density(e.tail_estimate)),
            partial_sums: estimate
                .map(|e| e.partial_sums.iter().map(|&s| round_density(s)).collect())
                .unwrap_or_default(),
        }
    }
}

/// `scan` output. Carries no timing, so equal scans are byte-equal.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HistogramReport {
    #[serde(default = "schema_version")]
    pub schema_version: u32,
    pub x: u64,
    pub prime_count: u64,
    pub chunk_count: u64,
    /// k -> number of primes p <= x with gcd(p-1, F(p-1)) = k, keys sorted.
    pub histogram: BTreeMap<u64, u64>,
}

impl From<&ScanReport> for HistogramReport {
    fn from(rep: &ScanReport) -> Self {
        HistogramReport {
            schema_version: SCHEMA_VERSION,
            x: rep.x,
            prime_count: rep.prime_count,
            chunk_count: rep.chunk_count,
            histogram: rep.histogram.clone(),
        }
    }
}

/// `count` output.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CountReport {
    #[serde(default = "schema_version")]
    pub schema_version: u32,
    pub x: u64,
    /// Number of k <= x attained as gcd(n, F(n)).
    pub attained: u64,
    /// Number of k <= x whose class has positive relative density.
    pub positive_density: u64,
}

impl CountReport {
    pub(crate) fn new(x: u64, attained: u64, positive_density: u64) -> Self {
        CountReport {
            schema_version: SCHEMA_VERSION,
            x,
            attained,
            positive_density,
        }
    }
}

/// One check inside a `verify` report.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerifyCheck {
    pub group: String,
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

/// `verify` output.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerifyReport {
    #[serde(default = "schema_version")]
    pub schema_version: u32,
    pub passed: u64,
    pub failed: u64,
    pub checks: Vec<VerifyCheck>,
}

impl VerifyReport {
    pub(crate) fn new(outcomes: &[CheckOutcome]) -> Self {
        let failed = outcomes.iter().filter(|o| !o.passed).count() as u64;
        VerifyReport {
            schema_version: SCHEMA_VERSION,
            passed: outcomes.len() as u64 - failed,
            failed,
            checks: outcomes
                .iter()
                .map(|o| VerifyCheck {
                    group: o.group.to_string(),
                    name: o.name.to_string(),
                    passed: o.passed,
                    detail: o.detail.clone(),
                })
                .collect(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reports_round_trip() {
        let entry = EntryReport {
            schema_version: SCHEMA_VERSION,
            m: 10,
            z: 15,
            ell: 30,
            method: Method::LcmCombine,
        };
        let json = serde_json::to_string(&entry).unwrap();
        assert_eq!(entry, serde_json::from_str(&json).unwrap());

        let classify = ClassifyReport {
            schema_version: SCHEMA_VERSION,
            k: 17,
            verdict: Verdict::Degenerate,
            witness: Some(2),
            ell: 153,
            gcd_attained: 17,
        };
        let json = serde_json::to_string(&classify).unwrap();
        assert_eq!(classify, serde_json::from_str::<ClassifyReport>(&json).unwrap());

        let count = CountReport::new(100, 20, 15);
        let json = serde_json::to_string(&count).unwrap();
        assert_eq!(count, serde_json::from_str::<CountReport>(&json).unwrap());
    }

    #[test]
    fn witness_field_omitted_when_absent() {
        let classify = ClassifyReport {
            schema_version: SCHEMA_VERSION,
            k: 10,
            verdict: Verdict::PositiveDensity,
            witness: None,
            ell: 30,
            gcd_attained: 10,
        };
        let json = serde_json::to_string(&classify).unwrap();
        assert!(!json.contains("witness"));
        assert_eq!(classify, serde_json::from_str::<ClassifyReport>(&json).unwrap());
    }
}
