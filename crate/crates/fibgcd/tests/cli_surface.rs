//! External-interface contract tests: every subcommand through the run
//! surface, wire-schema fidelity, and reproducibility.

use fibgcd::cli::{self, parse_args, report};

fn run(argv: &[&str]) -> cli::RunOutput {
    let args: Vec<String> = argv.iter().map(|s| s.to_string()).collect();
    let config = parse_args(&args, &|_| None).expect("parse");
    cli::run(&config).expect("run")
}

#[test]
fn every_subcommand_renders_json() {
    let entry: report::EntryReport =
        serde_json::from_str(&run(&["z", "10", "--format", "json"]).stdout).unwrap();
    assert_eq!((entry.m, entry.z, entry.ell), (10, 15, 30));

    let entry: report::EntryReport =
        serde_json::from_str(&run(&["ell", "17", "--format", "json"]).stdout).unwrap();
    assert_eq!(entry.ell, 153);

    let classify: report::ClassifyReport =
        serde_json::from_str(&run(&["classify", "3", "--format", "json"]).stdout).unwrap();
    assert_eq!(classify.gcd_attained, 12);
    assert_eq!(classify.witness, None);

    let density: report::DensityReport = serde_json::from_str(
        &run(&["density", "2", "--terms", "128", "--format", "json"]).stdout,
    )
    .unwrap();
    assert_eq!(density.series, "exact-class");
    assert_eq!(density.partial_sums.len(), 8); // d = 1, 2, ..., 128

    let scan: report::HistogramReport = serde_json::from_str(
        &run(&["scan", "--limit", "1000", "--format", "json"]).stdout,
    )
    .unwrap();
    assert_eq!(scan.prime_count, 168);
    assert_eq!(scan.histogram.get(&1), Some(&62));

    let count: report::CountReport = serde_json::from_str(
        &run(&["count", "--limit", "100", "--format", "json"]).stdout,
    )
    .unwrap();
    assert_eq!((count.attained, count.positive_density), (37, 34));
}

#[test]
fn json_reports_round_trip_with_full_fidelity() {
    let cases: &[&[&str]] = &[
        &["z", "153", "--format", "json"],
        &["classify", "17", "--format", "json"],
        &["density", "10", "--terms", "500", "--format", "json"],
        &["density", "10", "--terms", "500", "--series", "support", "--format", "json"],
        &["scan", "--limit", "5000", "--format", "json"],
        &["count", "--limit", "50", "--format", "json"],
    ];
    for argv in cases {
        let first = run(argv).stdout;
        let value: serde_json::Value = serde_json::from_str(&first).unwrap();
        assert_eq!(value["schema_version"], 1, "{argv:?}");
        // Parse into the typed report and re-serialize: byte-identical.
        let again = match argv[0] {
            "z" => serde_json::to_string(
                &serde_json::from_str::<report::EntryReport>(&first).unwrap(),
            ),
            "classify" => serde_json::to_string(
                &serde_json::from_str::<report::ClassifyReport>(&first).unwrap(),
            ),
            "density" => serde_json::to_string(
                &serde_json::from_str::<report::DensityReport>(&first).unwrap(),
            ),
            "scan" => serde_json::to_string(
                &serde_json::from_str::<report::HistogramReport>(&first).unwrap(),
            ),
            "count" => serde_json::to_string(
                &serde_json::from_str::<report::CountReport>(&first).unwrap(),
            ),
            _ => unreachable!(),
        }
        .unwrap();
        assert_eq!(first.trim_end(), again, "{argv:?}");
    }
}

#[test]
fn csv_reports_carry_headers() {
    assert!(run(&["z", "10", "--format", "csv"]).stdout.starts_with("m,z,ell,method\n"));
    assert!(run(&["classify", "10", "--format", "csv"])
        .stdout
        .starts_with("k,verdict,witness,ell,gcd_attained\n"));
    assert!(run(&["density", "1", "--terms", "8", "--format", "csv"])
        .stdout
        .starts_with("k,series,terms,value,tail_estimate\n"));
    assert!(run(&["scan", "--limit", "1000", "--format", "csv"])
        .stdout
        .starts_with("k,count,frequency\n"));
    assert!(run(&["count", "--limit", "30", "--format", "csv"])
        .stdout
        .starts_with("x,attained,positive_density\n"));
}

#[test]
fn machine_output_is_reproducible() {
    for argv in [
        vec!["density", "12", "--terms", "2000", "--format", "json"],
        vec!["scan", "--limit", "200000", "--format", "json"],
        vec!["scan", "--limit", "200000", "--format", "csv"],
    ] {
        let a = run(&argv).stdout;
        let b = run(&argv).stdout;
        assert_eq!(a, b, "{argv:?}");
    }
    // Chunk width is part of the config and may change chunk_count, but the
    // histogram itself is chunk-invariant.
    let narrow: report::HistogramReport = serde_json::from_str(
        &run(&["scan", "--limit", "100000", "--chunk", "1000", "--format", "json"]).stdout,
    )
    .unwrap();
    let wide: report::HistogramReport = serde_json::from_str(
        &run(&["scan", "--limit", "100000", "--chunk", "100000", "--format", "json"]).stdout,
    )
    .unwrap();
    assert_eq!(narrow.histogram, wide.histogram);
    assert_eq!(narrow.chunk_count, 100);
    assert_eq!(wide.chunk_count, 1);
}

#[test]
fn densities_print_at_most_12_significant_digits() {
    let out = run(&["density", "2", "--terms", "1000", "--format", "csv"]).stdout;
    let row = out.lines().nth(1).unwrap();
    for field in row.split(',').skip(3) {
        let digits = field
            .trim_start_matches('-')
            .trim_start_matches("0.")
            .trim_start_matches('0')
            .chars()
            .filter(|c| c.is_ascii_digit())
            .count();
        assert!(digits <= 12, "{field} has {digits} significant digits");
    }
}
