//! Programmatic use of the verification suites: run one suite, inspect the
//! checks, and serialize the machine-readable report (what the `verify`
//! subcommand does behind the scenes).
//!
//! Run with: cargo run --example verify_report

use heisflow::verify::{run_suite, Suite};

fn main() {
    let report = run_suite(Suite::Core, 7);
    for line in report.lines() {
        println!("{line}");
    }
    println!(
        "\nsuite '{}' with seed {}: {} checks, passed: {}",
        report.suite,
        report.seed,
        report.checks.len(),
        report.passed
    );

    let json = serde_json::to_string_pretty(&report).unwrap();
    println!("\nreport as JSON (first lines):");
    for line in json.lines().take(10) {
        println!("  {line}");
    }
}
