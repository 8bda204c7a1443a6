//! Run the built-in verification suites from library code (the CLI's
//! `verify` subcommand wraps the same reports).
//!
//!     cargo run --release --example verification [path/to/zeros.txt]

use primepair::verify;
use primepair::zeros::ZeroSet;
use std::path::PathBuf;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let path = std::env::args().nth(1).map_or_else(
        || PathBuf::from(concat!(env!("CARGO_MANIFEST_DIR"), "/../../data/zeros_10050.txt")),
        PathBuf::from,
    );
    let zeros = ZeroSet::load(&path)?;

    let mut all = true;
    for suite in verify::ALL_SUITES {
        let report = verify::run_suite(suite, Some(&zeros), false)?;
        for check in &report.checks {
            println!(
                "{} {:>9} {:<32} {}",
                if check.passed { "PASS" } else { "FAIL" },
                report.suite,
                check.name,
                check.measured
            );
        }
        all &= report.passed();
    }
    if !all {
        std::process::exit(1);
    }
    Ok(())
}
