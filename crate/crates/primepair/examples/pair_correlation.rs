//! The pair correlation statistic F(alpha, T) of zero ordinates, swept over
//! alpha. Near alpha = 0 the diagonal dominates; toward alpha = 1 the value
//! approaches 1, the signature of the conjectured correlation density.
//!
//!     cargo run --release --example pair_correlation [path/to/zeros.txt]

use primepair::zeros::ZeroSet;
use primepair::zerosum;
use std::path::PathBuf;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let path = std::env::args().nth(1).map_or_else(
        || PathBuf::from(concat!(env!("CARGO_MANIFEST_DIR"), "/../../data/zeros_10050.txt")),
        PathBuf::from,
    );
    let zeros = ZeroSet::load(&path)?.truncated(10_000)?;
    let t = *zeros.ordinates().last().unwrap();
    println!("T = {t:.2}, log T = {:.4}", t.ln());

    println!("{:>6} {:>10}", "alpha", "F");
    for k in 0..=12 {
        let alpha = k as f64 / 8.0;
        let f = zerosum::pair_correlation_f(alpha, &zeros, t)?;
        println!("{alpha:>6.3} {f:>10.4}");
    }
    Ok(())
}
