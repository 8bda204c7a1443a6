//! Sums over nontrivial zeta zeros: the single sum, the provably nonnegative
//! squared double sum, and the boundary probe G^lambda whose sign would
//! decide how far pair counts can stray from their prediction.
//!
//!     cargo run --release --example zero_sums [path/to/zeros.txt]

use num_complex::Complex64;
use primepair::kernels::SievingKernel;
use primepair::singular::SingularConstants;
use primepair::zeros::ZeroSet;
use primepair::zerosum;
use std::path::PathBuf;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let path = std::env::args().nth(1).map_or_else(
        || PathBuf::from(concat!(env!("CARGO_MANIFEST_DIR"), "/../../data/zeros_10050.txt")),
        PathBuf::from,
    );
    let zeros = ZeroSet::load(&path)?;
    println!("{} ordinates from {}", zeros.len(), zeros.source());

    let kernel = SievingKernel::jackson();
    let cutoff = zeros.cutoff_for_count(1_000)?;
    let s = Complex64::new(0.75, 0.0);

    let s1 = zerosum::sigma1(s, 4.0, &kernel, &zeros, &cutoff)?;
    println!(
        "sigma_1(0.75; lambda = 4) = {:.8} (+- {:.1e}, {} zeros)",
        s1.value, s1.tail_estimate, s1.terms_used
    );

    // the squared form cannot go below -tail for any zero table
    for sr in [0.55, 0.7, 0.9] {
        let s2 = zerosum::sigma2_square(Complex64::new(sr, 0.0), 4.0, &kernel, &zeros, &cutoff)?;
        println!(
            "sigma_2({sr}; lambda = 4)  = {:>12.6} (+- {:.1e})",
            s2.value.re, s2.tail_estimate
        );
    }

    let constants = SingularConstants::new(1_000_000)?;
    let g1 = zerosum::g_lambda(s, 1.0, &kernel, &zeros, &cutoff, &constants)?;
    let g4 = zerosum::g_lambda(s, 4.0, &kernel, &zeros, &cutoff, &constants)?;
    println!("G(s; lambda = 1) = {} exactly", g1.value);
    println!("G(s; lambda = 4) = {:.8}", g4.value);

    // scaled boundary differences on a shrinking grid; the label is honest
    let probe = zerosum::omega_probe(4.0, &kernel, &zeros, &[0.24, 0.2, 0.16, 0.12])?;
    println!("omega probe ({}):", probe.label);
    for row in &probe.rows {
        println!(
            "  delta = {:>5}: scaled difference {:>10.6} (+- {:.1e})",
            row.delta, row.scaled_difference, row.tail_estimate
        );
    }
    println!("  extrapolate -> {:.6}", probe.extrapolate);
    Ok(())
}
