//! The twin prime constant C_2, the gap constants C_2r as exact rational
//! multiples of it, and the linear growth of their partial sums.
//!
//!     cargo run --release --example singular_constants

use primepair::singular::SingularConstants;

fn main() -> Result<(), primepair::Error> {
    let constants = SingularConstants::new(10_000_000)?;
    println!("C_2 = {:.12}", constants.c2());
    println!();

    println!("{:>5} {:>8} {:>14}", "2r", "ratio", "C_2r");
    for two_r in [2u64, 4, 6, 8, 10, 12, 30, 210] {
        let ratio = SingularConstants::ratio(two_r / 2)?;
        println!(
            "{two_r:>5} {:>8} {:>14.10}",
            format!("{}/{}", ratio.num, ratio.den),
            constants.c_2r(two_r / 2)?
        );
    }
    println!();

    // S_m = sum of the first m gap constants stays close to m - (1/2) log m
    println!("{:>7} {:>12} {:>14}", "m", "S_m", "m - log(m)/2");
    for m in [10u64, 100, 1_000, 10_000] {
        let s = constants.singular_sum(m)?;
        let mf = m as f64;
        println!("{m:>7} {s:>12.4} {:>14.4}", mf - 0.5 * mf.ln());
    }
    Ok(())
}
