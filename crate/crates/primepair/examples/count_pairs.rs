//! Count prime pairs (p, p + 2r) with p <= x for several gaps at once,
//! and compare with the rounded heuristic prediction 2 C_2 li_2(x).
//!
//!     cargo run --release --example count_pairs

use primepair::sieve::PrimeTable;
use primepair::singular::{li2, SingularConstants};

fn main() -> Result<(), primepair::Error> {
    let gaps = [2u64, 4, 6, 8, 10, 12];
    let checkpoints = [10_000u64, 100_000, 1_000_000];

    // one shared table serves every gap; capacity covers p + 2r
    let table = PrimeTable::build(1_000_012)?;
    let rows = table.count_prime_pairs_batch(&gaps, &checkpoints)?;

    print!("{:>6}", "2r");
    for x in checkpoints {
        print!("{x:>12}");
    }
    println!();
    for row in &rows {
        print!("{:>6}", row[0].two_r);
        for rec in row {
            print!("{:>12}", rec.count);
        }
        println!();
    }

    // the prediction is gap-independent up to the ratio C_2r / C_2
    let constants = SingularConstants::new(1_000_000)?;
    print!("{:>6}", "2C2li2");
    for x in checkpoints {
        print!("{:>12}", (2.0 * constants.c2() * li2(x as f64)?).round());
    }
    println!();
    Ok(())
}
