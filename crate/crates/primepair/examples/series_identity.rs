//! The banded double series T^lambda(s) rearranges exactly into the diagonal
//! part D_0(s), the kernel-weighted shifted series V^lambda(s), and the odd
//! difference terms. The identity holds at every truncation, so the residual
//! below is pure floating-point noise.
//!
//!     cargo run --release --example series_identity

use num_complex::Complex64;
use primepair::dirichlet::{self, TruncationPlan};
use primepair::kernels::SievingKernel;
use primepair::sieve::PrimeTable;

fn main() -> Result<(), primepair::Error> {
    let table = PrimeTable::build(200_032)?;
    let kernel = SievingKernel::jackson();
    let n_terms = 100_000;

    println!(
        "{:>8} {:>12} {:>24} {:>12}",
        "lambda", "s", "T (re, im)", "residual"
    );
    for lambda in [1.0, 4.0, 10.0] {
        for s in [Complex64::new(1.5, 0.0), Complex64::new(0.7, 0.5)] {
            let plan = TruncationPlan::new(n_terms, s, 10)?;
            let t = dirichlet::t_lambda_expansion(s, lambda, &kernel, &plan, &table)?;
            let d0 = dirichlet::d_2r(s, 0, &plan, &table)?;
            let v = dirichlet::v_lambda(s, lambda, &kernel, &plan, &table)?;
            let odd = dirichlet::odd_difference_terms(s, lambda, &kernel, &plan, &table)?;
            let residual = (t.value - d0.value - v.value - odd.value).norm();
            println!(
                "{lambda:>8} {:>12} ({:>11.6}, {:>8.6}) {residual:>12.2e}",
                format!("{}+{}i", s.re, s.im),
                t.value.re,
                t.value.im
            );
        }
    }

    // below lambda = 2 no even gap fits under the kernel support, so V is
    // the empty sum: exactly zero, not merely small
    let plan = TruncationPlan::new(n_terms, Complex64::new(1.5, 0.0), 2)?;
    let v = dirichlet::v_lambda(Complex64::new(1.5, 0.0), 1.9, &kernel, &plan, &table)?;
    println!();
    println!("V(s; lambda = 1.9) = {} from {} terms", v.value, v.terms_used);
    Ok(())
}
