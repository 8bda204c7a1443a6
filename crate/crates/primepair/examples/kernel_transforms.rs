//! The two sieving kernels side by side: weights, transforms, Mellin values
//! on the critical strip, and the vertical decay that justifies contour
//! shifts.
//!
//!     cargo run --release --example kernel_transforms

use num_complex::Complex64;
use primepair::kernels::SievingKernel;

fn main() -> Result<(), primepair::Error> {
    for kernel in [SievingKernel::fejer(), SievingKernel::jackson()] {
        println!(
            "{} kernel: A_E = {}, transform analytic for Re z > {}",
            kernel.name(),
            kernel.a_e(),
            kernel.mellin_min_re()
        );

        print!("  E(nu) at nu = 0, 1/4, 1/2, 3/4, 1:");
        for k in 0..=4 {
            print!(" {:.4}", kernel.eval_e(k as f64 / 4.0));
        }
        println!();

        let lambda = 2.0;
        for z in [
            Complex64::new(0.0, 0.0),
            Complex64::new(0.5, 0.0),
            Complex64::new(0.5, 10.0),
        ] {
            let m = kernel.mellin(lambda, z)?;
            println!("  M^{lambda}({z}) = {:.6} (near pole: {})", m.value, m.is_near_pole);
        }

        // |M(x + iy)| should fall off like y^{-(x + 1)}
        let decay = kernel.mellin_bound_check(lambda, 0.5, &[10.0, 100.0, 1000.0])?;
        println!("  decay exponent {} bounded: {}", decay.exponent, decay.bounded);
        for s in &decay.samples {
            println!("    y = {:>6}: |M| = {:.3e}, |M| y^k = {:.3}", s.y, s.modulus, s.ratio);
        }
        println!();
    }
    Ok(())
}
