//! Complex gamma, log-gamma, and zeta.
//!
//! Two independent gamma routes are kept deliberately: `gamma` uses a Lanczos
//! approximation (with reflection for the left half-plane), while `log_gamma`
//! uses downward recursion into a Stirling series. They cross-check each
//! other in tests, and callers that need huge imaginary parts (where gamma
//! itself overflows or underflows in f64) go through `log_gamma`.
//!
//! `zeta` and `zeta_prime` use Euler-Maclaurin with a height-dependent cut
//! and eight Bernoulli correction terms, giving relative error well under
//! 1e-9 on the supported domain `0 < Re s <= 4`, `|Im s| <= 1e3`.

use crate::error::Error;
use crate::Result;
use num_complex::Complex64;

const LANCZOS_G: f64 = 7.0;
const LANCZOS: [f64; 9] = [
    0.999_999_999_999_809_93,
    676.520_368_121_885_1,
    -1259.139_216_722_402_8,
    771.323_428_777_653_13,
    -176.615_029_162_140_59,
    12.507_343_278_686_905,
    -0.138_571_095_265_720_12,
    9.984_369_578_019_571_6e-6,
    1.505_632_735_149_311_6e-7,
];

/// `B_{2k}` for the Stirling and Euler-Maclaurin tails.
const BERNOULLI_2K: [f64; 10] = [
    1.0 / 6.0,
    -1.0 / 30.0,
    1.0 / 42.0,
    -1.0 / 30.0,
    5.0 / 66.0,
    -691.0 / 2730.0,
    7.0 / 6.0,
    -3617.0 / 510.0,
    43867.0 / 798.0,
    -174611.0 / 330.0,
];

/// Complex gamma function.
///
/// Lanczos approximation with reflection; for `|Im z| > 100` the value is
/// formed as `exp(log_gamma(z))` instead, which stays accurate right up to
/// the edge of f64 range (and underflows gracefully beyond it).
pub fn gamma(z: Complex64) -> Complex64 {
    if z.im.abs() > 100.0 {
        return log_gamma(z).exp();
    }
    gamma_lanczos(z)
}

fn gamma_lanczos(z: Complex64) -> Complex64 {
    if z.re < 0.5 {
        // reflection: gamma(z) gamma(1-z) = pi / sin(pi z)
        let pi = std::f64::consts::PI;
        return pi / ((pi * z).sin() * gamma_lanczos(Complex64::new(1.0, 0.0) - z));
    }
    let zm1 = z - 1.0;
    let mut acc = Complex64::new(LANCZOS[0], 0.0);
    for (i, &c) in LANCZOS.iter().enumerate().skip(1) {
        acc += c / (zm1 + i as f64);
    }
    let t = zm1 + LANCZOS_G + 0.5;
    let sqrt_two_pi = (2.0 * std::f64::consts::PI).sqrt();
    sqrt_two_pi * t.powc(zm1 + 0.5) * (-t).exp() * acc
}

/// Log of the gamma function split into modulus and phase.
///
/// `phase` is the imaginary part of the standard analytic log-gamma
/// (continuous, not reduced mod 2 pi), so `exp()` reproduces `gamma`
/// wherever the latter is representable.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LogGamma {
    pub log_modulus: f64,
    pub phase: f64,
}

impl LogGamma {
    pub fn as_complex(self) -> Complex64 {
        Complex64::new(self.log_modulus, self.phase)
    }

    pub fn exp(self) -> Complex64 {
        Complex64::from_polar(self.log_modulus.exp(), self.phase)
    }
}

/// Analytic log-gamma, usable for `|Im z|` up to 1e5 and beyond.
///
/// Right half-plane: downward recursion into a Stirling series. Left
/// half-plane: reflection through a numerically stable log-sin.
pub fn log_gamma(z: Complex64) -> LogGamma {
    let w = log_gamma_complex(z);
    LogGamma { log_modulus: w.re, phase: w.im }
}

fn log_gamma_complex(z: Complex64) -> Complex64 {
    if z.re < 0.5 {
        // log gamma(z) = log pi - log sin(pi z) - log gamma(1 - z)
        let pi = std::f64::consts::PI;
        let ln_pi = Complex64::new(pi.ln(), 0.0);
        return ln_pi - log_sin(pi * z) - log_gamma_complex(Complex64::new(1.0, 0.0) - z);
    }
    let mut shift = Complex64::new(0.0, 0.0);
    let mut w = z;
    while w.norm_sqr() < 144.0 {
        shift += w.ln();
        w += 1.0;
    }
    stirling_log_gamma(w) - shift
}

fn stirling_log_gamma(z: Complex64) -> Complex64 {
    let half_ln_two_pi = 0.5 * (2.0 * std::f64::consts::PI).ln();
    let mut acc = (z - 0.5) * z.ln() - z + half_ln_two_pi;
    let inv = 1.0 / z;
    let inv2 = inv * inv;
    let mut pw = inv;
    for (k, &b) in BERNOULLI_2K.iter().enumerate() {
        let k = (k + 1) as f64;
        acc += b / (2.0 * k * (2.0 * k - 1.0)) * pw;
        pw *= inv2;
    }
    acc
}

/// Stable `log(sin(w))` for arbitrary imaginary parts.
///
/// For `|Im w| > 19` the dominant exponential is factored out so nothing
/// overflows; the branch is continuous in each half-plane.
pub fn log_sin(w: Complex64) -> Complex64 {
    if w.im.abs() <= 19.0 {
        return w.sin().ln();
    }
    if w.im > 0.0 {
        // sin w = (i/2) e^{-iw} (1 - e^{2iw}); |e^{2iw}| <= e^{-38} here,
        // so log(1 - e^{2iw}) = -e^{2iw} to full f64 precision
        let ln_half_i = Complex64::new(-(2.0_f64.ln()), std::f64::consts::FRAC_PI_2);
        let small = (Complex64::i() * 2.0 * w).exp();
        ln_half_i - Complex64::i() * w - small
    } else {
        let c = log_sin(w.conj());
        Complex64::new(c.re, -c.im)
    }
}

/// Euler-Maclaurin cut: large enough that the Bernoulli tail converges fast.
fn zeta_cut(s: Complex64) -> usize {
    (2.0 * s.im.abs()).ceil().max(20.0) as usize
}

fn check_zeta_domain(s: Complex64) -> Result<()> {
    if !(s.re > 0.0 && s.re <= 4.0) || s.im.abs() > 1e3 {
        return Err(Error::Domain(format!(
            "zeta evaluation at {s} outside 0 < Re s <= 4, |Im s| <= 1e3"
        )));
    }
    if (s - Complex64::new(1.0, 0.0)).norm() < 1e-8 {
        return Err(Error::PoleProximity(format!("zeta pole at s = 1 (requested {s})")));
    }
    Ok(())
}

/// Riemann zeta on `0 < Re s <= 4`, `|Im s| <= 1e3`, away from `s = 1`.
pub fn zeta(s: Complex64) -> Result<Complex64> {
    check_zeta_domain(s)?;
    let n = zeta_cut(s);
    let nf = n as f64;
    let mut sum = Complex64::new(0.0, 0.0);
    // ascending order is fine here: terms are smooth and the Bernoulli tail
    // dominates the error budget, not round-off
    for k in 1..n {
        sum += Complex64::new(k as f64, 0.0).powc(-s);
    }
    let n_pow = Complex64::new(nf, 0.0).powc(-s);
    sum += 0.5 * n_pow;
    sum += n_pow * nf / (s - 1.0);
    // Bernoulli corrections: B_{2k}/(2k)! * s(s+1)...(s+2k-2) * N^{-s-2k+1}
    let mut poch = s; // s(s+1)...(s+2k-2), one factor at k = 1
    let mut factorial = 2.0; // (2k)!
    let mut n_shift = n_pow / nf; // N^{-s-2k+1}
    for k in 1..=8usize {
        sum += BERNOULLI_2K[k - 1] / factorial * poch * n_shift;
        // advance pochhammer by two factors, factorial to (2k+2)!, power by N^-2
        let j = (2 * k - 1) as f64;
        poch *= (s + j) * (s + j + 1.0);
        factorial *= (j + 2.0) * (j + 3.0);
        n_shift /= nf * nf;
    }
    Ok(sum)
}

/// Derivative of zeta, same domain as [`zeta`].
pub fn zeta_prime(s: Complex64) -> Result<Complex64> {
    check_zeta_domain(s)?;
    let n = zeta_cut(s);
    let nf = n as f64;
    let ln_n = nf.ln();
    let mut sum = Complex64::new(0.0, 0.0);
    for k in 2..n {
        let kf = k as f64;
        sum -= kf.ln() * Complex64::new(kf, 0.0).powc(-s);
    }
    let n_pow = Complex64::new(nf, 0.0).powc(-s);
    sum -= 0.5 * ln_n * n_pow;
    let sm1 = s - 1.0;
    sum -= n_pow * nf * (ln_n / sm1 + 1.0 / (sm1 * sm1));
    let mut poch = s;
    let mut factorial = 2.0;
    let mut n_shift = n_pow / nf;
    // d/ds log poch = sum of 1/(s+j) over the factors accumulated so far
    let mut recip_sum = 1.0 / s;
    for k in 1..=8usize {
        let base = BERNOULLI_2K[k - 1] / factorial * poch * n_shift;
        sum += base * (recip_sum - ln_n);
        let j = (2 * k - 1) as f64;
        poch *= (s + j) * (s + j + 1.0);
        recip_sum += 1.0 / (s + j) + 1.0 / (s + j + 1.0);
        factorial *= (j + 2.0) * (j + 3.0);
        n_shift /= nf * nf;
    }
    Ok(sum)
}

/// Logarithmic derivative `zeta'(s)/zeta(s)`.
///
/// Fails with [`Error::ZeroProximity`] when `|zeta(s)| < 1e-6`; callers that
/// know the zero table should pre-check distances to ordinates themselves.
pub fn zeta_log_deriv(s: Complex64) -> Result<Complex64> {
    let z = zeta(s)?;
    if z.norm() < 1e-6 {
        return Err(Error::ZeroProximity {
            s_re: s.re,
            s_im: s.im,
            nearest_gamma: None,
        });
    }
    Ok(zeta_prime(s)? / z)
}

#[cfg(test)]
mod tests {
    use super::*;

    const TOL: f64 = 1e-10;

    fn close(a: Complex64, b: Complex64, tol: f64) -> bool {
        (a - b).norm() <= tol * b.norm().max(1.0)
    }

    // reference values in this module were computed with an independent
    // multiprecision implementation at 30 digits

    #[test]
    fn gamma_classic_values() {
        let pi = std::f64::consts::PI;
        assert!(close(
            gamma(Complex64::new(0.5, 0.0)),
            Complex64::new(pi.sqrt(), 0.0),
            1e-13
        ));
        assert!(close(gamma(Complex64::new(5.0, 0.0)), Complex64::new(24.0, 0.0), 1e-13));
        assert!(close(
            gamma(Complex64::new(1e-4, 0.0)),
            Complex64::new(9999.4228832316242, 0.0),
            1e-12
        ));
    }

    #[test]
    fn gamma_complex_reference_values() {
        assert!(close(
            gamma(Complex64::new(0.5, 10.0)),
            Complex64::new(3.3787243762342358e-7, 1.6893698390389189e-7),
            TOL
        ));
        assert!(close(
            gamma(Complex64::new(-2.5, 1.5)),
            Complex64::new(0.0034121395642391490, -0.024053490434664736),
            TOL
        ));
        assert!(close(
            gamma(Complex64::new(3.0, -4.0)),
            Complex64::new(0.0052255384713692142, 0.17254707929430019),
            TOL
        ));
    }

    #[test]
    fn gamma_conjugate_symmetry() {
        for &(re, im) in &[(0.7, 3.3), (2.2, 11.0), (-1.3, 0.8)] {
            let a = gamma(Complex64::new(re, im));
            let b = gamma(Complex64::new(re, -im)).conj();
            assert!(close(a, b, 1e-12), "at {re}+{im}i");
        }
    }

    #[test]
    fn gamma_modulus_identity_on_critical_line() {
        // |gamma(1/2 + iy)|^2 cosh(pi y) = pi
        let pi = std::f64::consts::PI;
        for &y in &[1.0, 10.0, 30.0] {
            let g = gamma(Complex64::new(0.5, y));
            let ratio = g.norm_sqr() * (pi * y).cosh() / pi;
            assert!((ratio - 1.0).abs() < 1e-10, "y = {y}: ratio {ratio}");
        }
    }

    #[test]
    fn log_gamma_agrees_with_lanczos_route() {
        for &(re, im) in &[(0.5, 0.3), (3.0, -4.0), (0.9, 40.0), (-2.5, 1.5), (12.0, 7.0)] {
            let z = Complex64::new(re, im);
            let a = gamma_lanczos(z);
            let b = log_gamma(z).exp();
            assert!(close(a, b, 1e-9), "at {z}: {a} vs {b}");
        }
    }

    #[test]
    fn log_gamma_reference_values() {
        let lg = log_gamma(Complex64::new(0.5, 1e5));
        assert!((lg.log_modulus - -157078.71374095646).abs() < 1e-6);
        // phases may differ by multiples of 2 pi between implementations
        let want_phase = 1051292.5464974395;
        let diff = (lg.phase - want_phase) / (2.0 * std::f64::consts::PI);
        assert!((diff - diff.round()).abs() < 1e-8, "phase off by {diff} turns");

        let lg = log_gamma(Complex64::new(-0.3, 50.0));
        assert!((lg.log_modulus - -80.75051701074128).abs() < 1e-9);
        let diff = (lg.phase - 144.33894662248174) / (2.0 * std::f64::consts::PI);
        assert!((diff - diff.round()).abs() < 1e-10);
    }

    #[test]
    fn log_gamma_critical_line_asymptotics() {
        // |gamma(iy)| = -pi y/2 - (1/2) ln y + (1/2) ln(2 pi) + O(1/y) in logs
        let y = 100.0;
        let lg = log_gamma(Complex64::new(0.0, y));
        let predicted = -std::f64::consts::PI * y / 2.0 - 0.5 * y.ln()
            + 0.5 * (2.0 * std::f64::consts::PI).ln();
        assert!((lg.log_modulus - predicted).abs() < 1.0 / y);
    }

    #[test]
    fn zeta_classic_values() {
        let pi = std::f64::consts::PI;
        let z2 = zeta(Complex64::new(2.0, 0.0)).unwrap();
        assert!(close(z2, Complex64::new(pi * pi / 6.0, 0.0), 1e-12));
        let z4 = zeta(Complex64::new(4.0, 0.0)).unwrap();
        assert!(close(z4, Complex64::new(pi.powi(4) / 90.0, 0.0), 1e-12));
        let z3 = zeta(Complex64::new(3.0, 0.0)).unwrap();
        assert!(close(z3, Complex64::new(1.2020569031595943, 0.0), 1e-12));
        let zh = zeta(Complex64::new(0.5, 0.0)).unwrap();
        assert!(close(zh, Complex64::new(-1.4603545088095868, 0.0), 1e-12));
        let z34 = zeta(Complex64::new(0.75, 0.0)).unwrap();
        assert!(close(z34, Complex64::new(-3.4412853869452229, 0.0), 1e-12));
    }

    #[test]
    fn zeta_complex_reference_values() {
        assert!(close(
            zeta(Complex64::new(2.0, 3.0)).unwrap(),
            Complex64::new(0.79802198514627572, -0.11374430805293850),
            1e-11
        ));
        assert!(close(
            zeta(Complex64::new(0.6, 0.3)).unwrap(),
            Complex64::new(-1.0522702055291900, -1.1770356966380763),
            1e-11
        ));
        assert!(close(
            zeta(Complex64::new(0.5, 1000.0)).unwrap(),
            Complex64::new(0.35633436719439606, 0.93199783123299367),
            1e-9
        ));
    }

    #[test]
    fn zeta_vanishes_at_first_zero() {
        let s = Complex64::new(0.5, 14.134725141734694);
        assert!(zeta(s).unwrap().norm() < 1e-9);
    }

    #[test]
    fn zeta_pole_behavior() {
        let s = Complex64::new(1.0 + 1e-6, 0.0);
        let v = (s - 1.0) * zeta(s).unwrap();
        assert!((v - 1.0).norm() < 1e-5);
        assert!(matches!(
            zeta(Complex64::new(1.0 + 1e-9, 0.0)),
            Err(Error::PoleProximity(_))
        ));
        assert!(matches!(zeta(Complex64::new(-0.5, 0.0)), Err(Error::Domain(_))));
        assert!(matches!(zeta(Complex64::new(2.0, 2000.0)), Err(Error::Domain(_))));
    }

    #[test]
    fn zeta_prime_reference_values() {
        assert!(close(
            zeta_prime(Complex64::new(2.0, 0.0)).unwrap(),
            Complex64::new(-0.93754825431584375, 0.0),
            1e-11
        ));
        assert!(close(
            zeta_prime(Complex64::new(0.5, 0.0)).unwrap(),
            Complex64::new(-3.9226461392091517, 0.0),
            1e-11
        ));
        assert!(close(
            zeta_prime(Complex64::new(0.75, 0.0)).unwrap(),
            Complex64::new(-15.924831928690486, 0.0),
            1e-11
        ));
        assert!(close(
            zeta_prime(Complex64::new(2.0, 3.0)).unwrap(),
            Complex64::new(0.14012959011748648, 0.021514678279196658),
            1e-11
        ));
        assert!(close(
            zeta_prime(Complex64::new(0.5, 100.0)).unwrap(),
            Complex64::new(-3.7273127096446482, -0.19422870257374323),
            1e-10
        ));
    }

    #[test]
    fn zeta_log_deriv_values_and_guards() {
        let v = zeta_log_deriv(Complex64::new(2.0, 0.0)).unwrap();
        assert!((v.re - -0.56996099309453281).abs() < 1e-11);
        let v = zeta_log_deriv(Complex64::new(0.75, 0.0)).unwrap();
        assert!((v.re - 4.6275824693594272).abs() < 1e-10);
        let v = zeta_log_deriv(Complex64::new(0.6, 0.3)).unwrap();
        assert!(close(v, Complex64::new(2.2549140949904178, 1.1294625579667709), 1e-10));
        assert!(matches!(
            zeta_log_deriv(Complex64::new(0.5, 14.134725141734694)),
            Err(Error::ZeroProximity { .. })
        ));
    }

    #[test]
    fn zeta_cut_scales_with_height() {
        assert_eq!(zeta_cut(Complex64::new(0.5, 0.0)), 20);
        assert_eq!(zeta_cut(Complex64::new(0.5, 300.0)), 600);
    }
}
