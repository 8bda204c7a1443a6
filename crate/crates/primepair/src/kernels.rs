//! Sieving kernels: the weight functions E, their Fourier transforms, and
//! the Mellin transform M^lambda(z) with its meromorphic continuation.
//!
//! Two kernels are built in. The Fejer kernel E(nu) = 1 - |nu| and the
//! Jackson kernel, piecewise cubic with a nonnegative fourth-power Fourier
//! transform. Custom kernels are accepted as lists of polynomial branches on
//! [0, 1]; construction validates normalization, continuity, and
//! monotonicity.
//!
//! The Mellin transform factors as M^lambda(z) = lambda^z M(z) where
//!
//! ```text
//! M(z) = (2/pi) Gamma(1-z) sin(pi z/2) m(z),   m(z) = INT_0^1 E(nu) nu^{z-1} dnu
//! ```
//!
//! and m is evaluated in closed form. M has simple poles at the odd positive
//! integers and a residue of -(2 lambda/pi) A_E at z = 1 (A_E = INT_0^1 E).
//! Apparent singularities at z = 0 and at negative even or odd points are
//! removable for the built-in kernels and are evaluated by grouped, cancel-
//! free forms. The continuation is valid on Re z > -3 for Jackson and
//! Re z > -1 for Fejer (which is only once differentiable) and for custom
//! kernels (whose higher moments need not cancel).

use crate::error::Error;
use crate::special::{gamma, log_gamma, log_sin};
use crate::Result;
use num_complex::Complex64;
use std::f64::consts::PI;

/// Distance to a pole below which evaluation refuses and errors out.
pub const POLE_ERROR_DISTANCE: f64 = 1e-8;
/// Distance to a pole below which a value is still produced but flagged.
pub const POLE_FLAG_DISTANCE: f64 = 1e-3;

/// Above this |Im z| the Gamma and sine factors are combined in log space;
/// individually they would leave f64 range near |Im z| ~ 450.
const LOG_ROUTE_IMAG: f64 = 250.0;

/// Within this distance of an even integer >= 2 the reciprocal form
/// m(z) / (cos(pi z/2) Gamma(z)) replaces the Gamma(1-z) form, whose two
/// factors would blow up and cancel there.
const RECIPROCAL_FORM_DISTANCE: f64 = 0.25;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Kind {
    Fejer,
    Jackson,
    Custom,
}

/// One polynomial piece of E on [lo, hi] in powers of nu.
#[derive(Debug, Clone)]
struct Branch {
    lo: f64,
    hi: f64,
    coeffs: Vec<f64>,
}

impl Branch {
    fn eval(&self, x: f64) -> f64 {
        self.coeffs.iter().rev().fold(0.0, |acc, &c| acc * x + c)
    }
}

/// A sieving weight E with its transforms.
#[derive(Debug, Clone)]
pub struct SievingKernel {
    name: String,
    kind: Kind,
    branches: Vec<Branch>,
    a_e: f64,
    min_re: f64,
    decay_offset: f64,
}

/// One Mellin evaluation, tagged when the point sits close to a pole.
#[derive(Debug, Clone, Copy)]
pub struct MellinValue {
    pub z: Complex64,
    pub value: Complex64,
    pub is_near_pole: bool,
}

/// Decay check of |M^lambda(x+iy)| against (|y|+1)^{-exponent}.
#[derive(Debug, Clone)]
pub struct DecayReport {
    /// Exponent the moduli are normalized by: x + 7/2 (Jackson) or x + 3/2.
    pub exponent: f64,
    /// (y, |M^lambda(x+iy)|, normalized ratio), ascending in |y|.
    pub samples: Vec<DecaySample>,
    /// False when the normalized ratios keep growing with |y|.
    pub bounded: bool,
}

#[derive(Debug, Clone, Copy)]
pub struct DecaySample {
    pub y: f64,
    pub modulus: f64,
    pub ratio: f64,
}

impl SievingKernel {
    /// Fejer kernel, E(nu) = 1 - |nu|.
    pub fn fejer() -> Self {
        SievingKernel {
            name: "fejer".into(),
            kind: Kind::Fejer,
            branches: vec![Branch { lo: 0.0, hi: 1.0, coeffs: vec![1.0, -1.0] }],
            a_e: 0.5,
            min_re: -1.0,
            decay_offset: 1.5,
        }
    }

    /// Jackson kernel, 1 - 6 nu^2 + 6 |nu|^3 inside |nu| <= 1/2 and
    /// 2 (1 - |nu|)^3 on the outer half.
    pub fn jackson() -> Self {
        SievingKernel {
            name: "jackson".into(),
            kind: Kind::Jackson,
            branches: vec![
                Branch { lo: 0.0, hi: 0.5, coeffs: vec![1.0, 0.0, -6.0, 6.0] },
                Branch { lo: 0.5, hi: 1.0, coeffs: vec![2.0, -6.0, 6.0, -2.0] },
            ],
            a_e: 0.375,
            min_re: -3.0,
            decay_offset: 3.5,
        }
    }

    /// Custom kernel from polynomial branches on [0, 1].
    ///
    /// Each entry is (upper endpoint, coefficients in ascending powers); the
    /// first branch starts at 0 and the last must end at 1. Construction
    /// checks E(0) = 1, continuity across knots, E(1) = 0, and that E is
    /// non-increasing on a grid. The Mellin continuation of a custom kernel
    /// is restricted to Re z > -1: pushing further requires moment
    /// cancellations that only hold for specific shapes.
    pub fn from_branches(name: &str, pieces: &[(f64, Vec<f64>)]) -> Result<Self> {
        if pieces.is_empty() {
            return Err(Error::Kernel("kernel needs at least one branch".into()));
        }
        let mut branches = Vec::with_capacity(pieces.len());
        let mut lo = 0.0;
        for &(hi, ref coeffs) in pieces {
            if !(hi > lo) || hi > 1.0 + 1e-12 {
                return Err(Error::Kernel(format!(
                    "branch endpoints must increase within (0, 1]; got {hi} after {lo}"
                )));
            }
            if coeffs.is_empty() || coeffs.len() > 16 {
                return Err(Error::Kernel("branch degree must be within 0..=15".into()));
            }
            branches.push(Branch { lo, hi: hi.min(1.0), coeffs: coeffs.clone() });
            lo = hi;
        }
        if (lo - 1.0).abs() > 1e-12 {
            return Err(Error::Kernel(format!("branches must cover [0, 1]; they end at {lo}")));
        }
        branches.last_mut().unwrap().hi = 1.0;

        let e0 = branches[0].eval(0.0);
        if (e0 - 1.0).abs() > 1e-12 {
            return Err(Error::Kernel(format!("E(0) must be 1, got {e0}")));
        }
        for pair in branches.windows(2) {
            let (left, right) = (pair[0].eval(pair[0].hi), pair[1].eval(pair[1].lo));
            if (left - right).abs() > 1e-9 {
                return Err(Error::Kernel(format!(
                    "branches disagree at nu = {}: {left} vs {right}",
                    pair[0].hi
                )));
            }
        }
        let e1 = branches.last().unwrap().eval(1.0);
        if e1.abs() > 1e-9 {
            return Err(Error::Kernel(format!(
                "E(1) must vanish (E is 0 outside [-1, 1]), got {e1}"
            )));
        }
        // non-increasing on a grid; tolerate rounding at knots
        let mut prev = f64::INFINITY;
        for i in 0..=2000 {
            let x = i as f64 / 2000.0;
            let v = eval_branches(&branches, x);
            if v > prev + 1e-12 {
                return Err(Error::Kernel(format!("E increases near nu = {x}")));
            }
            prev = v;
        }

        let mut a_e = 0.0;
        for b in &branches {
            for (k, &c) in b.coeffs.iter().enumerate() {
                let kk = (k + 1) as f64;
                a_e += c * (b.hi.powi(k as i32 + 1) - b.lo.powi(k as i32 + 1)) / kk;
            }
        }
        Ok(SievingKernel {
            name: name.into(),
            kind: Kind::Custom,
            branches,
            a_e,
            min_re: -1.0,
            decay_offset: 1.5,
        })
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    /// Mean value A_E = INT_0^1 E(nu) dnu. Exactly 1/2 (Fejer), 3/8 (Jackson).
    pub fn a_e(&self) -> f64 {
        self.a_e
    }

    /// Left edge of the Mellin continuation half-plane.
    pub fn mellin_min_re(&self) -> f64 {
        self.min_re
    }

    /// E(nu): even, supported on [-1, 1], E(0) = 1.
    pub fn eval_e(&self, nu: f64) -> f64 {
        eval_branches(&self.branches, nu.abs())
    }

    /// Fourier transform of the dilated kernel E(nu/lambda):
    /// E_hat^lambda(t) = INT E(nu/lambda) e^{i nu t} dnu (real and, for the
    /// built-in kernels, nonnegative). At t = 0 this is 2 lambda A_E.
    pub fn eval_e_hat(&self, lambda: f64, t: f64) -> f64 {
        assert!(lambda > 0.0, "dilation must be positive");
        match self.kind {
            Kind::Fejer => {
                let s = rsinc(0.5 * lambda * t);
                lambda * s * s
            }
            Kind::Jackson => {
                let s = rsinc(0.25 * lambda * t);
                0.75 * lambda * s * s * s * s
            }
            Kind::Custom => {
                // 2 lambda INT_0^1 E(u) cos(lambda t u) du, branchwise in
                // closed form
                let theta = lambda * t;
                let mut acc = 0.0;
                for b in &self.branches {
                    acc += cos_moment(&b.coeffs, b.lo, b.hi, theta);
                }
                2.0 * lambda * acc
            }
        }
    }

    /// Moment integral m(z) = INT_0^1 E(nu) nu^{z-1} dnu, continued as a
    /// closed form. Fejer: 1/(z(z+1)). Jackson: 6(2 - 2^{-z}) / (z(z+1)(z+2)(z+3)).
    /// The value is returned as-is near the moment's own poles; `mellin`
    /// handles the groupings that make the full transform finite there.
    pub fn moment(&self, z: Complex64) -> Complex64 {
        match self.kind {
            Kind::Fejer => 1.0 / (z * (z + 1.0)),
            Kind::Jackson => {
                6.0 * jackson_dyadic_factor(z) / (z * (z + 2.0) * (z + 3.0))
            }
            Kind::Custom => {
                let mut acc = Complex64::new(0.0, 0.0);
                for b in &self.branches {
                    for (k, &c) in b.coeffs.iter().enumerate() {
                        acc += c * power_integral(b.lo, b.hi, z + k as f64);
                    }
                }
                acc
            }
        }
    }

    /// C with |m(w)| <= C / (|w| |w + 1|) on Re w >= -1.
    ///
    /// Integrating m(w) = INT_0^1 E(nu) nu^{w-1} dnu by parts twice gives
    /// m(w) = (-E'(1) + INT_0^1 E''(nu) nu^{w+1} dnu) / (w (w + 1)), so
    /// C = |E'(1)| + INT_0^1 |E''| works. Fejer: exactly 1. Jackson: ~4.
    pub fn moment_decay_constant(&self) -> f64 {
        let last = self.branches.last().unwrap();
        let e_prime_1: f64 = last
            .coeffs
            .iter()
            .enumerate()
            .map(|(k, &c)| k as f64 * c)
            .sum();
        let mut abs_second = 0.0;
        for b in &self.branches {
            // Simpson on |E''|; kinks at sign changes cost little at this
            // panel count, and the 2% inflation absorbs what remains
            let second = |x: f64| -> f64 {
                b.coeffs
                    .iter()
                    .enumerate()
                    .skip(2)
                    .map(|(k, &c)| (k * (k - 1)) as f64 * c * x.powi(k as i32 - 2))
                    .sum::<f64>()
                    .abs()
            };
            let panels = 512;
            let h = (b.hi - b.lo) / panels as f64;
            let mut acc = second(b.lo) + second(b.hi);
            for i in 1..panels {
                let w = if i % 2 == 1 { 4.0 } else { 2.0 };
                acc += w * second(b.lo + i as f64 * h);
            }
            abs_second += acc * h / 3.0;
        }
        e_prime_1.abs() + 1.02 * abs_second
    }

    /// M^lambda(z) = lambda^z M(z).
    ///
    /// Errors with `PoleProximity` within 1e-8 of a pole (odd positive
    /// integers, and the left-edge pole at `mellin_min_re`), and with
    /// `Domain` beyond the continuation half-plane. Values within 1e-3 of a
    /// pole are produced but flagged.
    pub fn mellin(&self, lambda: f64, z: Complex64) -> Result<MellinValue> {
        assert!(lambda > 0.0, "dilation must be positive");
        self.check_mellin_point(z)?;
        let value = cpow(lambda, z) * self.mellin_m(z);
        Ok(MellinValue { z, value, is_near_pole: self.pole_distance(z) < POLE_FLAG_DISTANCE })
    }

    /// log M^lambda(z) as log-modulus + i phase (phase not reduced).
    ///
    /// Same domain and pole handling as [`SievingKernel::mellin`]; useful
    /// when many values are screened by magnitude before exponentiation.
    pub fn mellin_log(&self, lambda: f64, z: Complex64) -> Result<Complex64> {
        assert!(lambda > 0.0, "dilation must be positive");
        self.check_mellin_point(z)?;
        let lead = z * lambda.ln();
        if z.im.abs() > LOG_ROUTE_IMAG {
            Ok(lead + self.mellin_m_log(z))
        } else {
            Ok(lead + self.mellin_m(z).ln())
        }
    }

    /// Normalized decay of |M^lambda| along a vertical line Re z = x.
    ///
    /// Jackson obeys |M^lambda(x+iy)| << (|y|+1)^{-x-7/2}; the once-
    /// differentiable kernels (Fejer, custom) are held to exponent x + 3/2.
    /// Requires -3 < x <= 3 and |y| >= 1 for every sample.
    pub fn mellin_bound_check(
        &self,
        lambda: f64,
        x: f64,
        y_samples: &[f64],
    ) -> Result<DecayReport> {
        if !(-3.0 < x && x <= 3.0) {
            return Err(Error::Domain(format!("decay check needs -3 < x <= 3, got {x}")));
        }
        if y_samples.is_empty() || y_samples.iter().any(|y| y.abs() < 1.0) {
            return Err(Error::Domain("decay check needs samples with |y| >= 1".into()));
        }
        let exponent = x + self.decay_offset;
        let mut ys: Vec<f64> = y_samples.to_vec();
        ys.sort_by(|a, b| a.abs().total_cmp(&b.abs()));
        let mut samples = Vec::with_capacity(ys.len());
        for y in ys {
            let modulus = self.mellin(lambda, Complex64::new(x, y))?.value.norm();
            let ratio = modulus * (y.abs() + 1.0).powf(exponent);
            samples.push(DecaySample { y, modulus, ratio });
        }
        // bounded: the later ratios must not outgrow the earlier ones
        let half = samples.len() / 2;
        let head_max = samples[..half.max(1)].iter().map(|s| s.ratio).fold(0.0, f64::max);
        let tail_max = samples[half..].iter().map(|s| s.ratio).fold(0.0, f64::max);
        let bounded = tail_max <= 1.5 * head_max.max(f64::MIN_POSITIVE);
        Ok(DecayReport { exponent, samples, bounded })
    }

    fn check_mellin_point(&self, z: Complex64) -> Result<()> {
        if !(z.re > self.min_re) {
            return Err(Error::Domain(format!(
                "Mellin transform of {} is continued to Re z > {}, got {z}",
                self.name, self.min_re
            )));
        }
        let d = self.pole_distance(z);
        if d < POLE_ERROR_DISTANCE {
            return Err(Error::PoleProximity(format!(
                "z = {z} is within {d:.2e} of a Mellin pole (odd integers and {})",
                self.min_re
            )));
        }
        Ok(())
    }

    fn pole_distance(&self, z: Complex64) -> f64 {
        // nearest odd positive integer
        let idx = ((z.re - 1.0) / 2.0).round().max(0.0);
        let odd = 2.0 * idx + 1.0;
        let d_odd = (z - odd).norm();
        let d_edge = (z - self.min_re).norm();
        d_odd.min(d_edge)
    }

    /// The lambda-free factor M(z).
    fn mellin_m(&self, z: Complex64) -> Complex64 {
        if z.im.abs() > LOG_ROUTE_IMAG {
            return cexp(self.mellin_m_log(z));
        }
        let even = 2.0 * (z.re / 2.0).round();
        if even >= 2.0 && (z - even).norm() <= RECIPROCAL_FORM_DISTANCE {
            // Gamma(1-z) sin(pi z/2) = pi / (2 cos(pi z/2) Gamma(z)): finite
            // and cancellation-free near even z >= 2
            return self.moment(z) / ((0.5 * PI * z).cos() * gamma(z));
        }
        match self.kind {
            Kind::Fejer => gamma(Complex64::new(1.0, 0.0) - z) * csinc(0.5 * PI * z) / (z + 1.0),
            Kind::Jackson => {
                let s = if z.norm() <= (z + 2.0).norm() {
                    0.5 * PI * csinc(0.5 * PI * z) / (z + 2.0)
                } else {
                    -0.5 * PI * csinc(0.5 * PI * (z + 2.0)) / z
                };
                12.0 / PI
                    * gamma(Complex64::new(1.0, 0.0) - z)
                    * s
                    * jackson_dyadic_factor(z)
                    / (z + 3.0)
            }
            Kind::Custom => {
                // pull out the z = 0 pole carried by the constant term of the
                // leading branch (residue E(0) = 1), then group it with the
                // sine zero
                let b0 = &self.branches[0];
                let lead = b0.coeffs[0] * cpow(b0.hi, z);
                let mut rest = Complex64::new(0.0, 0.0);
                for (i, b) in self.branches.iter().enumerate() {
                    for (k, &c) in b.coeffs.iter().enumerate() {
                        if i == 0 && k == 0 {
                            continue;
                        }
                        rest += c * power_integral(b.lo, b.hi, z + k as f64);
                    }
                }
                let grouped = lead * 0.5 * PI * csinc(0.5 * PI * z) + (0.5 * PI * z).sin() * rest;
                2.0 / PI * gamma(Complex64::new(1.0, 0.0) - z) * grouped
            }
        }
    }

    /// log M(z) assembled from log Gamma and log sin; the factors cancel to
    /// polynomial size even where each alone overflows f64.
    fn mellin_m_log(&self, z: Complex64) -> Complex64 {
        let lg = log_gamma(Complex64::new(1.0, 0.0) - z).as_complex();
        let ls = log_sin(0.5 * PI * z);
        Complex64::new((2.0 / PI).ln(), 0.0) + lg + ls + self.moment(z).ln()
    }
}

fn eval_branches(branches: &[Branch], x: f64) -> f64 {
    if x > 1.0 {
        return 0.0;
    }
    for b in branches {
        if x <= b.hi {
            return b.eval(x);
        }
    }
    0.0
}

/// (2 - 2^{-z}) / (z + 1), finite at z = -1 where both parts vanish.
fn jackson_dyadic_factor(z: Complex64) -> Complex64 {
    let ln2 = std::f64::consts::LN_2;
    let u = (z + 1.0) * ln2;
    // (1 - e^{-u})/u, removable at u = 0
    let g = if u.norm() < 1e-4 {
        1.0 - u / 2.0 + u * u / 6.0 - u * u * u / 24.0
    } else {
        -cexpm1(-u) / u
    };
    2.0 * ln2 * g
}

/// INT_a^b nu^{w-1} dnu = (b^w - a^w)/w, stable near w = 0 when a > 0.
fn power_integral(a: f64, b: f64, w: Complex64) -> Complex64 {
    if a == 0.0 {
        return cpow(b, w) / w;
    }
    let l = (b / a).ln();
    let x = w * l;
    let ratio = if x.norm() < 1e-4 {
        // expm1(x)/x
        1.0 + x / 2.0 + x * x / 6.0 + x * x * x / 24.0
    } else {
        cexpm1(x) / x
    };
    cpow(a, w) * l * ratio
}

/// INT_a^b (sum c_k u^k) cos(theta u) du in closed form; Taylor series when
/// theta*b is small enough that the antiderivative differences would cancel.
fn cos_moment(coeffs: &[f64], a: f64, b: f64, theta: f64) -> f64 {
    let theta = theta.abs(); // integrand even in theta
    if theta * b <= 0.5 {
        let mut acc = 0.0;
        let mut weight = 1.0; // (-1)^j theta^{2j} / (2j)!
        for j in 0..32 {
            let mut inner = 0.0;
            for (k, &c) in coeffs.iter().enumerate() {
                let p = (k + 2 * j + 1) as i32;
                inner += c * (b.powi(p) - a.powi(p)) / p as f64;
            }
            acc += weight * inner;
            if weight.abs() < 1e-19 {
                break;
            }
            let jj = (2 * j + 1) as f64;
            weight *= -theta * theta / (jj * (jj + 1.0));
        }
        return acc;
    }
    // antiderivatives C_k = INT u^k cos(theta u), S_k = INT u^k sin(theta u)
    let anti = |x: f64| -> (Vec<f64>, Vec<f64>) {
        let (s, c) = (theta * x).sin_cos();
        let mut cs = vec![s / theta];
        let mut ss = vec![-c / theta];
        let mut xk = 1.0;
        for k in 1..coeffs.len() {
            xk *= x;
            let kf = k as f64;
            cs.push(xk * s / theta - kf / theta * ss[k - 1]);
            ss.push(-xk * c / theta + kf / theta * cs[k - 1]);
        }
        (cs, ss)
    };
    let (cb, _) = anti(b);
    let (ca, _) = anti(a);
    coeffs.iter().enumerate().map(|(k, &c)| c * (cb[k] - ca[k])).sum()
}

/// sin(x)/x with the removable point filled in by series.
fn rsinc(x: f64) -> f64 {
    if x.abs() < 1e-4 {
        let x2 = x * x;
        1.0 - x2 / 6.0 + x2 * x2 / 120.0
    } else {
        x.sin() / x
    }
}

/// Complex sin(w)/w.
fn csinc(w: Complex64) -> Complex64 {
    if w.norm() < 1e-4 {
        let w2 = w * w;
        1.0 - w2 / 6.0 + w2 * w2 / 120.0
    } else {
        w.sin() / w
    }
}

/// Complex exp(w) - 1 without cancellation for small w.
fn cexpm1(w: Complex64) -> Complex64 {
    if w.norm() < 1e-4 {
        w * (1.0 + w / 2.0 + w * w / 6.0 + w * w * w / 24.0)
    } else {
        w.exp() - 1.0
    }
}

/// base^w for positive real base.
fn cpow(base: f64, w: Complex64) -> Complex64 {
    (w * base.ln()).exp()
}

fn cexp(w: Complex64) -> Complex64 {
    Complex64::from_polar(w.re.exp(), w.im)
}
