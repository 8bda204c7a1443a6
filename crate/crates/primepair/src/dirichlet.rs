//! Truncated Dirichlet series over prime pairs: the shifted series D_2r(s),
//! the diagonal D_0(s), the kernel-weighted expansion T^lambda(s), the
//! combination V^lambda(s), and the pole/residue probes built on them.
//!
//! Everything here is a finite sum over von Mangoldt support read from a
//! sieve table; truncation metadata (an analytic tail bound) rides along
//! with every value. The boundary Re s = 1/2 is rejected: the series
//! diverge there and their boundary behavior is exactly the open conjecture
//! these probes explore.

use crate::accum::KahanComplex;
use crate::error::Error;
use crate::kernels::SievingKernel;
use crate::sieve::PrimeTable;
use crate::singular::SingularConstants;
use crate::zeros::{Cutoff, SeriesResult};
use crate::Result;
use num_complex::Complex64;

/// psi(x) <= CHEBYSHEV_PSI * x for all x >= 1 (classical constant 1.03883,
/// Rosser and Schoenfeld).
pub const CHEBYSHEV_PSI: f64 = 1.04;

/// Term budget plus the analytic bound on what an evaluation at the matching
/// `s` omits. Built once, reused across the ops that share the budget; the
/// bound is only meaningful at the `s` (and shift ceiling) it was built for.
#[derive(Debug, Clone, Copy)]
pub struct TruncationPlan {
    pub n_terms: u64,
    pub tail_bound: f64,
}

impl TruncationPlan {
    /// Plans an `n_terms` evaluation at `s` for pair series with shifts up
    /// to `max_shift`.
    ///
    /// The bound: with a = 2 Re s - 1 > 0 and N >= max_shift,
    ///
    ///   SUM_{n>N} L(n) L(n + 2r) |n^{-s} (n+2r)^{-s}|
    ///     <= SUM_{n>N} L(n) ln(2n) n^{-2 sigma}
    ///     <= 1.04 [N g(N) + INT_N^inf g]          (partial summation,
    ///                                              g(t) = ln(2t) t^{-2 sigma})
    ///     = 1.04 N^{-a} [ln(2N)(1 + 1/a) + 1/a^2].
    pub fn new(n_terms: u64, s: Complex64, max_shift: u64) -> Result<Self> {
        if !(s.re > 0.5 && s.im.is_finite()) {
            return Err(Error::Domain(format!(
                "pair series need Re s > 1/2 (diverge at the boundary), got s = {s}"
            )));
        }
        if n_terms < max_shift.max(4) {
            return Err(Error::Domain(format!(
                "plan needs n_terms >= max(shift, 4), got {n_terms} with shift {max_shift}"
            )));
        }
        Ok(TruncationPlan {
            n_terms,
            tail_bound: pair_tail_bound(n_terms, s.re),
        })
    }
}

fn pair_tail_bound(n: u64, sigma: f64) -> f64 {
    let a = 2.0 * sigma - 1.0;
    let nf = n as f64;
    CHEBYSHEV_PSI * nf.powf(-a) * ((2.0 * nf).ln() * (1.0 + 1.0 / a) + 1.0 / (a * a))
}

fn require_half_plane(s: Complex64) -> Result<()> {
    if !(s.re > 0.5 && s.im.is_finite()) {
        return Err(Error::Domain(format!(
            "series diverges at and below Re s = 1/2, got s = {s}"
        )));
    }
    Ok(())
}

fn require_even(two_r: u64) -> Result<()> {
    if two_r % 2 != 0 {
        return Err(Error::Domain(format!("pair gap {two_r} must be even")));
    }
    Ok(())
}

/// One summand L(k) L(l) k^{-s} l^{-s}. Shared by every op so that sums
/// which are analytically equal are computed with identical roundings.
#[inline]
fn pair_term(s: Complex64, real_s: bool, k: u64, vk: f64, l: u64, vl: f64) -> Complex64 {
    if real_s {
        Complex64::new(
            vk * vl * (k as f64).powf(-s.re) * (l as f64).powf(-s.re),
            0.0,
        )
    } else {
        (vk * vl) * (-s * ((k as f64).ln() + (l as f64).ln())).exp()
    }
}

/// D_2r(s) = SUM_n L(n) L(n + 2r) n^{-s} (n + 2r)^{-s}, truncated at
/// n <= plan.n_terms (the smaller pair member indexes the sum; its partner
/// may exceed the budget but must stay within the table).
pub fn d_2r(
    s: Complex64,
    two_r: u64,
    plan: &TruncationPlan,
    table: &PrimeTable,
) -> Result<SeriesResult> {
    require_half_plane(s)?;
    require_even(two_r)?;
    if plan.n_terms < two_r.max(4) {
        return Err(Error::Domain(format!(
            "plan of {} terms is too small for shift {two_r}",
            plan.n_terms
        )));
    }
    if plan.n_terms + two_r > table.limit() {
        return Err(Error::Capacity(format!(
            "need table limit >= {} + {two_r}, have {}",
            plan.n_terms,
            table.limit()
        )));
    }
    let real_s = s.im == 0.0;
    let mut acc = KahanComplex::new();
    let mut terms = 0u64;
    table.for_each_mangoldt_ascending(plan.n_terms, |n, vm| {
        let partner = if two_r == 0 { vm } else { table.von_mangoldt(n + two_r) };
        if partner != 0.0 {
            acc.add(pair_term(s, real_s, n, vm, n + two_r, partner));
            terms += 1;
        }
    });
    Ok(SeriesResult {
        value: acc.value(),
        terms_used: terms,
        cutoff: Cutoff::Terms(plan.n_terms),
        tail_estimate: plan.tail_bound,
    })
}

/// T^lambda(s) = SUM_{k,l} L(k) L(l) k^{-s} l^{-s} E^lambda(k - l), the
/// kernel keeping only |k - l| < lambda.
///
/// Truncation keeps the ordered pairs whose smaller member is within the
/// budget: the outer index runs over support k <= n_terms and a band
/// partner beyond the budget is taken with weight 2, standing in for the
/// mirrored pair enumerated from its own (out-of-budget) smaller side. This
/// makes the decomposition into D_0 + V^lambda + odd-difference terms an
/// exact rearrangement at every finite truncation.
pub fn t_lambda_expansion(
    s: Complex64,
    lambda: f64,
    kernel: &SievingKernel,
    plan: &TruncationPlan,
    table: &PrimeTable,
) -> Result<SeriesResult> {
    banded_sum(s, lambda, kernel, plan, table, Parity::All)
}

/// The odd-difference part of [`t_lambda_expansion`]: pairs with |k - l|
/// odd (one side is then a power of two), same truncation convention.
pub fn odd_difference_terms(
    s: Complex64,
    lambda: f64,
    kernel: &SievingKernel,
    plan: &TruncationPlan,
    table: &PrimeTable,
) -> Result<SeriesResult> {
    banded_sum(s, lambda, kernel, plan, table, Parity::Odd)
}

enum Parity {
    All,
    Odd,
}

fn banded_sum(
    s: Complex64,
    lambda: f64,
    kernel: &SievingKernel,
    plan: &TruncationPlan,
    table: &PrimeTable,
    parity: Parity,
) -> Result<SeriesResult> {
    require_half_plane(s)?;
    if !(lambda > 0.0 && lambda.is_finite()) {
        return Err(Error::Domain(format!("dilation must be positive, got {lambda}")));
    }
    // largest integer difference inside the open support (-lambda, lambda)
    let d_max = (lambda.ceil() as i64 - 1).max(0);
    if plan.n_terms < (2 * d_max as u64).max(4) {
        return Err(Error::Domain(format!(
            "plan of {} terms is too small for band half-width {d_max}",
            plan.n_terms
        )));
    }
    if plan.n_terms + d_max as u64 > table.limit() {
        return Err(Error::Capacity(format!(
            "need table limit >= {} + {d_max}, have {}",
            plan.n_terms,
            table.limit()
        )));
    }
    let real_s = s.im == 0.0;
    let mut acc = KahanComplex::new();
    let mut terms = 0u64;
    let mut band = 0u64;
    table.for_each_mangoldt_ascending(plan.n_terms, |k, vk| {
        for d in -d_max..=d_max {
            match parity {
                Parity::All => {}
                Parity::Odd => {
                    if d.rem_euclid(2) == 0 {
                        continue;
                    }
                }
            }
            let l = k as i64 + d;
            if l < 2 {
                continue;
            }
            let l = l as u64;
            let vl = if d == 0 { vk } else { table.von_mangoldt(l) };
            if vl == 0.0 {
                continue;
            }
            let e = kernel.eval_e(d as f64 / lambda);
            // weight 2 restores the mirrored ordered pair whose smaller
            // member sits inside the budget
            let w = if l > plan.n_terms { 2.0 } else { 1.0 };
            acc.add(pair_term(s, real_s, k, vk, l, vl) * e * w);
            terms += 1;
        }
    });
    for d in -d_max..=d_max {
        let odd = d.rem_euclid(2) == 1;
        if matches!(parity, Parity::All) || odd {
            band += 1;
        }
    }
    // dropped pairs have both members > n_terms; per shift the plan's pair
    // bound applies with (k (k + d))^{-sigma} <= 2^sigma k^{-2 sigma} (valid
    // once k >= 2 d_max, which the plan size check guarantees), so the whole
    // remainder is at most the band count times that
    let tail = band as f64 * 2f64.powf(s.re) * plan.tail_bound;
    Ok(SeriesResult {
        value: acc.value(),
        terms_used: terms,
        cutoff: Cutoff::Terms(plan.n_terms),
        tail_estimate: tail,
    })
}

/// V^lambda(s) = 2 SUM_{0 < 2r <= lambda} E(2r/lambda) D_2r(s).
///
/// Identically zero for lambda <= 2: there is no positive even 2r < lambda,
/// and at lambda = 2 the only candidate carries weight E(1) = 0.
pub fn v_lambda(
    s: Complex64,
    lambda: f64,
    kernel: &SievingKernel,
    plan: &TruncationPlan,
    table: &PrimeTable,
) -> Result<SeriesResult> {
    require_half_plane(s)?;
    if !(lambda > 0.0 && lambda.is_finite()) {
        return Err(Error::Domain(format!("dilation must be positive, got {lambda}")));
    }
    let mut value = Complex64::new(0.0, 0.0);
    let mut terms = 0u64;
    let mut tail = 0.0;
    let mut two_r = 2u64;
    while two_r as f64 <= lambda {
        let e = kernel.eval_e(two_r as f64 / lambda);
        if e != 0.0 {
            let part = d_2r(s, two_r, plan, table)?;
            value += 2.0 * e * part.value;
            terms += part.terms_used;
            tail += 2.0 * e.abs() * part.tail_estimate;
        }
        two_r += 2;
    }
    Ok(SeriesResult {
        value,
        terms_used: terms,
        cutoff: Cutoff::Terms(plan.n_terms),
        tail_estimate: tail,
    })
}

/// One row of the D_0 pole probe.
#[derive(Debug, Clone, Copy)]
pub struct PoleProbeRow {
    pub delta: f64,
    pub n_terms: u64,
    /// delta^2 * D_0(1/2 + delta), truncated.
    pub scaled: f64,
    /// `scaled` plus a prime-density completion of the dropped tail,
    /// delta^2 * INT_N^inf log t * t^{-1-2 delta} dt. An estimate (the
    /// integral models L(n) L(n) mass by log t * dt), not a bound.
    pub completed: f64,
    /// delta^2 times the plan's tail bound.
    pub scaled_tail: f64,
    /// Whether the adaptive budget reached tail_bound < 0.1 delta^2 before
    /// hitting the table limit.
    pub target_met: bool,
}

/// Report of delta^2 * D_0(1/2 + delta) across a delta grid; the double
/// pole predicts 1/4.
#[derive(Debug, Clone)]
pub struct PoleProbeReport {
    pub target: f64,
    pub rows: Vec<PoleProbeRow>,
}

/// Probes the double pole of D_0(s) = SUM L(n)^2 n^{-2s} at s = 1/2 along
/// s = 1/2 + delta. The term budget doubles from 10^4 until the tail bound
/// meets 0.1 delta^2 or the table is exhausted (desk tables always exhaust;
/// the row's flag records which happened).
pub fn d0_pole_probe(delta_grid: &[f64], table: &PrimeTable) -> Result<PoleProbeReport> {
    let mut rows = Vec::with_capacity(delta_grid.len());
    for &delta in delta_grid {
        if !(delta > 0.01 && delta < 0.25) {
            return Err(Error::Domain(format!(
                "pole model invalid outside delta in (0.01, 0.25), got {delta}"
            )));
        }
        let s = Complex64::new(0.5 + delta, 0.0);
        let cap = table.limit();
        let mut n = 10_000u64.min(cap);
        let (plan, target_met) = loop {
            let plan = TruncationPlan::new(n, s, 0)?;
            if plan.tail_bound < 0.1 * delta * delta {
                break (plan, true);
            }
            if n == cap {
                break (plan, false);
            }
            n = (n * 2).min(cap);
        };
        let d0 = d_2r(s, 0, &plan, table)?;
        let scaled = delta * delta * d0.value.re;
        let nf = plan.n_terms as f64;
        let completion = nf.powf(-2.0 * delta) * (nf.ln() / (2.0 * delta) + 1.0 / (4.0 * delta * delta));
        rows.push(PoleProbeRow {
            delta,
            n_terms: plan.n_terms,
            scaled,
            completed: scaled + delta * delta * completion,
            scaled_tail: delta * delta * plan.tail_bound,
            target_met,
        });
    }
    Ok(PoleProbeReport { target: 0.25, rows })
}

/// One row of the C_2r residue probe.
#[derive(Debug, Clone, Copy)]
pub struct ResidueProbeRow {
    pub delta: f64,
    pub n_terms: u64,
    /// delta * D_2r(1/2 + delta), truncated.
    pub scaled: f64,
    /// delta times the plan's tail bound.
    pub scaled_tail: f64,
    pub target_met: bool,
}

/// Report of delta * D_2r(1/2 + delta) with the conjectured residue C_2r
/// alongside. Convergence to the target is the prime pair conjecture
/// itself; nothing here asserts it.
#[derive(Debug, Clone)]
pub struct ResidueProbeReport {
    pub two_r: u64,
    pub target: f64,
    pub rows: Vec<ResidueProbeRow>,
}

pub fn c2r_residue_probe(
    two_r: u64,
    delta_grid: &[f64],
    table: &PrimeTable,
    constants: &SingularConstants,
) -> Result<ResidueProbeReport> {
    require_even(two_r)?;
    if two_r == 0 {
        return Err(Error::Domain(
            "residue probe needs a positive pair gap; the diagonal has a double pole".into(),
        ));
    }
    let target = constants.c_2r(two_r / 2)?;
    let mut rows = Vec::with_capacity(delta_grid.len());
    for &delta in delta_grid {
        if !(delta > 0.02 && delta < 0.25) {
            return Err(Error::Domain(format!(
                "residue probe needs delta in (0.02, 0.25), got {delta}"
            )));
        }
        let s = Complex64::new(0.5 + delta, 0.0);
        let cap = table.limit() - two_r;
        let mut n = 10_000u64.min(cap);
        let (plan, target_met) = loop {
            let plan = TruncationPlan::new(n, s, two_r)?;
            if plan.tail_bound < 0.1 * delta {
                break (plan, true);
            }
            if n == cap {
                break (plan, false);
            }
            n = (n * 2).min(cap);
        };
        let d = d_2r(s, two_r, &plan, table)?;
        rows.push(ResidueProbeRow {
            delta,
            n_terms: plan.n_terms,
            scaled: delta * d.value.re,
            scaled_tail: delta * plan.tail_bound,
            target_met,
        });
    }
    Ok(ResidueProbeReport { two_r, target, rows })
}
