//! Compensated summation.
//!
//! Neumaier's variant of Kahan summation: the compensation term also captures
//! the case where the incoming term is larger than the running sum, so sums
//! of wildly varying magnitudes stay accurate to a few ulps regardless of
//! evaluation order.

use num_complex::Complex64;

/// Compensated accumulator for `f64`.
#[derive(Debug, Clone, Copy, Default)]
pub struct KahanSum {
    sum: f64,
    comp: f64,
}

impl KahanSum {
    pub fn new() -> Self {
        Self::default()
    }

    #[inline]
    pub fn add(&mut self, x: f64) {
        let t = self.sum + x;
        if self.sum.abs() >= x.abs() {
            self.comp += (self.sum - t) + x;
        } else {
            self.comp += (x - t) + self.sum;
        }
        self.sum = t;
    }

    #[inline]
    pub fn value(&self) -> f64 {
        self.sum + self.comp
    }

    /// Merge another accumulator into this one (used for block reductions).
    pub fn merge(&mut self, other: &KahanSum) {
        self.add(other.sum);
        self.add(other.comp);
    }
}

impl std::iter::FromIterator<f64> for KahanSum {
    fn from_iter<I: IntoIterator<Item = f64>>(iter: I) -> Self {
        let mut acc = KahanSum::new();
        for x in iter {
            acc.add(x);
        }
        acc
    }
}

/// Compensated accumulator for `Complex64` (independent real/imag parts).
#[derive(Debug, Clone, Copy, Default)]
pub struct KahanComplex {
    re: KahanSum,
    im: KahanSum,
}

impl KahanComplex {
    pub fn new() -> Self {
        Self::default()
    }

    #[inline]
    pub fn add(&mut self, z: Complex64) {
        self.re.add(z.re);
        self.im.add(z.im);
    }

    #[inline]
    pub fn value(&self) -> Complex64 {
        Complex64::new(self.re.value(), self.im.value())
    }

    pub fn merge(&mut self, other: &KahanComplex) {
        self.re.merge(&other.re);
        self.im.merge(&other.im);
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn recovers_cancellation() {
        let mut acc = KahanSum::new();
        acc.add(1e16);
        acc.add(1.0);
        acc.add(-1e16);
        assert_eq!(acc.value(), 1.0);
    }

    #[test]
    fn order_invariance_on_harmonic_terms() {
        let forward: KahanSum = (1..=100_000).map(|n| 1.0 / n as f64).collect();
        let backward: KahanSum = (1..=100_000).rev().map(|n| 1.0 / n as f64).collect();
        assert!((forward.value() - backward.value()).abs() < 1e-13);
    }

    #[test]
    fn merge_matches_single_pass() {
        let xs: Vec<f64> = (1..=10_000).map(|n| (n as f64).sqrt().sin()).collect();
        let whole: KahanSum = xs.iter().copied().collect();
        let mut merged = KahanSum::new();
        for chunk in xs.chunks(137) {
            let part: KahanSum = chunk.iter().copied().collect();
            merged.merge(&part);
        }
        assert!((whole.value() - merged.value()).abs() < 1e-12);
    }
}
