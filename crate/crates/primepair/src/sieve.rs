//! Segmented, bit-packed prime sieve with von Mangoldt support.
//!
//! Odd numbers from 3 up to `limit` are stored one bit each; 2 is handled
//! specially. Construction sieves fixed-size segments so the working set
//! stays cache-resident, and segments are processed in parallel: each segment
//! owns a disjoint slice of the bit vector, so the result is identical for
//! any thread count or segment size.
//!
//! Higher prime powers (p^a, a >= 2) are kept in a small sorted side table
//! built at construction; there are only O(sqrt(limit)) of them, and the
//! table makes von Mangoldt lookups a bit test plus a binary search instead
//! of a per-query root extraction.

use crate::accum::KahanSum;
use crate::error::Error;
use crate::Result;
use rayon::prelude::*;

/// Largest supported sieve limit.
pub const MAX_LIMIT: u64 = 1 << 40;

/// Smallest accepted segment size (in odd-number entries).
pub const MIN_SEGMENT: usize = 1 << 10;

/// Default segment size (in odd-number entries).
pub const DEFAULT_SEGMENT: usize = 1 << 18;

/// Bit-packed primality table for `[2, limit]`.
#[derive(Debug, Clone)]
pub struct PrimeTable {
    limit: u64,
    segment_size: usize,
    /// Bit `i` set iff `3 + 2i` is prime.
    bits: Vec<u64>,
    /// `(p^a, ln p)` for every prime power with `a >= 2`, ascending in `p^a`.
    higher_powers: Vec<(u64, f64)>,
}

/// Count of pairs `(p, p + two_r)` with both entries prime and `p <= x`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PairCountRecord {
    pub two_r: u64,
    pub x: u64,
    pub count: u64,
}

impl PrimeTable {
    /// Sieve `[2, limit]` with the default segment size.
    pub fn build(limit: u64) -> Result<Self> {
        Self::build_with_segment(limit, DEFAULT_SEGMENT)
    }

    /// Sieve `[2, limit]` processing `segment_size` odd entries at a time.
    pub fn build_with_segment(limit: u64, segment_size: usize) -> Result<Self> {
        if limit < 2 {
            return Err(Error::Domain(format!("sieve limit {limit} < 2")));
        }
        if limit > MAX_LIMIT {
            return Err(Error::Capacity(format!(
                "sieve limit {limit} exceeds {MAX_LIMIT}"
            )));
        }
        if segment_size < MIN_SEGMENT {
            return Err(Error::Domain(format!(
                "segment size {segment_size} below minimum {MIN_SEGMENT}"
            )));
        }

        let n_odds = if limit < 3 { 0 } else { ((limit - 3) / 2 + 1) as usize };
        let n_words = n_odds.div_ceil(64);
        let mut bits = vec![u64::MAX; n_words];

        // Base primes up to sqrt(limit) from a plain sieve.
        let root = limit.isqrt();
        let base = simple_odd_primes(root);

        // Each chunk of words covers a disjoint range of odd numbers; mark
        // composites independently per chunk.
        let words_per_segment = segment_size.div_ceil(64).max(1);
        bits.par_chunks_mut(words_per_segment)
            .enumerate()
            .for_each(|(chunk_idx, chunk)| {
                let first_bit = chunk_idx * words_per_segment * 64;
                let last_bit = (first_bit + chunk.len() * 64 - 1).min(n_odds - 1);
                let lo = 3 + 2 * first_bit as u64;
                let hi = 3 + 2 * last_bit as u64;
                for &p in &base {
                    let p2 = p * p;
                    if p2 > hi {
                        break;
                    }
                    // first odd multiple of p in [max(p^2, lo), hi]
                    let mut m = if p2 >= lo {
                        p2
                    } else {
                        let q = lo.div_ceil(p);
                        let q = if q % 2 == 0 { q + 1 } else { q };
                        q * p
                    };
                    while m <= hi {
                        let bit = ((m - 3) / 2) as usize - first_bit;
                        chunk[bit / 64] &= !(1u64 << (bit % 64));
                        m += 2 * p;
                    }
                }
            });

        // Clear tail bits past `limit` so word-level scans stay exact.
        if n_odds % 64 != 0 {
            if let Some(last) = bits.last_mut() {
                *last &= (1u64 << (n_odds % 64)) - 1;
            }
        }

        let mut table = PrimeTable {
            limit,
            segment_size,
            bits,
            higher_powers: Vec::new(),
        };
        table.higher_powers = table.collect_higher_powers();
        Ok(table)
    }

    fn collect_higher_powers(&self) -> Vec<(u64, f64)> {
        let mut out = Vec::new();
        let root = self.limit.isqrt();
        let mut push_powers = |p: u64| {
            let lp = (p as f64).ln();
            let mut pk = p * p;
            loop {
                out.push((pk, lp));
                match pk.checked_mul(p) {
                    Some(next) if next <= self.limit => pk = next,
                    _ => break,
                }
            }
        };
        if self.limit >= 4 {
            push_powers(2);
        }
        let mut p = 3;
        while p <= root {
            if self.is_prime(p) {
                push_powers(p);
            }
            p += 2;
        }
        out.sort_unstable_by_key(|&(n, _)| n);
        out
    }

    pub fn limit(&self) -> u64 {
        self.limit
    }

    pub fn segment_size(&self) -> usize {
        self.segment_size
    }

    /// Primality of `n`. Requires `n <= limit`.
    #[inline]
    pub fn is_prime(&self, n: u64) -> bool {
        assert!(n <= self.limit, "is_prime({n}) beyond table limit {}", self.limit);
        if n < 3 {
            return n == 2;
        }
        if n % 2 == 0 {
            return false;
        }
        let i = ((n - 3) / 2) as usize;
        self.bits[i / 64] >> (i % 64) & 1 == 1
    }

    /// Iterate all primes `<= bound` in ascending order.
    pub fn primes(&self, bound: u64) -> impl Iterator<Item = u64> + '_ {
        assert!(bound <= self.limit);
        let two = if bound >= 2 { Some(2) } else { None };
        let n_bits = if bound < 3 { 0 } else { ((bound - 3) / 2 + 1) as usize };
        two.into_iter()
            .chain(BitIter::new(&self.bits, n_bits).map(|i| 3 + 2 * i as u64))
    }

    /// Number of primes `<= bound`.
    pub fn count_primes(&self, bound: u64) -> u64 {
        assert!(bound <= self.limit);
        if bound < 2 {
            return 0;
        }
        if bound < 3 {
            return 1;
        }
        let n_bits = ((bound - 3) / 2 + 1) as usize;
        let full = n_bits / 64;
        let mut count: u64 = 1; // the prime 2
        for w in &self.bits[..full] {
            count += w.count_ones() as u64;
        }
        if n_bits % 64 != 0 {
            let mask = (1u64 << (n_bits % 64)) - 1;
            count += (self.bits[full] & mask).count_ones() as u64;
        }
        count
    }

    /// Von Mangoldt function. Requires `1 <= n <= limit`.
    ///
    /// Returns `ln p` when `n = p^a` for a prime `p`, 0 otherwise.
    #[inline]
    pub fn von_mangoldt(&self, n: u64) -> f64 {
        assert!(n >= 1 && n <= self.limit, "von_mangoldt({n}) out of range");
        if self.is_prime(n) {
            return (n as f64).ln();
        }
        match self.higher_powers.binary_search_by_key(&n, |&(m, _)| m) {
            Ok(i) => self.higher_powers[i].1,
            Err(_) => 0.0,
        }
    }

    /// Chebyshev `psi(x)`: sum of von Mangoldt over `n <= x`.
    pub fn psi(&self, x: u64) -> f64 {
        assert!(x <= self.limit);
        let mut acc = KahanSum::new();
        for p in self.primes(x) {
            acc.add((p as f64).ln());
        }
        for &(pk, lp) in &self.higher_powers {
            if pk > x {
                break;
            }
            acc.add(lp);
        }
        acc.value()
    }

    /// Prime pair counts for one gap at several checkpoints.
    ///
    /// Pairs are counted by their smaller member: `p <= x`, `p + two_r`
    /// prime (possibly beyond `x`, hence the capacity requirement).
    pub fn count_prime_pairs(&self, two_r: u64, checkpoints: &[u64]) -> Result<Vec<PairCountRecord>> {
        let rows = self.count_prime_pairs_batch(&[two_r], checkpoints)?;
        Ok(rows.into_iter().next().unwrap())
    }

    /// Pair counts for several gaps, streaming the table once.
    pub fn count_prime_pairs_batch(
        &self,
        two_rs: &[u64],
        checkpoints: &[u64],
    ) -> Result<Vec<Vec<PairCountRecord>>> {
        for &two_r in two_rs {
            if two_r == 0 || two_r % 2 != 0 {
                return Err(Error::Domain(format!("pair gap {two_r} must be even and positive")));
            }
        }
        if checkpoints.is_empty() {
            return Ok(two_rs.iter().map(|_| Vec::new()).collect());
        }
        if !checkpoints.windows(2).all(|w| w[0] < w[1]) {
            return Err(Error::Domain("checkpoints must be strictly ascending".into()));
        }
        let max_x = *checkpoints.last().unwrap();
        let max_two_r = *two_rs.iter().max().unwrap();
        if max_x.checked_add(max_two_r).is_none_or(|m| m > self.limit) {
            return Err(Error::Capacity(format!(
                "need table limit >= {max_x} + {max_two_r}, have {}",
                self.limit
            )));
        }

        let mut counts = vec![0u64; two_rs.len()];
        let mut out: Vec<Vec<PairCountRecord>> = two_rs.iter().map(|_| Vec::new()).collect();
        let mut next_cp = 0usize;
        for p in self.primes(max_x) {
            while next_cp < checkpoints.len() && p > checkpoints[next_cp] {
                for (k, &two_r) in two_rs.iter().enumerate() {
                    out[k].push(PairCountRecord {
                        two_r,
                        x: checkpoints[next_cp],
                        count: counts[k],
                    });
                }
                next_cp += 1;
            }
            for (k, &two_r) in two_rs.iter().enumerate() {
                if self.is_prime(p + two_r) {
                    counts[k] += 1;
                }
            }
        }
        while next_cp < checkpoints.len() {
            for (k, &two_r) in two_rs.iter().enumerate() {
                out[k].push(PairCountRecord {
                    two_r,
                    x: checkpoints[next_cp],
                    count: counts[k],
                });
            }
            next_cp += 1;
        }
        Ok(out)
    }

    /// Von Mangoldt weighted pair sum: sum of `L(n) L(n + two_r)` over `n <= x`.
    ///
    /// `two_r = 0` is allowed and gives the diagonal sum of `L(n)^2`.
    pub fn psi_2r(&self, two_r: u64, x: u64) -> Result<f64> {
        if two_r % 2 != 0 {
            return Err(Error::Domain(format!("pair gap {two_r} must be even")));
        }
        if x.checked_add(two_r).is_none_or(|m| m > self.limit) {
            return Err(Error::Capacity(format!(
                "need table limit >= {x} + {two_r}, have {}",
                self.limit
            )));
        }
        let mut acc = KahanSum::new();
        self.for_each_mangoldt(x, |n, ln| {
            let other = self.von_mangoldt(n + two_r);
            if other != 0.0 {
                acc.add(ln * other);
            }
        });
        Ok(acc.value())
    }

    /// Visit `(n, von_mangoldt(n))` for every prime power `n <= x`.
    ///
    /// Order: all primes ascending, then higher powers ascending.
    pub fn for_each_mangoldt<F: FnMut(u64, f64)>(&self, x: u64, mut f: F) {
        assert!(x <= self.limit);
        for p in self.primes(x) {
            f(p, (p as f64).ln());
        }
        for &(pk, lp) in &self.higher_powers {
            if pk > x {
                break;
            }
            f(pk, lp);
        }
    }

    /// Visit `(n, von_mangoldt(n))` for every prime power `n <= x`, globally
    /// ascending in `n` (primes and higher powers merged).
    pub fn for_each_mangoldt_ascending<F: FnMut(u64, f64)>(&self, x: u64, mut f: F) {
        assert!(x <= self.limit);
        let mut powers = self
            .higher_powers
            .iter()
            .take_while(|&&(pk, _)| pk <= x)
            .peekable();
        for p in self.primes(x) {
            while let Some(&&(pk, lp)) = powers.peek() {
                if pk < p {
                    f(pk, lp);
                    powers.next();
                } else {
                    break;
                }
            }
            f(p, (p as f64).ln());
        }
        for &(pk, lp) in powers {
            f(pk, lp);
        }
    }

    /// Sorted `(n, von_mangoldt(n))` for every prime power `n <= x`.
    pub fn mangoldt_support(&self, x: u64) -> Vec<(u64, f64)> {
        let mut out = Vec::new();
        self.for_each_mangoldt(x, |n, l| out.push((n, l)));
        out.sort_unstable_by_key(|&(n, _)| n);
        out
    }
}

/// Plain odd sieve used for base primes; returns odd primes `<= bound`.
fn simple_odd_primes(bound: u64) -> Vec<u64> {
    if bound < 3 {
        return Vec::new();
    }
    let n = ((bound - 3) / 2 + 1) as usize;
    let mut comp = vec![false; n];
    let mut out = Vec::new();
    for i in 0..n {
        if !comp[i] {
            let p = 3 + 2 * i as u64;
            out.push(p);
            let mut m = p * p;
            while m <= bound {
                comp[((m - 3) / 2) as usize] = true;
                m += 2 * p;
            }
        }
    }
    out
}

struct BitIter<'a> {
    words: &'a [u64],
    n_bits: usize,
    word_idx: usize,
    current: u64,
}

impl<'a> BitIter<'a> {
    fn new(words: &'a [u64], n_bits: usize) -> Self {
        let current = if words.is_empty() { 0 } else { words[0] };
        BitIter { words, n_bits, word_idx: 0, current }
    }
}

impl Iterator for BitIter<'_> {
    type Item = usize;

    #[inline]
    fn next(&mut self) -> Option<usize> {
        loop {
            if self.current != 0 {
                let tz = self.current.trailing_zeros() as usize;
                let bit = self.word_idx * 64 + tz;
                self.current &= self.current - 1;
                if bit >= self.n_bits {
                    return None;
                }
                return Some(bit);
            }
            self.word_idx += 1;
            if self.word_idx * 64 >= self.n_bits || self.word_idx >= self.words.len() {
                return None;
            }
            self.current = self.words[self.word_idx];
        }
    }
}
