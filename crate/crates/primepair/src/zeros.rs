//! Tables of zeta-zero ordinates: parsing, validation, and cutoff selection.
//!
//! Ordinates are ingested from text files, never computed here. All
//! downstream sums treat an ordinate gamma as the conjugate pair of zeros
//! 1/2 +- i gamma; the real part is assumed to be exactly 1/2 for every
//! table entry (see [`BETA_ASSUMPTION`]).

use crate::error::Error;
use crate::Result;
use num_complex::Complex64;
use std::io::BufRead;
use std::path::Path;

/// Stated in output metadata wherever zero sums are reported.
pub const BETA_ASSUMPTION: &str =
    "all ingested ordinates are treated as zeros with real part exactly 1/2";

/// Minimum distance a cutoff keeps from every ordinate.
pub const CUTOFF_CLEARANCE: f64 = 1e-3;

/// Validated ascending table of positive zero ordinates.
#[derive(Debug, Clone)]
pub struct ZeroSet {
    ordinates: Vec<f64>,
    source: String,
}

/// A truncation height placed strictly between two consecutive ordinates
/// (`straddles` holds their zero-based indices), or just above the last one.
#[derive(Debug, Clone, Copy)]
pub struct CutoffR {
    pub value: f64,
    pub straddles: (usize, usize),
    /// Set when the requested target lay below the first ordinate.
    pub below_first: bool,
}

/// How a truncated series was cut off.
#[derive(Debug, Clone, Copy)]
pub enum Cutoff {
    /// Height cutoff between zero ordinates.
    Height(CutoffR),
    /// Plain term-count cutoff.
    Terms(u64),
}

/// Value of a truncated series plus its truncation bookkeeping.
#[derive(Debug, Clone, Copy)]
pub struct SeriesResult {
    pub value: Complex64,
    pub terms_used: u64,
    pub cutoff: Cutoff,
    /// Bound (or labeled estimate) for everything the truncation dropped.
    pub tail_estimate: f64,
}

impl ZeroSet {
    /// Reads one ordinate per line; `#` comment lines and blank lines are
    /// ignored. Entries must be positive, non-decreasing, and start with the
    /// two classical anchors (first in (14, 14.2), second in (21, 21.1)).
    pub fn load(path: &Path) -> Result<Self> {
        let display = path.display().to_string();
        let file = std::fs::File::open(path).map_err(|e| Error::ZeroTableInvalid {
            path: display.clone(),
            message: format!("cannot open: {e}"),
        })?;
        let mut ordinates = Vec::new();
        for (idx, line) in std::io::BufReader::new(file).lines().enumerate() {
            let line = line?;
            let text = line.trim();
            if text.is_empty() || text.starts_with('#') {
                continue;
            }
            let value: f64 = text.parse().map_err(|_| Error::ZeroTableParse {
                path: display.clone(),
                line: idx + 1,
                message: format!("not a decimal ordinate: {text:?}"),
            })?;
            if !value.is_finite() || value <= 0.0 {
                return Err(Error::ZeroTableParse {
                    path: display.clone(),
                    line: idx + 1,
                    message: format!("ordinates must be positive and finite, got {value}"),
                });
            }
            if let Some(&prev) = ordinates.last() {
                if value < prev {
                    return Err(Error::ZeroTableParse {
                        path: display.clone(),
                        line: idx + 1,
                        message: format!("ordinates must be non-decreasing ({value} after {prev})"),
                    });
                }
            }
            ordinates.push(value);
        }
        Self::from_ordinates(ordinates, &display)
    }

    /// Validates an in-memory table; same rules as [`ZeroSet::load`].
    pub fn from_ordinates(ordinates: Vec<f64>, source: &str) -> Result<Self> {
        let invalid = |message: String| Error::ZeroTableInvalid {
            path: source.to_string(),
            message,
        };
        if ordinates.len() < 2 {
            return Err(invalid(format!(
                "need at least 2 ordinates, got {}",
                ordinates.len()
            )));
        }
        if !(ordinates[0] > 14.0 && ordinates[0] < 14.2) {
            return Err(invalid(format!(
                "first ordinate {} outside the expected window (14, 14.2)",
                ordinates[0]
            )));
        }
        if !(ordinates[1] > 21.0 && ordinates[1] < 21.1) {
            return Err(invalid(format!(
                "second ordinate {} outside the expected window (21, 21.1)",
                ordinates[1]
            )));
        }
        Ok(ZeroSet { ordinates, source: source.to_string() })
    }

    /// Test-only constructor bypassing the anchor checks.
    #[cfg(test)]
    pub(crate) fn unchecked(ordinates: Vec<f64>) -> Self {
        ZeroSet { ordinates, source: "unchecked".into() }
    }

    /// The first `n` ordinates as a table of their own.
    pub fn truncated(&self, n: usize) -> Result<Self> {
        if n > self.len() {
            return Err(Error::Capacity(format!(
                "requested {n} ordinates, table {} holds {}",
                self.source,
                self.len()
            )));
        }
        Self::from_ordinates(
            self.ordinates[..n].to_vec(),
            &format!("{} (first {n})", self.source),
        )
    }

    pub fn ordinates(&self) -> &[f64] {
        &self.ordinates
    }

    pub fn len(&self) -> usize {
        self.ordinates.len()
    }

    pub fn is_empty(&self) -> bool {
        self.ordinates.is_empty()
    }

    pub fn source(&self) -> &str {
        &self.source
    }

    /// N(T): number of ordinates <= t.
    pub fn count_below(&self, t: f64) -> usize {
        self.ordinates.partition_point(|&g| g <= t)
    }

    /// Ordinates up to a cutoff.
    pub fn up_to(&self, cutoff: &CutoffR) -> &[f64] {
        &self.ordinates[..self.count_below(cutoff.value)]
    }

    /// Places a cutoff at the midpoint of the ordinate gap containing
    /// `target` (or the first gap above it when `target` lies below the
    /// table). Gaps narrower than twice [`CUTOFF_CLEARANCE`] are skipped in
    /// favor of the next one; a target at or beyond the last ordinate that
    /// cannot be bracketed resolves to a point just above the table.
    pub fn choose_cutoff(&self, target: f64) -> Result<CutoffR> {
        let last = *self.ordinates.last().unwrap();
        if target > last {
            return Err(Error::Capacity(format!(
                "cutoff target {target} beyond the last tabulated ordinate {last}"
            )));
        }
        let below_first = target < self.ordinates[0];
        let mut i = if below_first {
            0
        } else {
            self.count_below(target).saturating_sub(1)
        };
        loop {
            if i + 1 >= self.ordinates.len() {
                // ran out of interior gaps: sit just above the table
                let value = last + 1.0;
                return Ok(CutoffR { value, straddles: (i, i), below_first });
            }
            let (lo, hi) = (self.ordinates[i], self.ordinates[i + 1]);
            if hi - lo >= 2.0 * CUTOFF_CLEARANCE {
                return Ok(CutoffR {
                    value: 0.5 * (lo + hi),
                    straddles: (i, i + 1),
                    below_first,
                });
            }
            i += 1;
        }
    }

    /// Cutoff placed just above the n-th ordinate (1-based), so the first n
    /// zeros fall below it.
    pub fn cutoff_for_count(&self, n: usize) -> Result<CutoffR> {
        if n == 0 || n > self.ordinates.len() {
            return Err(Error::Capacity(format!(
                "cannot cover {n} zeros with a table of {}",
                self.ordinates.len()
            )));
        }
        self.choose_cutoff(self.ordinates[n - 1])
    }
}
