//! Prime pairs, singular series constants, sieving kernels, and zeta zero sums.
//!
//! The crate is organized around a handful of numerical objects:
//!
//! - [`sieve::PrimeTable`]: a segmented, bit-packed odd-only sieve providing
//!   primality, von Mangoldt values, prime pair counts, and weighted pair sums.
//! - [`singular`]: the twin prime constant, the singular series ratios
//!   attached to each even gap, their partial sums, and the logarithmic
//!   integral used for expected pair counts.
//! - [`kernels::SievingKernel`]: even, compactly supported weight functions
//!   (Fejer, Jackson, or custom piecewise polynomials) together with their
//!   nonnegative Fourier transforms and Mellin transforms in closed form.
//! - [`special`]: complex gamma, log-gamma, zeta, and zeta log-derivative.
//! - [`zeros::ZeroSet`]: tables of zeta zero ordinates ingested from disk,
//!   with cutoff selection away from the ordinates themselves.
//! - [`zerosum`]: truncated sums over zeros (single, double, and banded), the
//!   pair correlation form factor, and pole-compensated combinations.
//! - [`dirichlet`]: truncated Dirichlet series over prime pairs and the
//!   finite expansion identity that decomposes a kernel-weighted double sum
//!   into diagonal, even-gap, and odd-gap parts.
//!
//! Every truncated sum reports how many terms were used and an upper estimate
//! for the omitted tail. Heavy loops use compensated summation so results are
//! reproducible across thread counts and summation orders.
//!
//! The `primepair` binary exposes the same operations as subcommands; see the
//! `examples/` directory for library-first usage.

pub mod accum;
pub mod cli;
pub mod dirichlet;
pub mod error;
pub mod kernels;
pub mod sieve;
pub mod singular;
pub mod special;
pub mod verify;
pub mod zeros;
pub mod zerosum;

pub use error::Error;

/// Result alias used throughout the crate.
pub type Result<T> = std::result::Result<T, Error>;
