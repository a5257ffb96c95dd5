//! Exact computations for the type A root system.
//!
//! The crate evaluates Kostant's partition function and its q-analog on
//! weights of `sl_n`, enumerates Weyl alternation sets, and computes weight
//! multiplicities (and Lusztig's q-analog) through Kostant's alternating sum
//! over the Weyl group. The [`verify`] module checks closed forms for the
//! highest root against brute-force enumeration.
//!
//! All weights are written in ε-coordinates: an `n`-tuple whose `i`-th entry
//! is the pairing with `ε_i`. All arithmetic is exact.

pub mod altset;
pub mod closed;
pub mod error;
pub mod multiplicity;
pub mod partition;
pub mod qpoly;
pub mod rootsys;
pub mod verify;
pub mod weyl;

pub use altset::{AltSet, AltSetElement};
pub use error::{Error, Result};
pub use multiplicity::{Backend, MultiplicityResult};
pub use qpoly::QPoly;
pub use rootsys::{EpsVector, RankContext};
pub use weyl::Permutation;

/// Largest `n = r + 1` for which full Weyl-group enumeration is attempted by default.
pub const DEFAULT_MAX_N: usize = 10;
