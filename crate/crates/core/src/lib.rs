//! Exact sum-set, product-set and ratio-set computations for finite sets of
//! positive rationals, with an integer-exact checker for the sum-division
//! inequality `|A+A|²·|A/A| ≥ |A|⁴/4` and every step of its proof.
//!
//! The crate is organised bottom-up:
//!
//! * [`rational`] — canonical arbitrary-precision positive rationals.
//! * [`set`] — [`PositiveSet`] and the pairwise operations `A+B`, `AB`, `A/B`.
//! * [`spectrum`] — ratio multiplicities and the half-mass threshold.
//! * [`verify`] — the proof-chain report, corollaries and the ray certificate.
//! * [`families`] — intervals, geometric progressions, Farey fractions,
//!   seeded random sets and the multiplication-table counter.
//! * [`search`] — exhaustive and local search for small values of the
//!   normalised functionals.
//! * [`cli`] — the command-line front end used by the `sumdiv` binary.
//!
//! Runnable walkthroughs live in the crate's `examples/` directory.

pub mod cli;
pub mod decimal;
pub mod error;
pub mod families;
pub mod rational;
pub mod search;
pub mod set;
pub mod spectrum;
pub mod verify;

pub use error::{Error, ParseRationalError, Result};
pub use rational::{parse_rational, PosRational};
pub use set::{PairCap, PositiveSet};
pub use spectrum::{ratio_spectrum, MultiplicitySpectrum, ThresholdResult};
pub use verify::{verify_sum_division, VerificationReport};
