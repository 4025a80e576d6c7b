//! Exact and modular arithmetic around the Banach matchbox problem.
//!
//! Two boxes start with `n` matches each; a match is drawn from a uniformly
//! chosen box until the chosen box turns out to be empty. The number `r` of
//! matches left in the other box has probability
//! `u_n(r) = C(2n - r, n) * 2^(r - 2n)`, and normalization of that
//! distribution gives the identity `sum_r C(2n - r, n) * 2^(r - n) = 2^n`.
//!
//! The same identity yields a congruence for every odd prime `p` and
//! `1 <= k <= (p - 1) / 2`:
//!
//! ```text
//! S(p, k) = sum_{i=1}^{p-2k-1} 2^(i-1) * C(k - 1 + i, k)  ==  0  (mod p)
//! ```
//!
//! Modules:
//!
//! - [`exactmath`]: big integers, rationals, exact binomials and factorials.
//! - [`matchbox`]: the exact distribution and the identity check.
//! - [`modarith`]: per-prime factorial and inverse tables.
//! - [`congruence`]: three independent evaluations of `S(p, k)`, prime sweeps
//!   and a composite scan.
//! - [`proofreplay`]: the derivative/Leibniz derivation of the congruence,
//!   replayed as checkable algebra.
//! - [`simulate`]: seeded Monte Carlo of the two-box process.
//! - [`cli`]: the `banach` command line front end.

pub mod cli;
pub mod congruence;
pub mod error;
pub mod exactmath;
pub mod matchbox;
pub mod modarith;
pub mod primes;
pub mod proofreplay;
pub mod simulate;

pub use error::{Error, Result};
