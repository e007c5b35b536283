//! Exact special values of real quadratic zeta functions.
//!
//! For a fundamental discriminant `D > 1` the zeta function of the real
//! quadratic field of discriminant `D` takes rational values at negative odd
//! integers.  This crate computes those values `zeta_D(1 - 2m)` exactly, by
//! three independent routes:
//!
//! * [`elementary_zeta::zeta_eq1`] — a finite double sum over Bernoulli
//!   polynomial values `B_2m(j/D)` weighted by the quadratic character,
//! * [`modular_zeta::zeta_eq2`] — a short linear combination of divisor-sum
//!   convolutions, with integer coefficients read off a weight-2 meromorphic
//!   modular form,
//! * [`modular_zeta::zeta_eq3`] — the same combination rearranged so that the
//!   expensive divisor-sum evaluations are shared across terms.
//!
//! All arithmetic is exact (`BigInt` / `BigRat`); the routes must agree bit
//! for bit, and the test suite enforces that.  Every multiplication performed
//! on the way runs through a [`exact::MulCounter`], which records the count
//! together with two size-weighted cost models, so the routes can be compared
//! as algorithms rather than as wall clocks.
//!
//! On top of the value computation, [`irregularity`] classifies an odd prime
//! `p` by its index of irregularity with respect to `D`: the number of
//! entries in a fixed window of zeta values whose `p`-adic valuation is
//! nonzero.
//!
//! The crate is `no_std` (it allocates, so `alloc` is required).  Everything
//! IO-shaped lives in the companion CLI crate.

#![no_std]
#![forbid(unsafe_code)]

extern crate alloc;

pub mod arith_functions;
pub mod bernoulli;
pub mod characters;
pub mod elementary_zeta;
pub mod error;
pub mod exact;
pub mod irregularity;
pub mod modular_coeffs;
pub mod modular_zeta;

pub use error::{Error, Result};
pub use exact::{BigInt, BigRat, MulCounter, Valuation};
