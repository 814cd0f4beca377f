//! Exact computation of higher-order Daehee numbers and polynomials, Nörlund
//! Bernoulli numbers and polynomials, and Stirling numbers, together with an
//! executable catalogue of the identities connecting them.
//!
//! Everything here is exact rational arithmetic; nothing rounds. The crate is
//! `no_std` and only needs `alloc`. IO, the command line and the file formats
//! live in the `daehee-kit` companion crate.

#![no_std]

extern crate alloc;
#[cfg(test)]
extern crate std;

pub mod algebra;
pub mod bernoulli;
pub mod combinat;
pub mod daehee;
mod error;
pub mod padic;
pub mod verify;

pub use algebra::{BigInt, Rational, RationalPolynomial, TruncatedSeries};
pub use error::{Error, Result};
