//! Exact and certified building blocks for studying arithmetic power series
//! Σ c_n z^n as z approaches 1 from below.
//!
//! - [`arith`]: sieve-backed tables of µ, Λ, Λ_k, prime indicators, π, ψ
//! - [`partitions`]: exact restricted partition counts with an independent
//!   enumeration oracle and partial-sum tables
//! - [`bernoulli`]: exact rational Bernoulli numbers/polynomials and
//!   Faulhaber power sums
//! - [`series`]: truncated series evaluation with certified tail bounds,
//!   closed-form oracles, asymptotic envelopes, and dyadic-grid ratio sweeps
//!
//! Everything that claims exactness is integer or rational arithmetic with
//! checked overflow; everything floating carries either a compensated
//! summation order or a certificate, so identical inputs reproduce
//! bit-identical outputs.

pub mod arith;
pub mod bernoulli;
pub mod error;
pub mod families;
pub mod partitions;
pub mod series;
pub mod special;

pub use error::{Error, Result};
