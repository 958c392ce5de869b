//! Named coefficient families c_n = a_n·b_n composed from the module
//! tables, each sized ahead of time so that every evaluation deep into a
//! grid stays inside the table coverage.
//!
//! Sizing works from a provable provisional certificate and a lower bound
//! on the final partial sum (all families here are non-negative), so the
//! actual evaluation always stops at or before the sized coverage.

use crate::arith::{lambda_k_table, von_mangoldt_table, FactorSieve};
use crate::error::{Error, Result};
use crate::partitions::{p_h_table_with_cap, PartSet};
use crate::series::{required_truncation, GrowthCertificate, SeriesSpec};
use std::sync::Arc;

/// Slack exponent used to absorb logarithm powers into n^δ.
pub const LOG_ABSORB_DELTA: f64 = 0.25;

fn partition_values(set: &PartSet, limit: usize, cap: usize) -> Result<Vec<f64>> {
    let table = p_h_table_with_cap(set, limit, cap)?;
    Ok((0..=limit).map(|n| table.value_f64(n)).collect())
}

/// c_n = p_H(n). Certificate r = k-1 with the constant scanned from the
/// table plus 20% headroom; sizing uses the provable p_H(n) <= (n+1)^(k-1).
pub fn partition_family(
    set: &PartSet,
    z_deepest: f64,
    rel_tol: f64,
    term_cap: usize,
) -> Result<SeriesSpec> {
    let r = set.cardinality() as f64 - 1.0;
    let provisional = GrowthCertificate::new(1.0, r);
    let coverage = required_truncation(&provisional, z_deepest, rel_tol, 1.0, term_cap)?;
    let values = partition_values(set, coverage, term_cap)?;
    let cert = GrowthCertificate::from_scan(r, values.iter().copied());
    SeriesSpec::from_values(format!("pH{set}"), values, cert, 0)
}

/// c_n = [n prime]·p_H(n). The sieve is built to at least `min_sieve_limit`
/// (capacity exercise) even when the series needs fewer terms.
pub fn partition_primes_family(
    set: &PartSet,
    z_deepest: f64,
    rel_tol: f64,
    term_cap: usize,
    min_sieve_limit: usize,
) -> Result<SeriesSpec> {
    let r = set.cardinality() as f64 - 1.0;
    let provisional = GrowthCertificate::new(1.0, r);

    // Lower bound on the partial sum: the first prime the set can reach.
    let probe = p_h_table_with_cap(set, 1000, term_cap.max(1000))?;
    let probe_sieve = FactorSieve::build(1000)?;
    let first = (2..=probe.limit())
        .find(|&n| probe_sieve.is_prime(n) && probe.count(n) > 0)
        .ok_or_else(|| {
            Error::Domain(format!(
                "{set} yields no prime-indexed coefficients below 1000"
            ))
        })?;
    let floor = probe.value_f64(first) * z_deepest.powi(first as i32);

    let coverage = required_truncation(&provisional, z_deepest, rel_tol, floor, term_cap)?;
    let sieve_limit = coverage.max(min_sieve_limit).max(2);
    let sieve = FactorSieve::build_with_cap(sieve_limit, sieve_limit)?;
    let counts = partition_values(set, coverage, term_cap)?;
    let cert = GrowthCertificate::from_scan(r, counts.iter().copied());
    let values: Vec<f64> = counts
        .iter()
        .enumerate()
        .map(|(n, &c)| if sieve.is_prime(n) { c } else { 0.0 })
        .collect();
    SeriesSpec::from_values(format!("pH{set}_primes"), values, cert, 0)
}

fn sized_sieve(
    cert: &GrowthCertificate,
    z_deepest: f64,
    rel_tol: f64,
    floor: f64,
    term_cap: usize,
) -> Result<FactorSieve> {
    let coverage = required_truncation(cert, z_deepest, rel_tol, floor, term_cap)?.max(2);
    FactorSieve::build_with_cap(coverage, coverage)
}

/// c_n = Λ(n). Analytic certificate: Λ(n) <= log n <= C_δ n^δ.
pub fn von_mangoldt_family(z_deepest: f64, rel_tol: f64, term_cap: usize) -> Result<SeriesSpec> {
    let cert = GrowthCertificate::log_power(1, LOG_ABSORB_DELTA);
    let floor = 2.0f64.ln() * z_deepest * z_deepest;
    let sieve = sized_sieve(&cert, z_deepest, rel_tol, floor, term_cap)?;
    let values = von_mangoldt_table(&sieve).values_f64();
    SeriesSpec::from_values("lambda", values, cert, 1)
}

/// c_n = Λ(n)², bounded by log²n.
pub fn von_mangoldt_squared_family(
    z_deepest: f64,
    rel_tol: f64,
    term_cap: usize,
) -> Result<SeriesSpec> {
    let cert = GrowthCertificate::log_power(2, LOG_ABSORB_DELTA);
    let l2 = 2.0f64.ln();
    let floor = l2 * l2 * z_deepest * z_deepest;
    let sieve = sized_sieve(&cert, z_deepest, rel_tol, floor, term_cap)?;
    let lam = von_mangoldt_table(&sieve);
    let values: Vec<f64> = (0..=sieve.limit())
        .map(|n| {
            let v = lam.value(n);
            v * v
        })
        .collect();
    SeriesSpec::from_values("lambda_sq", values, cert, 1)
}

/// c_n = Λ(n)·Λ_k(n), bounded by log^(k+1) n.
pub fn weighted_lambda_k_family(
    k: u32,
    z_deepest: f64,
    rel_tol: f64,
    term_cap: usize,
) -> Result<SeriesSpec> {
    if k < 1 {
        return Err(Error::Hypothesis("weighted family requires k >= 1".into()));
    }
    let cert = GrowthCertificate::log_power(k + 1, LOG_ABSORB_DELTA);
    let floor = 2.0f64.ln().powi(k as i32 + 1) * z_deepest * z_deepest;
    let sieve = sized_sieve(&cert, z_deepest, rel_tol, floor, term_cap)?;
    let lam = von_mangoldt_table(&sieve);
    let lam_k = lambda_k_table(&sieve, k)?;
    let values: Vec<f64> = (0..=sieve.limit())
        .map(|n| lam.value(n) * lam_k.value(n))
        .collect();
    SeriesSpec::from_values(format!("lambda_weighted_k{k}"), values, cert, 1)
}

/// c_n = 1, with its trivial certificate. Handy as a closed-form reference.
pub fn constant_family(coverage: usize) -> SeriesSpec {
    SeriesSpec::new(
        "ones",
        Arc::new(|_| 1.0),
        coverage,
        GrowthCertificate::new(1.0, 0.0),
        0,
    )
    .expect("constant family always satisfies its certificate")
}
