//! Sieve-backed tables of the arithmetic functions used throughout:
//! smallest prime factor, Möbius µ, von Mangoldt Λ, generalized Λ_k,
//! prime indicators, and the summaries π(x), ψ(x).

use crate::error::{Error, Result};
use crate::special::KahanSum;

/// Default cap on sieve size. A sieve stores one `u32` per integer, so the
/// default costs about 200 MB; raise it explicitly via [`FactorSieve::build_with_cap`]
/// if you have the memory. Hard ceiling is `u32::MAX`.
pub const DEFAULT_SIEVE_CAP: usize = 50_000_000;

/// Smallest-prime-factor table for 2..=limit, built by a linear sieve.
#[derive(Debug, Clone)]
pub struct FactorSieve {
    limit: usize,
    spf: Vec<u32>,
}

impl FactorSieve {
    /// Build the sieve up to `limit` under [`DEFAULT_SIEVE_CAP`].
    pub fn build(limit: usize) -> Result<Self> {
        Self::build_with_cap(limit, DEFAULT_SIEVE_CAP)
    }

    /// Build the sieve up to `limit`, refusing limits outside [2, cap].
    pub fn build_with_cap(limit: usize, cap: usize) -> Result<Self> {
        if limit < 2 {
            return Err(Error::Capacity(format!(
                "sieve limit {limit} out of range (minimum 2)"
            )));
        }
        if limit > cap || limit > u32::MAX as usize {
            return Err(Error::Capacity(format!(
                "sieve limit {limit} exceeds cap {}",
                cap.min(u32::MAX as usize)
            )));
        }
        let mut spf = vec![0u32; limit + 1];
        let mut primes: Vec<u32> = Vec::new();
        for i in 2..=limit {
            if spf[i] == 0 {
                spf[i] = i as u32;
                primes.push(i as u32);
            }
            let spf_i = spf[i];
            for &p in &primes {
                if p > spf_i {
                    break;
                }
                let m = i * p as usize;
                if m > limit {
                    break;
                }
                spf[m] = p;
            }
        }
        Ok(Self { limit, spf })
    }

    pub fn limit(&self) -> usize {
        self.limit
    }

    /// Smallest prime factor of `n`; requires 2 <= n <= limit.
    pub fn spf(&self, n: usize) -> u32 {
        assert!(n >= 2 && n <= self.limit, "spf index {n} out of range");
        self.spf[n]
    }

    pub fn is_prime(&self, n: usize) -> bool {
        n >= 2 && n <= self.limit && self.spf[n] == n as u32
    }

    /// Prime factorization of `n` as (prime, exponent) pairs, ascending.
    pub fn factorize(&self, n: usize) -> Vec<(u32, u32)> {
        assert!(n >= 1 && n <= self.limit, "factorize index {n} out of range");
        let mut factors = Vec::new();
        let mut m = n;
        while m > 1 {
            let p = self.spf[m];
            let mut exp = 0;
            while m % p as usize == 0 {
                m /= p as usize;
                exp += 1;
            }
            factors.push((p, exp));
        }
        factors
    }

    /// Number of distinct prime factors ω(n).
    pub fn omega(&self, n: usize) -> u32 {
        self.factorize(n).len() as u32
    }

    fn von_mangoldt_value(&self, n: usize) -> f64 {
        if n < 2 {
            return 0.0;
        }
        let p = self.spf[n] as usize;
        let mut m = n;
        while m % p == 0 {
            m /= p;
        }
        if m == 1 {
            (p as f64).ln()
        } else {
            0.0
        }
    }
}

/// Which arithmetic function a table holds.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ArithKind {
    Mobius,
    VonMangoldt,
    LambdaK(u32),
    PrimeIndicator,
}

#[derive(Debug, Clone)]
enum TableValues {
    Int(Vec<i8>),
    Real(Vec<f64>),
}

/// Values of one arithmetic function for 1..=limit. Index 0 is a zero
/// sentinel so tables can be read with the natural index.
#[derive(Debug, Clone)]
pub struct ArithFnTable {
    kind: ArithKind,
    limit: usize,
    values: TableValues,
}

impl ArithFnTable {
    pub fn kind(&self) -> ArithKind {
        self.kind
    }

    pub fn limit(&self) -> usize {
        self.limit
    }

    /// Value at `n` as f64 (0.0 at n = 0).
    pub fn value(&self, n: usize) -> f64 {
        assert!(n <= self.limit, "table index {n} out of range");
        match &self.values {
            TableValues::Int(v) => v[n] as f64,
            TableValues::Real(v) => v[n],
        }
    }

    /// Integer value at `n` for the integer-valued kinds.
    pub fn int_value(&self, n: usize) -> Option<i64> {
        assert!(n <= self.limit, "table index {n} out of range");
        match &self.values {
            TableValues::Int(v) => Some(v[n] as i64),
            TableValues::Real(_) => None,
        }
    }

    pub fn is_integer_kind(&self) -> bool {
        matches!(self.values, TableValues::Int(_))
    }

    /// Copy of the value range 0..=limit as f64.
    pub fn values_f64(&self) -> Vec<f64> {
        (0..=self.limit).map(|n| self.value(n)).collect()
    }
}

/// Möbius function table: µ(1) = 1; 0 on non-squarefree n; otherwise
/// (-1)^(number of prime factors).
pub fn mobius_table(sieve: &FactorSieve) -> ArithFnTable {
    let limit = sieve.limit();
    let mut mu = vec![0i8; limit + 1];
    mu[1] = 1;
    for n in 2..=limit {
        let p = sieve.spf[n] as usize;
        let m = n / p;
        mu[n] = if m % p == 0 { 0 } else { -mu[m] };
    }
    ArithFnTable {
        kind: ArithKind::Mobius,
        limit,
        values: TableValues::Int(mu),
    }
}

/// Von Mangoldt function table: Λ(n) = log p when n = p^j, else 0.
pub fn von_mangoldt_table(sieve: &FactorSieve) -> ArithFnTable {
    let limit = sieve.limit();
    let mut values = vec![0.0f64; limit + 1];
    for n in 2..=limit {
        values[n] = sieve.von_mangoldt_value(n);
    }
    ArithFnTable {
        kind: ArithKind::VonMangoldt,
        limit,
        values: TableValues::Real(values),
    }
}

/// Prime indicator table: 1 at primes, 0 elsewhere.
pub fn prime_indicator_table(sieve: &FactorSieve) -> ArithFnTable {
    let limit = sieve.limit();
    let mut values = vec![0i8; limit + 1];
    for n in 2..=limit {
        if sieve.is_prime(n) {
            values[n] = 1;
        }
    }
    ArithFnTable {
        kind: ArithKind::PrimeIndicator,
        limit,
        values: TableValues::Int(values),
    }
}

/// Generalized von Mangoldt table Λ_k(n) = Σ_{d|n} µ(d) (log(n/d))^k.
///
/// Only squarefree divisors built from the distinct primes of n contribute,
/// so the sum runs over prime subsets with a parity sign. Entries with more
/// than k distinct prime factors vanish identically and are stored as exact
/// zeros. Each term is an f64 log of an exact integer; terms are combined
/// with compensated summation.
pub fn lambda_k_table(sieve: &FactorSieve, k: u32) -> Result<ArithFnTable> {
    if k < 1 {
        return Err(Error::Hypothesis("lambda_k requires k >= 1".into()));
    }
    let limit = sieve.limit();
    let mut values = vec![0.0f64; limit + 1];
    let mut primes: Vec<usize> = Vec::new();
    for n in 2..=limit {
        primes.clear();
        let mut m = n;
        while m > 1 {
            let p = sieve.spf[m] as usize;
            primes.push(p);
            while m % p == 0 {
                m /= p;
            }
        }
        let t = primes.len() as u32;
        if t > k {
            continue;
        }
        let mut acc = KahanSum::new();
        for mask in 0u32..(1 << t) {
            let mut d = 1usize;
            for (i, &p) in primes.iter().enumerate() {
                if mask & (1 << i) != 0 {
                    d *= p;
                }
            }
            let term = ((n / d) as f64).ln().powi(k as i32);
            if mask.count_ones() % 2 == 0 {
                acc.add(term);
            } else {
                acc.add(-term);
            }
        }
        values[n] = acc.value();
    }
    Ok(ArithFnTable {
        kind: ArithKind::LambdaK(k),
        limit,
        values: TableValues::Real(values),
    })
}

/// Cumulative prime counts π(x) and Chebyshev ψ(x) = Σ_{n<=x} Λ(n) for
/// x up to the sieve limit. ψ uses compensated summation in a fixed order.
#[derive(Debug, Clone)]
pub struct PrimeSummaryTable {
    limit: usize,
    pi: Vec<u32>,
    psi: Vec<f64>,
}

impl PrimeSummaryTable {
    pub fn limit(&self) -> usize {
        self.limit
    }

    pub fn pi(&self, x: usize) -> u32 {
        assert!(x <= self.limit, "pi index {x} out of range");
        self.pi[x]
    }

    pub fn psi(&self, x: usize) -> f64 {
        assert!(x <= self.limit, "psi index {x} out of range");
        self.psi[x]
    }
}

/// Build π and ψ tables from a sieve. Allocates 12 bytes per entry; size the
/// sieve for the summary range you need.
pub fn prime_summaries(sieve: &FactorSieve) -> PrimeSummaryTable {
    let limit = sieve.limit();
    let mut pi = vec![0u32; limit + 1];
    let mut psi = vec![0.0f64; limit + 1];
    let mut count = 0u32;
    let mut acc = KahanSum::new();
    for n in 2..=limit {
        if sieve.is_prime(n) {
            count += 1;
        }
        pi[n] = count;
        acc.add(sieve.von_mangoldt_value(n));
        psi[n] = acc.value();
    }
    PrimeSummaryTable { limit, pi, psi }
}
