//! Exact restricted partition counts p_H(n) and p_m(n), an independent
//! enumeration oracle, the leading asymptotic term, and partial-sum tables.

use crate::error::{Error, Result};
use crate::special::{factorial, KahanSum};

/// Default cap on count-table length (entries are 16 bytes each).
pub const DEFAULT_COUNT_CAP: usize = 50_000_000;

/// Enumeration guard for the brute-force oracle.
pub const BRUTE_FORCE_MAX_N: usize = 60;

/// A finite set H of distinct positive integers, sorted ascending.
///
/// Counting operations accept any such set; the asymptotic operations
/// additionally require gcd(H) = 1 and enforce it via [`PartSet::require_coprime`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PartSet {
    parts: Vec<u64>,
    prod: u128,
}

impl PartSet {
    /// Validate and normalize a part set: non-empty, all parts >= 1,
    /// no duplicates. Parts are sorted ascending.
    pub fn new(parts: impl Into<Vec<u64>>) -> Result<Self> {
        let mut parts = parts.into();
        if parts.is_empty() {
            return Err(Error::InvalidSet("part set must be non-empty".into()));
        }
        if parts.iter().any(|&h| h == 0) {
            return Err(Error::InvalidSet("parts must be positive".into()));
        }
        parts.sort_unstable();
        if parts.windows(2).any(|w| w[0] == w[1]) {
            return Err(Error::InvalidSet("parts must be distinct".into()));
        }
        let mut prod: u128 = 1;
        for &h in &parts {
            prod = prod
                .checked_mul(h as u128)
                .ok_or_else(|| Error::Overflow("part product exceeds 128 bits".into()))?;
        }
        Ok(Self { parts, prod })
    }

    pub fn parts(&self) -> &[u64] {
        &self.parts
    }

    /// Cardinality k = |H|.
    pub fn cardinality(&self) -> usize {
        self.parts.len()
    }

    /// Exact product of the parts.
    pub fn product(&self) -> u128 {
        self.prod
    }

    pub fn gcd(&self) -> u64 {
        self.parts.iter().copied().fold(0, num::integer::gcd)
    }

    pub fn is_coprime(&self) -> bool {
        self.gcd() == 1
    }

    /// Error unless gcd(H) = 1; the hypothesis for every asymptotic claim.
    pub fn require_coprime(&self) -> Result<()> {
        if self.is_coprime() {
            Ok(())
        } else {
            Err(Error::InvalidSet(format!(
                "gcd of parts is {}, asymptotic operations require gcd 1",
                self.gcd()
            )))
        }
    }
}

impl std::fmt::Display for PartSet {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{{")?;
        for (i, h) in self.parts.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{h}")?;
        }
        write!(f, "}}")
    }
}

/// What a count table counts.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CountSource {
    /// Partitions with parts drawn from a fixed set.
    Parts(PartSet),
    /// Partitions into at most m parts.
    MaxParts(u32),
}

/// Exact table of partition counts for 0..=limit. Counts are u128 and every
/// addition is checked; overflow raises, never wraps.
#[derive(Debug, Clone)]
pub struct CountTable {
    source: CountSource,
    counts: Vec<u128>,
}

impl CountTable {
    pub fn source(&self) -> &CountSource {
        &self.source
    }

    pub fn limit(&self) -> usize {
        self.counts.len() - 1
    }

    pub fn count(&self, n: usize) -> u128 {
        self.counts[n]
    }

    pub fn counts(&self) -> &[u128] {
        &self.counts
    }

    /// Count as f64; exact below 2^53, correctly rounded above.
    pub fn value_f64(&self, n: usize) -> f64 {
        self.counts[n] as f64
    }

    /// Counts converted to i128 for exact partial-sum work.
    pub fn counts_i128(&self) -> Result<Vec<i128>> {
        self.counts
            .iter()
            .map(|&c| {
                i128::try_from(c)
                    .map_err(|_| Error::Overflow("count exceeds i128 range".into()))
            })
            .collect()
    }
}

fn dp_table(parts: &[u64], limit: usize, source: CountSource, cap: usize) -> Result<CountTable> {
    if limit > cap {
        return Err(Error::Capacity(format!(
            "count table limit {limit} exceeds cap {cap}"
        )));
    }
    let mut counts = vec![0u128; limit + 1];
    counts[0] = 1;
    // Parts in the outer loop: order-independent multiset counting.
    for &h in parts {
        let h = h as usize;
        if h > limit {
            continue;
        }
        for n in h..=limit {
            let add = counts[n - h];
            counts[n] = counts[n]
                .checked_add(add)
                .ok_or_else(|| Error::Overflow(format!("count overflow at n = {n}")))?;
        }
    }
    Ok(CountTable { source, counts })
}

/// Exact table of p_H(n) for 0..=limit under the default cap.
///
/// Counting does not require gcd(H) = 1.
pub fn p_h_table(set: &PartSet, limit: usize) -> Result<CountTable> {
    p_h_table_with_cap(set, limit, DEFAULT_COUNT_CAP)
}

pub fn p_h_table_with_cap(set: &PartSet, limit: usize, cap: usize) -> Result<CountTable> {
    dp_table(set.parts(), limit, CountSource::Parts(set.clone()), cap)
}

/// Exact table of p_m(n), partitions of n into at most m parts, computed by
/// conjugation as partitions into parts from {1..m}.
pub fn p_m_table(m: u32, limit: usize) -> Result<CountTable> {
    p_m_table_with_cap(m, limit, DEFAULT_COUNT_CAP)
}

pub fn p_m_table_with_cap(m: u32, limit: usize, cap: usize) -> Result<CountTable> {
    if m < 1 {
        return Err(Error::Hypothesis("p_m requires m >= 1".into()));
    }
    let parts: Vec<u64> = (1..=m as u64).collect();
    dp_table(&parts, limit, CountSource::MaxParts(m), cap)
}

/// Count partitions of n with parts from the set by direct recursive
/// enumeration in non-increasing part order. Shares no code with the
/// dynamic-programming tables; guarded at n <= [`BRUTE_FORCE_MAX_N`].
pub fn brute_force_p_h(set: &PartSet, n: usize) -> Result<u128> {
    if n > BRUTE_FORCE_MAX_N {
        return Err(Error::Refusal(format!(
            "enumeration oracle capped at n <= {BRUTE_FORCE_MAX_N}, got {n}"
        )));
    }

    fn count(parts: &[u64], remaining: usize, max_idx: usize) -> u128 {
        if remaining == 0 {
            return 1;
        }
        let mut total = 0u128;
        for idx in 0..=max_idx {
            let h = parts[idx] as usize;
            if h <= remaining {
                total += count(parts, remaining - h, idx);
            }
        }
        total
    }

    let parts = set.parts();
    Ok(count(parts, n, parts.len() - 1))
}

/// Leading asymptotic term of p_H(n): n^(k-1) / (Γ(k) · Π h), valid under
/// gcd(H) = 1.
pub fn asymptotic_main_term(set: &PartSet, n: u64) -> Result<f64> {
    set.require_coprime()?;
    if n < 1 {
        return Err(Error::Domain("main term requires n >= 1".into()));
    }
    let k = set.cardinality() as u64;
    let power = (n as f64).powi(k as i32 - 1);
    Ok(power / (factorial(k - 1) * set.product() as f64))
}

/// Prefix sums A(x) = Σ_{n<=x} a_n b_n over 0..=limit.
#[derive(Debug, Clone, PartialEq)]
pub struct PartialSumTable<T> {
    sums: Vec<T>,
}

impl<T: Copy> PartialSumTable<T> {
    pub fn limit(&self) -> usize {
        self.sums.len() - 1
    }

    pub fn sum_at(&self, x: usize) -> T {
        self.sums[x]
    }

    pub fn sums(&self) -> &[T] {
        &self.sums
    }
}

/// Exact prefix sums of the element-wise product of two integer families
/// covering the same index range 0..=N.
pub fn partial_sums_exact(a: &[i128], b: &[i128]) -> Result<PartialSumTable<i128>> {
    if a.len() != b.len() || a.is_empty() {
        return Err(Error::Shape(format!(
            "coefficient families must cover the same range: {} vs {}",
            a.len(),
            b.len()
        )));
    }
    let mut sums = Vec::with_capacity(a.len());
    let mut acc: i128 = 0;
    for (&an, &bn) in a.iter().zip(b) {
        let term = an
            .checked_mul(bn)
            .ok_or_else(|| Error::Overflow("partial-sum term exceeds i128".into()))?;
        acc = acc
            .checked_add(term)
            .ok_or_else(|| Error::Overflow("partial sum exceeds i128".into()))?;
        sums.push(acc);
    }
    Ok(PartialSumTable { sums })
}

/// Prefix sums of the element-wise product of two real families, accumulated
/// with compensated summation in index order.
pub fn partial_sums_real(a: &[f64], b: &[f64]) -> Result<PartialSumTable<f64>> {
    if a.len() != b.len() || a.is_empty() {
        return Err(Error::Shape(format!(
            "coefficient families must cover the same range: {} vs {}",
            a.len(),
            b.len()
        )));
    }
    let mut sums = Vec::with_capacity(a.len());
    let mut acc = KahanSum::new();
    for (&an, &bn) in a.iter().zip(b) {
        acc.add(an * bn);
        sums.push(acc.value());
    }
    Ok(PartialSumTable { sums })
}
