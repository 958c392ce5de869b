//! Exact rational Bernoulli numbers and polynomials, Faulhaber power sums,
//! and the exact main term for cumulative partition counts.
//!
//! Everything here is arbitrary-precision rational; there is no floating
//! path. The sign convention is B_1 = -1/2, matching the exponential
//! generating function t·e^(tx)/(e^t - 1).

use crate::error::{Error, Result};
use crate::partitions::PartSet;
use num::bigint::BigInt;
use num::rational::BigRational;
use num::{One, Signed, Zero};

/// Arbitrary-precision rational; always reduced with positive denominator.
pub type Rational = BigRational;

/// Binomial coefficient C(n, j) as an exact big integer.
pub fn binomial(n: u64, j: u64) -> BigInt {
    if j > n {
        return BigInt::zero();
    }
    let j = j.min(n - j);
    let mut num = BigInt::one();
    let mut den = BigInt::one();
    for i in 0..j {
        num *= n - i;
        den *= i + 1;
    }
    num / den
}

fn big_factorial(n: u64) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, i| acc * i)
}

/// Polynomial with exact rational coefficients, ascending degree.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RationalPoly {
    coeffs: Vec<Rational>,
}

impl RationalPoly {
    /// Build from ascending coefficients, trimming trailing zeros so the
    /// leading coefficient is nonzero unless the polynomial is zero.
    pub fn from_coeffs(mut coeffs: Vec<Rational>) -> Self {
        while coeffs.len() > 1 && coeffs.last().map_or(false, Zero::is_zero) {
            coeffs.pop();
        }
        if coeffs.is_empty() {
            coeffs.push(Rational::zero());
        }
        Self { coeffs }
    }

    pub fn zero() -> Self {
        Self {
            coeffs: vec![Rational::zero()],
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.len() == 1 && self.coeffs[0].is_zero()
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    /// Coefficient of x^j (zero beyond the degree).
    pub fn coeff(&self, j: usize) -> Rational {
        self.coeffs.get(j).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    /// Exact evaluation by Horner's rule.
    pub fn eval(&self, x: &Rational) -> Rational {
        let mut acc = Rational::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }
}

/// B_0..B_k_max by the recurrence Σ_{j<=k} C(k+1, j) B_j = 0 for k >= 1,
/// with B_0 = 1. Yields B_1 = -1/2.
pub fn bernoulli_numbers(k_max: usize) -> Vec<Rational> {
    let mut b: Vec<Rational> = Vec::with_capacity(k_max + 1);
    b.push(Rational::one());
    for k in 1..=k_max {
        let mut acc = Rational::zero();
        for (j, bj) in b.iter().enumerate() {
            acc += Rational::from_integer(binomial(k as u64 + 1, j as u64)) * bj;
        }
        b.push(-acc / Rational::from_integer(BigInt::from(k + 1)));
    }
    b
}

/// The k-th Bernoulli polynomial B_k(x) = Σ_j C(k, j) B_j x^(k-j), exact.
pub fn bernoulli_poly(k: usize) -> RationalPoly {
    let numbers = bernoulli_numbers(k);
    let mut coeffs = vec![Rational::zero(); k + 1];
    for (j, bj) in numbers.iter().enumerate() {
        // x^(k-j) term
        coeffs[k - j] = Rational::from_integer(binomial(k as u64, j as u64)) * bj;
    }
    RationalPoly::from_coeffs(coeffs)
}

/// Σ_{1<=m<=x} m^k as (B_{k+1}(x+1) - B_{k+1}(0)) / (k+1), exact and
/// integer-valued. Requires k >= 1 and x >= 1.
pub fn faulhaber_sum(k: u32, x: u64) -> Rational {
    assert!(k >= 1 && x >= 1, "faulhaber_sum requires k >= 1 and x >= 1");
    let poly = bernoulli_poly(k as usize + 1);
    let at_upper = poly.eval(&Rational::from_integer(BigInt::from(x + 1)));
    let at_zero = poly.coeff(0);
    (at_upper - at_zero) / Rational::from_integer(BigInt::from(k + 1))
}

/// Exact main term for the cumulative count Σ_{n<=x} p_H(n):
/// (1/Πh) · (1/Γ(k)) · (B_k(x+1) - B_k(0)) / k, for k = |H| >= 2 and
/// gcd(H) = 1.
pub fn cumulative_main_term(set: &PartSet, x: u64) -> Result<Rational> {
    let k = set.cardinality();
    if k < 2 {
        return Err(Error::Hypothesis(
            "cumulative main term requires |H| >= 2".into(),
        ));
    }
    set.require_coprime()?;
    let poly = bernoulli_poly(k);
    let diff = poly.eval(&Rational::from_integer(BigInt::from(x + 1))) - poly.coeff(0);
    let gamma_k = Rational::from_integer(big_factorial(k as u64 - 1));
    let prod = Rational::from_integer(BigInt::from(set.product()));
    Ok(diff / (gamma_k * prod * Rational::from_integer(BigInt::from(k as u64))))
}

/// Absolute value helper for rationals.
pub fn rational_abs(r: &Rational) -> Rational {
    r.abs()
}
