//! Power-series evaluation Σ c_n z^n with certified truncation tails,
//! closed-form oracles, asymptotic envelopes, and ratio sweeps on dyadic
//! grids approaching z = 1 from below.

use crate::error::{Error, Result};
use crate::partitions::PartSet;
use crate::special::{gamma, KahanSum};
use std::sync::Arc;

/// Default cap on the number of series terms per evaluation.
pub const DEFAULT_TERM_CAP: usize = 200_000_000;

/// Growth certificate |c_n| <= C·(n+1)^r for all n the family covers.
/// The certified tail bound is only as good as this bound.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GrowthCertificate {
    pub big_c: f64,
    pub r: f64,
}

impl GrowthCertificate {
    pub fn new(big_c: f64, r: f64) -> Self {
        assert!(big_c > 0.0 && r >= 0.0, "certificate requires C > 0, r >= 0");
        Self { big_c, r }
    }

    /// Certificate from a table scan: C = 1.2 × max |c_n| / (n+1)^r over the
    /// scanned range, with 20% headroom for indices past the table.
    pub fn from_scan(r: f64, values: impl IntoIterator<Item = f64>) -> Self {
        let mut max_ratio = 0.0f64;
        for (n, v) in values.into_iter().enumerate() {
            let ratio = v.abs() / ((n + 1) as f64).powf(r);
            if ratio > max_ratio {
                max_ratio = ratio;
            }
        }
        Self::new((1.2 * max_ratio).max(f64::MIN_POSITIVE), r)
    }

    /// Certificate for families bounded by a power of a logarithm:
    /// (log n)^m <= C_δ · n^δ with C_δ = (m/(δe))^m, so a family with
    /// |c_n| <= n·(log n)^m gets r = 1 + δ. The constant is analytic, not
    /// scanned, so it holds for every n.
    pub fn log_power(m: u32, delta: f64) -> Self {
        assert!(delta > 0.0);
        let c = (m as f64 / (delta * std::f64::consts::E)).powi(m as i32);
        Self::new(c.max(1.0), 1.0 + delta)
    }

    /// Certified bound on Σ_{n>N} C(n+1)^r z^n: for N+1 > r/ln(1/z) the
    /// terms are dominated by a geometric series with ratio
    /// q = z·((N+2)/(N+1))^r < 1, giving C(N+2)^r z^(N+1) / (1-q).
    /// Returns infinity when the geometric domination does not yet apply.
    pub fn tail_bound(&self, z: f64, n: usize) -> f64 {
        let q = z * (((n + 2) as f64) / ((n + 1) as f64)).powf(self.r);
        if q >= 1.0 {
            return f64::INFINITY;
        }
        self.big_c * ((n + 2) as f64).powf(self.r) * z.powi(n as i32 + 1) / (1.0 - q)
    }
}

/// A coefficient family c_n with a verified growth certificate.
///
/// `coeff` must be defined for every n in start_index..=coverage; the
/// constructor scans that whole range and rejects any certificate violation.
#[derive(Clone)]
pub struct SeriesSpec {
    name: String,
    coeff: Arc<dyn Fn(usize) -> f64 + Send + Sync>,
    coverage: usize,
    certificate: GrowthCertificate,
    start_index: usize,
}

impl std::fmt::Debug for SeriesSpec {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("SeriesSpec")
            .field("name", &self.name)
            .field("coverage", &self.coverage)
            .field("certificate", &self.certificate)
            .field("start_index", &self.start_index)
            .finish()
    }
}

impl SeriesSpec {
    pub fn new(
        name: impl Into<String>,
        coeff: Arc<dyn Fn(usize) -> f64 + Send + Sync>,
        coverage: usize,
        certificate: GrowthCertificate,
        start_index: usize,
    ) -> Result<Self> {
        assert!(start_index <= 1, "start index must be 0 or 1");
        let spec = Self {
            name: name.into(),
            coeff,
            coverage,
            certificate,
            start_index,
        };
        for n in spec.start_index..=spec.coverage {
            let bound = certificate.big_c * ((n + 1) as f64).powf(certificate.r);
            let c = spec.coeff(n);
            if c.abs() > bound {
                return Err(Error::Domain(format!(
                    "growth certificate violated at n = {n}: |{c}| > {bound}"
                )));
            }
        }
        Ok(spec)
    }

    /// Family backed by a dense coefficient vector (index = n).
    pub fn from_values(
        name: impl Into<String>,
        values: Vec<f64>,
        certificate: GrowthCertificate,
        start_index: usize,
    ) -> Result<Self> {
        assert!(!values.is_empty());
        let coverage = values.len() - 1;
        Self::new(
            name,
            Arc::new(move |n| values[n]),
            coverage,
            certificate,
            start_index,
        )
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn coeff(&self, n: usize) -> f64 {
        (self.coeff)(n)
    }

    pub fn coverage(&self) -> usize {
        self.coverage
    }

    pub fn certificate(&self) -> GrowthCertificate {
        self.certificate
    }

    pub fn start_index(&self) -> usize {
        self.start_index
    }
}

/// Result of one certified evaluation.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EvalResult {
    pub value: f64,
    pub n_used: usize,
    pub tail_bound: f64,
}

fn check_z(z: f64) -> Result<()> {
    if !(z > 0.0 && z < 1.0) {
        return Err(Error::Domain(format!("z = {z} must lie in (0, 1)")));
    }
    Ok(())
}

/// Evaluate Σ c_n z^n under the default term cap.
pub fn eval_series(spec: &SeriesSpec, z: f64, rel_tol: f64) -> Result<EvalResult> {
    eval_series_with_cap(spec, z, rel_tol, DEFAULT_TERM_CAP)
}

/// Evaluate Σ c_n z^n, truncating at the first N where the certified tail
/// drops below rel_tol × |partial sum|. Summation is serial compensated in
/// index order, so identical inputs give bit-identical values.
pub fn eval_series_with_cap(
    spec: &SeriesSpec,
    z: f64,
    rel_tol: f64,
    term_cap: usize,
) -> Result<EvalResult> {
    check_z(z)?;
    if !(rel_tol > 1e-14 && rel_tol < 1e-2) {
        return Err(Error::Domain(format!(
            "rel_tol = {rel_tol} must lie in (1e-14, 1e-2)"
        )));
    }
    let cert = spec.certificate;
    let ln_inv_z = -z.ln();
    // Below n0 the geometric domination of the tail has not kicked in.
    let n0 = (cert.r / ln_inv_z).ceil() as usize;

    let mut acc = KahanSum::new();
    let mut zpow = z.powi(spec.start_index as i32);
    let mut n = spec.start_index;
    loop {
        if n > term_cap {
            return Err(Error::Capacity(format!(
                "series '{}' needs more than {term_cap} terms at z = {z}",
                spec.name
            )));
        }
        if n > spec.coverage {
            return Err(Error::Capacity(format!(
                "series '{}' needs term {n} at z = {z} but coefficients cover only 0..={}",
                spec.name, spec.coverage
            )));
        }
        acc.add(spec.coeff(n) * zpow);
        if n >= n0 {
            let tail = cert.tail_bound(z, n);
            let value = acc.value();
            if value != 0.0 && tail <= rel_tol * value.abs() {
                return Ok(EvalResult {
                    value,
                    n_used: n,
                    tail_bound: tail,
                });
            }
        }
        n += 1;
        if n % 4096 == 0 {
            // periodic refresh keeps the power of z from drifting
            zpow = z.powi(n as i32);
        } else {
            zpow *= z;
        }
    }
}

/// Smallest N (searched, not minimal to the term) whose certified tail is
/// at most rel_tol × partial_floor, where partial_floor is any lower bound
/// on the final |partial sum|. Sizes coefficient tables before evaluation.
pub fn required_truncation(
    cert: &GrowthCertificate,
    z: f64,
    rel_tol: f64,
    partial_floor: f64,
    cap: usize,
) -> Result<usize> {
    check_z(z)?;
    assert!(partial_floor > 0.0);
    let target = rel_tol * partial_floor;
    let ln_inv_z = -z.ln();
    let n0 = (cert.r / ln_inv_z).ceil() as usize;
    if cert.tail_bound(z, n0) <= target {
        return Ok(n0);
    }
    let mut lo = n0;
    let mut hi = (n0.max(16)).saturating_mul(2);
    loop {
        if hi > cap {
            if cert.tail_bound(z, cap) <= target {
                hi = cap;
                break;
            }
            return Err(Error::Capacity(format!(
                "certified tail cannot reach tolerance {rel_tol} within {cap} terms at z = {z}"
            )));
        }
        if cert.tail_bound(z, hi) <= target {
            break;
        }
        lo = hi;
        hi *= 2;
    }
    while lo + 1 < hi {
        let mid = lo + (hi - lo) / 2;
        if cert.tail_bound(z, mid) <= target {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    Ok(hi)
}

/// Classical generating-function oracle for p_H: Π_{h∈H} 1/(1 - z^h).
/// Independent of every series evaluation path.
pub fn product_oracle(set: &PartSet, z: f64) -> Result<f64> {
    check_z(z)?;
    let mut prod = 1.0;
    for &h in set.parts() {
        prod /= 1.0 - z.powi(h as i32);
    }
    Ok(prod)
}

/// Both sides of the finite summation-by-parts identity
/// Σ_{n<=N} c_n z^n = (1-z) Σ_{n<N} A(n) z^n + A(N) z^N,  A(n) = Σ_{j<=n} c_j.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SummationByParts {
    pub lhs: f64,
    pub rhs: f64,
    pub abs_diff: f64,
}

pub fn summation_by_parts_check(spec: &SeriesSpec, z: f64, n_max: usize) -> Result<SummationByParts> {
    check_z(z)?;
    if n_max > spec.coverage {
        return Err(Error::Capacity(format!(
            "summation-by-parts needs coverage {n_max}, have {}",
            spec.coverage
        )));
    }
    let mut lhs = KahanSum::new();
    let mut rhs_series = KahanSum::new();
    let mut prefix = KahanSum::new();
    let mut zpow = 1.0;
    for n in 0..=n_max {
        let c = if n < spec.start_index { 0.0 } else { spec.coeff(n) };
        lhs.add(c * zpow);
        prefix.add(c);
        if n < n_max {
            rhs_series.add(prefix.value() * zpow);
        }
        zpow *= z;
    }
    // zpow is now z^(n_max+1); recover z^n_max for the boundary term.
    let z_boundary = z.powi(n_max as i32);
    let rhs = (1.0 - z) * rhs_series.value() + prefix.value() * z_boundary;
    Ok(SummationByParts {
        lhs: lhs.value(),
        rhs,
        abs_diff: (lhs.value() - rhs).abs(),
    })
}

/// Exponent convention for the Abelian gamma envelope: `Classical` uses
/// (1-z)^(-ε); `Shifted` uses (1-z)^(-(ε+1)).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ExponentForm {
    Classical,
    Shifted,
}

/// Predicted growth envelopes E(z), positive and finite on (0, 1).
#[derive(Clone)]
pub enum Envelope {
    /// scale / (1-z)^exponent
    PowerLaw { scale: f64, exponent: f64 },
    /// (1-z)^-(k-1) · A(1/(1-z)) for a caller-supplied partial-sum model A.
    PartialSumGrowth {
        k: usize,
        partial_sum_model: Arc<dyn Fn(f64) -> f64 + Send + Sync>,
    },
    /// (1-z)^-k / log(1/(1-z))
    PowerOverLog { k: usize },
    /// (1-z)^-ε · log^m(1/(1-z))
    PowerTimesLogPow { epsilon: f64, log_power: u32 },
    /// scale · Γ(ε+1) · (1-z)^-e · f(1/(1-z)), e per the exponent form.
    AbelianGamma {
        scale: f64,
        epsilon: f64,
        slowly_varying: Arc<dyn Fn(f64) -> f64 + Send + Sync>,
        form: ExponentForm,
    },
}

impl std::fmt::Debug for Envelope {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Envelope::PowerLaw { scale, exponent } => f
                .debug_struct("PowerLaw")
                .field("scale", scale)
                .field("exponent", exponent)
                .finish(),
            Envelope::PartialSumGrowth { k, .. } => {
                f.debug_struct("PartialSumGrowth").field("k", k).finish()
            }
            Envelope::PowerOverLog { k } => {
                f.debug_struct("PowerOverLog").field("k", k).finish()
            }
            Envelope::PowerTimesLogPow { epsilon, log_power } => f
                .debug_struct("PowerTimesLogPow")
                .field("epsilon", epsilon)
                .field("log_power", log_power)
                .finish(),
            Envelope::AbelianGamma { scale, epsilon, form, .. } => f
                .debug_struct("AbelianGamma")
                .field("scale", scale)
                .field("epsilon", epsilon)
                .field("form", form)
                .finish(),
        }
    }
}

/// Evaluate an envelope at z ∈ (0, 1). Envelopes built from
/// log(1/(1-z)) reject arguments where that log is not positive.
pub fn envelope_value(env: &Envelope, z: f64) -> Result<f64> {
    check_z(z)?;
    let x = 1.0 / (1.0 - z);
    let log = x.ln();
    let needs_log = matches!(
        env,
        Envelope::PowerOverLog { .. } | Envelope::PowerTimesLogPow { .. }
    );
    if needs_log && log <= 0.0 {
        return Err(Error::Domain(format!(
            "log(1/(1-z)) = {log} must be positive at z = {z}"
        )));
    }
    let value = match env {
        Envelope::PowerLaw { scale, exponent } => scale * x.powf(*exponent),
        Envelope::PartialSumGrowth {
            k,
            partial_sum_model,
        } => x.powi(*k as i32 - 1) * partial_sum_model(x),
        Envelope::PowerOverLog { k } => x.powi(*k as i32) / log,
        Envelope::PowerTimesLogPow { epsilon, log_power } => {
            x.powf(*epsilon) * log.powi(*log_power as i32)
        }
        Envelope::AbelianGamma {
            scale,
            epsilon,
            slowly_varying,
            form,
        } => {
            let e = match form {
                ExponentForm::Classical => *epsilon,
                ExponentForm::Shifted => *epsilon + 1.0,
            };
            scale * gamma(*epsilon + 1.0) * x.powf(e) * slowly_varying(x)
        }
    };
    if !(value.is_finite() && value > 0.0) {
        return Err(Error::Domain(format!(
            "envelope not finite and positive at z = {z}: {value}"
        )));
    }
    Ok(value)
}

/// Evaluation grid in (0, 1), strictly increasing. The dyadic constructor
/// realizes z -> 1 from below as z_j = 1 - 2^(-j).
#[derive(Debug, Clone)]
pub struct EvalGrid {
    points: Vec<GridPoint>,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GridPoint {
    pub label: u32,
    pub z: f64,
}

impl EvalGrid {
    pub const DEFAULT_J_MIN: u32 = 4;
    pub const DEFAULT_J_MAX: u32 = 14;

    pub fn dyadic(j_min: u32, j_max: u32) -> Result<Self> {
        if j_min < 1 || j_min > j_max || j_max > 52 {
            return Err(Error::Domain(format!(
                "dyadic grid needs 1 <= j_min <= j_max <= 52, got [{j_min}, {j_max}]"
            )));
        }
        let points = (j_min..=j_max)
            .map(|j| GridPoint {
                label: j,
                z: 1.0 - 0.5f64.powi(j as i32),
            })
            .collect();
        Ok(Self { points })
    }

    pub fn from_points(zs: Vec<f64>) -> Result<Self> {
        if zs.is_empty() {
            return Err(Error::Domain("grid must be non-empty".into()));
        }
        for &z in &zs {
            check_z(z)?;
        }
        if zs.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::Domain("grid points must be strictly increasing".into()));
        }
        Ok(Self {
            points: zs
                .into_iter()
                .enumerate()
                .map(|(i, z)| GridPoint { label: i as u32, z })
                .collect(),
        })
    }

    pub fn points(&self) -> &[GridPoint] {
        &self.points
    }

    pub fn deepest(&self) -> GridPoint {
        *self.points.last().expect("grid is non-empty")
    }
}

/// One grid point of a ratio sweep.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RatioRow {
    pub label: u32,
    pub z: f64,
    pub n_used: usize,
    pub value: f64,
    pub envelope: f64,
    pub ratio: f64,
    pub tail_bound: f64,
}

/// Series-to-envelope ratios across a grid, with the plateau statistic
/// (min/max ratio over the last half of the grid).
#[derive(Debug, Clone)]
pub struct RatioReport {
    rows: Vec<RatioRow>,
}

impl RatioReport {
    pub fn rows(&self) -> &[RatioRow] {
        &self.rows
    }

    /// (min, max) of the ratio over rows in the last half of the grid.
    pub fn plateau(&self) -> (f64, f64) {
        let start = self.rows.len() / 2;
        let tail = &self.rows[start..];
        let min = tail.iter().map(|r| r.ratio).fold(f64::INFINITY, f64::min);
        let max = tail
            .iter()
            .map(|r| r.ratio)
            .fold(f64::NEG_INFINITY, f64::max);
        (min, max)
    }

    /// max/min plateau ratio; the desk-scale proxy for an O-bound.
    pub fn plateau_band(&self) -> f64 {
        let (min, max) = self.plateau();
        max / min
    }

    pub fn final_ratio(&self) -> f64 {
        self.rows.last().expect("report is non-empty").ratio
    }

    pub fn to_csv(&self) -> String {
        let mut out = String::from("j,z,N,value,envelope,ratio,tail_bound\n");
        for row in &self.rows {
            out.push_str(&format!(
                "{},{},{},{},{},{},{}\n",
                row.label,
                format_sig15(row.z),
                row.n_used,
                format_sig15(row.value),
                format_sig15(row.envelope),
                format_sig15(row.ratio),
                format_sig15(row.tail_bound),
            ));
        }
        out
    }
}

/// Sweep a series against an envelope across a grid under the default cap.
pub fn ratio_sweep(
    spec: &SeriesSpec,
    env: &Envelope,
    grid: &EvalGrid,
    rel_tol: f64,
) -> Result<RatioReport> {
    ratio_sweep_with_cap(spec, env, grid, rel_tol, DEFAULT_TERM_CAP)
}

pub fn ratio_sweep_with_cap(
    spec: &SeriesSpec,
    env: &Envelope,
    grid: &EvalGrid,
    rel_tol: f64,
    term_cap: usize,
) -> Result<RatioReport> {
    let mut rows = Vec::with_capacity(grid.points().len());
    for point in grid.points() {
        let eval = eval_series_with_cap(spec, point.z, rel_tol, term_cap).map_err(|e| match e {
            Error::Capacity(msg) => {
                Error::Capacity(format!("{msg} (grid point j = {})", point.label))
            }
            other => other,
        })?;
        let envelope = envelope_value(env, point.z)?;
        rows.push(RatioRow {
            label: point.label,
            z: point.z,
            n_used: eval.n_used,
            value: eval.value,
            envelope,
            ratio: eval.value / envelope,
            tail_bound: eval.tail_bound,
        });
    }
    Ok(RatioReport { rows })
}

/// Format with 15 significant digits, deterministically.
pub fn format_sig15(x: f64) -> String {
    format!("{x:.14e}")
}
