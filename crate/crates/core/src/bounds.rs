//! Exact threshold search: the least prime `p` for which `f(M)` with
//! `n = 4p` cannot be split into `n^2 + 1` parts of smaller diameter.
//!
//! Every verdict is decided with big integers. The Stirling values are
//! carried along for comparison only.

use std::f64::consts::PI;
use std::fmt::Write as _;

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::{One, Zero};
use serde::Serialize;

use crate::binomial::{binomial, pascal_row};
use crate::error::{Error, Result};
use crate::field::{is_prime, require_prime};
use crate::polynomials::alpha;

/// Primes above this bound are never scanned.
pub const PRIME_SCAN_LIMIT: u64 = 10_000;

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ThresholdReport {
    pub p: u64,
    pub n: u64,
    #[serde(with = "crate::decimal")]
    pub alpha_n: BigUint,
    #[serde(with = "crate::decimal")]
    pub m_size: BigUint,
    #[serde(with = "crate::decimal")]
    pub parts_needed: BigUint,
    #[serde(with = "crate::decimal")]
    pub borsuk_bound: BigUint,
    /// `(n/4) · C(n-1, n/4-1)`.
    #[serde(with = "crate::decimal")]
    pub middle_bound: BigUint,
    /// `alpha(n) < middle_bound`; vacuous (true) when `n/4 < 2`.
    pub alpha_below_middle: bool,
    pub counterexample: bool,
    /// Dimension of the ambient cube, `n^2`.
    pub borsuk_dimension: u64,
    /// Same figure in the `n(n-1)/2` off-diagonal coordinates; informational.
    pub reduced_dimension: u64,
    /// Stirling estimate of `log2(m_size / alpha_n)`; advisory.
    pub stirling_estimate: f64,
}

/// Stirling's `ln k!`, exact at `k = 0`.
fn ln_factorial(k: f64) -> f64 {
    if k == 0.0 {
        0.0
    } else {
        k * k.ln() - k + 0.5 * (2.0 * PI * k).ln()
    }
}

fn log2_binomial(n: u64, k: u64) -> f64 {
    let (n, k) = (n as f64, k as f64);
    (ln_factorial(n) - ln_factorial(k) - ln_factorial(n - k)) / std::f64::consts::LN_2
}

/// Stirling estimate of `log2(2^(n-2) / ((n/4) · C(n-1, n/4-1)))`.
///
/// Valid for `n ≡ 0 mod 4`, `n >= 8`; never used in a verdict.
pub fn stirling_estimate(n: u64) -> f64 {
    let q = n / 4;
    (n as f64 - 2.0) - ((q as f64).log2() + log2_binomial(n - 1, q - 1))
}

/// Stirling estimate of `log2(2^(n-2) / alpha(n))`, summing the
/// approximated binomials in log space.
pub fn stirling_log2_gap(n: u64) -> f64 {
    let q = n / 4;
    let logs: Vec<f64> = (0..q).map(|k| log2_binomial(n - 1, k)).collect();
    let top = logs.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    let sum: f64 = logs.iter().map(|l| (l - top).exp2()).sum();
    (n as f64 - 2.0) - (top + sum.log2())
}

pub fn check_threshold(p: u64) -> Result<ThresholdReport> {
    require_prime(p)?;
    let n = 4 * p;
    let q = p;
    let alpha_n = alpha(n as usize)?;
    let m_size = BigUint::one() << (n - 2);
    let borsuk_bound = BigUint::from(n * n + 1);
    let parts_needed = m_size.div_ceil(&alpha_n);
    let middle_bound = BigUint::from(q) * binomial(n - 1, q - 1);
    Ok(ThresholdReport {
        p,
        n,
        alpha_below_middle: q < 2 || alpha_n < middle_bound,
        counterexample: parts_needed > borsuk_bound,
        alpha_n,
        m_size,
        parts_needed,
        borsuk_bound,
        middle_bound,
        borsuk_dimension: n * n,
        reduced_dimension: n * (n - 1) / 2,
        stirling_estimate: stirling_log2_gap(n),
    })
}

/// Second, division-free route to the verdict: `alpha · (n^2+1) < 2^(n-2)`
/// holds iff the product fits in `n - 2` bits. `alpha` is rebuilt from a
/// Pascal row.
pub fn verdict_by_bit_length(p: u64) -> Result<bool> {
    require_prime(p)?;
    let n = 4 * p;
    let row = pascal_row(n - 1);
    let alpha_n: BigUint = row[..p as usize].iter().sum();
    let product = alpha_n * BigUint::from(n * n + 1);
    Ok(!product.is_zero() && product.bits() <= n - 2)
}

/// Reports for every prime in ascending order up to and including the
/// first counterexample.
pub fn threshold_scan() -> Result<Vec<ThresholdReport>> {
    let mut rows = Vec::new();
    for p in (2..=PRIME_SCAN_LIMIT).filter(|&p| is_prime(p)) {
        let report = check_threshold(p)?;
        let found = report.counterexample;
        rows.push(report);
        if found {
            return Ok(rows);
        }
    }
    Err(Error::ScanLimitExceeded(PRIME_SCAN_LIMIT))
}

pub fn find_min_counterexample() -> Result<ThresholdReport> {
    Ok(threshold_scan()?.pop().expect("scan returns at least one row"))
}

pub fn markdown_table(rows: &[ThresholdReport]) -> String {
    let mut out = String::from("| p | n | α(n) | 2^(n−2) | parts_needed | n²+1 | verdict |\n");
    out.push_str("|---|---|---|---|---|---|---|\n");
    for r in rows {
        let verdict = if r.counterexample { "counterexample" } else { "no" };
        let _ = writeln!(
            out,
            "| {} | {} | {} | {} | {} | {} | {} |",
            r.p, r.n, r.alpha_n, r.m_size, r.parts_needed, r.borsuk_bound, verdict
        );
    }
    out
}

pub fn csv_table(rows: &[ThresholdReport]) -> String {
    let mut out = String::from("p,n,alpha_n,m_size,parts_needed,borsuk_bound,counterexample\n");
    for r in rows {
        let _ = writeln!(
            out,
            "{},{},{},{},{},{},{}",
            r.p, r.n, r.alpha_n, r.m_size, r.parts_needed, r.borsuk_bound, r.counterexample
        );
    }
    out
}
