//! Full identity suite for one dimension, as run by `borsuk verify`.

use std::collections::HashSet;

use num_bigint::BigUint;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::hypercube::{
    build_m, dist_sq, dot, embed_f, quad_dist_sq, quad_dot, SignVertex, VertexSetM,
};
use crate::ortho::prime_of;
use crate::polynomials::{alpha, check_nondivisibility, first_divisible_pair, g_eval, monomial_basis, reduce_fa};

/// Largest `n` the pair scans are run for.
pub const MAX_VERIFY_DIM: usize = 12;

/// Random pairs drawn for the substitution identity when `M × M` is too
/// large to scan.
pub const SUBSTITUTION_SAMPLES: usize = 1000;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CheckResult {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct VerifyReport {
    pub n: usize,
    pub p: Option<u64>,
    pub seed: u64,
    pub checks: Vec<CheckResult>,
    pub all_passed: bool,
}

fn check(name: &str, passed: bool, detail: impl Into<String>) -> CheckResult {
    CheckResult { name: name.to_string(), passed, detail: detail.into() }
}

/// Every pair of `{±1}^n`: squared distance against the coordinate sum and
/// against `2n - 2 x·y`, and the dot product against its coordinate sum.
pub fn metric_identities(n: usize) -> Result<CheckResult> {
    let verts: Vec<SignVertex> = (0..1u128 << n)
        .map(|m| SignVertex::new(n, m))
        .collect::<Result<_>>()?;
    let signs: Vec<Vec<i8>> = verts.iter().map(SignVertex::signs).collect();
    let mut failures = 0u64;
    for (x, sx) in verts.iter().zip(&signs) {
        for (y, sy) in verts.iter().zip(&signs) {
            let mut coord_dot = 0i64;
            let mut coord_dist = 0i64;
            for (&a, &b) in sx.iter().zip(sy) {
                coord_dot += i64::from(a * b);
                coord_dist += i64::from(a - b).pow(2);
            }
            let d = dot(x, y)?;
            let ds = dist_sq(x, y)?;
            if d != coord_dot || ds != coord_dist || ds != 2 * n as i64 - 2 * d {
                failures += 1;
            }
        }
    }
    let pairs = verts.len() as u64 * verts.len() as u64;
    Ok(check(
        "metric_identities",
        failures == 0,
        format!("{pairs} ordered pairs of E_2^{n}, {failures} mismatches"),
    ))
}

/// Identities of `f` over all pairs of `M`, checked against materialized tables.
pub fn embedding_identities(m: &VertexSetM) -> Result<Vec<CheckResult>> {
    let n = m.dim() as i64;
    let tables: Vec<_> = m.iter().map(embed_f).collect();

    let even = m.iter().zip(&tables).all(|(x, fx)| embed_f(&x.negated()) == *fx);
    let distinct: HashSet<_> = tables.iter().collect();
    let injective = distinct.len() == tables.len();
    let shape = tables.iter().all(|t| t.has_unit_diagonal() && t.is_symmetric());

    let mut product_failures = 0u64;
    let mut distance_failures = 0u64;
    let mut max_iff_orthogonal = true;
    let mut max_seen = 0i64;
    for (x, fx) in m.iter().zip(&tables) {
        for (y, fy) in m.iter().zip(&tables) {
            let d = dot(x, y)?;
            if quad_dot(x, y)? != fx.dot(fy)? || fx.dot(fy)? != d * d {
                product_failures += 1;
            }
            let qd = quad_dist_sq(x, y)?;
            if qd != fx.dist_sq(fy)? {
                distance_failures += 1;
            }
            max_seen = max_seen.max(qd);
            if (qd == 2 * n * n) != (d == 0) || qd > 2 * n * n {
                max_iff_orthogonal = false;
            }
        }
    }

    Ok(vec![
        check("f_even", even, "f(x) = f(-x) for every x in M"),
        check("f_injective_on_M", injective, format!("{} distinct images of {} members", distinct.len(), m.len())),
        check("f_unit_diagonal_symmetric", shape, "z_ii = 1 and z_ij = z_ji"),
        check(
            "quad_dot_is_dot_squared",
            product_failures == 0,
            format!("{product_failures} mismatches over {} pairs", m.len() * m.len()),
        ),
        check(
            "quad_dist_sq_matches_tables",
            distance_failures == 0,
            format!("{distance_failures} mismatches"),
        ),
        check(
            "max_distance_iff_orthogonal",
            max_iff_orthogonal && max_seen == 2 * n * n,
            format!("max squared distance {max_seen}, 2n^2 = {}", 2 * n * n),
        ),
    ])
}

pub fn dots_divisible_by_four(m: &VertexSetM) -> Result<CheckResult> {
    let mut bad = 0u64;
    for x in m {
        for y in m {
            if dot(x, y)? % 4 != 0 {
                bad += 1;
            }
        }
    }
    Ok(check("dots_divisible_by_4", bad == 0, format!("{bad} pairs with x·y ≢ 0 mod 4")))
}

pub fn g_vanishing(p: u64) -> Result<CheckResult> {
    let mut bad = 0;
    for t in 0..6 * p as i64 {
        if (g_eval(t, p)? == 0) != (t % p as i64 != 0) {
            bad += 1;
        }
    }
    Ok(check(
        "g_vanishes_iff_not_multiple_of_p",
        bad == 0,
        format!("t in 0..{}, {bad} exceptions", 6 * p),
    ))
}

pub fn nondivisibility(m: &VertexSetM, p: u64) -> Result<CheckResult> {
    let passed = check_nondivisibility(m, p)?;
    let detail = match first_divisible_pair(m, p)? {
        Some((a, b, d)) => format!("masks {a} and {b} have a·b = {d}, divisible by {p}"),
        None => format!("no non-orthogonal pair has a·b divisible by {p}"),
    };
    Ok(check("nonorthogonal_dots_not_divisible_by_p", passed, detail))
}

/// `F̃_a(b) = G(a·b) mod p`: exhaustive when `|M|^2 <= 2^14`, otherwise
/// on [`SUBSTITUTION_SAMPLES`] seeded random pairs.
pub fn substitution_identity(m: &VertexSetM, p: u64, seed: u64) -> Result<CheckResult> {
    let polys = m.iter().map(|a| reduce_fa(a, p)).collect::<Result<Vec<_>>>()?;
    let mut bad = 0u64;
    let mut checked = 0u64;
    let mut test = |i: usize, j: usize| -> Result<()> {
        let b = &m.members()[j];
        if polys[i].eval_at(b) != g_eval(dot(&m.members()[i], b)?, p)? {
            bad += 1;
        }
        checked += 1;
        Ok(())
    };
    let mode = if m.len() * m.len() <= 1 << 14 {
        for i in 0..m.len() {
            for j in 0..m.len() {
                test(i, j)?;
            }
        }
        "exhaustive".to_string()
    } else {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        for _ in 0..SUBSTITUTION_SAMPLES {
            let i = rng.gen_range(0..m.len());
            let j = rng.gen_range(0..m.len());
            test(i, j)?;
        }
        format!("random, seed {seed}")
    };
    Ok(check(
        "substitution_identity",
        bad == 0,
        format!("{checked} pairs ({mode}), {bad} mismatches"),
    ))
}

pub fn alpha_count(n: usize, p: u64) -> Result<CheckResult> {
    let a = alpha(n)?;
    let basis = monomial_basis(n, p as usize - 1).len();
    let popcount = (0u64..1 << (n - 1))
        .filter(|m| (m.count_ones() as u64) < p)
        .count();
    let passed = a == BigUint::from(basis) && a == BigUint::from(popcount);
    Ok(check(
        "alpha_counts_monomials",
        passed,
        format!("alpha({n}) = {a}, basis size {basis}, popcount enumeration {popcount}"),
    ))
}

pub fn run_suite(n: usize, seed: u64) -> Result<VerifyReport> {
    if n == 0 || n % 4 != 0 {
        return Err(Error::NotMultipleOfFour(n));
    }
    if n > MAX_VERIFY_DIM {
        return Err(Error::DimensionOutOfRange { n, min: 4, max: MAX_VERIFY_DIM });
    }
    let m = build_m(n)?;
    let expected = 1usize << (n - 2);
    let mut checks = vec![
        check("m_size", m.len() == expected, format!("|M| = {}, 2^(n-2) = {expected}", m.len())),
        metric_identities(n)?,
    ];
    checks.extend(embedding_identities(&m)?);
    checks.push(dots_divisible_by_four(&m)?);

    let p = prime_of(n);
    if let Some(p) = p {
        checks.push(g_vanishing(p)?);
        checks.push(nondivisibility(&m, p)?);
        checks.push(substitution_identity(&m, p, seed)?);
        checks.push(alpha_count(n, p)?);
    }
    let all_passed = checks.iter().all(|c| c.passed);
    Ok(VerifyReport { n, p, seed, checks, all_passed })
}
