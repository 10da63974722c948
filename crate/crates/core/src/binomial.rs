//! Exact binomial coefficients, computed two independent ways.

use num_bigint::BigUint;
use num_traits::{One, Zero};

/// `C(n, k)` by the multiplicative formula; each partial product
/// `C(n, i)` is an integer, so the division is exact at every step.
pub fn binomial(n: u64, k: u64) -> BigUint {
    if k > n {
        return BigUint::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigUint::one();
    for i in 0..k {
        acc *= n - i;
        acc /= i + 1;
    }
    acc
}

/// Row `n` of Pascal's triangle, built by additions only.
pub fn pascal_row(n: u64) -> Vec<BigUint> {
    let mut row = vec![BigUint::one()];
    for _ in 0..n {
        let mut next = Vec::with_capacity(row.len() + 1);
        next.push(BigUint::one());
        next.extend(row.windows(2).map(|w| &w[0] + &w[1]));
        next.push(BigUint::one());
        row = next;
    }
    row
}
