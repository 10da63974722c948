//! Square-free polynomials over GF(p) and the linear-independence argument
//! behind the bound `|A| <= alpha(n)`.
//!
//! For `a` in `M` let `F_a(x_2..x_n) = G(a·x)` with `x_1 = 1` and
//! `G(t) = (t-1)(t-2)...(t-p+1)`. Folding `x_i^2 -> 1` leaves a square-free
//! polynomial of degree at most `p-1` whose value at any ±1 point `b` is
//! still `G(a·b)`. Those polynomials live in a space spanned by the
//! `alpha(n)` square-free monomials of degree `< p`, so an independent family
//! of them has at most `alpha(n)` members.
//!
//! Independence is checked over GF(p) rather than over the rationals. A
//! family independent mod p is independent over Q: clearing denominators
//! and dividing out common factors of p turns any rational dependency into
//! one that survives reduction mod p. The evaluation matrix
//! `E[a][b] = G(a·b) mod p` gives a second, constructive route: its rank
//! never exceeds the coefficient rank, and for an ortho-free family with
//! no `a·b` divisible by p it is diagonal with a nonzero diagonal.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigUint;
use num_traits::Zero;
use serde::Serialize;

use crate::binomial::binomial;
use crate::error::{Error, Result};
use crate::field::{rank_mod_p, require_prime, residue};
use crate::hypercube::{dot, dot_unchecked, is_in_m, SignVertex, VertexSetM};

/// Product of distinct variables `x_i`, `i >= 2`; bit `i - 1` marks `x_i`.
///
/// Ordered by degree, then by mask.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct Monomial(u128);

impl Monomial {
    pub const ONE: Monomial = Monomial(0);

    /// The variable `x_i`, `2 <= i <= 128`.
    pub fn var(i: usize) -> Self {
        assert!((2..=128).contains(&i), "variable index {i} out of range");
        Monomial(1 << (i - 1))
    }

    pub fn from_mask(mask: u128) -> Self {
        assert_eq!(mask & 1, 0, "x_1 is fixed to 1 and never appears");
        Monomial(mask)
    }

    pub fn mask(self) -> u128 {
        self.0
    }

    pub fn degree(self) -> u32 {
        self.0.count_ones()
    }

    /// Product with `x_i` after folding `x_i^2 = 1`.
    pub fn times_var(self, i: usize) -> Self {
        Monomial(self.0 ^ (1 << (i - 1)))
    }

    /// Value at a ±1 point.
    pub fn sign_at(self, b: &SignVertex) -> i8 {
        if (self.0 & b.neg_mask()).count_ones() % 2 == 0 {
            1
        } else {
            -1
        }
    }

    pub fn variables(self) -> impl Iterator<Item = usize> {
        (1..128).filter(move |bit| self.0 >> bit & 1 == 1).map(|bit| bit + 1)
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        (self.degree(), self.0).cmp(&(other.degree(), other.0))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0 == 0 {
            return f.write_str("1");
        }
        let names: Vec<String> = self.variables().map(|i| format!("x{i}")).collect();
        f.write_str(&names.join("*"))
    }
}

impl fmt::Debug for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Square-free monomials in `x_2..x_n` of degree at most `max_degree`,
/// in monomial order.
pub fn monomial_basis(n: usize, max_degree: usize) -> Vec<Monomial> {
    let vars = n.saturating_sub(1);
    let mut out = Vec::new();
    for d in 0..=max_degree.min(vars) {
        if d == 0 {
            out.push(Monomial::ONE);
            continue;
        }
        // Gosper's hack walks the d-subsets of `vars` bits in ascending order
        let limit: u128 = if vars == 128 { u128::MAX } else { 1u128 << vars };
        let mut c: u128 = (1u128 << d) - 1;
        while c < limit {
            out.push(Monomial(c << 1));
            let low = c & c.wrapping_neg();
            let ripple = c + low;
            c = (((ripple ^ c) >> 2) / low) | ripple;
            if ripple == 0 {
                break;
            }
        }
    }
    out
}

/// Polynomial in `x_2..x_n` with coefficients in GF(p), no zero coefficients stored.
#[derive(Clone, PartialEq, Eq)]
pub struct MultilinearPoly {
    p: u64,
    n: usize,
    coeffs: BTreeMap<Monomial, u64>,
}

impl MultilinearPoly {
    pub fn zero(p: u64, n: usize) -> Self {
        Self { p, n, coeffs: BTreeMap::new() }
    }

    pub fn constant(p: u64, n: usize, c: i64) -> Self {
        let mut poly = Self::zero(p, n);
        poly.add_term(Monomial::ONE, residue(c, p));
        poly
    }

    pub fn modulus(&self) -> u64 {
        self.p
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (Monomial, u64)> + '_ {
        self.coeffs.iter().map(|(&m, &c)| (m, c))
    }

    pub fn term_count(&self) -> usize {
        self.coeffs.len()
    }

    pub fn coefficient(&self, m: Monomial) -> u64 {
        self.coeffs.get(&m).copied().unwrap_or(0)
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<u32> {
        self.coeffs.keys().map(|m| m.degree()).max()
    }

    pub fn is_square_free(&self) -> bool {
        // folding is built into the representation; check the x_1 bit and range
        self.coeffs
            .keys()
            .all(|m| m.0 & 1 == 0 && m.0 >> self.n == 0)
    }

    fn add_term(&mut self, m: Monomial, c: u64) {
        let c = c % self.p;
        if c == 0 {
            return;
        }
        let entry = self.coeffs.entry(m).or_insert(0);
        *entry = (*entry + c) % self.p;
        if *entry == 0 {
            self.coeffs.remove(&m);
        }
    }

    /// Multiplies by `constant + Σ_i linear[i] x_i` (entries of `linear` are
    /// `(i, coefficient)` with `i >= 2`), folding squares as it goes.
    pub fn mul_linear(&self, constant: i64, linear: &[(usize, i64)]) -> Self {
        let mut out = Self::zero(self.p, self.n);
        let c0 = residue(constant, self.p);
        for (&m, &c) in &self.coeffs {
            out.add_term(m, c * c0 % self.p);
            for &(i, a) in linear {
                let ai = residue(a, self.p);
                out.add_term(m.times_var(i), c * ai % self.p);
            }
        }
        out
    }

    /// Value at the ±1 point `(b_2, ..., b_n)`; `b_1` is ignored.
    pub fn eval_at(&self, b: &SignVertex) -> u64 {
        let p = self.p;
        self.coeffs.iter().fold(0, |acc, (m, &c)| {
            let term = if m.sign_at(b) > 0 { c } else { p - c };
            (acc + term) % p
        })
    }

    /// Dense coefficient vector over `basis`. Panics if a term is missing from it.
    pub fn coefficient_vector(&self, basis: &[Monomial]) -> Vec<u64> {
        let mut row = vec![0; basis.len()];
        for (&m, &c) in &self.coeffs {
            let col = basis
                .binary_search(&m)
                .unwrap_or_else(|_| panic!("monomial {m} outside basis"));
            row[col] = c;
        }
        row
    }
}

impl fmt::Debug for MultilinearPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return write!(f, "0 (mod {})", self.p);
        }
        let terms: Vec<String> = self.coeffs.iter().map(|(m, c)| format!("{c}·{m}")).collect();
        write!(f, "{} (mod {})", terms.join(" + "), self.p)
    }
}

/// `G(t) = Π_{j=1}^{p-1} (t - j) mod p`.
pub fn g_eval(t: i64, p: u64) -> Result<u64> {
    require_prime(p)?;
    Ok(g_eval_unchecked(t, p))
}

fn g_eval_unchecked(t: i64, p: u64) -> u64 {
    let t = residue(t, p);
    (1..p).fold(1 % p, |acc, j| {
        let factor = (t + p - j) % p;
        (u128::from(acc) * u128::from(factor) % u128::from(p)) as u64
    })
}

fn check_family_member(a: &SignVertex, p: u64) -> Result<()> {
    let n = a.dim();
    if n as u64 != 4 * p {
        return Err(Error::ParameterMismatch(format!("vertex has n = {n}, expected 4p = {}", 4 * p)));
    }
    if !is_in_m(a) {
        return Err(Error::NotInM(a.neg_mask()));
    }
    Ok(())
}

/// The reduced polynomial `F̃_a`, by a left fold over the `p - 1` linear
/// factors `(a·x - j)`.
pub fn reduce_fa(a: &SignVertex, p: u64) -> Result<MultilinearPoly> {
    require_prime(p)?;
    check_family_member(a, p)?;
    let n = a.dim();
    // a·x = a_1 + Σ_{i>=2} a_i x_i with a_1 = 1
    let linear: Vec<(usize, i64)> = (2..=n).map(|i| (i, i64::from(a.coord(i)))).collect();
    let mut poly = MultilinearPoly::constant(p, n, 1);
    for j in 1..p as i64 {
        poly = poly.mul_linear(1 - j, &linear);
    }
    Ok(poly)
}

/// `alpha(n) = Σ_{k=0}^{n/4-1} C(n-1, k)`.
pub fn alpha(n: usize) -> Result<BigUint> {
    if n == 0 || n % 4 != 0 {
        return Err(Error::NotMultipleOfFour(n));
    }
    let top = n as u64 - 1;
    Ok((0..(n / 4) as u64).map(|k| binomial(top, k)).fold(BigUint::zero(), |acc, c| acc + c))
}

fn require_dim(m: &VertexSetM, p: u64) -> Result<()> {
    require_prime(p)?;
    if m.dim() as u64 != 4 * p {
        return Err(Error::ParameterMismatch(format!(
            "M has n = {}, expected 4p = {}",
            m.dim(),
            4 * p
        )));
    }
    Ok(())
}

/// First distinct non-orthogonal pair of `M` whose dot product is divisible
/// by `p`, if any: `(mask_a, mask_b, a·b)`.
pub fn first_divisible_pair(m: &VertexSetM, p: u64) -> Result<Option<(u128, u128, i64)>> {
    require_dim(m, p)?;
    let n = m.dim();
    let masks: Vec<u128> = m.iter().map(SignVertex::neg_mask).collect();
    for (i, &a) in masks.iter().enumerate() {
        for &b in &masks[i + 1..] {
            let d = dot_unchecked(n, a, b);
            if d != 0 && d.rem_euclid(p as i64) == 0 {
                return Ok(Some((a, b, d)));
            }
        }
    }
    Ok(None)
}

/// True iff no two distinct, non-orthogonal members of `M` have a dot
/// product divisible by `p`.
///
/// For odd p this follows from `a·b ≡ 0 (mod 4)` and `|a·b| < 4p`, which
/// leave no room for `±p, ±2p, ±3p`; that reason is checked pair by pair as
/// well. For `p = 2` the verdict is the direct scan alone.
pub fn check_nondivisibility(m: &VertexSetM, p: u64) -> Result<bool> {
    if first_divisible_pair(m, p)?.is_some() {
        return Ok(false);
    }
    if p % 2 == 1 {
        let n = m.dim() as i64;
        let masks: Vec<u128> = m.iter().map(SignVertex::neg_mask).collect();
        for (i, &a) in masks.iter().enumerate() {
            for &b in &masks[i + 1..] {
                let d = dot_unchecked(m.dim(), a, b);
                if d % 4 != 0 || d.abs() >= n {
                    return Ok(false);
                }
            }
        }
    }
    Ok(true)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct RankReport {
    pub family_size: usize,
    pub coefficient_rank: usize,
    pub evaluation_rank: usize,
    pub independent: bool,
}

/// `E[a][b] = G(a·b) mod p`. No hypothesis on the family.
pub fn evaluation_matrix(family: &[SignVertex], p: u64) -> Result<Vec<Vec<u64>>> {
    require_prime(p)?;
    family
        .iter()
        .map(|a| {
            family
                .iter()
                .map(|b| Ok(g_eval_unchecked(dot(a, b)?, p)))
                .collect()
        })
        .collect()
}

/// True iff `matrix` is square with nonzero diagonal and zero off-diagonal.
pub fn is_nonzero_diagonal(matrix: &[Vec<u64>]) -> bool {
    matrix.iter().enumerate().all(|(i, row)| {
        row.len() == matrix.len()
            && row.iter().enumerate().all(|(j, &x)| (i == j) == (x != 0))
    })
}

/// Columns (monomials of degree `< p`) and one row of `F̃_a` coefficients
/// per family member, in the given member order.
pub fn coefficient_matrix(family: &[SignVertex], p: u64) -> Result<(Vec<Monomial>, Vec<Vec<u64>>)> {
    require_prime(p)?;
    let n = (4 * p) as usize;
    let basis = monomial_basis(n, (p - 1) as usize);
    let rows = family
        .iter()
        .map(|a| Ok(reduce_fa(a, p)?.coefficient_vector(&basis)))
        .collect::<Result<_>>()?;
    Ok((basis, rows))
}

fn check_family(family: &[SignVertex], p: u64) -> Result<()> {
    require_prime(p)?;
    let mut seen = std::collections::HashSet::new();
    for a in family {
        check_family_member(a, p)?;
        if !seen.insert(a.neg_mask()) {
            return Err(Error::Duplicate(a.neg_mask()));
        }
    }
    for (i, a) in family.iter().enumerate() {
        for b in &family[i + 1..] {
            if dot(a, b)? == 0 {
                return Err(Error::NotOrthoFree(a.neg_mask(), b.neg_mask()));
            }
        }
    }
    Ok(())
}

/// Ranks of the `F̃_a` family over GF(p) by coefficients and by evaluation.
///
/// The family must be duplicate-free, ortho-free, and drawn from `M` with `n = 4p`.
pub fn independence_rank(family: &[SignVertex], p: u64) -> Result<RankReport> {
    check_family(family, p)?;
    let (_, coeffs) = coefficient_matrix(family, p)?;
    let coefficient_rank = rank_mod_p(coeffs, p);
    let evaluation_rank = rank_mod_p(evaluation_matrix(family, p)?, p);
    Ok(RankReport {
        family_size: family.len(),
        coefficient_rank,
        evaluation_rank,
        independent: coefficient_rank == family.len(),
    })
}

/// An independent family of square-free polynomials of degree `< n/4`
/// cannot outnumber the monomial basis: `rank <= alpha(n)`.
pub fn dimension_bound_check(family_rank: usize, n: usize) -> Result<bool> {
    Ok(BigUint::from(family_rank) <= alpha(n)?)
}

/// CSV dump of the coefficient matrix: rows sorted by mask, one column per monomial.
pub fn coefficient_matrix_csv(family: &[SignVertex], p: u64) -> Result<String> {
    let mut sorted = family.to_vec();
    sorted.sort_by_key(SignVertex::neg_mask);
    let (basis, rows) = coefficient_matrix(&sorted, p)?;
    let mut out = String::from("neg_mask");
    for m in &basis {
        out.push(',');
        out.push_str(&m.to_string());
    }
    out.push('\n');
    for (a, row) in sorted.iter().zip(rows) {
        out.push_str(&a.neg_mask().to_string());
        for x in row {
            out.push(',');
            out.push_str(&x.to_string());
        }
        out.push('\n');
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hypercube::build_m;
    use crate::ortho::greedy_ortho_free;

    #[test]
    fn g_eval_examples() {
        assert_eq!(g_eval(4, 3).unwrap(), 0);
        assert_eq!(g_eval(3, 3).unwrap(), 2);
        assert_eq!(g_eval(1, 4), Err(Error::NotPrime(4)));
        assert_eq!(g_eval(1, 1), Err(Error::NotPrime(1)));
    }

    #[test]
    fn g_eval_vanishes_exactly_off_multiples_of_p() {
        for p in [2u64, 3, 5, 7] {
            for t in 0..6 * p as i64 {
                assert_eq!(g_eval(t, p).unwrap() == 0, t % p as i64 != 0, "p={p} t={t}");
            }
            // negative arguments too
            for t in -3 * p as i64..0 {
                assert_eq!(g_eval(t, p).unwrap() == 0, t % p as i64 != 0);
            }
        }
    }

    #[test]
    fn g_at_multiples_of_p_is_wilson() {
        for p in [2u64, 3, 5, 7, 11, 13] {
            assert_eq!(g_eval(0, p).unwrap(), p - 1);
        }
    }

    #[test]
    fn monomial_order_and_display() {
        let basis = monomial_basis(5, 2);
        let names: Vec<String> = basis.iter().map(ToString::to_string).collect();
        assert_eq!(
            names,
            ["1", "x2", "x3", "x4", "x5", "x2*x3", "x2*x4", "x3*x4", "x2*x5", "x3*x5", "x4*x5"]
        );
        assert!(basis.windows(2).all(|w| w[0] < w[1]));
        assert_eq!(Monomial::var(3).times_var(3), Monomial::ONE);
    }

    #[test]
    fn basis_size_counts_alpha() {
        for p in [2u64, 3, 5] {
            let n = 4 * p as usize;
            assert_eq!(BigUint::from(monomial_basis(n, p as usize - 1).len()), alpha(n).unwrap());
        }
        // full basis of 3 variables
        assert_eq!(monomial_basis(4, 10).len(), 8);
    }

    #[test]
    fn alpha_values() {
        assert_eq!(alpha(8).unwrap(), BigUint::from(8u32));
        assert_eq!(alpha(12).unwrap(), BigUint::from(67u32));
        assert_eq!(alpha(4).unwrap(), BigUint::from(1u32));
        assert_eq!(alpha(10), Err(Error::NotMultipleOfFour(10)));
    }

    #[test]
    fn alpha_matches_popcount_enumeration() {
        for n in [8usize, 12, 16] {
            let count = (0u32..1 << (n - 1))
                .filter(|m| (m.count_ones() as usize) < n / 4)
                .count();
            assert_eq!(BigUint::from(count), alpha(n).unwrap());
        }
    }

    #[test]
    fn p2_reduction_is_linear_and_sign_blind() {
        let m = build_m(8).unwrap();
        let expected: Vec<(Monomial, u64)> = (2..=8).map(|i| (Monomial::var(i), 1)).collect();
        for a in &m {
            let f = reduce_fa(a, 2).unwrap();
            // a·x - 1 = Σ_{i>=2} a_i x_i, and a_i ≡ 1 mod 2
            assert_eq!(f.terms().collect::<Vec<_>>(), expected);
            assert_eq!(f.degree(), Some(1));
        }
    }

    #[test]
    fn substitution_identity_p2_exhaustive() {
        let m = build_m(8).unwrap();
        for a in &m {
            let f = reduce_fa(a, 2).unwrap();
            for b in &m {
                assert_eq!(f.eval_at(b), g_eval(dot(a, b).unwrap(), 2).unwrap());
            }
        }
    }

    /// Expands `(a·x - 1)(a·x - 2)` with integer coefficients and exponent
    /// vectors, folding squares only at the end.
    fn naive_p3(a: &SignVertex) -> BTreeMap<Monomial, u64> {
        let n = a.dim();
        let mut lin: Vec<(Vec<u8>, i64)> = vec![(vec![0; n + 1], 1)]; // a_1 x_1 with x_1 = 1
        for i in 2..=n {
            let mut e = vec![0; n + 1];
            e[i] = 1;
            lin.push((e, i64::from(a.coord(i))));
        }
        let mut terms: Vec<(Vec<u8>, i64)> = Vec::new();
        for (ei, ci) in &lin {
            for (ej, cj) in &lin {
                terms.push((ei.iter().zip(ej).map(|(x, y)| x + y).collect(), ci * cj));
            }
        }
        for (e, c) in &lin {
            terms.push((e.clone(), -3 * c));
        }
        terms.push((vec![0; n + 1], 2));
        let mut out: BTreeMap<Monomial, i64> = BTreeMap::new();
        for (e, c) in terms {
            let mask = (2..=n).filter(|&i| e[i] % 2 == 1).fold(0u128, |m, i| m | 1 << (i - 1));
            *out.entry(Monomial(mask)).or_default() += c;
        }
        out.into_iter()
            .map(|(m, c)| (m, residue(c, 3)))
            .filter(|&(_, c)| c != 0)
            .collect()
    }

    #[test]
    fn p3_reduction_matches_naive_expansion() {
        let m = build_m(12).unwrap();
        for a in m.iter().step_by(37) {
            let f = reduce_fa(a, 3).unwrap();
            assert_eq!(f.terms().collect::<BTreeMap<_, _>>(), naive_p3(a));
            assert!(f.degree().unwrap() <= 2);
            assert!(f.is_square_free());
        }
    }

    #[test]
    fn reduce_fa_rejects_bad_parameters() {
        let a = SignVertex::ones(8).unwrap();
        assert!(matches!(reduce_fa(&a, 3), Err(Error::ParameterMismatch(_))));
        assert_eq!(reduce_fa(&a, 4), Err(Error::NotPrime(4)));
        let odd = SignVertex::new(8, 0b110).unwrap().negated();
        assert!(matches!(reduce_fa(&odd, 2), Err(Error::NotInM(_))));
    }

    #[test]
    fn nondivisibility() {
        let m12 = build_m(12).unwrap();
        assert!(check_nondivisibility(&m12, 3).unwrap());
        // at p = 2 the distinct non-orthogonal dots are ±4, both even
        let m8 = build_m(8).unwrap();
        assert!(!check_nondivisibility(&m8, 2).unwrap());
        let (a, b, d) = first_divisible_pair(&m8, 2).unwrap().unwrap();
        assert_eq!(d.abs(), 4);
        assert_ne!(a, b);
        assert!(matches!(check_nondivisibility(&m8, 3), Err(Error::ParameterMismatch(_))));
    }

    #[test]
    fn singleton_family_is_independent() {
        for p in [2u64, 3] {
            let a = SignVertex::ones(4 * p as usize).unwrap();
            let r = independence_rank(&[a], p).unwrap();
            assert_eq!(r, RankReport { family_size: 1, coefficient_rank: 1, evaluation_rank: 1, independent: true });
        }
    }

    #[test]
    fn greedy_families_p3_are_independent() {
        let m = build_m(12).unwrap();
        let fam = greedy_ortho_free(&m, 0..m.len());
        for k in 1..=fam.len() {
            let r = independence_rank(&fam[..k], 3).unwrap();
            assert_eq!((r.coefficient_rank, r.evaluation_rank), (k, k));
            assert!(r.independent);
            assert!(is_nonzero_diagonal(&evaluation_matrix(&fam[..k], 3).unwrap()));
            assert!(dimension_bound_check(k, 12).unwrap());
        }
    }

    #[test]
    fn greedy_families_p2_collapse_to_rank_one() {
        // every F̃_a is x_2 + ... + x_8 mod 2, so any two coincide
        let m = build_m(8).unwrap();
        let fam = greedy_ortho_free(&m, 0..m.len());
        assert!(fam.len() >= 2);
        let r = independence_rank(&fam, 2).unwrap();
        assert_eq!((r.coefficient_rank, r.evaluation_rank), (1, 1));
        assert!(!r.independent);
    }

    #[test]
    fn family_hypotheses_are_enforced() {
        let m = build_m(12).unwrap();
        let a = m.members()[0];
        let ortho = *m.iter().find(|b| dot(&a, b).unwrap() == 0).unwrap();
        assert!(matches!(independence_rank(&[a, ortho], 3), Err(Error::NotOrthoFree(..))));
        assert!(matches!(independence_rank(&[a, a], 3), Err(Error::Duplicate(_))));
        // diagnostic: G(0) = (p-1)! ≢ 0 shows up off the diagonal
        let e = evaluation_matrix(&[a, ortho], 3).unwrap();
        assert_eq!(e[0][1], 2);
        assert!(!is_nonzero_diagonal(&e));
    }

    #[test]
    fn dimension_bound_examples() {
        assert!(dimension_bound_check(8, 8).unwrap());
        assert!(!dimension_bound_check(9, 8).unwrap());
        assert!(dimension_bound_check(67, 12).unwrap());
        assert!(dimension_bound_check(1, 7).is_err());
    }

    #[test]
    fn csv_dump_layout() {
        let m = build_m(8).unwrap();
        let fam = vec![m.members()[3], m.members()[0]];
        let csv = coefficient_matrix_csv(&fam, 2).unwrap();
        let lines: Vec<&str> = csv.lines().collect();
        assert_eq!(lines[0], "neg_mask,1,x2,x3,x4,x5,x6,x7,x8");
        assert_eq!(lines[1], "0,0,1,1,1,1,1,1,1");
        assert!(lines[2].starts_with(&format!("{},", m.members()[3].neg_mask())));
        assert_eq!(lines.len(), 3);
    }
}
