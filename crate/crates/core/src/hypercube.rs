//! Vertices of the ±1 hypercube, the set `M`, and the quadratic embedding.
//!
//! A vertex of `{±1}^n` is stored as a bitmask of its negative coordinates:
//! coordinate `i` (1-based) lives in bit `i - 1`. Inner products reduce to
//! `n - 2 * popcount(x ^ y)`, so every metric query is a handful of word ops.
//!
//! The embedding `f` sends `x` to the `n × n` table `(x_i x_j)`. Tables are
//! only materialized through [`embed_f`]; the metric of `f(M)` is answered
//! directly from sign vectors by [`quad_dot`] and [`quad_dist_sq`].

use std::collections::BTreeMap;
use std::fmt;

use crate::error::{Error, Result};

/// Largest dimension a [`SignVertex`] can carry.
pub const MAX_DIM: usize = 128;

/// Largest `n` for which [`build_m`] materializes the `2^(n-2)` members.
pub const MAX_BUILD_DIM: usize = 24;

#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SignVertex {
    n: usize,
    neg_mask: u128,
}

impl SignVertex {
    pub fn new(n: usize, neg_mask: u128) -> Result<Self> {
        if n == 0 || n > MAX_DIM {
            return Err(Error::DimensionOutOfRange { n, min: 1, max: MAX_DIM });
        }
        if neg_mask & !low_bits(n) != 0 {
            return Err(Error::MaskOutOfRange { mask: neg_mask, n });
        }
        Ok(Self { n, neg_mask })
    }

    /// The all-ones vertex.
    pub fn ones(n: usize) -> Result<Self> {
        Self::new(n, 0)
    }

    /// Builds a vertex from explicit coordinates; every entry must be `1` or `-1`.
    pub fn from_signs(signs: &[i8]) -> Result<Self> {
        let mut mask = 0u128;
        for (i, &s) in signs.iter().enumerate() {
            match s {
                1 => {}
                -1 if i < MAX_DIM => mask |= 1 << i,
                -1 => {}
                _ => {
                    return Err(Error::ParameterMismatch(format!(
                        "coordinate {} is {s}, expected ±1",
                        i + 1
                    )))
                }
            }
        }
        Self::new(signs.len(), mask)
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn neg_mask(&self) -> u128 {
        self.neg_mask
    }

    /// Number of `-1` coordinates.
    pub fn neg_count(&self) -> u32 {
        self.neg_mask.count_ones()
    }

    /// Coordinate `i` (1-based) as `±1`.
    pub fn coord(&self, i: usize) -> i8 {
        assert!((1..=self.n).contains(&i), "coordinate {i} out of 1..={}", self.n);
        if self.neg_mask >> (i - 1) & 1 == 1 {
            -1
        } else {
            1
        }
    }

    pub fn signs(&self) -> Vec<i8> {
        (1..=self.n).map(|i| self.coord(i)).collect()
    }

    /// The antipodal vertex `-x`.
    pub fn negated(&self) -> Self {
        Self {
            n: self.n,
            neg_mask: !self.neg_mask & low_bits(self.n),
        }
    }
}

impl fmt::Debug for SignVertex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "SignVertex(")?;
        for i in 1..=self.n {
            f.write_str(if self.coord(i) > 0 { "+" } else { "-" })?;
        }
        write!(f, ")")
    }
}

pub(crate) fn low_bits(n: usize) -> u128 {
    if n >= 128 {
        u128::MAX
    } else {
        (1u128 << n) - 1
    }
}

fn same_dim(x: &SignVertex, y: &SignVertex) -> Result<usize> {
    if x.n != y.n {
        return Err(Error::DimensionMismatch { left: x.n, right: y.n });
    }
    Ok(x.n)
}

/// Inner product with the dimension check already done.
#[inline]
pub(crate) fn dot_unchecked(n: usize, x: u128, y: u128) -> i64 {
    n as i64 - 2 * (x ^ y).count_ones() as i64
}

pub fn dot(x: &SignVertex, y: &SignVertex) -> Result<i64> {
    let n = same_dim(x, y)?;
    Ok(dot_unchecked(n, x.neg_mask, y.neg_mask))
}

/// Squared Euclidean distance, `2n - 2 x·y`.
pub fn dist_sq(x: &SignVertex, y: &SignVertex) -> Result<i64> {
    let n = same_dim(x, y)? as i64;
    Ok(2 * n - 2 * dot(x, y)?)
}

/// `f(x) · f(y) = (x·y)^2`.
pub fn quad_dot(x: &SignVertex, y: &SignVertex) -> Result<i64> {
    let d = dot(x, y)?;
    Ok(d * d)
}

/// Squared distance between `f(x)` and `f(y)`: `2n^2 - 2 (x·y)^2`.
///
/// The maximum `2n^2` is reached exactly when `x` and `y` are orthogonal.
pub fn quad_dist_sq(x: &SignVertex, y: &SignVertex) -> Result<i64> {
    let n = same_dim(x, y)? as i64;
    Ok(2 * n * n - 2 * quad_dot(x, y)?)
}

/// Materialized image `f(x) = (x_i x_j)`, stored row-major.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct QuadVertex {
    n: usize,
    entries: Vec<i8>,
}

impl QuadVertex {
    pub fn dim(&self) -> usize {
        self.n
    }

    /// Entry `z_ij` with 1-based indices.
    pub fn entry(&self, i: usize, j: usize) -> i8 {
        assert!((1..=self.n).contains(&i) && (1..=self.n).contains(&j));
        self.entries[(i - 1) * self.n + (j - 1)]
    }

    /// The table flattened to a point of `{±1}^(n^2)`.
    pub fn as_flat(&self) -> &[i8] {
        &self.entries
    }

    pub fn rows(&self) -> Vec<Vec<i8>> {
        self.entries.chunks(self.n).map(<[i8]>::to_vec).collect()
    }

    pub fn has_unit_diagonal(&self) -> bool {
        (1..=self.n).all(|i| self.entry(i, i) == 1)
    }

    pub fn is_symmetric(&self) -> bool {
        (1..=self.n).all(|i| (1..i).all(|j| self.entry(i, j) == self.entry(j, i)))
    }

    /// Entry-wise product sum.
    pub fn dot(&self, other: &QuadVertex) -> Result<i64> {
        if self.n != other.n {
            return Err(Error::DimensionMismatch { left: self.n, right: other.n });
        }
        Ok(self
            .entries
            .iter()
            .zip(&other.entries)
            .map(|(&a, &b)| i64::from(a) * i64::from(b))
            .sum())
    }

    /// Squared distance between the flattened tables.
    pub fn dist_sq(&self, other: &QuadVertex) -> Result<i64> {
        if self.n != other.n {
            return Err(Error::DimensionMismatch { left: self.n, right: other.n });
        }
        Ok(self
            .entries
            .iter()
            .zip(&other.entries)
            .map(|(&a, &b)| {
                let d = i64::from(a) - i64::from(b);
                d * d
            })
            .sum())
    }
}

impl fmt::Debug for QuadVertex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(self.rows()).finish()
    }
}

pub fn embed_f(x: &SignVertex) -> QuadVertex {
    let n = x.n;
    let signs = x.signs();
    let mut entries = Vec::with_capacity(n * n);
    for &xi in &signs {
        for &xj in &signs {
            entries.push(xi * xj);
        }
    }
    QuadVertex { n, entries }
}

/// The set `M`: vertices with `x_1 = +1` and an even number of `-1`s,
/// listed in ascending mask order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VertexSetM {
    n: usize,
    members: Vec<SignVertex>,
}

impl VertexSetM {
    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn members(&self) -> &[SignVertex] {
        &self.members
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn get(&self, index: usize) -> Option<&SignVertex> {
        self.members.get(index)
    }

    /// Position of the member with the given mask, if any.
    pub fn index_of(&self, neg_mask: u128) -> Option<usize> {
        self.members
            .binary_search_by_key(&neg_mask, SignVertex::neg_mask)
            .ok()
    }

    pub fn contains(&self, v: &SignVertex) -> bool {
        v.n == self.n && self.index_of(v.neg_mask).is_some()
    }

    pub fn iter(&self) -> std::slice::Iter<'_, SignVertex> {
        self.members.iter()
    }
}

impl<'a> IntoIterator for &'a VertexSetM {
    type Item = &'a SignVertex;
    type IntoIter = std::slice::Iter<'a, SignVertex>;

    fn into_iter(self) -> Self::IntoIter {
        self.members.iter()
    }
}

/// Membership test for `M` that does not need the set materialized.
pub fn is_in_m(v: &SignVertex) -> bool {
    v.neg_mask & 1 == 0 && v.neg_count() % 2 == 0
}

pub fn build_m(n: usize) -> Result<VertexSetM> {
    if n % 4 != 0 || n == 0 {
        return Err(Error::NotMultipleOfFour(n));
    }
    if n > MAX_BUILD_DIM {
        return Err(Error::DimensionOutOfRange { n, min: 4, max: MAX_BUILD_DIM });
    }
    // coordinates 2..n are the free bits; bit 0 (x_1) stays clear
    let members = (0u128..1 << (n - 1))
        .filter(|k| k.count_ones() % 2 == 0)
        .map(|k| SignVertex { n, neg_mask: k << 1 })
        .collect();
    Ok(VertexSetM { n, members })
}

/// Counts of `quad_dist_sq` over unordered pairs of distinct members.
pub fn quad_distance_histogram(m: &VertexSetM) -> BTreeMap<i64, u64> {
    let n = m.dim() as i64;
    let masks: Vec<u128> = m.iter().map(SignVertex::neg_mask).collect();
    let mut hist = BTreeMap::new();
    for (i, &a) in masks.iter().enumerate() {
        for &b in &masks[i + 1..] {
            let d = dot_unchecked(m.dim(), a, b);
            *hist.entry(2 * n * n - 2 * d * d).or_insert(0) += 1;
        }
    }
    hist
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(signs: &[i8]) -> SignVertex {
        SignVertex::from_signs(signs).unwrap()
    }

    fn all_vertices(n: usize) -> Vec<SignVertex> {
        (0..1u128 << n).map(|m| SignVertex::new(n, m).unwrap()).collect()
    }

    #[test]
    fn dot_examples() {
        let x = v(&[1, -1, 1, 1, -1]);
        assert_eq!(dot(&x, &x).unwrap(), 5);
        assert_eq!(dot(&v(&[1, -1, -1]), &v(&[-1, 1, 1])).unwrap(), -3);
        assert_eq!(dot(&v(&[1, 1, -1, -1]), &v(&[1, -1, 1, -1])).unwrap(), 0);
    }

    #[test]
    fn dimension_mismatch_is_an_error() {
        let a = SignVertex::ones(3).unwrap();
        let b = SignVertex::ones(4).unwrap();
        assert_eq!(dot(&a, &b), Err(Error::DimensionMismatch { left: 3, right: 4 }));
        assert!(dist_sq(&a, &b).is_err());
        assert!(quad_dot(&a, &b).is_err());
        assert!(quad_dist_sq(&a, &b).is_err());
    }

    #[test]
    fn constructor_rejects_bad_input() {
        assert!(SignVertex::new(0, 0).is_err());
        assert!(SignVertex::new(129, 0).is_err());
        assert!(SignVertex::new(3, 0b1000).is_err());
        assert!(SignVertex::from_signs(&[1, 0, -1]).is_err());
        assert!(SignVertex::new(128, u128::MAX).is_ok());
    }

    #[test]
    fn dist_sq_examples() {
        let x = v(&[1, -1, -1, 1, 1, -1]);
        assert_eq!(dist_sq(&x, &x).unwrap(), 0);
        assert_eq!(dist_sq(&x, &x.negated()).unwrap(), 24);
    }

    #[test]
    fn dist_sq_matches_coordinate_sum() {
        for n in 1..=8 {
            let verts = all_vertices(n);
            for x in &verts {
                for y in &verts {
                    let brute: i64 = x
                        .signs()
                        .iter()
                        .zip(y.signs())
                        .map(|(&a, b)| i64::from(a - b).pow(2))
                        .sum();
                    assert_eq!(dist_sq(x, y).unwrap(), brute);
                }
            }
        }
    }

    #[test]
    fn build_m_of_four() {
        let m = build_m(4).unwrap();
        // coords {2,3}, {2,4}, {3,4} are bits {1,2}, {1,3}, {2,3}
        let masks: Vec<u128> = m.iter().map(SignVertex::neg_mask).collect();
        assert_eq!(masks, vec![0b0000, 0b0110, 0b1010, 0b1100]);
    }

    #[test]
    fn build_m_sizes() {
        assert_eq!(build_m(8).unwrap().len(), 64);
        assert_eq!(build_m(12).unwrap().len(), 1024);
    }

    #[test]
    fn build_m_rejects_bad_n() {
        for n in [0, 2, 5, 6, 10] {
            let err = build_m(n).unwrap_err();
            assert_eq!(err, Error::NotMultipleOfFour(n));
            assert!(err.to_string().contains("construction requires n ≡ 0 mod 4"));
        }
        assert!(matches!(build_m(28), Err(Error::DimensionOutOfRange { .. })));
    }

    #[test]
    fn build_m_members_satisfy_invariants() {
        let m = build_m(12).unwrap();
        assert!(m.iter().all(|x| x.coord(1) == 1 && x.neg_count() % 2 == 0));
        assert!(m.members().windows(2).all(|w| w[0].neg_mask() < w[1].neg_mask()));
        assert!(m.iter().all(is_in_m));
    }

    #[test]
    fn dots_in_m12_divisible_by_four() {
        let m = build_m(12).unwrap();
        for x in &m {
            for y in &m {
                assert_eq!(dot(x, y).unwrap() % 4, 0);
            }
        }
    }

    #[test]
    fn embed_f_example() {
        let q = embed_f(&v(&[1, -1, -1]));
        assert_eq!(q.rows(), vec![vec![1, -1, -1], vec![-1, 1, 1], vec![-1, 1, 1]]);
        assert_eq!(embed_f(&v(&[-1, 1, 1])), q);
    }

    #[test]
    fn embed_f_is_even_and_injective_on_m() {
        let m = build_m(8).unwrap();
        let mut seen = std::collections::HashSet::new();
        for x in &m {
            let q = embed_f(x);
            assert_eq!(embed_f(&x.negated()), q);
            assert!(q.has_unit_diagonal() && q.is_symmetric());
            assert!(seen.insert(q));
        }
    }

    #[test]
    fn quad_metrics_agree_with_tables() {
        let m = build_m(8).unwrap();
        let tables: Vec<QuadVertex> = m.iter().map(embed_f).collect();
        for (x, fx) in m.iter().zip(&tables) {
            for (y, fy) in m.iter().zip(&tables) {
                assert_eq!(quad_dot(x, y).unwrap(), fx.dot(fy).unwrap());
                assert_eq!(quad_dist_sq(x, y).unwrap(), fx.dist_sq(fy).unwrap());
                let d = dot(x, y).unwrap();
                assert_eq!(quad_dist_sq(x, y).unwrap() == 128, d == 0);
            }
        }
        let x = m.members()[5];
        assert_eq!(quad_dot(&x, &x).unwrap(), 64);
        assert_eq!(quad_dist_sq(&x, &x).unwrap(), 0);
    }

    #[test]
    fn histogram_n8() {
        let hist = quad_distance_histogram(&build_m(8).unwrap());
        assert_eq!(hist.values().sum::<u64>(), 64 * 63 / 2);
        assert_eq!(*hist.keys().last().unwrap(), 128);
        // 35 orthogonal partners per vertex
        assert_eq!(hist[&128], 64 * 35 / 2);
        assert_eq!(hist.keys().copied().collect::<Vec<_>>(), vec![96, 128]);
    }

    #[test]
    fn debug_format() {
        assert_eq!(format!("{:?}", v(&[1, -1, 1])), "SignVertex(+-+)");
    }
}
