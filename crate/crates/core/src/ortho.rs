//! Orthogonality graph on `M` and ortho-free subsets.
//!
//! A part of `f(M)` has squared diameter below `2n^2` exactly when its
//! preimage in `M` contains no orthogonal pair. Partitions of `f(M)` into
//! smaller-diameter parts are therefore colorings of this graph, and every
//! color class is an independent set.

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::One;

use crate::bitset::BitSet;
use crate::certificate::{Certificate, Claim};
use crate::error::{Error, Result};
use crate::field::is_prime;
use crate::hypercube::{dot_unchecked, quad_dist_sq, SignVertex, VertexSetM};
use crate::mis::{self, Budget};
use crate::polynomials::alpha;

/// Largest dimension for which the adjacency matrix is materialized.
pub const MAX_GRAPH_DIM: usize = 16;

#[derive(Clone, Debug)]
pub struct OrthoGraph {
    vertices: VertexSetM,
    adjacency: Vec<BitSet>,
}

impl OrthoGraph {
    pub fn dim(&self) -> usize {
        self.vertices.dim()
    }

    pub fn vertices(&self) -> &VertexSetM {
        &self.vertices
    }

    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    pub fn adjacency(&self) -> &[BitSet] {
        &self.adjacency
    }

    pub fn neighbors(&self, i: usize) -> &BitSet {
        &self.adjacency[i]
    }

    pub fn is_edge(&self, i: usize, j: usize) -> bool {
        self.adjacency[i].contains(j)
    }

    pub fn degree(&self, i: usize) -> usize {
        self.adjacency[i].count()
    }

    pub fn edge_count(&self) -> usize {
        self.adjacency.iter().map(BitSet::count).sum::<usize>() / 2
    }

    /// Induced subgraph on `keep` (indices into this graph, any order);
    /// vertex `k` of the result is `keep[k]`.
    pub fn induced_adjacency(&self, keep: &[usize]) -> Vec<BitSet> {
        keep.iter()
            .map(|&a| {
                let mut row = BitSet::new(keep.len());
                for (k, &b) in keep.iter().enumerate() {
                    if self.is_edge(a, b) {
                        row.insert(k);
                    }
                }
                row
            })
            .collect()
    }

    fn masks(&self, indices: &[usize]) -> Vec<u128> {
        let mut masks: Vec<u128> = indices
            .iter()
            .map(|&i| self.vertices.members()[i].neg_mask())
            .collect();
        masks.sort_unstable();
        masks
    }
}

pub fn build_graph(m: VertexSetM) -> Result<OrthoGraph> {
    let n = m.dim();
    if n > MAX_GRAPH_DIM {
        return Err(Error::DimensionOutOfRange { n, min: 4, max: MAX_GRAPH_DIM });
    }
    let len = m.len();
    let masks: Vec<u128> = m.iter().map(SignVertex::neg_mask).collect();
    let mut adjacency = vec![BitSet::new(len); len];
    for i in 0..len {
        for j in i + 1..len {
            if dot_unchecked(n, masks[i], masks[j]) == 0 {
                adjacency[i].insert(j);
                adjacency[j].insert(i);
            }
        }
    }
    Ok(OrthoGraph { vertices: m, adjacency })
}

/// True iff no two listed vertices are orthogonal.
pub fn verify_ortho_free(g: &OrthoGraph, subset: &[usize]) -> Result<bool> {
    let mut seen = BitSet::new(g.len());
    for &i in subset {
        if i >= g.len() {
            return Err(Error::IndexOutOfRange { index: i, len: g.len() });
        }
        if seen.contains(i) {
            return Err(Error::Duplicate(i as u128));
        }
        seen.insert(i);
    }
    Ok(subset.iter().all(|&i| !g.neighbors(i).intersects(&seen)))
}

/// Pairwise check on raw vertices; no graph needed.
pub fn is_ortho_free(vertices: &[SignVertex]) -> bool {
    vertices.iter().enumerate().all(|(i, a)| {
        vertices[i + 1..]
            .iter()
            .all(|b| a.dim() != b.dim() || dot_unchecked(a.dim(), a.neg_mask(), b.neg_mask()) != 0)
    })
}

/// `p` when `n = 4p` with `p` prime.
pub fn prime_of(n: usize) -> Option<u64> {
    if n % 4 != 0 {
        return None;
    }
    let p = (n / 4) as u64;
    is_prime(p).then_some(p)
}

/// Branch-and-bound search for a largest ortho-free subset.
///
/// The certificate is marked exhaustive only if the whole search tree was
/// explored; otherwise it carries the best subset found before the budget
/// ran out.
pub fn max_ortho_free(g: &OrthoGraph, budget: Budget) -> Certificate {
    let outcome = mis::max_independent_set(&g.adjacency, budget);
    Certificate::new(
        Claim::MaxOrthoFree,
        g.dim(),
        prime_of(g.dim()),
        g.masks(&outcome.set),
        BigUint::from(outcome.set.len()),
        outcome.exhaustive,
    )
}

/// Greedy ortho-free family scanning `order` (indices into `m`) and
/// keeping each vertex that is non-orthogonal to all kept so far.
pub fn greedy_ortho_free(m: &VertexSetM, order: impl IntoIterator<Item = usize>) -> Vec<SignVertex> {
    let n = m.dim();
    let mut kept: Vec<SignVertex> = Vec::new();
    for i in order {
        let v = m.members()[i];
        if kept
            .iter()
            .all(|k| dot_unchecked(n, k.neg_mask(), v.neg_mask()) != 0)
        {
            kept.push(v);
        }
    }
    kept
}

/// `ceil(2^(n-2) / alpha(n))` for `n = 4p`: every partition of `M` into
/// ortho-free parts has at least this many parts.
pub fn parts_lower_bound(n: usize) -> Result<BigUint> {
    if prime_of(n).is_none() {
        return Err(Error::NotFourTimesPrime(n));
    }
    let m_size = BigUint::one() << (n - 2);
    Ok(m_size.div_ceil(&alpha(n)?))
}

pub fn parts_lower_bound_certificate(n: usize) -> Result<Certificate> {
    Ok(Certificate::new(
        Claim::PartCountLowerBound,
        n,
        prime_of(n),
        Vec::new(),
        parts_lower_bound(n)?,
        true,
    ))
}

/// First-fit coloring in index order; each color class is ortho-free, so
/// the color count bounds the number of smaller-diameter parts from above.
pub fn greedy_coloring(g: &OrthoGraph) -> Vec<usize> {
    let mut colors: Vec<usize> = Vec::with_capacity(g.len());
    for i in 0..g.len() {
        let used: Vec<usize> = g
            .neighbors(i)
            .iter()
            .filter(|&j| j < i)
            .map(|j| colors[j])
            .collect();
        let c = (0..).find(|c| !used.contains(c)).expect("unbounded range");
        colors.push(c);
    }
    colors
}

pub fn color_count(coloring: &[usize]) -> usize {
    coloring.iter().max().map_or(0, |m| m + 1)
}

/// Groups vertex indices by color.
pub fn parts_of(coloring: &[usize]) -> Vec<Vec<usize>> {
    let mut parts = vec![Vec::new(); color_count(coloring)];
    for (i, &c) in coloring.iter().enumerate() {
        parts[c].push(i);
    }
    parts
}

/// Largest `quad_dist_sq` within a part, i.e. the squared diameter of its image under `f`.
pub fn image_sq_diameter(m: &VertexSetM, part: &[usize]) -> Result<i64> {
    let mut best = 0;
    for (k, &a) in part.iter().enumerate() {
        for &b in &part[k + 1..] {
            let d = quad_dist_sq(&m.members()[a], &m.members()[b])?;
            best = best.max(d);
        }
    }
    Ok(best)
}

/// Per-part comparison of the two sides of the orthogonality reduction:
/// `(ortho_free, image_diameter_below_max)` for each part of `coloring`.
pub fn observation_check(g: &OrthoGraph, coloring: &[usize]) -> Result<Vec<(bool, bool)>> {
    if coloring.len() != g.len() {
        return Err(Error::ParameterMismatch(format!(
            "coloring has {} entries for {} vertices",
            coloring.len(),
            g.len()
        )));
    }
    let n = g.dim() as i64;
    parts_of(coloring)
        .iter()
        .map(|part| {
            let free = verify_ortho_free(g, part)?;
            let below = image_sq_diameter(g.vertices(), part)? < 2 * n * n;
            Ok((free, below))
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hypercube::{build_m, dot};
    use std::time::Duration;

    fn graph(n: usize) -> OrthoGraph {
        build_graph(build_m(n).unwrap()).unwrap()
    }

    #[test]
    fn n4_graph_by_hand() {
        // members: ++++, +--+, +-+-, ++-- ; every pair differs in exactly two
        // coordinates, so every dot is 0 and the graph is K4
        let g = graph(4);
        let m = g.vertices();
        for i in 0..4 {
            for j in 0..4 {
                let d = dot(&m.members()[i], &m.members()[j]).unwrap();
                assert_eq!(g.is_edge(i, j), i != j && d == 0);
            }
        }
        assert_eq!(g.degree(0), 3);
        assert_eq!(g.edge_count(), 6);
    }

    #[test]
    fn adjacency_symmetric_and_irreflexive() {
        let g = graph(8);
        for i in 0..g.len() {
            assert!(!g.is_edge(i, i));
            for j in 0..g.len() {
                assert_eq!(g.is_edge(i, j), g.is_edge(j, i));
            }
        }
    }

    #[test]
    fn every_vertex_has_an_orthogonal_partner_at_n8() {
        let g = graph(8);
        assert!((0..g.len()).all(|i| g.degree(i) > 0));
        // x = all-ones is orthogonal to the C(7,4) members with four minus signs
        assert_eq!(g.degree(0), 35);
    }

    #[test]
    fn verify_ortho_free_cases() {
        let g = graph(8);
        assert!(verify_ortho_free(&g, &[]).unwrap());
        assert!((0..g.len()).all(|i| verify_ortho_free(&g, &[i]).unwrap()));
        let j = g.neighbors(0).first().unwrap();
        assert!(!verify_ortho_free(&g, &[0, j]).unwrap());
        assert_eq!(
            verify_ortho_free(&g, &[0, 64]),
            Err(Error::IndexOutOfRange { index: 64, len: 64 })
        );
        assert!(matches!(verify_ortho_free(&g, &[3, 3]), Err(Error::Duplicate(3))));
    }

    #[test]
    fn max_ortho_free_n4_matches_subset_enumeration() {
        let g = graph(4);
        let brute = (0u32..16)
            .filter(|s| {
                let idx: Vec<usize> = (0..4).filter(|i| s >> i & 1 == 1).collect();
                verify_ortho_free(&g, &idx).unwrap()
            })
            .map(u32::count_ones)
            .max()
            .unwrap();
        let cert = max_ortho_free(&g, Budget::time(Duration::from_secs(10)));
        assert!(cert.exhaustive);
        assert_eq!(cert.value, BigUint::from(brute));
        assert_eq!(brute, 1);
        assert_eq!(cert.p, None);
    }

    #[test]
    fn max_ortho_free_n8_is_bounded_by_alpha() {
        let g = graph(8);
        let cert = max_ortho_free(&g, Budget::time(Duration::from_secs(60)));
        assert!(cert.exhaustive);
        assert!(cert.value <= alpha(8).unwrap());
        // an explicit 8-element family exists: ++++++++ together with the
        // six sets {2,j} and {3,...,8}
        assert_eq!(cert.value, BigUint::from(8u32));
        assert_eq!(cert.subset.len(), 8);
        assert!(cert.recheck_subset().unwrap());
    }

    #[test]
    fn parts_lower_bound_values() {
        assert_eq!(parts_lower_bound(8).unwrap(), BigUint::from(8u32));
        assert_eq!(parts_lower_bound(12).unwrap(), BigUint::from(16u32));
        assert_eq!(parts_lower_bound(16), Err(Error::NotFourTimesPrime(16)));
        assert_eq!(parts_lower_bound(10), Err(Error::NotFourTimesPrime(10)));
    }

    #[test]
    fn greedy_coloring_classes_are_ortho_free() {
        let g = graph(8);
        let coloring = greedy_coloring(&g);
        let k = color_count(&coloring);
        assert!(k >= 8, "at least parts_lower_bound colors are needed");
        for part in parts_of(&coloring) {
            assert!(verify_ortho_free(&g, &part).unwrap());
        }
        for (free, below) in observation_check(&g, &coloring).unwrap() {
            assert!(free && below);
        }
    }

    #[test]
    fn observation_on_single_part() {
        let g = graph(8);
        let all = vec![0; g.len()];
        assert_eq!(observation_check(&g, &all).unwrap(), vec![(false, false)]);
        assert!(observation_check(&g, &[0, 1]).is_err());
    }

    #[test]
    fn greedy_family_is_ortho_free() {
        let m = build_m(12).unwrap();
        let fam = greedy_ortho_free(&m, 0..m.len());
        assert!(is_ortho_free(&fam));
        assert!(fam.len() > 1);
    }
}
