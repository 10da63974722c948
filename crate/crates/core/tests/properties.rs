use std::time::Duration;

use borsuk_core::bitset::BitSet;
use borsuk_core::hypercube::{
    build_m, dist_sq, dot, embed_f, is_in_m, quad_dist_sq, quad_dot, SignVertex,
};
use borsuk_core::mis::{max_independent_set, Budget};
use borsuk_core::ortho::{build_graph, observation_check, verify_ortho_free};
use borsuk_core::polynomials::{g_eval, independence_rank, reduce_fa};
use proptest::prelude::*;

fn vertex(max_n: usize) -> impl Strategy<Value = (SignVertex, SignVertex)> {
    (1..=max_n).prop_flat_map(|n| {
        let mask = if n == 128 { u128::MAX } else { (1u128 << n) - 1 };
        (any::<u128>(), any::<u128>()).prop_map(move |(a, b)| {
            (
                SignVertex::new(n, a & mask).unwrap(),
                SignVertex::new(n, b & mask).unwrap(),
            )
        })
    })
}

/// Random member of `M` for `n = 4p` without materializing the set.
fn member(n: usize, raw: u128) -> SignVertex {
    let mut mask = (raw << 1) & ((1u128 << n) - 1);
    if mask.count_ones() % 2 == 1 {
        mask ^= 0b10;
    }
    SignVertex::new(n, mask).unwrap()
}

proptest! {
    #[test]
    fn dot_matches_coordinates((x, y) in vertex(128)) {
        let coords: i64 = x.signs().iter().zip(y.signs()).map(|(&a, b)| i64::from(a * b)).sum();
        prop_assert_eq!(dot(&x, &y).unwrap(), coords);
        prop_assert_eq!(dot(&y, &x).unwrap(), coords);
        let n = x.dim() as i64;
        prop_assert_eq!(dist_sq(&x, &y).unwrap(), 2 * n - 2 * coords);
        prop_assert_eq!(dist_sq(&x, &x.negated()).unwrap(), 4 * n);
    }

    #[test]
    fn embedding_identities_hold((x, y) in vertex(20)) {
        let (fx, fy) = (embed_f(&x), embed_f(&y));
        prop_assert!(fx.has_unit_diagonal() && fx.is_symmetric());
        prop_assert_eq!(&embed_f(&x.negated()), &fx);
        prop_assert_eq!(quad_dot(&x, &y).unwrap(), fx.dot(&fy).unwrap());
        prop_assert_eq!(quad_dist_sq(&x, &y).unwrap(), fx.dist_sq(&fy).unwrap());
        let n = x.dim() as i64;
        prop_assert_eq!(quad_dist_sq(&x, &y).unwrap() == 2 * n * n, dot(&x, &y).unwrap() == 0);
    }

    #[test]
    fn substitution_identity_p3(a in any::<u128>(), b in any::<u128>()) {
        let (a, b) = (member(12, a), member(12, b));
        let f = reduce_fa(&a, 3).unwrap();
        prop_assert_eq!(f.eval_at(&b), g_eval(dot(&a, &b).unwrap(), 3).unwrap());
    }

    #[test]
    fn substitution_identity_p5(a in any::<u128>(), b in any::<u128>()) {
        let (a, b) = (member(20, a), member(20, b));
        prop_assert!(is_in_m(&a) && is_in_m(&b));
        let f = reduce_fa(&a, 5).unwrap();
        prop_assert!(f.degree().unwrap() <= 4);
        prop_assert_eq!(f.eval_at(&b), g_eval(dot(&a, &b).unwrap(), 5).unwrap());
    }
}

/// Enumerates independent sets by plain include/exclude recursion.
fn exhaustive_mis(adj: &[BitSet]) -> usize {
    fn go(adj: &[BitSet], v: usize, chosen: &mut Vec<usize>) -> usize {
        if v == adj.len() {
            return chosen.len();
        }
        let skip = go(adj, v + 1, chosen);
        if chosen.iter().all(|&c| !adj[v].contains(c)) {
            chosen.push(v);
            let take = go(adj, v + 1, chosen);
            chosen.pop();
            skip.max(take)
        } else {
            skip
        }
    }
    go(adj, 0, &mut Vec::new())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn branch_and_bound_matches_enumeration_on_induced_subgraphs(
        keep in proptest::sample::subsequence((0..64usize).collect::<Vec<_>>(), 1..=20)
    ) {
        let g = build_graph(build_m(8).unwrap()).unwrap();
        let adj = g.induced_adjacency(&keep);
        let out = max_independent_set(&adj, Budget::time(Duration::from_secs(60)));
        prop_assert!(out.exhaustive);
        prop_assert_eq!(out.set.len(), exhaustive_mis(&adj));
        let picked: Vec<usize> = out.set.iter().map(|&k| keep[k]).collect();
        prop_assert!(verify_ortho_free(&g, &picked).unwrap());
    }

    #[test]
    fn observation_equivalence_on_random_colorings(
        colors in proptest::collection::vec(0usize..24, 64)
    ) {
        let g = build_graph(build_m(8).unwrap()).unwrap();
        for (free, below) in observation_check(&g, &colors).unwrap() {
            prop_assert_eq!(free, below);
        }
    }

    #[test]
    fn ortho_free_families_of_m12_are_independent(order in Just((0..1024usize).collect::<Vec<_>>()).prop_shuffle()) {
        let m = build_m(12).unwrap();
        let fam = borsuk_core::ortho::greedy_ortho_free(&m, order);
        let r = independence_rank(&fam, 3).unwrap();
        prop_assert!(r.independent);
        prop_assert_eq!(r.evaluation_rank, fam.len());
    }
}
