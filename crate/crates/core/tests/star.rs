use std::collections::HashSet;

use nkstar::perm::{Perm, DEFAULT_ELEMENT_CAP};
use nkstar::star::{
    apply_automorphism, aut_product, brute_force_automorphism_count, is_edge_in_triangle, rank,
    six_cycles_through, unrank, AutPair, EdgeKind, StarGraph,
};
use proptest::prelude::*;

fn falling(n: usize, k: usize) -> u64 {
    (n - k + 1..=n).map(|x| x as u64).product()
}

fn factorial(n: usize) -> u128 {
    (1..=n as u128).product()
}

fn shuffled(n: usize, seed: &[usize], fixed_prefix: usize, upto: usize) -> Perm {
    let mut images: Vec<usize> = (1..=n).collect();
    let span = upto - fixed_prefix;
    if span > 1 {
        for (i, s) in seed.iter().enumerate() {
            images.swap(fixed_prefix + i % span, fixed_prefix + s % span);
        }
    }
    Perm::from_images(&images).unwrap()
}

fn pair(n: usize, k: usize, a: &[usize], b: &[usize]) -> AutPair {
    AutPair::new(shuffled(n, a, 0, n), shuffled(n, b, 1, k), k).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn rank_unrank_round_trip(n in 2usize..12, k_seed in 0usize..100, i_seed in 0u64..u64::MAX) {
        let k = 1 + k_seed % (n - 1);
        let i = i_seed % falling(n, k);
        let v = unrank(i, n, k).unwrap();
        prop_assert_eq!(rank(&v).unwrap(), i);
    }

    #[test]
    fn phi_is_a_homomorphism(
        n in 4usize..9,
        k_seed in 0usize..100,
        a in prop::collection::vec(0usize..100, 0..10),
        b in prop::collection::vec(0usize..100, 0..10),
        c in prop::collection::vec(0usize..100, 0..10),
        d in prop::collection::vec(0usize..100, 0..10),
        i_seed in 0u64..u64::MAX,
    ) {
        let k = 2 + k_seed % (n - 3);
        let (f, g) = (pair(n, k, &a, &b), pair(n, k, &c, &d));
        let v = unrank(i_seed % falling(n, k), n, k).unwrap();
        let lhs = apply_automorphism(&f.compose(&g).unwrap(), &v).unwrap();
        let rhs = apply_automorphism(&f, &apply_automorphism(&g, &v).unwrap()).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn automorphisms_preserve_edges_and_kinds(
        n in 4usize..8,
        k_seed in 0usize..100,
        a in prop::collection::vec(0usize..100, 0..10),
        b in prop::collection::vec(0usize..100, 0..10),
        i_seed in 0u64..u64::MAX,
    ) {
        let k = 2 + k_seed % (n - 3);
        let g = StarGraph::build(n, k).unwrap();
        let f = pair(n, k, &a, &b);
        let u = (i_seed % g.vertex_count()) as u32;
        let fu = g.index_of(&apply_automorphism(&f, &g.vertex(u)).unwrap()).unwrap();
        for (v, kind) in g.neighbors(u) {
            let fv = g.index_of(&apply_automorphism(&f, &g.vertex(v)).unwrap()).unwrap();
            prop_assert_eq!(g.kind_between(fu, fv), Some(kind));
        }
    }
}

#[test]
fn phi_injective_and_transitive_on_s5_3() {
    let aut = aut_product(5, 3, DEFAULT_ELEMENT_CAP).unwrap();
    let pairs = aut.pairs().unwrap();
    assert_eq!(pairs.len(), 240);
    let vertices: Vec<_> = (0..60).map(|i| unrank(i, 5, 3).unwrap()).collect();
    let maps: HashSet<Vec<_>> = pairs
        .iter()
        .map(|f| {
            vertices
                .iter()
                .map(|v| apply_automorphism(f, v).unwrap())
                .collect()
        })
        .collect();
    assert_eq!(maps.len(), 240);
    let base = &vertices[0];
    let orbit: HashSet<_> = pairs
        .iter()
        .map(|f| apply_automorphism(f, base).unwrap())
        .collect();
    assert_eq!(orbit.len(), 60);
}

/// The closed form needs n >= k + 2. S(n, n-1) is the star graph on S_n, with n!(n-1)!
/// automorphisms, and S(3,2) is a 6-cycle.
#[test]
fn brute_force_counts_match_closed_form() {
    for (n, k) in [(4, 1), (4, 2), (5, 2), (5, 3), (6, 2), (6, 3)] {
        let g = StarGraph::build(n, k).unwrap();
        let count = brute_force_automorphism_count(&g, 128).unwrap();
        assert_eq!(count, factorial(n) * factorial(k - 1), "S({n},{k})");
    }
}

#[test]
fn excluded_case_k_equals_n_minus_1() {
    for n in [3, 4] {
        let g = StarGraph::build(n, n - 1).unwrap();
        let count = brute_force_automorphism_count(&g, 128).unwrap();
        assert_eq!(count, factorial(n) * factorial(n - 1), "S({n},{})", n - 1);
    }
}

#[test]
fn triangles_exactly_on_residual_edges_for_all_small_graphs() {
    let mut graphs = 0;
    for n in 3..=10usize {
        for k in 1..=n - 2 {
            let edges = falling(n, k) * (n as u64 - 1) / 2;
            if edges > 10_000 {
                continue;
            }
            graphs += 1;
            let g = StarGraph::build(n, k).unwrap();
            assert_eq!(g.edge_count(), edges);
            for (u, v, kind) in g.edges() {
                let tri = is_edge_in_triangle(&g, u, v).unwrap();
                assert_eq!(tri, kind == EdgeKind::Residual, "S({n},{k}) {u}-{v}");
            }
        }
    }
    assert!(graphs > 20);
}

#[test]
fn six_cycles_by_pattern() {
    for (n, k) in [(5, 3), (6, 3)] {
        let g = StarGraph::build(n, k).unwrap();
        let (mut mixed, mut stars) = (0, 0);
        for v in 0..g.vertex_count() as u32 {
            let nb: Vec<_> = g.neighbors(v).collect();
            for &(u, ku) in &nb {
                for &(w, kw) in &nb {
                    if u == w {
                        continue;
                    }
                    match (ku, kw) {
                        (EdgeKind::Residual, EdgeKind::Residual) => {
                            assert!(six_cycles_through(&g, u, v, w).is_err());
                            continue;
                        }
                        (EdgeKind::Star, EdgeKind::Star) => stars += 1,
                        _ => mixed += 1,
                    }
                    let cycles = six_cycles_through(&g, u, v, w).unwrap();
                    assert_eq!(cycles.len(), 1, "S({n},{k}) {u}-{v}-{w}");
                    let c = cycles[0];
                    assert_eq!(c[..3], [u, v, w]);
                    let distinct: HashSet<u32> = c.iter().copied().collect();
                    assert_eq!(distinct.len(), 6);
                    for i in 0..6 {
                        assert!(g.kind_between(c[i], c[(i + 1) % 6]).is_some());
                    }
                }
            }
        }
        assert!(mixed > 0 && stars > 0);
    }
}
