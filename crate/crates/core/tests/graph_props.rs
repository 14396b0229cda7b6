use std::collections::HashMap;

use num_bigint::BigUint;
use proptest::prelude::*;
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

use hurwitz_atlas::graph::{
    automorphism_count, catalog, extension_level_total, f_h_closed_form, simplify, simplify_in_order, MultiGraph,
    VertexKind,
};
use hurwitz_atlas::rational::{big, factorial};

fn multigraph(max_edges: usize) -> impl Strategy<Value = MultiGraph> {
    (0usize..=2, 1usize..=3).prop_flat_map(move |(numbered, anon)| {
        let nv = 1 + numbered + anon;
        prop::collection::vec((0..nv, 0..nv), 1..=max_edges).prop_map(move |edges| {
            let mut kinds = vec![VertexKind::Star];
            kinds.extend((1..=numbered as u32).map(VertexKind::Numbered));
            kinds.extend(std::iter::repeat_n(VertexKind::Anon, anon));
            MultiGraph::from_edges(kinds, &edges)
        })
    })
}

/// A spanning tree from the star plus extra edges, so simplification has
/// something to do.
fn connected_multigraph(extra: usize) -> impl Strategy<Value = MultiGraph> {
    (0usize..=2, 1usize..=4).prop_flat_map(move |(numbered, anon)| {
        let nv = 1 + numbered + anon;
        let parents: Vec<_> = (1..nv).map(|v| 0..v).collect();
        (parents, prop::collection::vec((0..nv, 0..nv), 0..=extra)).prop_map(move |(parents, more)| {
            let mut kinds = vec![VertexKind::Star];
            kinds.extend((1..=numbered as u32).map(VertexKind::Numbered));
            kinds.extend(std::iter::repeat_n(VertexKind::Anon, anon));
            let mut edges: Vec<(usize, usize)> = parents.into_iter().enumerate().map(|(i, p)| (i + 1, p)).collect();
            edges.extend(more);
            MultiGraph::from_edges(kinds, &edges)
        })
    })
}

/// Half-edge permutations that induce a kind-preserving bijection on the
/// vertices they touch and commute with the edge pairing.
fn brute_automorphisms(g: &MultiGraph) -> BigUint {
    let nh = g.half_edge_count();
    let mut perm: Vec<usize> = (0..nh).collect();
    let mut count = 0u64;
    permutations(&mut perm, 0, &mut |s| {
        let mut vmap: HashMap<usize, usize> = HashMap::new();
        for h in 0..nh {
            if g.partner(s[h]) != s[g.partner(h)] {
                return;
            }
            let (a, b) = (g.half_vertex(h), g.half_vertex(s[h]));
            if g.kind(a) != g.kind(b) || (g.kind(a) != VertexKind::Anon && a != b) {
                return;
            }
            if *vmap.entry(a).or_insert(b) != b {
                return;
            }
        }
        let mut images: Vec<usize> = vmap.values().copied().collect();
        images.sort_unstable();
        images.dedup();
        if images.len() == vmap.len() {
            count += 1;
        }
    });
    BigUint::from(count)
}

fn permutations(p: &mut Vec<usize>, k: usize, visit: &mut dyn FnMut(&[usize])) {
    if k == p.len() {
        visit(p);
        return;
    }
    for i in k..p.len() {
        p.swap(k, i);
        permutations(p, k + 1, visit);
        p.swap(k, i);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn automorphisms_match_half_edge_enumeration(g in multigraph(4)) {
        prop_assert_eq!(automorphism_count(&g), brute_automorphisms(&g), "{:?}", g);
    }

    #[test]
    fn simplification_is_confluent(g in connected_multigraph(4), p in 0u32..=2, seed in any::<u64>()) {
        let first = simplify(&g, p);
        prop_assume!(first.is_ok());
        for round in 0..4 {
            let mut rng = StdRng::seed_from_u64(seed.wrapping_add(round));
            let other = simplify_in_order(&g, p, &mut |k| rng.gen_range(0..k)).unwrap();
            prop_assert_eq!(first.as_ref().unwrap().canonical_form(), other.canonical_form(), "{:?}", g);
        }
    }
}

#[test]
fn catalog_extension_totals() {
    for named in catalog::builtin() {
        let series = f_h_closed_form(&named.graph).to_series(4);
        for n in 0..=4 {
            let total = extension_level_total(&named.graph, n, 0).unwrap();
            assert_eq!(total, series.coeff(n) * big(factorial(n as u64)), "{} n = {n}", named.name);
        }
    }
}

#[test]
fn genus2_automorphisms() {
    let auts: Vec<BigUint> = catalog::genus2().iter().map(|g| brute_automorphisms(g.graph.graph())).collect();
    assert_eq!(auts, [8u32, 4, 4].map(BigUint::from));
}
