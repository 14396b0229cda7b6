//! Symmetries: half-edge permutations that respect vertices and edges.
//!
//! The star and numbered vertices are fixed; anonymous vertices may be
//! permuted. For a fixed admissible vertex permutation the half-edge maps
//! are counted directly: `m!` for `m` parallel edges and `m!·2^m` for `m`
//! loops at one vertex.

use num_bigint::BigUint;
use num_traits::One;

use super::{MultiGraph, VertexKind};
use crate::rational::factorial_u;

/// Vertex permutations (as `perm[v]`) preserving kinds, valencies and edge
/// multiplicities. Isolated anonymous vertices are held fixed.
pub fn vertex_symmetries(g: &MultiGraph) -> Vec<Vec<usize>> {
    let n = g.vertex_count();
    let mult = g.multiplicities();
    let val = g.valencies();
    let movable: Vec<usize> = (0..n).filter(|&v| g.kind(v) == VertexKind::Anon && val[v] > 0).collect();
    let mut perm: Vec<usize> = (0..n).collect();
    let mut assigned = vec![false; n];
    for v in 0..n {
        if !movable.contains(&v) {
            assigned[v] = true;
        }
    }
    let mut used = vec![false; n];
    let mut out = Vec::new();
    extend(g, &mult, &val, &movable, 0, &mut perm, &mut assigned, &mut used, &mut out);
    out
}

#[allow(clippy::too_many_arguments)]
fn extend(
    g: &MultiGraph,
    mult: &[Vec<usize>],
    val: &[usize],
    movable: &[usize],
    idx: usize,
    perm: &mut Vec<usize>,
    assigned: &mut Vec<bool>,
    used: &mut Vec<bool>,
    out: &mut Vec<Vec<usize>>,
) {
    if idx == movable.len() {
        out.push(perm.clone());
        return;
    }
    let v = movable[idx];
    for &w in movable {
        if used[w] || val[w] != val[v] || mult[v][v] != mult[w][w] {
            continue;
        }
        let consistent = (0..g.vertex_count())
            .filter(|&x| assigned[x] && x != v)
            .all(|x| mult[v][x] == mult[w][perm[x]]);
        if !consistent {
            continue;
        }
        perm[v] = w;
        assigned[v] = true;
        used[w] = true;
        extend(g, mult, val, movable, idx + 1, perm, assigned, used, out);
        used[w] = false;
        assigned[v] = false;
        perm[v] = v;
    }
}

/// Number of half-edges maps fixing each vertex.
fn pointwise_count(g: &MultiGraph) -> BigUint {
    let mult = g.multiplicities();
    let mut acc = BigUint::one();
    for a in 0..g.vertex_count() {
        acc *= factorial_u(mult[a][a] as u64) << mult[a][a];
        for b in a + 1..g.vertex_count() {
            acc *= factorial_u(mult[a][b] as u64);
        }
    }
    acc
}

/// `|Aut(g)|`.
pub fn automorphism_count(g: &MultiGraph) -> BigUint {
    pointwise_count(g) * BigUint::from(vertex_symmetries(g).len())
}
