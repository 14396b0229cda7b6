//! Decorated graphs that simplify to a given simple graph.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::{automorphism_count, simplify, MultiGraph, SimpleGraph, VertexKind};
use crate::algebra::AElement;
use crate::error::Result;
use crate::guard;
use crate::rational::{big, Rational};

pub const EXTENSION_LIMIT: u64 = 6;

/// Walks every multigraph on `{*, 1..n}` with `edges` edges, star valency
/// `star_valency` and every numbered valency at least 1 (and at most
/// `cap[i]` when given), calling `visit` with the multiplicity of each
/// vertex pair.
fn for_each_decorated(
    n: usize,
    star_valency: usize,
    edges: usize,
    cap: Option<&[usize]>,
    visit: &mut dyn FnMut(&[(usize, usize)], &[usize]),
) {
    let slots: Vec<(usize, usize)> = (0..=n).flat_map(|a| (a..=n).map(move |b| (a, b))).collect();
    let limit: Vec<usize> = (0..=n)
        .map(|v| if v == 0 { star_valency } else { cap.map_or(usize::MAX, |c| c[v - 1]) })
        .collect();
    let exact: Vec<Option<usize>> =
        (0..=n).map(|v| if v == 0 { Some(star_valency) } else { cap.map(|c| c[v - 1]) }).collect();
    let mut deg = vec![0usize; n + 1];
    let mut chosen: Vec<(usize, usize)> = Vec::with_capacity(edges);
    walk(&slots, 0, edges, &limit, &exact, &mut deg, &mut chosen, &mut |chosen, deg| {
        if deg[0] != star_valency || deg[1..].contains(&0) {
            return;
        }
        if let Some(c) = cap {
            if deg[1..] != *c {
                return;
            }
        }
        visit(chosen, deg)
    });
}

fn walk(
    slots: &[(usize, usize)],
    idx: usize,
    left: usize,
    limit: &[usize],
    exact: &[Option<usize>],
    deg: &mut [usize],
    chosen: &mut Vec<(usize, usize)>,
    visit: &mut dyn FnMut(&[(usize, usize)], &[usize]),
) {
    if left == 0 {
        visit(chosen, deg);
        return;
    }
    if idx == slots.len() {
        return;
    }
    let (a, b) = slots[idx];
    let last = exact.len() - 1;
    let inc_a = if a == b { 2 } else { 1 };
    let mut m = 0;
    loop {
        // After its slot with the last vertex, the valency of `a` is final.
        let settled = b != last || settles(a, deg[a], exact);
        if settled {
            walk(slots, idx + 1, left - m, limit, exact, deg, chosen, visit);
        }
        if m + 1 > left || deg[a] + inc_a > limit[a] || (a != b && deg[b] + 1 > limit[b]) {
            break;
        }
        chosen.push((a, b));
        deg[a] += inc_a;
        if a != b {
            deg[b] += 1;
        }
        m += 1;
    }
    for _ in 0..m {
        chosen.pop();
    }
    deg[a] -= inc_a * m;
    if a != b {
        deg[b] -= m;
    }
}

fn settles(v: usize, d: usize, exact: &[Option<usize>]) -> bool {
    match exact[v] {
        Some(want) => d == want,
        None => d >= 1,
    }
}

/// `1/|Aut(G)|` for a decorated graph, where every vertex is labeled.
fn weight(g: &MultiGraph) -> Rational {
    Rational::new(BigInt::one(), automorphism_count(g).into())
}

fn decorated_kinds(n: usize) -> Vec<VertexKind> {
    std::iter::once(VertexKind::Star).chain((1..=n as u32).map(VertexKind::Numbered)).collect()
}

/// Edges an extension on `n` numbered vertices must have: the Euler
/// characteristic is unchanged by (S) and (D).
fn extension_edges(h: &SimpleGraph, n: usize) -> Option<usize> {
    let e = n as i64 + h.edge_count() as i64 - h.non_star_vertices() as i64;
    usize::try_from(e).ok()
}

fn check_size(n: usize) -> Result<()> {
    guard::check("extension vertices", n as u64, EXTENSION_LIMIT)
}

/// `⟨τ_{d_1} … τ_{d_n}⟩_H`: the sum of `1/|Aut(G)|` over decorated graphs
/// `G` with vertex `i` of valency `valencies[i-1]` whose `p`-simplification
/// is `h`.
pub fn enumerate_extensions(h: &SimpleGraph, valencies: &[usize], p: u32) -> Result<Rational> {
    let n = valencies.len();
    check_size(n)?;
    if valencies.contains(&0) {
        return Ok(Rational::zero());
    }
    let Some(edges) = extension_edges(h, n) else {
        return Ok(Rational::zero());
    };
    if 2 * edges != valencies.iter().sum::<usize>() + h.star_valency() {
        return Ok(Rational::zero());
    }
    let target = h.canonical_form();
    let kinds = decorated_kinds(n);
    let mut total = Rational::zero();
    for_each_decorated(n, h.star_valency(), edges, Some(valencies), &mut |chosen, _| {
        let g = MultiGraph::from_edges(kinds.clone(), chosen);
        if let Ok(s) = simplify(&g, p) {
            if s.canonical_form() == target {
                total += weight(&g);
            }
        }
    });
    Ok(total)
}

/// All nonzero `⟨…⟩_H` at level `n`, keyed by the valency vector.
pub fn extension_table(h: &SimpleGraph, n: usize, p: u32) -> Result<BTreeMap<Vec<usize>, Rational>> {
    check_size(n)?;
    let mut table: BTreeMap<Vec<usize>, Rational> = BTreeMap::new();
    let Some(edges) = extension_edges(h, n) else {
        return Ok(table);
    };
    let target = h.canonical_form();
    let kinds = decorated_kinds(n);
    for_each_decorated(n, h.star_valency(), edges, None, &mut |chosen, deg| {
        let g = MultiGraph::from_edges(kinds.clone(), chosen);
        if let Ok(s) = simplify(&g, p) {
            if s.canonical_form() == target {
                *table.entry(deg[1..].to_vec()).or_insert_with(Rational::zero) += weight(&g);
            }
        }
    });
    Ok(table)
}

/// `Σ_d ⟨τ_{d_1} … τ_{d_n}⟩_H`, which should equal `n!·[qⁿ] F_H`.
pub fn extension_level_total(h: &SimpleGraph, n: usize, p: u32) -> Result<Rational> {
    Ok(extension_table(h, n, p)?.into_values().fold(Rational::zero(), |a, b| a + b))
}

/// `F_H = Y^v (1+Z)^e / |Aut(H)|` with `v` the non-star vertices and `e`
/// the edges of `h`.
pub fn f_h_closed_form(h: &SimpleGraph) -> AElement {
    let v = h.non_star_vertices() as u32;
    let e = h.edge_count() as i64;
    let aut = big(automorphism_count(h.graph()).into());
    AElement::y().pow(v).mul(&AElement::monomial(Rational::one(), -e)).scale(&aut.recip())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::error::Error;
    use crate::graph::catalog;
    use crate::rational::{factorial, frac, int};

    #[test]
    fn h4_level_one() {
        let h = catalog::h4().graph;
        assert_eq!(enumerate_extensions(&h, &[5], 0).unwrap(), frac(1, 8));
        assert_eq!(enumerate_extensions(&h, &[1], 0).unwrap(), int(0));
    }

    #[test]
    fn h4_level_two_total_is_one() {
        let h = catalog::h4().graph;
        assert_eq!(extension_level_total(&h, 2, 0).unwrap(), int(1));
    }

    #[test]
    fn closed_forms() {
        let h = catalog::h4().graph;
        assert_eq!(f_h_closed_form(&h).to_series(1).coeff(1), &frac(1, 8));
        let t = catalog::triple_edge().graph;
        let expect = AElement::y().mul(&AElement::monomial(int(1), -3)).scale(&frac(1, 6));
        assert_eq!(f_h_closed_form(&t), expect);
        let s = catalog::star_two_loops().graph;
        assert_eq!(f_h_closed_form(&s), AElement::monomial(frac(1, 8), -2));
    }

    #[test]
    fn levels_match_closed_form_small() {
        for named in catalog::builtin() {
            let h = &named.graph;
            let series = f_h_closed_form(h).to_series(3);
            for n in 0..=3 {
                let lhs = extension_level_total(h, n, 0).unwrap();
                let rhs = series.coeff(n) * big(factorial(n as u64));
                assert_eq!(lhs, rhs, "{} at n = {n}", named.name);
            }
        }
    }

    #[test]
    fn guard() {
        let h = catalog::h4().graph;
        assert!(matches!(enumerate_extensions(&h, &[1; 7], 0), Err(Error::GuardExceeded { .. })));
    }
}
