//! The operations (S), erasing a valency-1 vertex with its edge, and (D),
//! erasing a valency-2 vertex and merging its two edges.

use std::ops::Deref;

use super::{MultiGraph, VertexKind};
use crate::error::{Error, Result};

/// A graph whose anonymous vertices all have valency at least 3.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SimpleGraph {
    graph: MultiGraph,
    p: u32,
}

impl SimpleGraph {
    /// Checks the simple-graph conditions: one star, numbered vertices only
    /// among `1..=p`, anonymous valencies `≥ 3`.
    pub fn new(graph: MultiGraph, p: u32) -> Result<Self> {
        let stars = graph.kinds().iter().filter(|k| **k == VertexKind::Star).count();
        if stars != 1 {
            return Err(Error::InvalidInput("a simple graph has exactly one star".into()));
        }
        let val = graph.valencies();
        for (v, k) in graph.kinds().iter().enumerate() {
            match k {
                VertexKind::Anon if val[v] < 3 => {
                    return Err(Error::InvalidInput(format!("anonymous vertex {v} has valency {}", val[v])))
                }
                VertexKind::Numbered(i) if *i > p => {
                    return Err(Error::InvalidInput(format!("vertex number {i} exceeds p = {p}")))
                }
                _ => {}
            }
        }
        Ok(SimpleGraph { graph, p })
    }

    pub fn graph(&self) -> &MultiGraph {
        &self.graph
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn into_graph(self) -> MultiGraph {
        self.graph
    }

    pub fn star_valency(&self) -> usize {
        self.graph.star().map(|s| self.graph.valency(s)).unwrap_or(0)
    }
}

impl Deref for SimpleGraph {
    type Target = MultiGraph;
    fn deref(&self) -> &MultiGraph {
        &self.graph
    }
}

fn protected(kind: VertexKind, p: u32) -> bool {
    match kind {
        VertexKind::Star => true,
        VertexKind::Numbered(i) => i <= p,
        VertexKind::Anon => false,
    }
}

/// Every component must contain the star, a vertex numbered `≤ p`, or at
/// least two independent cycles.
fn check_components(g: &MultiGraph, p: u32) -> Result<()> {
    let val = g.valencies();
    for comp in g.components() {
        if comp.iter().any(|&v| protected(g.kind(v), p)) {
            continue;
        }
        let half: usize = comp.iter().map(|&v| val[v]).sum();
        let cycle_rank = (half / 2) as i64 - comp.len() as i64 + 1;
        if cycle_rank < 2 {
            return Err(Error::UnsimplifiableComponent);
        }
    }
    Ok(())
}

/// Simplification with the lowest-numbered applicable vertex first.
pub fn simplify(g: &MultiGraph, p: u32) -> Result<SimpleGraph> {
    simplify_in_order(g, p, &mut |_| 0)
}

/// Simplification where `choose(k)` picks which of the `k` currently
/// applicable vertices to erase next. The result does not depend on it.
pub fn simplify_in_order(g: &MultiGraph, p: u32, choose: &mut dyn FnMut(usize) -> usize) -> Result<SimpleGraph> {
    check_components(g, p)?;
    let nv = g.vertex_count();
    let nh = g.half_edge_count();
    let mut pairing: Vec<usize> = (0..nh).map(|h| g.partner(h)).collect();
    let half_vertex: Vec<usize> = (0..nh).map(|h| g.half_vertex(h)).collect();
    let mut half_alive = vec![true; nh];
    let mut vertex_alive = vec![true; nv];
    let mut halves: Vec<Vec<usize>> = vec![Vec::new(); nv];
    for (h, &v) in half_vertex.iter().enumerate() {
        halves[v].push(h);
    }

    loop {
        let applicable: Vec<usize> = (0..nv)
            .filter(|&v| vertex_alive[v] && !protected(g.kind(v), p))
            .filter(|&v| match halves[v].len() {
                1 => g.kind(half_vertex[pairing[halves[v][0]]]) != VertexKind::Star,
                2 => true,
                _ => false,
            })
            .collect();
        if applicable.is_empty() {
            break;
        }
        let v = applicable[choose(applicable.len()) % applicable.len()];
        match *halves[v].as_slice() {
            [h] => {
                let other = pairing[h];
                let u = half_vertex[other];
                halves[u].retain(|&x| x != other);
                half_alive[h] = false;
                half_alive[other] = false;
            }
            [h1, h2] => {
                if pairing[h1] == h2 {
                    return Err(Error::UnsimplifiableComponent);
                }
                let (a, b) = (pairing[h1], pairing[h2]);
                pairing[a] = b;
                pairing[b] = a;
                half_alive[h1] = false;
                half_alive[h2] = false;
            }
            _ => unreachable!("only valency 1 and 2 vertices are applicable"),
        }
        halves[v].clear();
        vertex_alive[v] = false;
    }

    // Compact, forgetting numbers above p.
    let mut new_id = vec![usize::MAX; nv];
    let mut kinds = Vec::new();
    for v in 0..nv {
        if vertex_alive[v] {
            new_id[v] = kinds.len();
            let kind = match g.kind(v) {
                VertexKind::Numbered(i) if i > p => VertexKind::Anon,
                k => k,
            };
            kinds.push(kind);
        }
    }
    let edges: Vec<(usize, usize)> = (0..nh)
        .filter(|&h| half_alive[h] && h < pairing[h])
        .map(|h| (new_id[half_vertex[h]], new_id[half_vertex[pairing[h]]]))
        .collect();
    let out = MultiGraph::from_edges(kinds, &edges);
    let val = out.valencies();
    if out.kinds().iter().zip(&val).any(|(k, &d)| *k == VertexKind::Anon && d < 3) {
        return Err(Error::UnsimplifiableComponent);
    }
    SimpleGraph::new(out, p).map_err(|_| Error::UnsimplifiableComponent)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::catalog;
    use VertexKind::*;

    #[test]
    fn path_from_star_is_rejected() {
        let g = MultiGraph::from_edges(vec![Star, Numbered(1), Numbered(2)], &[(0, 1), (1, 2)]);
        assert_eq!(simplify(&g, 0), Err(Error::UnsimplifiableComponent));
    }

    #[test]
    fn h4_is_irreducible() {
        let g = MultiGraph::from_edges(vec![Star, Numbered(1)], &[(0, 1), (1, 1), (1, 1)]);
        let s = simplify(&g, 0).unwrap();
        assert!(s.is_isomorphic(catalog::h4().graph()));
        assert_eq!(s.valencies(), vec![1, 5]);
    }

    #[test]
    fn subdivided_loop_collapses() {
        // v1 carries the star edge and one loop; the other loop runs through 2, 3, 4.
        let g = MultiGraph::from_edges(
            vec![Star, Numbered(1), Numbered(2), Numbered(3), Numbered(4)],
            &[(0, 1), (1, 1), (1, 2), (2, 3), (3, 4), (4, 1)],
        );
        assert!(simplify(&g, 0).unwrap().is_isomorphic(catalog::h4().graph()));
    }

    #[test]
    fn trees_hanging_off_are_erased() {
        let g = MultiGraph::from_edges(
            vec![Star, Numbered(1), Numbered(2), Numbered(3), Numbered(4)],
            &[(0, 1), (1, 1), (1, 1), (1, 2), (2, 3), (2, 4)],
        );
        assert!(simplify(&g, 0).unwrap().is_isomorphic(catalog::h4().graph()));
    }

    #[test]
    fn component_condition() {
        // A lone cycle away from the star.
        let g = MultiGraph::from_edges(
            vec![Star, Numbered(1), Numbered(2), Numbered(3)],
            &[(0, 0), (1, 2), (2, 3), (3, 1)],
        );
        assert_eq!(simplify(&g, 0), Err(Error::UnsimplifiableComponent));
        // The same cycle is fine once vertex 1 is protected.
        let s = simplify(&g, 1).unwrap();
        assert_eq!(s.vertex_count(), 2);
        assert_eq!(s.loop_count(), 2);
    }

    #[test]
    fn leaf_on_star_blocks() {
        let g = MultiGraph::from_edges(
            vec![Star, Numbered(1), Numbered(2)],
            &[(0, 1), (0, 2), (2, 2), (2, 2)],
        );
        assert_eq!(simplify(&g, 0), Err(Error::UnsimplifiableComponent));
    }

    #[test]
    fn protected_numbers_survive() {
        let g = MultiGraph::from_edges(vec![Star, Numbered(1), Numbered(2)], &[(0, 1), (1, 2)]);
        let s = simplify(&g, 2).unwrap();
        assert_eq!(s.vertex_count(), 3);
        let s = simplify(&g, 1).unwrap();
        assert_eq!(s.kinds(), &[Star, Numbered(1)]);
        assert_eq!(s.edge_count(), 1);
    }
}
