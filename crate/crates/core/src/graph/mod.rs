//! Half-edge multigraphs with a distinguished star vertex.
//!
//! Vertices are the star, numbered vertices, or anonymous vertices. Every
//! edge is a pair of half-edges; a loop has both halves on one vertex.

mod automorphism;
pub mod catalog;
mod extensions;
mod simplify;

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub use automorphism::{automorphism_count, vertex_symmetries};
pub use extensions::{
    enumerate_extensions, extension_level_total, extension_table, f_h_closed_form, EXTENSION_LIMIT,
};
pub use simplify::{simplify, simplify_in_order, SimpleGraph};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum VertexKind {
    Star,
    Numbered(u32),
    Anon,
}

#[derive(Clone, PartialEq, Eq)]
pub struct MultiGraph {
    kinds: Vec<VertexKind>,
    half_vertex: Vec<usize>,
    pairing: Vec<usize>,
}

impl fmt::Debug for MultiGraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("MultiGraph")
            .field("vertices", &self.kinds)
            .field("edges", &self.edges())
            .finish()
    }
}

impl MultiGraph {
    pub fn new() -> Self {
        MultiGraph { kinds: Vec::new(), half_vertex: Vec::new(), pairing: Vec::new() }
    }

    pub fn from_edges(kinds: Vec<VertexKind>, edges: &[(usize, usize)]) -> Self {
        let mut g = MultiGraph { kinds, half_vertex: Vec::new(), pairing: Vec::new() };
        for &(a, b) in edges {
            g.add_edge(a, b);
        }
        g
    }

    pub fn add_vertex(&mut self, kind: VertexKind) -> usize {
        self.kinds.push(kind);
        self.kinds.len() - 1
    }

    pub fn add_edge(&mut self, a: usize, b: usize) {
        assert!(a < self.kinds.len() && b < self.kinds.len(), "edge endpoint out of range");
        let h = self.half_vertex.len();
        self.half_vertex.push(a);
        self.half_vertex.push(b);
        self.pairing.push(h + 1);
        self.pairing.push(h);
    }

    pub fn vertex_count(&self) -> usize {
        self.kinds.len()
    }

    pub fn edge_count(&self) -> usize {
        self.half_vertex.len() / 2
    }

    pub fn half_edge_count(&self) -> usize {
        self.half_vertex.len()
    }

    pub fn kind(&self, v: usize) -> VertexKind {
        self.kinds[v]
    }

    pub fn kinds(&self) -> &[VertexKind] {
        &self.kinds
    }

    /// Vertex carrying half-edge `h`.
    pub fn half_vertex(&self, h: usize) -> usize {
        self.half_vertex[h]
    }

    /// The other half of the edge containing `h`.
    pub fn partner(&self, h: usize) -> usize {
        self.pairing[h]
    }

    pub fn star(&self) -> Option<usize> {
        self.kinds.iter().position(|k| *k == VertexKind::Star)
    }

    pub fn valency(&self, v: usize) -> usize {
        self.half_vertex.iter().filter(|&&u| u == v).count()
    }

    pub fn valencies(&self) -> Vec<usize> {
        let mut val = vec![0; self.kinds.len()];
        for &v in &self.half_vertex {
            val[v] += 1;
        }
        val
    }

    /// Each edge once, as the vertex pair of its two halves.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        (0..self.half_vertex.len())
            .filter(|&h| h < self.pairing[h])
            .map(|h| (self.half_vertex[h], self.half_vertex[self.pairing[h]]))
            .collect()
    }

    pub fn loop_count(&self) -> usize {
        self.edges().iter().filter(|(a, b)| a == b).count()
    }

    /// Number of vertices other than the star.
    pub fn non_star_vertices(&self) -> usize {
        self.kinds.iter().filter(|k| **k != VertexKind::Star).count()
    }

    /// `|V| - |E|`.
    pub fn euler_characteristic(&self) -> i64 {
        self.vertex_count() as i64 - self.edge_count() as i64
    }

    /// `mult[a][b]`: number of edges between `a` and `b` (loops on the
    /// diagonal, each counted once).
    pub fn multiplicities(&self) -> Vec<Vec<usize>> {
        let n = self.kinds.len();
        let mut m = vec![vec![0; n]; n];
        for (a, b) in self.edges() {
            m[a][b] += 1;
            if a != b {
                m[b][a] += 1;
            }
        }
        m
    }

    /// Connected components as lists of vertices.
    pub fn components(&self) -> Vec<Vec<usize>> {
        let n = self.kinds.len();
        let mut parent: Vec<usize> = (0..n).collect();
        fn find(p: &mut [usize], x: usize) -> usize {
            let mut r = x;
            while p[r] != r {
                r = p[r];
            }
            let mut y = x;
            while p[y] != r {
                let next = p[y];
                p[y] = r;
                y = next;
            }
            r
        }
        for (a, b) in self.edges() {
            let (ra, rb) = (find(&mut parent, a), find(&mut parent, b));
            if ra != rb {
                parent[ra] = rb;
            }
        }
        let mut groups: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
        for v in 0..n {
            let r = find(&mut parent, v);
            groups.entry(r).or_default().push(v);
        }
        groups.into_values().collect()
    }

    /// Disjoint union; vertex ids of `other` are shifted past those of `self`.
    pub fn disjoint_union(&self, other: &MultiGraph) -> MultiGraph {
        let shift = self.kinds.len();
        let mut kinds = self.kinds.clone();
        kinds.extend(other.kinds.iter().copied());
        let mut edges = self.edges();
        edges.extend(other.edges().into_iter().map(|(a, b)| (a + shift, b + shift)));
        MultiGraph::from_edges(kinds, &edges)
    }

    /// Isomorphism-invariant form: star first, numbered vertices by number,
    /// anonymous vertices in the order minimizing the sorted edge list.
    pub fn canonical_form(&self) -> CanonicalForm {
        let val = self.valencies();
        let mut fixed: Vec<usize> = (0..self.kinds.len()).filter(|&v| self.kinds[v] != VertexKind::Anon).collect();
        fixed.sort_by_key(|&v| self.kinds[v]);
        let mut anon: Vec<usize> = (0..self.kinds.len()).filter(|&v| self.kinds[v] == VertexKind::Anon).collect();
        anon.sort_by_key(|&v| val[v]);

        // Blocks of equal valency; only permutations inside blocks matter.
        let mut blocks: Vec<Vec<usize>> = Vec::new();
        for &v in &anon {
            match blocks.last_mut() {
                Some(b) if val[b[0]] == val[v] => b.push(v),
                _ => blocks.push(vec![v]),
            }
        }
        let edges = self.edges();
        let labels: Vec<VertexKind> = fixed
            .iter()
            .map(|&v| self.kinds[v])
            .chain(anon.iter().map(|_| VertexKind::Anon))
            .collect();
        let anon_val: Vec<usize> = anon.iter().map(|&v| val[v]).collect();

        let mut best: Option<Vec<(usize, usize)>> = None;
        let mut order: Vec<usize> = Vec::with_capacity(anon.len());
        permute_blocks(&blocks, 0, &mut order, &mut |order| {
            let mut pos = vec![usize::MAX; self.kinds.len()];
            for (i, &v) in fixed.iter().chain(order.iter()).enumerate() {
                pos[v] = i;
            }
            let mut list: Vec<(usize, usize)> = edges
                .iter()
                .map(|&(a, b)| {
                    let (x, y) = (pos[a], pos[b]);
                    (x.min(y), x.max(y))
                })
                .collect();
            list.sort_unstable();
            if best.as_ref().is_none_or(|b| list < *b) {
                best = Some(list);
            }
        });
        CanonicalForm { vertices: labels, anon_valencies: anon_val, edges: best.unwrap_or_default() }
    }

    pub fn is_isomorphic(&self, other: &MultiGraph) -> bool {
        self.canonical_form() == other.canonical_form()
    }

    /// JSON form `{vertices: [{id, kind[, number]}], edges: [[[v, slot], [v, slot]], …]}`.
    pub fn to_json_value(&self) -> serde_json::Value {
        serde_json::to_value(GraphFile::from_graph(self, None)).expect("graph serializes")
    }

    pub fn from_json_value(v: serde_json::Value) -> Result<Self> {
        let file: GraphFile = serde_json::from_value(v).map_err(|e| Error::Parse(e.to_string()))?;
        file.to_graph()
    }
}

impl Default for MultiGraph {
    fn default() -> Self {
        Self::new()
    }
}

fn permute_blocks(
    blocks: &[Vec<usize>],
    idx: usize,
    order: &mut Vec<usize>,
    visit: &mut dyn FnMut(&[usize]),
) {
    if idx == blocks.len() {
        visit(order);
        return;
    }
    let block = &blocks[idx];
    let mut used = vec![false; block.len()];
    permute_within(block, &mut used, order, &mut |order| permute_blocks(blocks, idx + 1, order, visit));
}

fn permute_within(
    block: &[usize],
    used: &mut [bool],
    order: &mut Vec<usize>,
    next: &mut dyn FnMut(&mut Vec<usize>),
) {
    if used.iter().all(|&u| u) {
        next(order);
        return;
    }
    for i in 0..block.len() {
        if used[i] {
            continue;
        }
        used[i] = true;
        order.push(block[i]);
        permute_within(block, used, order, next);
        order.pop();
        used[i] = false;
    }
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CanonicalForm {
    pub vertices: Vec<VertexKind>,
    pub anon_valencies: Vec<usize>,
    pub edges: Vec<(usize, usize)>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
struct VertexEntry {
    id: usize,
    kind: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    number: Option<u32>,
}

/// On-disk graph: vertices plus edges given as pairs of `(vertex, slot)`
/// half-edges.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct GraphFile {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
    vertices: Vec<VertexEntry>,
    edges: Vec<[(usize, usize); 2]>,
}

impl GraphFile {
    pub fn from_graph(g: &MultiGraph, name: Option<String>) -> Self {
        let vertices = g
            .kinds
            .iter()
            .enumerate()
            .map(|(id, k)| match k {
                VertexKind::Star => VertexEntry { id, kind: "star".into(), number: None },
                VertexKind::Numbered(i) => VertexEntry { id, kind: "numbered".into(), number: Some(*i) },
                VertexKind::Anon => VertexEntry { id, kind: "anon".into(), number: None },
            })
            .collect();
        let mut slot = vec![0usize; g.kinds.len()];
        let mut half_slot = vec![0usize; g.half_vertex.len()];
        for (h, &v) in g.half_vertex.iter().enumerate() {
            half_slot[h] = slot[v];
            slot[v] += 1;
        }
        let edges = (0..g.half_vertex.len())
            .filter(|&h| h < g.pairing[h])
            .map(|h| {
                let k = g.pairing[h];
                [(g.half_vertex[h], half_slot[h]), (g.half_vertex[k], half_slot[k])]
            })
            .collect();
        GraphFile { name, vertices, edges }
    }

    pub fn to_graph(&self) -> Result<MultiGraph> {
        let mut ids = BTreeMap::new();
        let mut kinds = Vec::new();
        for (i, v) in self.vertices.iter().enumerate() {
            let kind = match (v.kind.as_str(), v.number) {
                ("star", _) => VertexKind::Star,
                ("anon", _) => VertexKind::Anon,
                ("numbered", Some(n)) if n >= 1 => VertexKind::Numbered(n),
                ("numbered", _) => {
                    return Err(Error::Parse(format!("vertex {} is numbered but has no number ≥ 1", v.id)))
                }
                (other, _) => return Err(Error::Parse(format!("unknown vertex kind {other:?}"))),
            };
            if ids.insert(v.id, i).is_some() {
                return Err(Error::Parse(format!("duplicate vertex id {}", v.id)));
            }
            kinds.push(kind);
        }
        if kinds.iter().filter(|k| **k == VertexKind::Star).count() != 1 {
            return Err(Error::Parse("a graph needs exactly one star vertex".into()));
        }
        let mut seen = std::collections::BTreeSet::new();
        let mut edges = Vec::new();
        for [a, b] in &self.edges {
            for half in [a, b] {
                if !seen.insert(*half) {
                    return Err(Error::Parse(format!("half-edge {half:?} used twice")));
                }
            }
            let va = *ids.get(&a.0).ok_or_else(|| Error::Parse(format!("unknown vertex {}", a.0)))?;
            let vb = *ids.get(&b.0).ok_or_else(|| Error::Parse(format!("unknown vertex {}", b.0)))?;
            edges.push((va, vb));
        }
        Ok(MultiGraph::from_edges(kinds, &edges))
    }
}
