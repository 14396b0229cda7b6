//! Small simple graphs used throughout, plus the catalog file format.
//!
//! The genus-2 graphs have star valency 1 and Euler characteristic -1, with
//! anonymous vertices of valencies (5), (4, 3) and (3, 3, 3).

use serde::{Deserialize, Serialize};

use super::{GraphFile, MultiGraph, SimpleGraph, VertexKind};
use crate::error::{Error, Result};

use VertexKind::{Anon, Star};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NamedGraph {
    pub name: String,
    pub graph: SimpleGraph,
}

impl NamedGraph {
    fn new(name: &str, kinds: Vec<VertexKind>, edges: &[(usize, usize)]) -> Self {
        let graph = SimpleGraph::new(MultiGraph::from_edges(kinds, edges), 0).expect("catalog graph is simple");
        NamedGraph { name: name.to_string(), graph }
    }

    pub fn graph(&self) -> &SimpleGraph {
        &self.graph
    }
}

/// A vertex with an edge to the star and two loops.
pub fn h4() -> NamedGraph {
    NamedGraph::new("H4", vec![Star, Anon], &[(0, 1), (1, 1), (1, 1)])
}

/// Star to `w`, a loop at `w`, an edge `w`-`v`, a loop at `v`.
pub fn h23() -> NamedGraph {
    NamedGraph::new("H23", vec![Star, Anon, Anon], &[(0, 1), (1, 1), (1, 2), (2, 2)])
}

/// Star to `a`, edges `a`-`b` and `a`-`c`, a double edge `b`-`c`.
pub fn h222() -> NamedGraph {
    NamedGraph::new("H222", vec![Star, Anon, Anon, Anon], &[(0, 1), (1, 2), (1, 3), (2, 3), (2, 3)])
}

/// One vertex joined to the star by three parallel edges.
pub fn triple_edge() -> NamedGraph {
    NamedGraph::new("triple_edge", vec![Star, Anon], &[(0, 1), (0, 1), (0, 1)])
}

/// The star alone with two loops.
pub fn star_two_loops() -> NamedGraph {
    NamedGraph::new("star_two_loops", vec![Star], &[(0, 0), (0, 0)])
}

/// The graphs standing for `⟨τ4⟩`, `⟨τ2 τ3⟩`, `⟨τ2 τ2 τ2⟩` in genus 2.
pub fn genus2() -> Vec<NamedGraph> {
    vec![h4(), h23(), h222()]
}

pub fn builtin() -> Vec<NamedGraph> {
    vec![h4(), h23(), h222(), triple_edge(), star_two_loops()]
}

#[derive(Serialize, Deserialize)]
#[serde(untagged)]
enum CatalogFile {
    List(Vec<CatalogEntry>),
    Wrapped { graphs: Vec<CatalogEntry> },
}

#[derive(Serialize, Deserialize)]
struct CatalogEntry {
    #[serde(default)]
    p: u32,
    #[serde(flatten)]
    graph: GraphFile,
}

/// Parses a catalog: a JSON list of graphs (or `{"graphs": [...]}`), each
/// with an optional `name` and `p`.
pub fn parse(text: &str) -> Result<Vec<NamedGraph>> {
    let file: CatalogFile = serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
    let entries = match file {
        CatalogFile::List(v) => v,
        CatalogFile::Wrapped { graphs } => graphs,
    };
    entries
        .into_iter()
        .enumerate()
        .map(|(i, e)| {
            let g = e.graph.to_graph()?;
            let name = e.graph.name.clone().unwrap_or_else(|| format!("graph{i}"));
            let graph = SimpleGraph::new(g, e.p)?;
            Ok(NamedGraph { name, graph })
        })
        .collect()
}

pub fn to_json(graphs: &[NamedGraph]) -> serde_json::Value {
    let entries: Vec<CatalogEntry> = graphs
        .iter()
        .map(|g| CatalogEntry { p: g.graph.p(), graph: GraphFile::from_graph(g.graph.graph(), Some(g.name.clone())) })
        .collect();
    serde_json::json!({ "graphs": entries })
}
