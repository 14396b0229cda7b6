//! Writing a bracket table as a combination of H-brackets, one simple graph
//! per initial value.

use num_bigint::{BigInt, BigUint};
use num_traits::One;
use serde_json::{json, Value};

use super::{BracketTable, Bracket, Monomial};
use crate::algebra::AElement;
use crate::error::{Error, Result};
use crate::graph::{automorphism_count, catalog, catalog::NamedGraph, MultiGraph, SimpleGraph, VertexKind};
use crate::rational::{self, big, factorial, Rational};

#[derive(Clone, Debug, PartialEq)]
pub struct GraphTerm {
    pub monomial: Monomial,
    /// The initial value `q_v`.
    pub value: Rational,
    pub graph: NamedGraph,
    pub aut: BigUint,
    /// `Π(multiplicity)!` over equal indices of the monomial.
    pub multiplicity_factor: BigInt,
    /// `q_v·|Aut(H_v)| / Π(multiplicity)!`, the weight of `⟨·⟩_{H_v}`.
    pub coefficient: Rational,
}

impl GraphTerm {
    /// `q_v·|Aut(H_v)|`, without the multiplicity factor.
    pub fn unadjusted_coefficient(&self) -> Rational {
        &self.value * big(self.aut.clone().into())
    }

    /// This term's share of the generating series,
    /// `coefficient · Y^v (1+Z)^e / |Aut(H_v)|`.
    pub fn series_element(&self) -> AElement {
        let h = &self.graph.graph;
        let v = h.non_star_vertices() as u32;
        let e = h.edge_count() as i64;
        let scale = &self.coefficient / big(self.aut.clone().into());
        AElement::y().pow(v).mul(&AElement::monomial(Rational::one(), -e)).scale(&scale)
    }

    pub fn to_json(&self) -> Value {
        json!({
            "monomial": self.monomial.to_string(),
            "value": rational::to_string(&self.value),
            "graph": self.graph.name,
            "aut": self.aut.to_string(),
            "multiplicity_factor": self.multiplicity_factor.to_string(),
            "coefficient": rational::to_string(&self.coefficient),
            "unadjusted_coefficient": rational::to_string(&self.unadjusted_coefficient()),
            "element": self.series_element().to_json(),
        })
    }
}

/// The degree `b = 3g-3+m-Σd` at which `m` is an initial value.
fn degree_of(genus: u32, m: &Monomial) -> i64 {
    3 * genus as i64 - 3 + m.len() as i64 - m.total() as i64
}

/// A connected simple graph with anonymous vertices of valency `d_i + 1`
/// and a star of valency `b + g - 1`. The genus-2 catalog graphs are used
/// when they fit, otherwise a path from the star through every vertex is
/// completed by pairing the leftover half-edges in order.
pub fn graph_for_monomial(genus: u32, m: &Monomial) -> Result<NamedGraph> {
    let b = degree_of(genus, m);
    let star_valency = b + genus as i64 - 1;
    if b < 0 || star_valency <= 0 {
        return Err(Error::DegreeGenusOutOfRange(format!(
            "monomial ({m}) in genus {genus} has degree {b} and star valency {star_valency}"
        )));
    }
    if m.indices().iter().any(|&d| d < 2) {
        return Err(Error::InvalidInput(format!("initial value ({m}) has an index below 2")));
    }
    let mut want: Vec<usize> = m.indices().iter().map(|&d| d as usize + 1).collect();
    want.sort_unstable();
    for named in catalog::genus2() {
        let h = &named.graph;
        let mut anon: Vec<usize> =
            (0..h.vertex_count()).filter(|&v| h.kind(v) == VertexKind::Anon).map(|v| h.valency(v)).collect();
        anon.sort_unstable();
        if anon == want && h.star_valency() as i64 == star_valency {
            return Ok(named);
        }
    }

    let mut g = MultiGraph::new();
    let star = g.add_vertex(VertexKind::Star);
    let mut left = vec![star_valency as usize];
    let mut prev = star;
    for &val in &want {
        let v = g.add_vertex(VertexKind::Anon);
        g.add_edge(prev, v);
        left[prev] -= 1;
        left.push(val - 1);
        prev = v;
    }
    let stubs: Vec<usize> = left.iter().enumerate().flat_map(|(v, &c)| std::iter::repeat_n(v, c)).collect();
    for pair in stubs.chunks(2) {
        g.add_edge(pair[0], pair[1]);
    }
    let name = format!("H({m};{star_valency})");
    Ok(NamedGraph { name, graph: SimpleGraph::new(g, 0)? })
}

/// One graph term per initial value of the table.
pub fn decompose_to_graphs(t: &BracketTable) -> Result<Vec<GraphTerm>> {
    t.initial_values()
        .iter()
        .map(|(m, q)| {
            let graph = graph_for_monomial(t.genus(), m)?;
            let aut = automorphism_count(graph.graph.graph());
            let multiplicity_factor: BigInt = m.multiplicities().into_iter().map(|k| factorial(k as u64)).product();
            let coefficient = q * big(aut.clone().into()) / big(multiplicity_factor.clone());
            Ok(GraphTerm { monomial: m.clone(), value: q.clone(), graph, aut, multiplicity_factor, coefficient })
        })
        .collect()
}
