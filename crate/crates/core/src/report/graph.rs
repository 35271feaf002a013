use std::collections::{BTreeMap, BTreeSet};
use std::fmt::Write;

use super::ReportError;
use crate::stats::PairwiseDecision;

/// Units joined by an edge wherever Dunnett's C found no significant difference.
#[derive(Debug, Clone, PartialEq)]
pub struct HomogeneityGraph {
    vertices: Vec<String>,
    /// `(a, b)` with `a < b`.
    edges: BTreeSet<(String, String)>,
    components: Vec<Vec<String>>,
}

struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    fn new(n: usize) -> Self {
        UnionFind { parent: (0..n).collect() }
    }

    fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        // smaller index as root keeps results independent of insertion order
        if ra < rb {
            self.parent[rb] = ra;
        } else {
            self.parent[ra] = rb;
        }
    }
}

impl HomogeneityGraph {
    /// Graph over `vertices` with the given undirected edges.
    pub fn from_edges<I>(vertices: impl IntoIterator<Item = String>, edges: I) -> Result<Self, ReportError>
    where
        I: IntoIterator<Item = (String, String)>,
    {
        let vertices: Vec<String> = vertices.into_iter().collect::<BTreeSet<_>>().into_iter().collect();
        let index: BTreeMap<&str, usize> = vertices.iter().enumerate().map(|(i, v)| (v.as_str(), i)).collect();
        let mut uf = UnionFind::new(vertices.len());
        let mut edge_set = BTreeSet::new();
        for (a, b) in edges {
            let (ia, ib) = match (index.get(a.as_str()), index.get(b.as_str())) {
                (Some(&ia), Some(&ib)) if ia != ib => (ia, ib),
                _ => return Err(ReportError::InvalidEdge(a, b)),
            };
            uf.union(ia, ib);
            edge_set.insert(if a < b { (a, b) } else { (b, a) });
        }
        let mut groups: BTreeMap<usize, Vec<String>> = BTreeMap::new();
        for (i, v) in vertices.iter().enumerate() {
            groups.entry(uf.find(i)).or_default().push(v.clone());
        }
        Ok(HomogeneityGraph { edges: edge_set, components: groups.into_values().collect(), vertices })
    }

    pub fn vertices(&self) -> &[String] {
        &self.vertices
    }

    pub fn edges(&self) -> &BTreeSet<(String, String)> {
        &self.edges
    }

    /// Connected components, each sorted, ordered by their first vertex.
    pub fn components(&self) -> &[Vec<String>] {
        &self.components
    }

    pub fn pair_count(&self) -> usize {
        let n = self.vertices.len();
        n * n.saturating_sub(1) / 2
    }

    /// `|E| / (n(n−1)/2)`; 0 for fewer than two vertices.
    pub fn density(&self) -> f64 {
        match self.pair_count() {
            0 => 0.0,
            pairs => self.edges.len() as f64 / pairs as f64,
        }
    }

    pub fn has_edge(&self, a: &str, b: &str) -> bool {
        let key = if a < b { (a.to_string(), b.to_string()) } else { (b.to_string(), a.to_string()) };
        self.edges.contains(&key)
    }
}

/// Builds the graph from a complete set of pairwise verdicts.
pub fn build_homogeneity_graph(decisions: &[PairwiseDecision]) -> Result<HomogeneityGraph, ReportError> {
    let vertices: BTreeSet<&str> =
        decisions.iter().flat_map(|d| [d.unit_i.as_str(), d.unit_j.as_str()]).collect();
    let mut seen = BTreeSet::new();
    for d in decisions {
        let pair = if d.unit_i < d.unit_j { (&d.unit_i, &d.unit_j) } else { (&d.unit_j, &d.unit_i) };
        if pair.0 == pair.1 || !seen.insert(pair) {
            return Err(ReportError::InvalidEdge(d.unit_i.clone(), d.unit_j.clone()));
        }
    }
    let n = vertices.len();
    if seen.len() != n * n.saturating_sub(1) / 2 {
        let missing = vertices
            .iter()
            .flat_map(|a| vertices.iter().map(move |b| (*a, *b)))
            .find(|(a, b)| a < b && !seen.contains(&(&a.to_string(), &b.to_string())))
            .map(|(a, b)| (a.to_string(), b.to_string()))
            .unwrap_or_default();
        return Err(ReportError::IncompletePairCoverage { missing });
    }
    HomogeneityGraph::from_edges(
        vertices.iter().map(|v| v.to_string()),
        decisions.iter().filter(|d| !d.significant).map(|d| (d.unit_i.clone(), d.unit_j.clone())),
    )
}

fn quote(name: &str) -> String {
    format!("\"{}\"", name.replace('\\', "\\\\").replace('"', "\\\""))
}

/// Undirected DOT text with sorted vertices and edges.
pub fn emit_graph_dot(graph: &HomogeneityGraph) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "// density: {:.6} ({} of {} pairs)", graph.density(), graph.edges.len(), graph.pair_count());
    let _ = writeln!(out, "// components: {}", graph.components.len());
    out.push_str("graph homogeneity {\n");
    for v in &graph.vertices {
        let _ = writeln!(out, "  {};", quote(v));
    }
    for (a, b) in &graph.edges {
        let _ = writeln!(out, "  {} -- {};", quote(a), quote(b));
    }
    out.push_str("}\n");
    out
}
