use std::collections::{BTreeSet, VecDeque};

use serde::Serialize;

use crate::graph::GraphOfGroups;

/// A set of edges and vertices of Λ. Operations that take a graph keep the
/// set closed (endpoints of every edge included).
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Subgraph {
    pub vertices: BTreeSet<usize>,
    pub edges: BTreeSet<usize>,
}

impl Subgraph {
    pub fn new() -> Self {
        Subgraph::default()
    }

    pub fn vertex(v: usize) -> Self {
        Subgraph { vertices: BTreeSet::from([v]), edges: BTreeSet::new() }
    }

    pub fn from_edges(graph: &GraphOfGroups, edges: impl IntoIterator<Item = usize>) -> Self {
        let mut s = Subgraph::new();
        for e in edges {
            s.add_edge(graph, e);
        }
        s
    }

    pub fn add_edge(&mut self, graph: &GraphOfGroups, e: usize) {
        let d = graph.edge(e);
        self.edges.insert(e);
        self.vertices.insert(d.origin);
        self.vertices.insert(d.terminus);
    }

    pub fn whole(graph: &GraphOfGroups) -> Self {
        Subgraph {
            vertices: (0..graph.vertices().len()).collect(),
            edges: (0..graph.edges().len()).collect(),
        }
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty() && self.edges.is_empty()
    }

    pub fn is_closed(&self, graph: &GraphOfGroups) -> bool {
        self.edges.iter().all(|&e| {
            let d = graph.edge(e);
            self.vertices.contains(&d.origin) && self.vertices.contains(&d.terminus)
        })
    }

    pub fn union(&self, other: &Subgraph) -> Subgraph {
        Subgraph {
            vertices: self.vertices.union(&other.vertices).copied().collect(),
            edges: self.edges.union(&other.edges).copied().collect(),
        }
    }

    pub fn intersection(&self, other: &Subgraph) -> Subgraph {
        Subgraph {
            vertices: self.vertices.intersection(&other.vertices).copied().collect(),
            edges: self.edges.intersection(&other.edges).copied().collect(),
        }
    }

    pub fn is_subset(&self, other: &Subgraph) -> bool {
        self.vertices.is_subset(&other.vertices) && self.edges.is_subset(&other.edges)
    }

    /// Restriction to the F_A-subgraph: its vertices, and edges with both
    /// endpoints there.
    pub fn restrict_to_fa(&self, graph: &GraphOfGroups) -> Subgraph {
        Subgraph {
            vertices: self.vertices.intersection(graph.fa_vertices()).copied().collect(),
            edges: self.edges.iter().copied().filter(|&e| graph.is_fa_edge(e)).collect(),
        }
    }

    pub fn is_connected(&self, graph: &GraphOfGroups) -> bool {
        let Some(&start) = self.vertices.iter().next() else { return true };
        let mut seen = BTreeSet::from([start]);
        let mut queue = VecDeque::from([start]);
        while let Some(x) = queue.pop_front() {
            for &e in &self.edges {
                let d = graph.edge(e);
                if d.touches(x) {
                    let y = d.other_end(x);
                    if self.vertices.contains(&y) && seen.insert(y) {
                        queue.push_back(y);
                    }
                }
            }
        }
        seen.len() == self.vertices.len()
    }

    pub fn labels(&self, graph: &GraphOfGroups) -> SubgraphLabels {
        SubgraphLabels {
            vertices: self.vertices.iter().map(|&v| graph.vertex(v).id.clone()).collect(),
            edges: self.edges.iter().map(|&e| graph.edge(e).id.clone()).collect(),
        }
    }
}

/// A subgraph named by ids, for reports.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SubgraphLabels {
    pub vertices: Vec<String>,
    pub edges: Vec<String>,
}
