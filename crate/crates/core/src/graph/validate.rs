use std::collections::{BTreeSet, VecDeque};

use serde::Serialize;

use super::{GraphOfGroups, VertexKind};
use crate::word::commensurable;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Check {
    pub name: &'static str,
    pub passed: bool,
    pub detail: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ValidationReport {
    pub checks: Vec<Check>,
    pub warnings: Vec<String>,
}

impl ValidationReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn check(&self, name: &str) -> Option<&Check> {
        self.checks.iter().find(|c| c.name == name)
    }
}

fn check(name: &'static str, detail: Vec<String>) -> Check {
    Check { name, passed: detail.is_empty(), detail }
}

impl GraphOfGroups {
    pub fn validate_normalized(&self) -> ValidationReport {
        let mut warnings = Vec::new();
        let checks = vec![
            check("trivial_edges_at_base", self.trivial_edges_at_base()),
            check("fa_bipartite", self.fa_bipartite()),
            check("edge_generators_in_vertex_groups", self.edge_generators_in_groups()),
            check("generates_ambient_group", self.generates_ambient()),
            check("cylinder_stars", self.cylinder_stars()),
            check("fa_subgraph_shape", self.fa_shape()),
            check("ztype_groups_cyclic", self.ztype_cyclic()),
        ];
        let base = self.base();
        let fa_degree = self.incident(base).iter().filter(|(e, _)| self.is_fa_edge(*e)).count();
        if fa_degree == 1 && self.group(base).rank() == 1 {
            warnings.push(format!(
                "base vertex {} has cyclic group and a single F_A edge; pendant placement is not checked",
                self.vertex(base).id
            ));
        }
        ValidationReport { checks, warnings }
    }

    fn trivial_edges_at_base(&self) -> Vec<String> {
        self.edges()
            .iter()
            .filter(|e| e.is_trivial() && !e.touches(self.base()))
            .map(|e| format!("trivial edge {} is not attached to the base vertex", e.id))
            .collect()
    }

    fn fa_bipartite(&self) -> Vec<String> {
        self.fa_edges()
            .into_iter()
            .filter(|&e| self.is_ztype(self.edge(e).origin) == self.is_ztype(self.edge(e).terminus))
            .map(|e| format!("edge {} does not join a ztype vertex to a non-ztype vertex", self.edge(e).id))
            .collect()
    }

    fn edge_generators_in_groups(&self) -> Vec<String> {
        let mut bad = Vec::new();
        for (i, e) in self.edges().iter().enumerate() {
            if e.is_trivial() {
                continue;
            }
            if !self.group(e.origin).contains(&e.generator) {
                bad.push(format!("generator of {} is not in {}", e.id, self.vertex(e.origin).id));
            }
            if !self.group(e.terminus).contains(&self.side_generator(i, true)) {
                bad.push(format!("terminus-side generator of {} is not in {}", e.id, self.vertex(e.terminus).id));
            }
        }
        bad
    }

    fn generates_ambient(&self) -> Vec<String> {
        let (rank, index) = self.whole_group().rank_index(self.rank());
        if index == Some(1) && rank == self.rank() {
            Vec::new()
        } else {
            vec![format!(
                "vertex groups and stable letters generate a subgroup of rank {rank} and index {}",
                index.map_or("infinite".to_string(), |i| i.to_string())
            )]
        }
    }

    fn cylinder_stars(&self) -> Vec<String> {
        let mut bad = Vec::new();
        for z in self.fa_vertices().iter().copied().filter(|&z| self.is_ztype(z)) {
            let sides: Vec<_> = self
                .incident(z)
                .into_iter()
                .filter(|(e, _)| self.is_fa_edge(*e))
                .map(|(e, _)| (e, self.side_generator(e, self.edge(e).terminus == z)))
                .collect();
            for pair in sides.windows(2) {
                let (e, u) = &pair[0];
                let (f, w) = &pair[1];
                if !commensurable(u, w).unwrap_or(false) {
                    bad.push(format!(
                        "edges {} and {} at {} are not commensurable",
                        self.edge(*e).id,
                        self.edge(*f).id,
                        self.vertex(z).id
                    ));
                }
            }
        }
        bad
    }

    fn fa_shape(&self) -> Vec<String> {
        let mut bad = Vec::new();
        let fa = self.fa_vertices();
        if !fa.contains(&self.base()) {
            bad.push("F_A-subgraph does not contain the base vertex".to_string());
        }
        let mut seen = BTreeSet::from([self.base()]);
        let mut queue = VecDeque::from([self.base()]);
        while let Some(x) = queue.pop_front() {
            for (e, y) in self.incident(x) {
                if self.is_fa_edge(e) && seen.insert(y) {
                    queue.push_back(y);
                }
            }
        }
        if !fa.is_subset(&seen) {
            bad.push("F_A-subgraph is not connected".to_string());
        }
        bad
    }

    fn ztype_cyclic(&self) -> Vec<String> {
        self.vertices()
            .iter()
            .enumerate()
            .filter(|(v, d)| d.kind == VertexKind::Ztype && self.group(*v).rank() != 1)
            .map(|(_, d)| format!("ztype vertex {} does not have infinite cyclic group", d.id))
            .collect()
    }
}
