//! Finite graphs of groups with cyclic or trivial edge groups, presented by
//! a spanning tree and stable letters.
//!
//! A spanning-tree edge carries one generator lying in both endpoint groups.
//! A non-tree edge `o → t` with stable letter `s` carries a generator `c` of
//! the origin-side edge group; its terminus-side generator is `s⁻¹·c·s`.

mod normal_form;
mod surgery;
mod validate;

use std::collections::{BTreeMap, BTreeSet, VecDeque};

use serde::{Deserialize, Serialize};

use crate::automaton::SubgroupAutomaton;
use crate::error::{Error, Result};
use crate::word::{Alphabet, Word};

pub use normal_form::{NormalForm, ProjectedPath};
pub use validate::{Check, ValidationReport};
pub(crate) use surgery::{rebase, RawEdge};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum VertexKind {
    Base,
    Rigid,
    Surface,
    Ztype,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum EdgeClass {
    Cyclic,
    Trivial,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VertexData {
    pub id: String,
    pub kind: VertexKind,
    pub generators: Vec<Word>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EdgeData {
    pub id: String,
    pub origin: usize,
    pub terminus: usize,
    pub class: EdgeClass,
    /// Origin-side generator of the edge group; identity for trivial edges.
    pub generator: Word,
    pub tree: bool,
    /// Present exactly for non-tree edges.
    pub stable_letter: Option<Word>,
}

impl EdgeData {
    pub fn stable(&self) -> Word {
        self.stable_letter.clone().unwrap_or_default()
    }

    pub fn is_trivial(&self) -> bool {
        self.class == EdgeClass::Trivial
    }

    pub fn other_end(&self, v: usize) -> usize {
        if self.origin == v {
            self.terminus
        } else {
            self.origin
        }
    }

    pub fn touches(&self, v: usize) -> bool {
        self.origin == v || self.terminus == v
    }
}

/// One directed traversal of an edge.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Step {
    pub edge: usize,
    pub forward: bool,
}

impl Step {
    pub fn reversed(self) -> Step {
        Step { edge: self.edge, forward: !self.forward }
    }
}

/// A generator of the whole group read off the presentation.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Symbol {
    Vertex { vertex: usize, index: usize },
    Stable { edge: usize },
}

#[derive(Clone, Debug)]
pub struct GraphOfGroups {
    alphabet: Alphabet,
    vertices: Vec<VertexData>,
    edges: Vec<EdgeData>,
    base: usize,
    fa: BTreeSet<usize>,
    groups: Vec<SubgroupAutomaton>,
    symbols: Vec<Symbol>,
    whole: SubgroupAutomaton,
    tree_paths: Vec<Vec<Step>>,
}

impl GraphOfGroups {
    pub fn new(
        alphabet: Alphabet,
        vertices: Vec<VertexData>,
        edges: Vec<EdgeData>,
        base: usize,
        fa: BTreeSet<usize>,
    ) -> Result<Self> {
        let n = vertices.len();
        if base >= n {
            return Err(Error::Malformed("no base vertex".into()));
        }
        let bases: Vec<_> = vertices.iter().filter(|v| v.kind == VertexKind::Base).map(|v| &v.id).collect();
        if bases.len() != 1 || vertices[base].kind != VertexKind::Base {
            return Err(Error::Malformed(format!("exactly one base vertex required, found {bases:?}")));
        }
        let mut ids = BTreeSet::new();
        for v in &vertices {
            if !ids.insert(v.id.as_str()) {
                return Err(Error::Malformed(format!("duplicate vertex id {:?}", v.id)));
            }
        }
        let mut eids = BTreeSet::new();
        for e in &edges {
            if !eids.insert(e.id.as_str()) {
                return Err(Error::Malformed(format!("duplicate edge id {:?}", e.id)));
            }
            if e.origin >= n || e.terminus >= n {
                return Err(Error::Malformed(format!("edge {:?} has a dangling endpoint", e.id)));
            }
            match e.class {
                EdgeClass::Cyclic if e.generator.is_identity() => {
                    return Err(Error::Malformed(format!("cyclic edge {:?} needs a non-trivial generator", e.id)))
                }
                EdgeClass::Trivial if !e.generator.is_identity() => {
                    return Err(Error::Malformed(format!("trivial edge {:?} carries a generator", e.id)))
                }
                _ => {}
            }
            if e.tree == e.stable_letter.is_some() {
                return Err(Error::Malformed(format!(
                    "edge {:?}: stable letters go exactly on non-tree edges",
                    e.id
                )));
            }
        }
        if let Some(&v) = fa.iter().find(|&&v| v >= n) {
            return Err(Error::Malformed(format!("F_A-subgraph names missing vertex {v}")));
        }
        let tree_paths = spanning_paths(n, &edges, base)?;
        let groups = vertices.iter().map(|v| SubgroupAutomaton::fold_build(&v.generators)).collect();
        let mut symbols = Vec::new();
        let mut words = Vec::new();
        for (vi, v) in vertices.iter().enumerate() {
            for (index, g) in v.generators.iter().enumerate() {
                symbols.push(Symbol::Vertex { vertex: vi, index });
                words.push(g.clone());
            }
        }
        for (ei, e) in edges.iter().enumerate() {
            if let Some(s) = &e.stable_letter {
                symbols.push(Symbol::Stable { edge: ei });
                words.push(s.clone());
            }
        }
        let whole = SubgroupAutomaton::fold_build(&words);
        Ok(GraphOfGroups { alphabet, vertices, edges, base, fa, groups, symbols, whole, tree_paths })
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    pub fn rank(&self) -> usize {
        self.alphabet.rank()
    }

    pub fn vertices(&self) -> &[VertexData] {
        &self.vertices
    }

    pub fn edges(&self) -> &[EdgeData] {
        &self.edges
    }

    pub fn vertex(&self, v: usize) -> &VertexData {
        &self.vertices[v]
    }

    pub fn edge(&self, e: usize) -> &EdgeData {
        &self.edges[e]
    }

    pub fn base(&self) -> usize {
        self.base
    }

    pub fn group(&self, v: usize) -> &SubgroupAutomaton {
        &self.groups[v]
    }

    pub fn whole_group(&self) -> &SubgroupAutomaton {
        &self.whole
    }

    pub fn symbols(&self) -> &[Symbol] {
        &self.symbols
    }

    pub fn vertex_index(&self, id: &str) -> Result<usize> {
        self.vertices.iter().position(|v| v.id == id).ok_or_else(|| Error::UnknownId(id.to_string()))
    }

    pub fn edge_index(&self, id: &str) -> Result<usize> {
        self.edges.iter().position(|e| e.id == id).ok_or_else(|| Error::UnknownId(id.to_string()))
    }

    pub fn is_ztype(&self, v: usize) -> bool {
        self.vertices[v].kind == VertexKind::Ztype
    }

    pub fn parse_word(&self, s: &str) -> Result<Word> {
        Word::parse(s, &self.alphabet)
    }

    pub fn render(&self, w: &Word) -> String {
        w.render(&self.alphabet)
    }

    /// Vertices of the F_A-subgraph.
    pub fn fa_vertices(&self) -> &BTreeSet<usize> {
        &self.fa
    }

    /// Cyclic edges with both endpoints in the F_A-subgraph.
    pub fn is_fa_edge(&self, e: usize) -> bool {
        let d = &self.edges[e];
        !d.is_trivial() && self.fa.contains(&d.origin) && self.fa.contains(&d.terminus)
    }

    pub fn fa_edges(&self) -> BTreeSet<usize> {
        (0..self.edges.len()).filter(|&e| self.is_fa_edge(e)).collect()
    }

    /// Generator of the edge group as a subgroup of the group at endpoint
    /// `v` (the origin side unless `v` is the terminus of a non-tree edge).
    pub fn side_generator(&self, e: usize, at_terminus: bool) -> Word {
        let d = &self.edges[e];
        if at_terminus && !d.tree {
            d.generator.conjugate_by(&d.stable().inverse())
        } else {
            d.generator.clone()
        }
    }

    pub fn step_source(&self, s: Step) -> usize {
        let d = &self.edges[s.edge];
        if s.forward {
            d.origin
        } else {
            d.terminus
        }
    }

    pub fn step_target(&self, s: Step) -> usize {
        let d = &self.edges[s.edge];
        if s.forward {
            d.terminus
        } else {
            d.origin
        }
    }

    /// Stable-letter contribution of a traversal.
    pub fn step_letter(&self, s: Step) -> Word {
        let t = self.edges[s.edge].stable();
        if s.forward {
            t
        } else {
            t.inverse()
        }
    }

    /// Spanning-tree path from the base to `v`.
    pub fn tree_path_from_base(&self, v: usize) -> &[Step] {
        &self.tree_paths[v]
    }

    /// Spanning-tree path between two vertices.
    pub fn tree_path(&self, from: usize, to: usize) -> Vec<Step> {
        let pu = &self.tree_paths[from];
        let pv = &self.tree_paths[to];
        let common = pu.iter().zip(pv).take_while(|(a, b)| a == b).count();
        pu[common..].iter().rev().map(|s| s.reversed()).chain(pv[common..].iter().copied()).collect()
    }

    /// Incident edges as `(edge, other endpoint)`; loops appear once.
    pub fn incident(&self, v: usize) -> Vec<(usize, usize)> {
        self.edges
            .iter()
            .enumerate()
            .filter(|(_, e)| e.touches(v))
            .map(|(i, e)| (i, e.other_end(v)))
            .collect()
    }

    /// Edges of the graph keyed by id, for lookup in tests and reports.
    pub fn edge_ids(&self) -> BTreeMap<String, usize> {
        self.edges.iter().enumerate().map(|(i, e)| (e.id.clone(), i)).collect()
    }

    pub fn with_fa(&self, fa: BTreeSet<usize>) -> Result<Self> {
        GraphOfGroups::new(self.alphabet.clone(), self.vertices.clone(), self.edges.clone(), self.base, fa)
    }
}

fn spanning_paths(n: usize, edges: &[EdgeData], base: usize) -> Result<Vec<Vec<Step>>> {
    let tree_edges = edges.iter().filter(|e| e.tree).count();
    if tree_edges + 1 != n {
        return Err(Error::Malformed(format!(
            "spanning tree must have {} edges, found {tree_edges}",
            n.saturating_sub(1)
        )));
    }
    let mut paths: Vec<Option<Vec<Step>>> = vec![None; n];
    paths[base] = Some(Vec::new());
    let mut queue = VecDeque::from([base]);
    while let Some(x) = queue.pop_front() {
        for (i, e) in edges.iter().enumerate() {
            if !e.tree {
                continue;
            }
            let step = if e.origin == x {
                Step { edge: i, forward: true }
            } else if e.terminus == x {
                Step { edge: i, forward: false }
            } else {
                continue;
            };
            let y = if step.forward { e.terminus } else { e.origin };
            if paths[y].is_none() {
                let mut p = paths[x].clone().unwrap_or_default();
                p.push(step);
                paths[y] = Some(p);
                queue.push_back(y);
            }
        }
    }
    paths
        .into_iter()
        .collect::<Option<Vec<_>>>()
        .ok_or_else(|| Error::Malformed("spanning tree does not span".into()))
}
