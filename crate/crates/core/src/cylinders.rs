//! Cylinders, the tree of cylinders, envelopes, and envelope covers.

use std::collections::{BTreeMap, BTreeSet, VecDeque};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{rebase, RawEdge};
use crate::graph::{EdgeClass, GraphOfGroups, VertexData, VertexKind};
use crate::subgraph::Subgraph;
use crate::word::{commensurable, cyclic_normal_form, power_of, root, CyclicWord, Word};

/// How envelopes in a cover may meet.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Disjointness {
    /// Closed images in Λ share no vertex.
    #[default]
    Vertex,
    /// Closed images may share ztype vertices.
    Lenient,
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct Envelope {
    pub center: usize,
    pub edges: BTreeSet<usize>,
}

impl Envelope {
    pub fn closure(&self, graph: &GraphOfGroups) -> Subgraph {
        let mut s = Subgraph::vertex(self.center);
        for &e in &self.edges {
            s.add_edge(graph, e);
        }
        s
    }
}

/// Commensurability classes of cyclic F_A edges. Two edges meeting at a
/// vertex are related when their edge groups there have a common power.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Cylinder {
    pub edges: BTreeSet<usize>,
    pub vertices: BTreeSet<usize>,
}

impl GraphOfGroups {
    pub fn cylinders(&self) -> Vec<Cylinder> {
        let fa: Vec<usize> = self.fa_edges().into_iter().collect();
        let mut parent: BTreeMap<usize, usize> = fa.iter().map(|&e| (e, e)).collect();
        fn find(p: &BTreeMap<usize, usize>, mut x: usize) -> usize {
            while p[&x] != x {
                x = p[&x];
            }
            x
        }
        for v in 0..self.vertices().len() {
            let sides: Vec<(usize, Word)> = fa
                .iter()
                .filter(|&&e| self.edge(e).touches(v))
                .flat_map(|&e| {
                    let d = self.edge(e);
                    let mut out = Vec::new();
                    if d.origin == v {
                        out.push((e, self.side_generator(e, false)));
                    }
                    if d.terminus == v {
                        out.push((e, self.side_generator(e, true)));
                    }
                    out
                })
                .collect();
            for (i, (e, u)) in sides.iter().enumerate() {
                for (f, w) in &sides[i + 1..] {
                    if commensurable(u, w).unwrap_or(false) {
                        let (a, b) = (find(&parent, *e), find(&parent, *f));
                        if a != b {
                            parent.insert(a.max(b), a.min(b));
                        }
                    }
                }
            }
        }
        let mut classes: BTreeMap<usize, Cylinder> = BTreeMap::new();
        for &e in &fa {
            let c = classes
                .entry(find(&parent, e))
                .or_insert_with(|| Cylinder { edges: BTreeSet::new(), vertices: BTreeSet::new() });
            c.edges.insert(e);
            c.vertices.insert(self.edge(e).origin);
            c.vertices.insert(self.edge(e).terminus);
        }
        classes.into_values().collect()
    }

    /// Index into [`GraphOfGroups::cylinders`] of the cylinder containing `e`.
    pub fn cylinder_of_edge(&self, e: usize) -> Result<usize> {
        let d = self.edges().get(e).ok_or_else(|| Error::UnknownId(format!("edge #{e}")))?;
        if d.is_trivial() {
            return Err(Error::TrivialEdgeNoCylinder(d.id.clone()));
        }
        self.cylinders()
            .iter()
            .position(|c| c.edges.contains(&e))
            .ok_or_else(|| Error::Precondition(format!("edge {} is not in the F_A-subgraph", d.id)))
    }

    /// The ztype vertex a cylinder is centered on, when it is star-shaped.
    pub fn cylinder_center(&self, c: &Cylinder) -> Option<usize> {
        c.vertices
            .iter()
            .copied()
            .find(|&z| self.is_ztype(z) && c.edges.iter().all(|&e| self.edge(e).touches(z)))
    }

    /// Quotient-level tree of cylinders: one ztype vertex per cylinder,
    /// boundary vertices kept, everything else absorbed.
    pub fn tree_of_cylinders(&self) -> Result<GraphOfGroups> {
        if let Some(e) = self.edges().iter().find(|e| e.is_trivial()) {
            return Err(Error::TrivialEdgeNoCylinder(e.id.clone()));
        }
        let cylinders = self.cylinders();
        let n = self.vertices().len();
        let boundary: Vec<bool> = (0..n).map(|x| self.is_cylinder_boundary(x, &cylinders)).collect();
        let mut index = vec![usize::MAX; n];
        let mut vertices = Vec::new();
        for x in (0..n).filter(|&x| boundary[x]) {
            index[x] = vertices.len();
            vertices.push(self.vertex(x).clone());
        }
        let mut edges = Vec::new();
        let mut fa: BTreeSet<usize> = (0..n)
            .filter(|&x| boundary[x] && self.fa_vertices().contains(&x))
            .map(|x| index[x])
            .collect();
        for (ci, cyl) in cylinders.iter().enumerate() {
            let lift = self.lift_cylinder(cyl);
            let first = *cyl.edges.iter().next().expect("cylinders are non-empty");
            let (rho, _) = root(&self.edge(first).generator.conjugate_by(&lift[&self.edge(first).origin]))?;
            let absorbed_z: Vec<usize> =
                cyl.vertices.iter().copied().filter(|&v| !boundary[v] && self.is_ztype(v)).collect();
            let id = match absorbed_z.as_slice() {
                [z] => self.vertex(*z).id.clone(),
                _ => format!("cyl{ci}"),
            };
            let z_index = vertices.len();
            vertices.push(VertexData { id, kind: VertexKind::Ztype, generators: vec![rho.clone()] });
            if cyl.vertices.iter().any(|v| self.fa_vertices().contains(v)) {
                fa.insert(z_index);
            }
            for &x in cyl.vertices.iter().filter(|&&x| boundary[x]) {
                let px = &lift[&x];
                let local = rho.conjugate_by(&px.inverse());
                let bound = cyl
                    .edges
                    .iter()
                    .filter(|&&e| self.edge(e).touches(x))
                    .filter_map(|&e| power_of(&self.side_generator(e, self.edge(e).origin != x), &local))
                    .map(i64::unsigned_abs)
                    .max()
                    .unwrap_or(1);
                let j = (1..=bound.max(1))
                    .find(|&j| self.group(x).contains(&local.pow(j as i64)))
                    .unwrap_or(bound.max(1));
                let at_x: Vec<&str> =
                    cyl.edges.iter().filter(|&&e| self.edge(e).touches(x)).map(|&e| self.edge(e).id.as_str()).collect();
                edges.push(RawEdge {
                    id: at_x.join("+"),
                    origin: index[x],
                    terminus: z_index,
                    class: EdgeClass::Cyclic,
                    generator: local.pow(j as i64),
                    translation: px.inverse(),
                });
            }
        }
        // an edge joining two boundary vertices is named at both of them
        let mut seen: BTreeMap<String, usize> = BTreeMap::new();
        for e in &edges {
            *seen.entry(e.id.clone()).or_default() += 1;
        }
        for e in edges.iter_mut().filter(|e| seen[&e.id] > 1) {
            e.id = format!("{}@{}", e.id, vertices[e.origin].id);
        }
        rebase(self.alphabet().clone(), vertices, edges, index[self.base()], Word::identity(), fa)
    }

    fn is_cylinder_boundary(&self, x: usize, cylinders: &[Cylinder]) -> bool {
        if x == self.base() {
            return true;
        }
        let classes = cylinders.iter().filter(|c| c.vertices.contains(&x)).count();
        if classes >= 2 || self.group(x).rank() >= 2 {
            return true;
        }
        let incident = self.incident(x);
        if let [(e, _)] = incident.as_slice() {
            let d = self.edge(*e);
            if d.origin != d.terminus {
                let side = self.side_generator(*e, d.terminus == x);
                let g = &self.vertex(x).generators;
                return g.iter().all(|g| power_of(g, &side).is_some());
            }
        }
        false
    }

    /// Translations `p_v` placing the cylinder's vertices on one connected
    /// lift: the lifted edge at `p_o·õ` reaches `p_o·s·t̃`.
    fn lift_cylinder(&self, cyl: &Cylinder) -> BTreeMap<usize, Word> {
        let start = *cyl.vertices.iter().next().expect("cylinders are non-empty");
        let mut p = BTreeMap::from([(start, Word::identity())]);
        let mut queue = VecDeque::from([start]);
        while let Some(x) = queue.pop_front() {
            for &e in &cyl.edges {
                let d = self.edge(e);
                let px = p[&x].clone();
                if d.origin == x && !p.contains_key(&d.terminus) {
                    p.insert(d.terminus, px.mul(&d.stable()));
                    queue.push_back(d.terminus);
                } else if d.terminus == x && !p.contains_key(&d.origin) {
                    p.insert(d.origin, px.mul(&d.stable().inverse()));
                    queue.push_back(d.origin);
                }
            }
        }
        p
    }

    pub fn is_envelope(&self, center: usize, edges: &BTreeSet<usize>) -> bool {
        if center >= self.vertices().len() || !matches!(self.vertex(center).kind, VertexKind::Base | VertexKind::Rigid) {
            return false;
        }
        let mut far = BTreeSet::new();
        for &e in edges {
            let Some(d) = self.edges().get(e) else { return false };
            if !self.is_fa_edge(e) || !d.touches(center) || d.origin == d.terminus {
                return false;
            }
            let z = d.other_end(center);
            if !self.is_ztype(z) || !far.insert(z) {
                return false;
            }
        }
        if center == self.base() {
            let valence = self.incident(center).iter().filter(|(e, _)| self.is_fa_edge(*e)).count();
            if valence == 1 && edges.len() > 1 {
                return false;
            }
        }
        true
    }

    /// Envelopes whose closed images contain `s` and are disjoint in the
    /// given sense, if any exist.
    pub fn envelope_cover(&self, s: &Subgraph, mode: Disjointness) -> Option<Vec<Envelope>> {
        if s.edges.iter().any(|&e| self.edge(e).is_trivial())
            || s.vertices.iter().any(|&v| self.vertex(v).kind == VertexKind::Surface)
        {
            return None;
        }
        let mut by_center: BTreeMap<usize, BTreeSet<usize>> = BTreeMap::new();
        for &e in &s.edges {
            let d = self.edge(e);
            let centers: Vec<usize> = [d.origin, d.terminus].into_iter().filter(|&v| !self.is_ztype(v)).collect();
            let [c] = centers.as_slice() else { return None };
            by_center.entry(*c).or_default().insert(e);
        }
        for &v in &s.vertices {
            if !self.is_ztype(v) {
                by_center.entry(v).or_default();
            }
        }
        let mut envelopes: Vec<Envelope> =
            by_center.into_iter().map(|(center, edges)| Envelope { center, edges }).collect();
        if !envelopes.iter().all(|e| self.is_envelope(e.center, &e.edges)) || !self.pairwise_disjoint(&envelopes, mode)
        {
            return None;
        }
        let covered: BTreeSet<usize> = envelopes.iter().flat_map(|e| e.closure(self).vertices).collect();
        let loose: Vec<usize> = s.vertices.iter().copied().filter(|v| !covered.contains(v)).collect();
        self.attach_loose(&mut envelopes, &loose, mode).then(|| {
            envelopes.sort();
            envelopes
        })
    }

    fn attach_loose(&self, envelopes: &mut Vec<Envelope>, loose: &[usize], mode: Disjointness) -> bool {
        let Some((&z, rest)) = loose.split_first() else { return true };
        if envelopes.iter().any(|e| e.closure(self).vertices.contains(&z)) {
            return self.attach_loose(envelopes, rest, mode);
        }
        for (e, x) in self.incident(z) {
            if !self.is_fa_edge(e) || x == z {
                continue;
            }
            let existing = envelopes.iter().position(|env| env.center == x);
            match existing {
                Some(i) => {
                    envelopes[i].edges.insert(e);
                    if self.is_envelope(x, &envelopes[i].edges)
                        && self.pairwise_disjoint(envelopes, mode)
                        && self.attach_loose(envelopes, rest, mode)
                    {
                        return true;
                    }
                    envelopes[i].edges.remove(&e);
                }
                None => {
                    envelopes.push(Envelope { center: x, edges: BTreeSet::from([e]) });
                    if self.is_envelope(x, &envelopes[envelopes.len() - 1].edges)
                        && self.pairwise_disjoint(envelopes, mode)
                        && self.attach_loose(envelopes, rest, mode)
                    {
                        return true;
                    }
                    envelopes.pop();
                }
            }
        }
        false
    }

    fn pairwise_disjoint(&self, envelopes: &[Envelope], mode: Disjointness) -> bool {
        let closures: Vec<Subgraph> = envelopes.iter().map(|e| e.closure(self)).collect();
        for (i, a) in closures.iter().enumerate() {
            for b in &closures[i + 1..] {
                let shared = a.intersection(b);
                let ok = match mode {
                    Disjointness::Vertex => shared.vertices.is_empty(),
                    Disjointness::Lenient => shared.edges.is_empty() && shared.vertices.iter().all(|&v| self.is_ztype(v)),
                };
                if !ok {
                    return false;
                }
            }
        }
        true
    }
}

fn vertex_signature(g: &GraphOfGroups, v: usize) -> (VertexKind, usize, Option<CyclicWord>) {
    let rank = g.group(v).rank();
    let class = if rank == 1 {
        g.group(v).free_basis().first().map(|w| {
            let r = root(w).map(|(r, _)| r).unwrap_or_default();
            cyclic_normal_form(&r).min(cyclic_normal_form(&r.inverse()))
        })
    } else {
        None
    };
    (g.vertex(v).kind, rank, class)
}

/// Bijection of vertices preserving kinds, vertex-group ranks, conjugacy
/// classes of cyclic vertex groups, and undirected edge multiplicities by
/// class.
pub fn structurally_isomorphic(a: &GraphOfGroups, b: &GraphOfGroups) -> bool {
    let n = a.vertices().len();
    if n != b.vertices().len() || a.edges().len() != b.edges().len() {
        return false;
    }
    let sa: Vec<_> = (0..n).map(|v| vertex_signature(a, v)).collect();
    let sb: Vec<_> = (0..n).map(|v| vertex_signature(b, v)).collect();
    let count = |g: &GraphOfGroups| {
        let mut m: BTreeMap<(usize, usize, EdgeClass), usize> = BTreeMap::new();
        for e in g.edges() {
            let key = (e.origin.min(e.terminus), e.origin.max(e.terminus), e.class);
            *m.entry(key).or_default() += 1;
        }
        m
    };
    let (ca, cb) = (count(a), count(b));
    let mut map = vec![usize::MAX; n];
    let mut used = vec![false; n];
    fn search(
        i: usize,
        map: &mut Vec<usize>,
        used: &mut Vec<bool>,
        sa: &[(VertexKind, usize, Option<CyclicWord>)],
        sb: &[(VertexKind, usize, Option<CyclicWord>)],
        ca: &BTreeMap<(usize, usize, EdgeClass), usize>,
        cb: &BTreeMap<(usize, usize, EdgeClass), usize>,
    ) -> bool {
        if i == map.len() {
            return ca.iter().all(|(&(x, y, c), &k)| {
                let (u, v) = (map[x], map[y]);
                cb.get(&(u.min(v), u.max(v), c)) == Some(&k)
            });
        }
        for j in 0..map.len() {
            if used[j] || sa[i] != sb[j] {
                continue;
            }
            map[i] = j;
            used[j] = true;
            if search(i + 1, map, used, sa, sb, ca, cb) {
                return true;
            }
            used[j] = false;
        }
        false
    }
    search(0, &mut map, &mut used, &sa, &sb, &ca, &cb)
}
