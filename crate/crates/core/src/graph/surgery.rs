//! Quotients of graphs of groups: collapsing edge orbits and folding edges of
//! a cylinder together.
//!
//! Each vertex `v` has a chosen lift `ṽ` in the Bass–Serre tree with
//! stabilizer `G_v`; an edge `o → t` with stable letter `s` lifts to the
//! segment `õ — s·t̃`. Identifications of lifted points are tracked by a
//! union-find whose members carry translations `p_x` with `p_x·x̃` equal to
//! the class's lift point.

use std::collections::{BTreeMap, BTreeSet, VecDeque};

use super::{EdgeClass, EdgeData, GraphOfGroups, VertexData, VertexKind};
use crate::automaton::SubgroupAutomaton;
use crate::error::{Error, Result};
use crate::word::{commensurable, power_of, root, Alphabet, Word};

/// An edge whose lift joins the lift point of `origin` to
/// `translation·(lift point of terminus)`.
#[derive(Clone, Debug)]
pub(crate) struct RawEdge {
    pub id: String,
    pub origin: usize,
    pub terminus: usize,
    pub class: EdgeClass,
    pub generator: Word,
    pub translation: Word,
}

/// Chooses a spanning tree (cyclic edges first, in index order) and moves
/// every lift point so tree edges need no stable letter. The base keeps
/// `base_shift` as its translation.
pub(crate) fn rebase(
    alphabet: Alphabet,
    vertices: Vec<VertexData>,
    edges: Vec<RawEdge>,
    base: usize,
    base_shift: Word,
    fa: BTreeSet<usize>,
) -> Result<GraphOfGroups> {
    let n = vertices.len();
    let mut q: Vec<Option<Word>> = vec![None; n];
    q[base] = Some(base_shift);
    let mut tree = vec![false; edges.len()];
    loop {
        let mut queue: VecDeque<usize> = (0..n).filter(|&v| q[v].is_some()).collect();
        while let Some(x) = queue.pop_front() {
            for (i, e) in edges.iter().enumerate() {
                if e.class == EdgeClass::Trivial || e.origin == e.terminus {
                    continue;
                }
                if let Some(y) = extend(&mut q, e, x) {
                    tree[i] = true;
                    queue.push_back(y);
                }
            }
        }
        if q.iter().all(Option::is_some) {
            break;
        }
        let bridge = edges.iter().enumerate().find_map(|(i, e)| {
            let ends = [e.origin, e.terminus];
            ends.iter().find(|&&x| q[x].is_some() && q[e.other(x)].is_none()).map(|&x| (i, x))
        });
        let Some((i, x)) = bridge else {
            return Err(Error::Malformed("quotient graph is disconnected".into()));
        };
        extend(&mut q, &edges[i], x);
        tree[i] = true;
    }
    let q: Vec<Word> = q.into_iter().map(Option::unwrap_or_default).collect();
    let vertices = vertices
        .into_iter()
        .zip(&q)
        .map(|(v, qv)| VertexData { generators: v.generators.iter().map(|g| g.conjugate_by(qv)).collect(), ..v })
        .collect();
    let edges = edges
        .into_iter()
        .zip(tree)
        .map(|(e, is_tree)| {
            let qo = &q[e.origin];
            let s = qo.mul(&e.translation).mul(&q[e.terminus].inverse());
            debug_assert!(!is_tree || s.is_identity());
            EdgeData {
                id: e.id,
                origin: e.origin,
                terminus: e.terminus,
                class: e.class,
                generator: e.generator.conjugate_by(qo),
                tree: is_tree,
                stable_letter: (!is_tree).then_some(s),
            }
        })
        .collect();
    GraphOfGroups::new(alphabet, vertices, edges, base, fa)
}

impl RawEdge {
    fn other(&self, x: usize) -> usize {
        if self.origin == x {
            self.terminus
        } else {
            self.origin
        }
    }
}

fn extend(q: &mut [Option<Word>], e: &RawEdge, x: usize) -> Option<usize> {
    let y = e.other(x);
    if q[y].is_some() || q[x].is_none() {
        return None;
    }
    let qx = q[x].clone().unwrap_or_default();
    q[y] = Some(if e.origin == x { qx.mul(&e.translation) } else { qx.mul(&e.translation.inverse()) });
    Some(y)
}

struct Quotient {
    parent: Vec<usize>,
    shift: Vec<Word>,
    extras: Vec<Vec<Word>>,
}

impl Quotient {
    fn new(n: usize) -> Self {
        Quotient { parent: (0..n).collect(), shift: vec![Word::identity(); n], extras: vec![Vec::new(); n] }
    }

    fn find(&self, mut x: usize) -> usize {
        while self.parent[x] != x {
            x = self.parent[x];
        }
        x
    }

    /// Identifies the points `g·ã` and `h·b̃`.
    fn identify(&mut self, a: usize, g: &Word, b: usize, h: &Word) {
        let (ra, rb) = (self.find(a), self.find(b));
        let k = self.shift[b].mul(&h.inverse()).mul(g).mul(&self.shift[a].inverse());
        if ra == rb {
            if !k.is_identity() {
                self.extras[ra].push(k);
            }
            return;
        }
        let kinv = k.inverse();
        for x in 0..self.parent.len() {
            if self.find(x) == rb {
                self.shift[x] = kinv.mul(&self.shift[x]);
            }
        }
        let moved: Vec<Word> = std::mem::take(&mut self.extras[rb]).iter().map(|w| w.conjugate_by(&kinv)).collect();
        self.extras[ra].extend(moved);
        self.parent[rb] = ra;
    }

    fn build(
        self,
        graph: &GraphOfGroups,
        removed: &BTreeSet<usize>,
        generator_override: &BTreeMap<usize, Word>,
    ) -> Result<GraphOfGroups> {
        let n = graph.vertices().len();
        let roots: Vec<usize> = (0..n).filter(|&x| self.find(x) == x).collect();
        let class_of: BTreeMap<usize, usize> = roots.iter().enumerate().map(|(i, &r)| (r, i)).collect();
        let mut vertices = Vec::new();
        let mut fa = BTreeSet::new();
        let mut new_base = 0;
        for (ci, &r) in roots.iter().enumerate() {
            let members: Vec<usize> = (0..n).filter(|&x| self.find(x) == r).collect();
            let mut gens = Vec::new();
            for &x in &members {
                gens.extend(graph.vertex(x).generators.iter().map(|g| g.conjugate_by(&self.shift[x])));
            }
            gens.extend(self.extras[r].iter().cloned());
            let (id, kind) = if members.len() == 1 {
                let d = graph.vertex(members[0]);
                (d.id.clone(), d.kind)
            } else {
                gens = SubgroupAutomaton::fold_build(&gens).free_basis();
                let id = members.iter().map(|&x| graph.vertex(x).id.as_str()).collect::<Vec<_>>().join("+");
                let kind = if members.contains(&graph.base()) { VertexKind::Base } else { VertexKind::Rigid };
                (id, kind)
            };
            if members.contains(&graph.base()) {
                new_base = ci;
            }
            if members.iter().any(|x| graph.fa_vertices().contains(x)) {
                fa.insert(ci);
            }
            vertices.push(VertexData { id, kind, generators: gens });
        }
        let mut edges = Vec::new();
        for (i, e) in graph.edges().iter().enumerate() {
            if removed.contains(&i) {
                continue;
            }
            let po = &self.shift[e.origin];
            let pt = &self.shift[e.terminus];
            let generator = generator_override.get(&i).unwrap_or(&e.generator);
            edges.push(RawEdge {
                id: e.id.clone(),
                origin: class_of[&self.find(e.origin)],
                terminus: class_of[&self.find(e.terminus)],
                class: e.class,
                generator: generator.conjugate_by(po),
                translation: po.mul(&e.stable()).mul(&pt.inverse()),
            });
        }
        let base_shift = self.shift[graph.base()].inverse();
        rebase(graph.alphabet().clone(), vertices, edges, new_base, base_shift, fa)
    }
}

impl GraphOfGroups {
    /// Collapses the given edges to points.
    pub fn collapse_edges(&self, edges: &[usize]) -> Result<GraphOfGroups> {
        let mut q = Quotient::new(self.vertices().len());
        for &e in edges {
            let d = self.edges().get(e).ok_or_else(|| Error::UnknownId(format!("edge #{e}")))?;
            q.identify(d.origin, &Word::identity(), d.terminus, &d.stable());
        }
        q.build(self, &edges.iter().copied().collect(), &BTreeMap::new())
    }

    /// Folds each part (edges at one ztype vertex with commensurable edge
    /// groups) into a single edge, merging the far endpoints.
    pub fn fold_cylinder_edges(&self, parts: &[Vec<usize>]) -> Result<GraphOfGroups> {
        let mut q = Quotient::new(self.vertices().len());
        let mut removed = BTreeSet::new();
        let mut overrides = BTreeMap::new();
        for part in parts {
            let Some(&first) = part.first() else { continue };
            let z = self.common_ztype_end(part)?;
            let side = |e: usize| self.side_generator(e, self.edge(e).terminus == z);
            let (rho, _) = root(&side(first))?;
            let mut g = 0i64;
            for &e in part {
                if !commensurable(&side(e), &side(first))? {
                    return Err(Error::Precondition(format!(
                        "edges {} and {} are not commensurable",
                        self.edge(first).id,
                        self.edge(e).id
                    )));
                }
                let k = power_of(&side(e), &rho).ok_or_else(|| Error::Internal("edge group not a power of its root".into()))?;
                g = gcd(g, k);
            }
            let keep_side = rho.pow(g);
            let kd = self.edge(first);
            let keep_gen = if kd.terminus == z && !kd.tree { keep_side.conjugate_by(&kd.stable()) } else { keep_side };
            overrides.insert(first, keep_gen);
            // far endpoint x of each edge, as a point: s⁻¹·x̃ for x → z, s·x̃ for z → x
            let point = |e: usize| {
                let d = self.edge(e);
                if d.terminus == z {
                    (d.origin, d.stable().inverse())
                } else {
                    (d.terminus, d.stable())
                }
            };
            let (x0, g0) = point(first);
            for &e in &part[1..] {
                let (x, h) = point(e);
                q.identify(x0, &g0, x, &h);
                removed.insert(e);
            }
        }
        q.build(self, &removed, &overrides)
    }

    fn common_ztype_end(&self, part: &[usize]) -> Result<usize> {
        let mut common: Option<BTreeSet<usize>> = None;
        for &e in part {
            let d = self.edges().get(e).ok_or_else(|| Error::UnknownId(format!("edge #{e}")))?;
            if d.is_trivial() {
                return Err(Error::TrivialEdgeNoCylinder(d.id.clone()));
            }
            if d.origin == d.terminus {
                return Err(Error::Precondition(format!("loop {} cannot be folded", d.id)));
            }
            let ends: BTreeSet<usize> = [d.origin, d.terminus].into_iter().filter(|&v| self.is_ztype(v)).collect();
            common = Some(match common {
                None => ends,
                Some(c) => c.intersection(&ends).copied().collect(),
            });
        }
        common
            .and_then(|c| c.into_iter().next())
            .ok_or_else(|| Error::Precondition("fold part does not share a ztype endpoint".into()))
    }
}

fn gcd(a: i64, b: i64) -> i64 {
    let (mut a, mut b) = (a.abs(), b.abs());
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}
