//! Independent reference computations used to cross-check the library.

use std::collections::{BTreeMap, BTreeSet, VecDeque};

use rand::Rng;
use splitkit::graph::Symbol;
use splitkit::{GraphOfGroups, Letter, Step, Subgraph, VertexKind, Word};

type Node = (usize, (usize, Word));

fn node(g: &GraphOfGroups, v: usize, h: &Word) -> Node {
    (v, g.group(v).left_coset_key(h))
}

fn symbol_word(g: &GraphOfGroups, s: Symbol) -> Word {
    match s {
        Symbol::Vertex { vertex, index } => g.vertex(vertex).generators[index].clone(),
        Symbol::Stable { edge } => g.edge(edge).stable(),
    }
}

/// Geodesic from the base vertex of the Bass–Serre tree to its `x`-translate,
/// found by breadth-first search in an explicitly built piece of the tree.
///
/// Tree vertices are pairs `(v, h·G_v)`; each Λ-edge `f: o → t` with stable
/// letter `s` contributes, for every translate `h` in the sample, the tree
/// edge `(o, h·G_o) — (t, h·s·G_t)`. The sample contains every prefix of an
/// expression of `x` over the splitting symbols (and each prefix times the
/// next symbol), which spans a walk from the base to `x`·base, plus all
/// products of at most `ball` symbols.
pub fn tree_geodesic(g: &GraphOfGroups, x: &Word, ball: usize) -> Vec<Step> {
    let symbols: Vec<Word> = g.symbols().iter().map(|&s| symbol_word(g, s)).collect();
    let expr = g.whole_group().express(x).expect("element of the group");
    let mut sample: BTreeSet<Word> = BTreeSet::from([Word::identity()]);
    let mut h = Word::identity();
    for l in expr.letters() {
        let sym = &symbols[l.generator as usize];
        h = h.mul(&if l.inverse { sym.inverse() } else { sym.clone() });
        sample.insert(h.clone());
    }
    let mut layer = vec![Word::identity()];
    for _ in 0..ball {
        let mut next = Vec::new();
        for p in &layer {
            for s in &symbols {
                for q in [s.clone(), s.inverse()] {
                    let r = p.mul(&q);
                    if sample.insert(r.clone()) {
                        next.push(r);
                    }
                }
            }
        }
        layer = next;
    }
    let mut adj: BTreeMap<Node, Vec<(Node, Step)>> = BTreeMap::new();
    let mut seen_edges = BTreeSet::new();
    for h in &sample {
        for (fi, f) in g.edges().iter().enumerate() {
            let a = node(g, f.origin, h);
            let b = node(g, f.terminus, &h.mul(&f.stable()));
            if seen_edges.insert((fi, a.clone(), b.clone())) {
                adj.entry(a.clone()).or_default().push((b.clone(), Step { edge: fi, forward: true }));
                adj.entry(b).or_default().push((a, Step { edge: fi, forward: false }));
            }
        }
    }
    let start = node(g, g.base(), &Word::identity());
    let goal = node(g, g.base(), x);
    let mut prev: BTreeMap<Node, (Node, Step)> = BTreeMap::new();
    let mut seen = BTreeSet::from([start.clone()]);
    let mut queue = VecDeque::from([start.clone()]);
    while let Some(n) = queue.pop_front() {
        if n == goal {
            break;
        }
        for (m, st) in adj.get(&n).cloned().unwrap_or_default() {
            if seen.insert(m.clone()) {
                prev.insert(m.clone(), (n.clone(), st));
                queue.push_back(m);
            }
        }
    }
    let mut path = Vec::new();
    let mut cur = goal;
    while cur != start {
        let (p, st) = prev.get(&cur).cloned().expect("goal reachable in the sampled tree");
        path.push(st);
        cur = p;
    }
    path.reverse();
    path
}

/// Scans a step/factor sequence for a backtrack whose middle factor lies in
/// the edge group, without using the library's reduction.
pub fn has_pinch(g: &GraphOfGroups, steps: &[Step], factors: &[Word]) -> bool {
    for i in 1..steps.len() {
        let (a, b) = (steps[i - 1], steps[i]);
        if a.edge != b.edge || a.forward == b.forward {
            continue;
        }
        let d = g.edge(a.edge);
        let f = &factors[i];
        if d.is_trivial() {
            if f.is_identity() {
                return true;
            }
            continue;
        }
        let side = if a.forward && !d.tree { d.generator.conjugate_by(&d.stable().inverse()) } else { d.generator.clone() };
        if (-12..=12).any(|k| side.pow(k) == *f) {
            return true;
        }
    }
    false
}

pub fn random_word<R: Rng>(rng: &mut R, rank: usize, max_len: usize) -> Word {
    let len = rng.gen_range(0..=max_len);
    Word::from_letters((0..len).map(|_| Letter { generator: rng.gen_range(0..rank) as u32, inverse: rng.gen_bool(0.5) }))
}

fn valid_envelope(g: &GraphOfGroups, center: usize, edges: &BTreeSet<usize>) -> bool {
    if !matches!(g.vertex(center).kind, VertexKind::Base | VertexKind::Rigid) {
        return false;
    }
    let mut ends = BTreeSet::new();
    edges.iter().all(|&e| {
        let d = g.edge(e);
        let z = if d.origin == center { d.terminus } else { d.origin };
        g.is_fa_edge(e) && d.touches(center) && z != center && g.is_ztype(z) && ends.insert(z)
    }) && !(center == g.base()
        && g.edges().iter().enumerate().filter(|(i, d)| g.is_fa_edge(*i) && d.touches(center)).count() == 1
        && edges.len() > 1)
}

/// Every family of pairwise disjoint envelopes, enumerated by letting each
/// vertex be either not a center or a center with any subset of its incident
/// edges. Families are stored as vertex and edge bitmasks of their closures.
pub struct CoverOracle {
    families: Vec<(u64, u64)>,
}

impl CoverOracle {
    pub fn new(g: &GraphOfGroups, lenient: bool) -> Self {
        let n = g.vertices().len();
        let ztype: u64 = (0..n).filter(|&v| g.is_ztype(v)).fold(0, |m, v| m | 1 << v);
        let options: Vec<Vec<Option<(u64, u64)>>> = (0..n)
            .map(|v| {
                let inc: Vec<usize> = (0..g.edges().len()).filter(|&e| g.edge(e).touches(v)).collect();
                let mut out = vec![None];
                if matches!(g.vertex(v).kind, VertexKind::Base | VertexKind::Rigid) {
                    for mask in 0..(1u32 << inc.len()) {
                        let set: BTreeSet<usize> =
                            inc.iter().enumerate().filter(|(i, _)| mask >> i & 1 == 1).map(|(_, &e)| e).collect();
                        if valid_envelope(g, v, &set) {
                            let mut vm = 1u64 << v;
                            let mut em = 0u64;
                            for &e in &set {
                                vm |= 1 << g.edge(e).origin | 1 << g.edge(e).terminus;
                                em |= 1 << e;
                            }
                            out.push(Some((vm, em)));
                        }
                    }
                }
                out
            })
            .collect();
        let mut families = Vec::new();
        // (next vertex, vertex mask, edge mask, chosen envelope masks)
        type Frame = (usize, u64, u64, Vec<(u64, u64)>);
        let mut stack: Vec<Frame> = vec![(0, 0, 0, Vec::new())];
        while let Some((i, vs, es, chosen)) = stack.pop() {
            if i == n {
                families.push((vs, es));
                continue;
            }
            for opt in &options[i] {
                match opt {
                    None => stack.push((i + 1, vs, es, chosen.clone())),
                    Some((vm, em)) => {
                        let ok = chosen.iter().all(|(v2, e2)| {
                            if lenient {
                                em & e2 == 0 && (vm & v2) & !ztype == 0
                            } else {
                                vm & v2 == 0
                            }
                        });
                        if ok {
                            let mut c = chosen.clone();
                            c.push((*vm, *em));
                            stack.push((i + 1, vs | vm, es | em, c));
                        }
                    }
                }
            }
        }
        CoverOracle { families }
    }

    pub fn covers(&self, s: &Subgraph) -> bool {
        let vm = s.vertices.iter().fold(0u64, |m, &v| m | 1 << v);
        let em = s.edges.iter().fold(0u64, |m, &e| m | 1 << e);
        self.families.iter().any(|&(v, e)| v & vm == vm && e & em == em)
    }
}

/// All closed subgraphs with at most `max_edges` edges.
pub fn closed_subgraphs(g: &GraphOfGroups, max_edges: usize) -> Vec<Subgraph> {
    let m = g.edges().len();
    let n = g.vertices().len();
    let mut out = Vec::new();
    for mask in 0..(1u64 << m) {
        if (mask.count_ones() as usize) > max_edges {
            continue;
        }
        let edges: Vec<usize> = (0..m).filter(|i| mask >> i & 1 == 1).collect();
        let forced = Subgraph::from_edges(g, edges.iter().copied());
        let free: Vec<usize> = (0..n).filter(|v| !forced.vertices.contains(v)).collect();
        for vmask in 0..(1u64 << free.len()) {
            let mut s = forced.clone();
            for (i, &v) in free.iter().enumerate() {
                if vmask >> i & 1 == 1 {
                    s.vertices.insert(v);
                }
            }
            out.push(s);
        }
    }
    out
}
