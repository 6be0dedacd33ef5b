//! Stallings folded automata for finitely generated subgroups.
//!
//! Every edge carries, besides its ambient label, a witness word over the
//! defining generators. Writing `h(x)` for the label of a fixed path from the
//! base to `x`, an edge `x --a--> y` with witness `ω` satisfies
//! `eval(ω) = h(x)·a·h(y)⁻¹`. Folding updates the witnesses so this survives,
//! and reading a base loop multiplies the witnesses into an expression of the
//! loop label over the generators.

use std::collections::{BTreeMap, VecDeque};

use crate::word::{Letter, Word};

#[derive(Clone, Debug, PartialEq, Eq)]
struct Edge {
    from: usize,
    to: usize,
    /// Always a positive letter.
    label: u32,
    witness: Word,
}

/// Folded core graph of `⟨generators⟩`. State 0 is the base.
#[derive(Clone, Debug)]
pub struct SubgroupAutomaton {
    generators: Vec<Word>,
    states: usize,
    edges: Vec<Edge>,
    delta: BTreeMap<(usize, Letter), (usize, Word)>,
}

impl SubgroupAutomaton {
    pub fn fold_build(generators: &[Word]) -> Self {
        let mut b = Builder { states: 1, edges: Vec::new() };
        for (i, g) in generators.iter().enumerate() {
            b.add_petal(i as u32, g);
        }
        b.fold();
        b.trim();
        b.finish(generators.to_vec())
    }

    pub fn generators(&self) -> &[Word] {
        &self.generators
    }

    pub fn state_count(&self) -> usize {
        self.states
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    /// Follows `letter` from `state`.
    pub fn step(&self, state: usize, letter: Letter) -> Option<usize> {
        self.delta.get(&(state, letter)).map(|(t, _)| *t)
    }

    pub fn contains(&self, w: &Word) -> bool {
        self.express(w).is_some()
    }

    /// Expresses `w` over the defining generators. The returned word uses
    /// generator indices as letters.
    pub fn express(&self, w: &Word) -> Option<Word> {
        let mut state = 0;
        let mut acc = Vec::new();
        for &l in w.letters() {
            let (t, om) = self.delta.get(&(state, l))?;
            acc.extend_from_slice(om.letters());
            state = *t;
        }
        (state == 0).then(|| Word::from_letters(acc))
    }

    /// Evaluates a word over generator indices back in the ambient group.
    pub fn evaluate(&self, witness: &Word) -> Word {
        witness.letters().iter().fold(Word::identity(), |acc, l| {
            let g = &self.generators[l.generator as usize];
            acc.mul(&if l.inverse { g.inverse() } else { g.clone() })
        })
    }

    /// Reads as much of `w` as possible from the base. Returns the state
    /// reached and the unread suffix.
    pub fn read_prefix<'a>(&self, w: &'a Word) -> (usize, &'a [Letter]) {
        let mut state = 0;
        for (i, &l) in w.letters().iter().enumerate() {
            match self.step(state, l) {
                Some(t) => state = t,
                None => return (state, &w.letters()[i..]),
            }
        }
        (state, &[])
    }

    /// A canonical key for the left coset `h·H`.
    pub fn left_coset_key(&self, h: &Word) -> (usize, Word) {
        let inv = h.inverse();
        let (s, rest) = self.read_prefix(&inv);
        (s, Word::from_letters(rest.iter().copied()))
    }

    pub fn rank(&self) -> usize {
        self.edges.len() + 1 - self.states
    }

    /// Index in a free group of the given rank, `None` when infinite.
    pub fn index(&self, ambient_rank: usize) -> Option<usize> {
        let complete = (0..self.states).all(|s| {
            (0..ambient_rank as u32)
                .all(|g| self.delta.contains_key(&(s, Letter::pos(g))) && self.delta.contains_key(&(s, Letter::neg(g))))
        });
        complete.then_some(self.states)
    }

    pub fn rank_index(&self, ambient_rank: usize) -> (usize, Option<usize>) {
        (self.rank(), self.index(ambient_rank))
    }

    /// A free basis read off a spanning tree of the core graph.
    pub fn free_basis(&self) -> Vec<Word> {
        let mut prefix: Vec<Option<Word>> = vec![None; self.states];
        prefix[0] = Some(Word::identity());
        let mut tree = vec![false; self.edges.len()];
        let mut queue = VecDeque::from([0usize]);
        while let Some(x) = queue.pop_front() {
            for (i, e) in self.edges.iter().enumerate() {
                let (y, l) = if e.from == x && prefix[e.to].is_none() {
                    (e.to, Letter::pos(e.label))
                } else if e.to == x && prefix[e.from].is_none() {
                    (e.from, Letter::neg(e.label))
                } else {
                    continue;
                };
                let p = prefix[x].clone().unwrap_or_default().mul(&Word::letter(l));
                prefix[y] = Some(p);
                tree[i] = true;
                queue.push_back(y);
            }
        }
        self.edges
            .iter()
            .zip(&tree)
            .filter(|(_, t)| !**t)
            .map(|(e, _)| {
                let hx = prefix[e.from].clone().unwrap_or_default();
                let hy = prefix[e.to].clone().unwrap_or_default();
                hx.mul(&Word::generator(e.label)).mul(&hy.inverse())
            })
            .collect()
    }
}

struct Builder {
    states: usize,
    edges: Vec<Option<Edge>>,
}

impl Builder {
    fn add_petal(&mut self, index: u32, g: &Word) {
        let n = g.len();
        if n == 0 {
            return;
        }
        let mut prev = 0;
        for (i, &l) in g.letters().iter().enumerate() {
            let next = if i + 1 == n {
                0
            } else {
                self.states += 1;
                self.states - 1
            };
            let witness = if i + 1 == n { Word::generator(index) } else { Word::identity() };
            self.push_read(prev, l, next, witness);
            prev = next;
        }
    }

    /// Adds an edge that reads `l` from `x` to `y` with read-direction witness.
    fn push_read(&mut self, x: usize, l: Letter, y: usize, witness: Word) {
        let e = if l.inverse {
            Edge { from: y, to: x, label: l.generator, witness: witness.inverse() }
        } else {
            Edge { from: x, to: y, label: l.generator, witness }
        };
        self.edges.push(Some(e));
    }

    /// Reading views of edge `i`: (start, letter, end, witness).
    fn views(e: &Edge) -> [(usize, Letter, usize, Word); 2] {
        [
            (e.from, Letter::pos(e.label), e.to, e.witness.clone()),
            (e.to, Letter::neg(e.label), e.from, e.witness.inverse()),
        ]
    }

    fn find_conflict(&self) -> Option<(usize, usize, Word, usize, Word)> {
        let mut seen: BTreeMap<(usize, Letter), (usize, usize, Word)> = BTreeMap::new();
        for (i, e) in self.edges.iter().enumerate() {
            let Some(e) = e else { continue };
            for (k, (p, l, q, w)) in Self::views(e).into_iter().enumerate() {
                // a loop read both ways is one edge, not a conflict
                if let Some((j, q1, w1)) = seen.get(&(p, l)) {
                    if *j != i || k == 0 {
                        return Some((i, *q1, w1.clone(), q, w));
                    }
                } else {
                    seen.insert((p, l), (i, q, w));
                }
            }
        }
        None
    }

    fn fold(&mut self) {
        while let Some((dup, q1, w1, q2, w2)) = self.find_conflict() {
            self.edges[dup] = None;
            if q1 == q2 {
                continue;
            }
            // δ = h(q1)·h(q2)⁻¹
            let (keep, gone, delta) =
                if q2 == 0 { (q2, q1, w2.inverse().mul(&w1)) } else { (q1, q2, w1.inverse().mul(&w2)) };
            for e in self.edges.iter_mut().flatten() {
                if e.from == gone {
                    e.from = keep;
                    e.witness = delta.mul(&e.witness);
                }
                if e.to == gone {
                    e.to = keep;
                    e.witness = e.witness.mul(&delta.inverse());
                }
            }
        }
    }

    fn trim(&mut self) {
        loop {
            let mut degree = vec![0usize; self.states];
            for e in self.edges.iter().flatten() {
                degree[e.from] += 1;
                degree[e.to] += 1;
            }
            let mut changed = false;
            for slot in self.edges.iter_mut() {
                if let Some(e) = slot {
                    let leaf = |s: usize| s != 0 && degree[s] <= 1;
                    if leaf(e.from) || leaf(e.to) {
                        *slot = None;
                        changed = true;
                    }
                }
            }
            if !changed {
                return;
            }
        }
    }

    fn finish(self, generators: Vec<Word>) -> SubgroupAutomaton {
        let mut renumber = vec![usize::MAX; self.states];
        renumber[0] = 0;
        let mut next = 1;
        let mut edges = Vec::new();
        for e in self.edges.into_iter().flatten() {
            for s in [e.from, e.to] {
                if renumber[s] == usize::MAX {
                    renumber[s] = next;
                    next += 1;
                }
            }
            edges.push(Edge { from: renumber[e.from], to: renumber[e.to], ..e });
        }
        let mut delta = BTreeMap::new();
        for e in &edges {
            for (p, l, q, w) in Builder::views(e) {
                delta.insert((p, l), (q, w));
            }
        }
        SubgroupAutomaton { generators, states: next, edges, delta }
    }
}
