//! Minimal subgraphs, sandwich terms and blocks.

use std::collections::BTreeSet;

use crate::error::{Error, Result};
use crate::graph::{GraphOfGroups, Step};
use crate::subgraph::Subgraph;
use crate::word::Word;

/// Blocks are built from products of boundedly many generators; terms whose
/// paths lie in the minimal subtree without arising this way are not seen.
pub const SATURATION_CAVEAT: &str =
    "blocks are saturated over products of at most saturation_length generators; \
     whether length 1 always suffices is not known";

/// An element whose base path meets translates of the base vertex only at
/// its ends, and crosses trivially stabilized edges only first or last.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SandwichTerm {
    pub word: Word,
    pub steps: Vec<Step>,
    pub left_trivial_edge: Option<usize>,
    pub right_trivial_edge: Option<usize>,
    /// Image of the middle segment, inside the F_A-subgraph.
    pub imprint: Subgraph,
    /// Closed image of the whole path, with the base vertex.
    pub subgraph: Subgraph,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Block {
    pub subgraph: Subgraph,
    pub members: Vec<SandwichTerm>,
}

impl GraphOfGroups {
    /// Union of the base paths of the generators, with the base vertex.
    pub fn minimal_subgraph(&self, gens: &[Word]) -> Result<Subgraph> {
        let mut s = Subgraph::vertex(self.base());
        for g in gens {
            for st in self.base_path(g)?.steps {
                s.add_edge(self, st.edge);
            }
        }
        Ok(s)
    }

    /// Cuts the normal form of `g` at every interior translate of the base
    /// vertex. A factor at a cut goes with the term on its right.
    pub fn sandwich_decompose(&self, g: &Word) -> Result<Vec<SandwichTerm>> {
        let nf = self.normal_form(g)?;
        let path = self.project(&nf.steps);
        let k = nf.steps.len();
        let mut cuts = vec![0];
        cuts.extend(path.interior_base.iter().enumerate().filter(|(_, f)| **f).map(|(i, _)| i + 1));
        cuts.push(k);
        let mut terms = Vec::new();
        for (ti, win) in cuts.windows(2).enumerate() {
            let (a, b) = (win[0], win[1]);
            let mut word = nf.factors[a].clone();
            for i in a..b {
                word = word.mul(&self.step_letter(nf.steps[i])).mul(&nf.factors[i + 1]);
            }
            if ti + 2 < cuts.len() {
                // the factor at the cut belongs to the next term
                word = word.mul(&nf.factors[b].inverse());
            }
            terms.push(self.make_term(word, nf.steps[a..b].to_vec())?);
        }
        Ok(terms)
    }

    fn make_term(&self, word: Word, steps: Vec<Step>) -> Result<SandwichTerm> {
        let n = steps.len();
        for (i, s) in steps.iter().enumerate() {
            if self.edge(s.edge).is_trivial() && i != 0 && i + 1 != n {
                return Err(Error::Normalization(format!(
                    "trivial edge {} crossed in the middle of the path of {}",
                    self.edge(s.edge).id,
                    self.render(&word)
                )));
            }
        }
        let left = steps.first().filter(|s| self.edge(s.edge).is_trivial()).map(|s| s.edge);
        let right = steps.last().filter(|s| n > 1 && self.edge(s.edge).is_trivial()).map(|s| s.edge);
        let mut subgraph = Subgraph::vertex(self.base());
        for s in &steps {
            subgraph.add_edge(self, s.edge);
        }
        let lo = usize::from(left.is_some());
        let hi = n - usize::from(right.is_some());
        let start = if lo == 0 { self.base() } else { self.step_target(steps[lo - 1]) };
        let mut imprint = Subgraph::vertex(start);
        for s in &steps[lo..hi.max(lo)] {
            imprint.add_edge(self, s.edge);
        }
        Ok(SandwichTerm { word, steps, left_trivial_edge: left, right_trivial_edge: right, imprint, subgraph })
    }

    /// Blocks of `⟨gens⟩`: sandwich terms of products of at most
    /// `saturation_length` generators, grouped by shared edges or shared
    /// vertices that are neither ztype nor the base.
    pub fn blocks(&self, gens: &[Word], saturation_length: usize) -> Result<Vec<Block>> {
        let mut products: Vec<Word> = Vec::new();
        let mut seen = BTreeSet::new();
        let letters: Vec<Word> = gens.iter().flat_map(|g| [g.clone(), g.inverse()]).collect();
        let mut layer = vec![Word::identity()];
        for _ in 0..saturation_length.max(1) {
            let mut next = Vec::new();
            for p in &layer {
                for l in &letters {
                    let q = p.mul(l);
                    if seen.insert(q.clone()) {
                        products.push(q.clone());
                        next.push(q);
                    }
                }
            }
            layer = next;
        }
        let mut terms: Vec<SandwichTerm> = Vec::new();
        let mut term_words = BTreeSet::new();
        for p in &products {
            for t in self.sandwich_decompose(p)? {
                if !t.steps.is_empty() && term_words.insert(t.word.clone()) && term_words.insert(t.word.inverse()) {
                    terms.push(t);
                }
            }
        }
        let n = terms.len();
        let mut parent: Vec<usize> = (0..n).collect();
        fn find(p: &mut [usize], mut x: usize) -> usize {
            while p[x] != x {
                p[x] = p[p[x]];
                x = p[x];
            }
            x
        }
        for i in 0..n {
            for j in i + 1..n {
                if self.glued(&terms[i].subgraph, &terms[j].subgraph) {
                    let (a, b) = (find(&mut parent, i), find(&mut parent, j));
                    parent[a.max(b)] = a.min(b);
                }
            }
        }
        let mut blocks: Vec<(usize, Block)> = Vec::new();
        for (i, t) in terms.into_iter().enumerate() {
            let r = find(&mut parent, i);
            match blocks.iter_mut().find(|(root, _)| *root == r) {
                Some((_, b)) => {
                    b.subgraph = b.subgraph.union(&t.subgraph);
                    b.members.push(t);
                }
                None => blocks.push((r, Block { subgraph: t.subgraph.clone(), members: vec![t] })),
            }
        }
        Ok(blocks.into_iter().map(|(_, b)| b).collect())
    }

    fn glued(&self, a: &Subgraph, b: &Subgraph) -> bool {
        let shared = a.intersection(b);
        !shared.edges.is_empty() || shared.vertices.iter().any(|&v| v != self.base() && !self.is_ztype(v))
    }
}
