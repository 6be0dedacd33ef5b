use std::collections::{BTreeSet, VecDeque};

use crate::automaton::SubgroupAutomaton;
use crate::error::{Error, Result};
use crate::graph::{GraphOfGroups, Symbol};
use crate::word::Word;

/// An automorphism of the ambient free group, given by the images of the
/// basis.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Automorphism {
    images: Vec<Word>,
}

impl Automorphism {
    /// Checks that the images form a basis.
    pub fn new(images: Vec<Word>) -> Result<Self> {
        let phi = Automorphism { images };
        if !phi.is_automorphism() {
            return Err(Error::Precondition("images do not form a basis of the free group".into()));
        }
        Ok(phi)
    }

    pub fn identity(rank: usize) -> Self {
        Automorphism { images: (0..rank as u32).map(Word::generator).collect() }
    }

    /// `x ↦ g·x·g⁻¹`.
    pub fn conjugation(rank: usize, g: &Word) -> Self {
        Automorphism { images: (0..rank as u32).map(|i| Word::generator(i).conjugate_by(g)).collect() }
    }

    pub fn images(&self) -> &[Word] {
        &self.images
    }

    pub fn rank(&self) -> usize {
        self.images.len()
    }

    pub fn is_automorphism(&self) -> bool {
        SubgroupAutomaton::fold_build(&self.images).rank_index(self.rank()) == (self.rank(), Some(1))
    }

    pub fn apply(&self, w: &Word) -> Result<Word> {
        let mut out = Word::identity();
        for l in w.letters() {
            let img = self
                .images
                .get(l.generator as usize)
                .ok_or(Error::RankMismatch { expected: self.rank(), found: l.generator as usize + 1 })?;
            out = out.mul(&if l.inverse { img.inverse() } else { img.clone() });
        }
        Ok(out)
    }

    pub fn apply_all(&self, ws: &[Word]) -> Result<Vec<Word>> {
        ws.iter().map(|w| self.apply(w)).collect()
    }

    /// `self ∘ other`: `other` acts first.
    pub fn compose(&self, other: &Automorphism) -> Result<Automorphism> {
        if self.rank() != other.rank() {
            return Err(Error::RankMismatch { expected: self.rank(), found: other.rank() });
        }
        Ok(Automorphism { images: self.apply_all(&other.images)? })
    }

    /// Solves for preimages of the basis by reading them in the Stallings
    /// graph of the images.
    pub fn inverse(&self) -> Result<Automorphism> {
        let graph = SubgroupAutomaton::fold_build(&self.images);
        let images = (0..self.rank() as u32)
            .map(|i| {
                graph
                    .express(&Word::generator(i))
                    .ok_or_else(|| Error::Precondition("not invertible: images do not generate".into()))
            })
            .collect::<Result<_>>()?;
        Ok(Automorphism { images })
    }

    /// Dehn twist of power `k` about a cyclic F_A edge. Conjugates, by the
    /// `k`-th power of the edge generator, the side of the edge holding its
    /// non-ztype endpoint (the origin if both qualify).
    pub fn dehn_twist(g: &GraphOfGroups, e: usize, k: i64) -> Result<Automorphism> {
        let d = g.edge(e);
        if d.is_trivial() {
            return Err(Error::Precondition(format!("cannot twist about trivial edge {}", d.id)));
        }
        if !g.is_fa_edge(e) {
            return Err(Error::Precondition(format!("edge {} is not in the F_A-subgraph", d.id)));
        }
        let at_terminus = g.is_ztype(d.origin) && !g.is_ztype(d.terminus);
        let x = if at_terminus { d.terminus } else { d.origin };
        let gamma = g.side_generator(e, at_terminus).pow(k);
        let symbol_images: Vec<Word> = if d.tree {
            let side = tree_side(g, e, x);
            g.symbols()
                .iter()
                .map(|&s| match s {
                    Symbol::Vertex { vertex, index } => {
                        let gen = &g.vertex(vertex).generators[index];
                        if side.contains(&vertex) {
                            gen.conjugate_by(&gamma)
                        } else {
                            gen.clone()
                        }
                    }
                    Symbol::Stable { edge } => {
                        let f = g.edge(edge);
                        let left = if side.contains(&f.origin) { gamma.clone() } else { Word::identity() };
                        let right = if side.contains(&f.terminus) { gamma.inverse() } else { Word::identity() };
                        left.mul(&f.stable()).mul(&right)
                    }
                })
                .collect()
        } else {
            // for a non-tree edge both conventions move only its stable letter
            g.symbols()
                .iter()
                .map(|&s| match s {
                    Symbol::Vertex { vertex, index } => g.vertex(vertex).generators[index].clone(),
                    Symbol::Stable { edge } if edge == e => {
                        let c = d.generator.pow(if at_terminus { -k } else { k });
                        c.mul(&d.stable())
                    }
                    Symbol::Stable { edge } => g.edge(edge).stable(),
                })
                .collect()
        };
        from_symbol_images(g, &symbol_images)
    }
}

/// Turns images of the presentation's symbols into images of the basis.
pub(crate) fn from_symbol_images(g: &GraphOfGroups, symbol_images: &[Word]) -> Result<Automorphism> {
    let images = (0..g.rank() as u32)
        .map(|i| {
            let expr = g
                .whole_group()
                .express(&Word::generator(i))
                .ok_or_else(|| Error::Internal("splitting does not generate the ambient group".into()))?;
            Automorphism { images: symbol_images.to_vec() }.apply(&expr)
        })
        .collect::<Result<_>>()?;
    Ok(Automorphism { images })
}

/// Vertices on `x`'s side of the spanning tree with the tree edge `e` cut.
fn tree_side(g: &GraphOfGroups, e: usize, x: usize) -> BTreeSet<usize> {
    let mut seen = BTreeSet::from([x]);
    let mut queue = VecDeque::from([x]);
    while let Some(v) = queue.pop_front() {
        for (f, y) in g.incident(v) {
            if f != e && g.edge(f).tree && seen.insert(y) {
                queue.push_back(y);
            }
        }
    }
    seen
}
