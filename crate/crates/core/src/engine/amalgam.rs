use std::collections::{BTreeMap, BTreeSet};

use crate::error::{Error, Result};
use crate::graph::{EdgeData, GraphOfGroups, VertexData};
use crate::word::{Letter, Word};

/// Two decompositions glued along their common F_A-subgraph.
#[derive(Clone, Debug)]
pub struct Amalgam {
    pub graph: GraphOfGroups,
    /// Image in the amalgam's basis of each basis letter of the second input.
    pub letter_map: Vec<u32>,
}

impl Amalgam {
    /// Rewrites a word of the second input in the amalgam's basis.
    pub fn rename(&self, w: &Word) -> Word {
        Word::from_letters(w.letters().iter().map(|l| Letter { generator: self.letter_map[l.generator as usize], inverse: l.inverse }))
    }
}

type FaSignature = (String, BTreeSet<(String, String, Vec<String>)>, BTreeSet<Vec<String>>);

fn fa_signature(g: &GraphOfGroups) -> FaSignature {
    let vertices = g
        .fa_vertices()
        .iter()
        .map(|&v| {
            let d = g.vertex(v);
            (d.id.clone(), format!("{:?}", d.kind), d.generators.iter().map(|w| g.render(w)).collect())
        })
        .collect();
    let edges = g
        .fa_edges()
        .into_iter()
        .map(|e| {
            let d = g.edge(e);
            vec![
                d.id.clone(),
                g.vertex(d.origin).id.clone(),
                g.vertex(d.terminus).id.clone(),
                g.render(&d.generator),
                d.tree.to_string(),
                d.stable_letter.as_ref().map(|s| g.render(s)).unwrap_or_default(),
            ]
        })
        .collect();
    (g.vertex(g.base()).id.clone(), vertices, edges)
}

/// Glues `second` to `first` along the F_A-subgraph, which must carry
/// identical data in both. Letters of `second` outside the F_A-subgraph are
/// renamed to fresh letters; its other vertices and edges get a `'` suffix.
pub fn amalgamate(first: &GraphOfGroups, second: &GraphOfGroups) -> Result<Amalgam> {
    let sig = fa_signature(first);
    if sig != fa_signature(second) {
        return Err(Error::FaMismatch("F_A-subgraphs differ in vertices, edges or group data".into()));
    }
    let fa_letters: BTreeSet<char> =
        sig.1.iter().flat_map(|v| v.2.concat().chars().collect::<Vec<_>>()).chain(sig.2.iter().flat_map(|e| {
            format!("{}{}", e[3], e[5]).chars().collect::<Vec<_>>()
        }))
        .map(|c| c.to_ascii_lowercase())
        .collect();
    let mut alphabet = first.alphabet().clone();
    let letter_map = second
        .alphabet()
        .names()
        .iter()
        .map(|&c| match fa_letters.contains(&c) {
            true => first.alphabet().index_of(c).ok_or_else(|| Error::Internal(format!("letter {c} missing"))),
            false => alphabet.push_fresh(),
        })
        .collect::<Result<Vec<u32>>>()?;
    let rename = |w: &Word| {
        Word::from_letters(w.letters().iter().map(|l| Letter { generator: letter_map[l.generator as usize], inverse: l.inverse }))
    };
    let mut vertices: Vec<VertexData> = first.vertices().to_vec();
    let mut vmap: BTreeMap<usize, usize> = BTreeMap::new();
    for (v, d) in second.vertices().iter().enumerate() {
        if second.fa_vertices().contains(&v) {
            vmap.insert(v, first.vertex_index(&d.id)?);
        } else {
            vmap.insert(v, vertices.len());
            vertices.push(VertexData {
                id: format!("{}'", d.id),
                kind: d.kind,
                generators: d.generators.iter().map(rename).collect(),
            });
        }
    }
    let mut edges: Vec<EdgeData> = first.edges().to_vec();
    for (e, d) in second.edges().iter().enumerate() {
        if second.is_fa_edge(e) {
            continue;
        }
        edges.push(EdgeData {
            id: format!("{}'", d.id),
            origin: vmap[&d.origin],
            terminus: vmap[&d.terminus],
            class: d.class,
            generator: rename(&d.generator),
            tree: d.tree,
            stable_letter: d.stable_letter.as_ref().map(rename),
        });
    }
    let graph = GraphOfGroups::new(alphabet, vertices, edges, first.base(), first.fa_vertices().clone())?;
    Ok(Amalgam { graph, letter_map })
}
