#![allow(dead_code)]

pub mod oracle;

use std::collections::BTreeSet;

use rand::Rng;
use rand_chacha::ChaCha8Rng;
use splitkit::{Alphabet, EdgeClass, EdgeData, GraphOfGroups, Letter, Scenario, VertexData, VertexKind, Word};

pub const FIXTURES: [&str; 4] = ["placement_loop", "placement_edge", "star", "chain"];

pub fn load(name: &str) -> Scenario {
    let path = format!("{}/fixtures/{name}.json", env!("CARGO_MANIFEST_DIR"));
    let text = std::fs::read_to_string(&path).unwrap_or_else(|e| panic!("{path}: {e}"));
    Scenario::from_json(&text).unwrap_or_else(|e| panic!("{path}: {e}"))
}

pub fn w(g: &GraphOfGroups, s: &str) -> Word {
    g.parse_word(s).unwrap()
}

pub fn words(g: &GraphOfGroups, s: &[&str]) -> Vec<Word> {
    s.iter().map(|x| w(g, x)).collect()
}

pub fn e(g: &GraphOfGroups, id: &str) -> usize {
    g.edge_index(id).unwrap()
}

pub fn v(g: &GraphOfGroups, id: &str) -> usize {
    g.vertex_index(id).unwrap()
}

pub fn question(s: &Scenario, b: &str, c: &str) -> splitkit::Question {
    splitkit::Question::new(&s.params, s.tuple(b).unwrap(), s.tuple(c).unwrap(), s.options)
}

pub fn edge_ids(g: &GraphOfGroups, s: &splitkit::Subgraph) -> Vec<String> {
    s.edges.iter().map(|&x| g.edge(x).id.clone()).collect()
}

/// The fixture with its trivially stabilized edges removed.
pub fn fa_part(g: &GraphOfGroups) -> GraphOfGroups {
    let edges: Vec<EdgeData> = g.edges().iter().filter(|e| !e.is_trivial()).cloned().collect();
    GraphOfGroups::new(g.alphabet().clone(), g.vertices().to_vec(), edges, g.base(), g.fa_vertices().clone()).unwrap()
}

/// A random tree of rigid vertices. Each tree edge either joins its ends
/// directly over a fresh letter, passes through a new ztype vertex, or
/// hangs off an existing ztype vertex; some rigid vertices are cyclic.
pub fn random_splitting(rng: &mut ChaCha8Rng) -> GraphOfGroups {
    let k = rng.gen_range(2..=5);
    let mut letters = 0u32;
    let mut fresh = || {
        letters += 1;
        Word::generator(letters - 1)
    };
    let mut gens: Vec<Vec<Word>> = Vec::new();
    for i in 0..k {
        gens.push(if i == 0 || rng.gen_bool(0.7) { vec![fresh()] } else { vec![] });
    }
    let mut ztypes: Vec<(usize, Word)> = Vec::new();
    let mut edges: Vec<(usize, usize, Word)> = Vec::new();
    let mut extra: Vec<Vec<Word>> = Vec::new();
    for j in 1..k {
        let i = rng.gen_range(0..j);
        let choice = if ztypes.is_empty() { rng.gen_range(0..2) } else { rng.gen_range(0..3) };
        match choice {
            0 => {
                let y = fresh();
                gens[i].push(y.clone());
                gens[j].push(y.clone());
                edges.push((i, j, y));
            }
            1 => {
                let y = fresh();
                let z = k + extra.len();
                extra.push(vec![y.clone()]);
                ztypes.push((z, y.clone()));
                gens[i].push(y.clone());
                gens[j].push(y.clone());
                edges.push((i, z, y.clone()));
                edges.push((j, z, y));
            }
            _ => {
                let (z, y) = ztypes[rng.gen_range(0..ztypes.len())].clone();
                gens[j].push(y.clone());
                edges.push((j, z, y));
            }
        }
    }
    for g in gens.iter_mut() {
        if g.is_empty() {
            g.push(fresh());
        }
    }
    let mut vertices: Vec<VertexData> = gens
        .into_iter()
        .enumerate()
        .map(|(i, generators)| VertexData {
            id: format!("R{i}"),
            kind: if i == 0 { VertexKind::Base } else { VertexKind::Rigid },
            generators,
        })
        .collect();
    for (n, generators) in extra.into_iter().enumerate() {
        vertices.push(VertexData { id: format!("Z{n}"), kind: VertexKind::Ztype, generators });
    }
    let edges = edges
        .into_iter()
        .enumerate()
        .map(|(n, (o, t, y))| EdgeData {
            id: format!("e{n}"),
            origin: o,
            terminus: t,
            class: EdgeClass::Cyclic,
            generator: y,
            tree: true,
            stable_letter: None,
        })
        .collect();
    let fa: BTreeSet<usize> = (0..vertices.len()).collect();
    GraphOfGroups::new(Alphabet::default_for(letters as usize), vertices, edges, 0, fa).unwrap()
}

/// Every reduced word of length at most `max`.
pub fn all_words(rank: u32, max: usize) -> Vec<Word> {
    let mut out = vec![Word::identity()];
    let mut layer = vec![Word::identity()];
    for _ in 0..max {
        let mut next = Vec::new();
        for p in &layer {
            for g in 0..rank {
                for l in [Letter::pos(g), Letter::neg(g)] {
                    if p.letters().last() != Some(&l.inv()) {
                        next.push(p.mul(&Word::letter(l)));
                    }
                }
            }
        }
        out.extend(next.iter().cloned());
        layer = next;
    }
    out
}

