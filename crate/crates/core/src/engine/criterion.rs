use rayon::prelude::*;
use serde_json::{json, Value};

use super::chain::{chain_from_blocks, ChainCertificate};
use super::Question;
use crate::cylinders::Envelope;
use crate::error::Result;
use crate::graph::GraphOfGroups;
use crate::minimal::Block;
use crate::subgraph::Subgraph;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PairReport {
    pub b_block: usize,
    pub c_block: usize,
    pub intersection: Subgraph,
    pub cover: Option<Vec<Envelope>>,
}

#[derive(Clone, Debug)]
pub struct Verdict {
    pub criterion_met: bool,
    pub b_blocks: Vec<Block>,
    pub c_blocks: Vec<Block>,
    pub pairs: Vec<PairReport>,
    /// `(b_block, c_block)` for every pair without a cover.
    pub failures: Vec<(usize, usize)>,
    /// Filled in when the criterion holds and the greedy chain succeeds.
    pub certificate: Option<ChainCertificate>,
}

/// Intersects every block of `A ∪ b` with every block of `A ∪ c` and asks
/// for a disjoint envelope cover of each intersection.
pub fn check_criterion(g: &GraphOfGroups, q: &Question) -> Result<Verdict> {
    let b_blocks = g.blocks(&q.with_b(), q.options.saturation_length)?;
    let c_blocks = g.blocks(&q.with_c(), q.options.saturation_length)?;
    let index: Vec<(usize, usize)> =
        (0..b_blocks.len()).flat_map(|i| (0..c_blocks.len()).map(move |j| (i, j))).collect();
    let pairs: Vec<PairReport> = index
        .par_iter()
        .map(|&(i, j)| {
            let intersection = b_blocks[i].subgraph.intersection(&c_blocks[j].subgraph);
            let cover = g.envelope_cover(&intersection, q.options.envelope_disjointness);
            PairReport { b_block: i, c_block: j, intersection, cover }
        })
        .collect();
    let failures: Vec<(usize, usize)> =
        pairs.iter().filter(|p| p.cover.is_none()).map(|p| (p.b_block, p.c_block)).collect();
    let criterion_met = failures.is_empty();
    let certificate = if criterion_met { chain_from_blocks(g, q, &b_blocks, &c_blocks) } else { None };
    Ok(Verdict { criterion_met, b_blocks, c_blocks, pairs, failures, certificate })
}

impl Verdict {
    pub fn to_json(&self, g: &GraphOfGroups) -> Value {
        let block = |b: &Block| {
            json!({
                "subgraph": b.subgraph.labels(g),
                "terms": b.members.iter().map(|t| g.render(&t.word)).collect::<Vec<_>>(),
            })
        };
        json!({
            "criterion_met": self.criterion_met,
            "blocks": {
                "B": self.b_blocks.iter().map(block).collect::<Vec<_>>(),
                "C": self.c_blocks.iter().map(block).collect::<Vec<_>>(),
            },
            "pairs": self.pairs.iter().map(|p| json!({
                "b_block": p.b_block,
                "c_block": p.c_block,
                "intersection": p.intersection.labels(g),
                "cover": p.cover.as_ref().map(|envs| envs.iter().map(|e| envelope_json(g, e)).collect::<Vec<_>>()),
            })).collect::<Vec<_>>(),
            "failures": self.failures.iter().map(|&(i, j)| json!({
                "b_block": i,
                "c_block": j,
                "intersection": self.b_blocks[i].subgraph.intersection(&self.c_blocks[j].subgraph).labels(g),
            })).collect::<Vec<_>>(),
            "certificate": self.certificate.as_ref().map(|c| c.to_json(g)),
        })
    }
}

pub(crate) fn envelope_json(g: &GraphOfGroups, e: &Envelope) -> Value {
    json!({
        "center": g.vertex(e.center).id,
        "edges": e.edges.iter().map(|&x| g.edge(x).id.clone()).collect::<Vec<_>>(),
    })
}
