use std::collections::{BTreeMap, BTreeSet, VecDeque};

use serde_json::{json, Value};

use super::Question;
use crate::error::Result;
use crate::graph::GraphOfGroups;
use crate::minimal::Block;
use crate::subgraph::Subgraph;
use crate::word::Word;

/// A chain `Δ₀ = {base} ⊆ Δ₁ ⊆ … ⊆ Δ_s = Λ` with the blocks of `A ∪ b`
/// placed in odd strata and those of `A ∪ c` in even strata.
///
/// `b_parts[i]` lists the sandwich terms of `B_i`, which live in `Δ_{2i+1}`;
/// `c_parts[i]` those of `C_i`, living in `Δ_{2i}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChainCertificate {
    pub question: Question,
    pub chain: Vec<Subgraph>,
    pub b_parts: Vec<Vec<Word>>,
    pub c_parts: Vec<Vec<Word>>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
enum Side {
    B,
    C,
}

fn side_of(stratum: usize) -> Side {
    if stratum % 2 == 1 {
        Side::B
    } else {
        Side::C
    }
}

/// Builds a chain greedily: at each step, adjoin the unplaced block that
/// costs the fewest new edges, provided it meets the previous stratum in
/// envelopes and leaves every unplaced opposite block coverable against
/// the grown stratum. Ties prefer b-blocks, then lower block index.
pub fn chain_certificate(g: &GraphOfGroups, q: &Question) -> Result<Option<ChainCertificate>> {
    let b_blocks = g.blocks(&q.with_b(), q.options.saturation_length)?;
    let c_blocks = g.blocks(&q.with_c(), q.options.saturation_length)?;
    Ok(chain_from_blocks(g, q, &b_blocks, &c_blocks))
}

pub(crate) fn chain_from_blocks(
    g: &GraphOfGroups,
    q: &Question,
    b_blocks: &[Block],
    c_blocks: &[Block],
) -> Option<ChainCertificate> {
    let mode = q.options.envelope_disjointness;
    let coverable = |s: &Subgraph| g.envelope_cover(s, mode).is_some();
    let mut chain = vec![Subgraph::vertex(g.base())];
    let mut placed: BTreeMap<(Side, usize), usize> = BTreeMap::new();
    let all: Vec<(Side, usize)> =
        (0..b_blocks.len()).map(|i| (Side::B, i)).chain((0..c_blocks.len()).map(|i| (Side::C, i))).collect();
    let block = |(side, i): (Side, usize)| match side {
        Side::B => &b_blocks[i],
        Side::C => &c_blocks[i],
    };
    while placed.len() < all.len() {
        let top = chain.len() - 1;
        let mut best: Option<(usize, Side, usize, usize, Subgraph)> = None;
        for &key in all.iter().filter(|k| !placed.contains_key(k)) {
            let (side, _) = key;
            let x = &block(key).subgraph;
            let target = if side_of(top) == side && top > 0 {
                top
            } else if side_of(top + 1) == side {
                top + 1
            } else {
                top + 2
            };
            let previous = if target == top { &chain[top - 1] } else { &chain[top] };
            if !coverable(&x.intersection(previous)) {
                continue;
            }
            let grown = connect_fa(g, &chain[top].union(x));
            let blocked = all
                .iter()
                .filter(|k| k.0 != side && !placed.contains_key(k))
                .any(|&k| !coverable(&block(k).subgraph.intersection(&grown)));
            if blocked {
                continue;
            }
            let cost = grown.edges.difference(&chain[top].edges).count();
            let candidate = (cost, side, key.1, target, grown);
            if best.as_ref().is_none_or(|b| (candidate.0, candidate.1, candidate.2) < (b.0, b.1, b.2)) {
                best = Some(candidate);
            }
        }
        let (_, side, i, target, grown) = best?;
        while chain.len() <= target {
            chain.push(chain[chain.len() - 1].clone());
        }
        chain[target] = grown;
        placed.insert((side, i), target);
    }
    if chain.len() == 1 {
        chain.push(Subgraph::whole(g));
    } else {
        *chain.last_mut().expect("chain is nonempty") = Subgraph::whole(g);
    }
    let s = chain.len() - 1;
    let mut b_parts = vec![Vec::new(); s.div_ceil(2)];
    let mut c_parts = vec![Vec::new(); s / 2 + 1];
    for (&(side, i), &stratum) in &placed {
        let words = block((side, i)).members.iter().map(|t| t.word.clone());
        match side {
            Side::B => b_parts[stratum / 2].extend(words),
            Side::C => c_parts[stratum / 2].extend(words),
        }
    }
    let cert = ChainCertificate { question: q.clone(), chain, b_parts, c_parts };
    verify_chain(g, &cert).then_some(cert)
}

/// Adds shortest F_A paths from the base component until the F_A part of
/// `s` is connected.
fn connect_fa(g: &GraphOfGroups, s: &Subgraph) -> Subgraph {
    let mut s = s.clone();
    loop {
        let fa = s.restrict_to_fa(g);
        let mut reached = BTreeSet::from([g.base()]);
        let mut queue = VecDeque::from([g.base()]);
        while let Some(x) = queue.pop_front() {
            for &e in &fa.edges {
                let d = g.edge(e);
                if d.touches(x) && reached.insert(d.other_end(x)) {
                    queue.push_back(d.other_end(x));
                }
            }
        }
        if fa.vertices.iter().all(|v| reached.contains(v)) {
            return s;
        }
        // breadth-first search through all of F_A, starting from the base
        // component, for the nearest stranded vertex of s
        let mut prev: BTreeMap<usize, usize> = BTreeMap::new();
        let mut queue: VecDeque<usize> = reached.iter().copied().collect();
        let mut seen = reached.clone();
        let mut hit = None;
        'search: while let Some(x) = queue.pop_front() {
            for (e, y) in g.incident(x) {
                if g.is_fa_edge(e) && seen.insert(y) {
                    prev.insert(y, e);
                    if fa.vertices.contains(&y) {
                        hit = Some(y);
                        break 'search;
                    }
                    queue.push_back(y);
                }
            }
        }
        let Some(mut y) = hit else { return s };
        while let Some(&e) = prev.get(&y) {
            s.add_edge(g, e);
            y = g.edge(e).other_end(y);
        }
    }
}

/// Re-checks a certificate from nothing but its question and chain.
pub fn verify_chain(g: &GraphOfGroups, cert: &ChainCertificate) -> bool {
    check_chain(g, cert).unwrap_or(false)
}

fn check_chain(g: &GraphOfGroups, cert: &ChainCertificate) -> Result<bool> {
    let q = &cert.question;
    let mode = q.options.envelope_disjointness;
    let chain = &cert.chain;
    let whole = Subgraph::whole(g);
    let shape_ok = chain.first() == Some(&Subgraph::vertex(g.base()))
        && chain.last() == Some(&whole)
        && chain.len() >= 2
        && chain.windows(2).all(|w| w[0].is_subset(&w[1]))
        && chain.iter().all(|d| d.is_closed(g) && d.restrict_to_fa(g).is_connected(g));
    if !shape_ok {
        return Ok(false);
    }
    let stratum_of = |parts: &[Vec<Word>], offset: usize, w: &Word| {
        parts.iter().position(|p| p.iter().any(|x| x == w || *x == w.inverse())).map(|i| 2 * i + offset)
    };
    let mut b_terms = BTreeSet::new();
    for (blocks, parts, offset, is_b) in [
        (g.blocks(&q.with_b(), q.options.saturation_length)?, &cert.b_parts, 1, true),
        (g.blocks(&q.with_c(), q.options.saturation_length)?, &cert.c_parts, 0, false),
    ] {
        for block in &blocks {
            let strata: BTreeSet<Option<usize>> =
                block.members.iter().map(|t| stratum_of(parts, offset, &t.word)).collect();
            let [Some(k)] = strata.into_iter().collect::<Vec<_>>()[..] else { return Ok(false) };
            if k >= chain.len() || !block.subgraph.is_subset(&chain[k]) {
                return Ok(false);
            }
            if k > 0 && g.envelope_cover(&block.subgraph.intersection(&chain[k - 1]), mode).is_none() {
                return Ok(false);
            }
            for t in &block.members {
                let trivial = t.steps.iter().map(|s| s.edge).filter(|&e| g.edge(e).is_trivial());
                if is_b {
                    b_terms.extend(trivial);
                } else if trivial.into_iter().any(|e| b_terms.contains(&e)) {
                    return Ok(false);
                }
            }
        }
    }
    Ok(true)
}

impl ChainCertificate {
    pub fn to_json(&self, g: &GraphOfGroups) -> Value {
        let parts = |ps: &[Vec<Word>]| -> Vec<Vec<String>> {
            ps.iter().map(|p| p.iter().map(|w| g.render(w)).collect()).collect()
        };
        json!({
            "chain": self.chain.iter().map(|d| d.labels(g)).collect::<Vec<_>>(),
            "partitions": { "B": parts(&self.b_parts), "C": parts(&self.c_parts) },
        })
    }
}
