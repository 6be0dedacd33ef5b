use std::collections::BTreeMap;

use super::automorphism::from_symbol_images;
use super::{check_criterion, Automorphism, Question};
use crate::automaton::SubgroupAutomaton;
use crate::error::{Error, Result};
use crate::graph::{GraphOfGroups, Symbol, VertexKind};
use crate::word::{simultaneous_conjugacy, Word};

impl Automorphism {
    /// `Conj(conjugator) ∘ τ₁^{k₁} ∘ … ∘ τ_r^{k_r}`, the last twist acting
    /// first.
    pub fn twist_product(g: &GraphOfGroups, twists: &[(usize, i64)], conjugator: &Word) -> Result<Automorphism> {
        let mut phi = Automorphism::conjugation(g.rank(), conjugator);
        for &(e, k) in twists {
            phi = phi.compose(&Automorphism::dehn_twist(g, e, k)?)?;
        }
        Ok(phi)
    }
}

/// Given `θ` as twist data, builds `α` fixing `A ∪ c` with `α(b) = θ(b)`.
///
/// Twists about edges outside the minimal subgraph of `A ∪ b` are dropped,
/// each remaining twist is copied onto the edges of its c-block in the same
/// cylinder, and stable letters of trivial edges are corrected by the
/// conjugators through which the result acts on their endpoint groups.
/// Returns `None` when the hypotheses fail or the construction does not
/// reproduce `θ` on `b`.
pub fn mod_witness(
    g: &GraphOfGroups,
    q: &Question,
    twists: &[(usize, i64)],
    conjugator: &Word,
) -> Result<Option<Automorphism>> {
    if g.vertices().iter().any(|v| v.kind == VertexKind::Surface) {
        return Err(Error::Unsupported("witness construction with surface vertices".into()));
    }
    if g.fa_vertices().len() != g.vertices().len() || g.edges().iter().any(|d| d.is_trivial() && d.tree) {
        return Err(Error::Unsupported("witness construction needs every vertex in the F_A-subgraph".into()));
    }
    let theta = Automorphism::twist_product(g, twists, conjugator)?;
    let fa_gens: Vec<Word> = g
        .fa_vertices()
        .iter()
        .flat_map(|&v| g.vertex(v).generators.clone())
        .chain(g.fa_edges().into_iter().filter_map(|e| g.edge(e).stable_letter.clone()))
        .collect();
    let fa_group = SubgroupAutomaton::fold_build(&fa_gens);
    if !q.b.iter().all(|w| fa_group.contains(w)) {
        return Ok(None);
    }
    let verdict = check_criterion(g, q)?;
    if !verdict.criterion_met {
        return Ok(None);
    }
    let min_b = g.minimal_subgraph(&q.with_b())?;
    let mut merged: BTreeMap<usize, i64> = BTreeMap::new();
    for &(e, k) in twists {
        if min_b.edges.contains(&e) {
            *merged.entry(e).or_default() += k;
        }
    }
    let mut spread: BTreeMap<usize, i64> = BTreeMap::new();
    for (&e, &k) in &merged {
        let d = g.edge(e);
        let z = [d.origin, d.terminus].into_iter().find(|&v| g.is_ztype(v));
        let block = verdict.c_blocks.iter().find(|b| b.subgraph.edges.contains(&e));
        let targets: Vec<usize> = match (z, block) {
            (Some(z), Some(block)) => {
                block.subgraph.edges.iter().copied().filter(|&f| g.is_fa_edge(f) && g.edge(f).touches(z)).collect()
            }
            _ => vec![e],
        };
        for f in targets {
            *spread.entry(f).or_default() += k;
        }
    }
    let spread: Vec<(usize, i64)> = spread.into_iter().collect();
    let theta_prime = Automorphism::twist_product(g, &spread, conjugator)?;
    let mut shift: BTreeMap<usize, Word> = BTreeMap::new();
    for (v, data) in g.vertices().iter().enumerate() {
        let moved = theta_prime.apply_all(&data.generators)?;
        let gamma = if moved == data.generators {
            Some(Word::identity())
        } else {
            simultaneous_conjugacy(&data.generators, &moved)?
        };
        match gamma {
            Some(gamma) => {
                shift.insert(v, gamma);
            }
            None => return Ok(None),
        }
    }
    let in_c_block = |e: usize| verdict.c_blocks.iter().any(|b| b.subgraph.edges.contains(&e));
    let symbol_images = g
        .symbols()
        .iter()
        .map(|&s| match s {
            Symbol::Vertex { vertex, index } => theta_prime.apply(&g.vertex(vertex).generators[index]),
            Symbol::Stable { edge } => {
                let d = g.edge(edge);
                if !d.is_trivial() {
                    theta_prime.apply(&d.stable())
                } else if in_c_block(edge) {
                    Ok(shift[&d.origin].mul(&d.stable()).mul(&shift[&d.terminus].inverse()))
                } else {
                    Ok(d.stable())
                }
            }
        })
        .collect::<Result<Vec<_>>>()?;
    let alpha = from_symbol_images(g, &symbol_images)?;
    let fixes = q.params.iter().chain(&q.c).map(|x| Ok(alpha.apply(x)? == *x)).collect::<Result<Vec<_>>>()?;
    let ok = alpha.is_automorphism()
        && fixes.into_iter().all(|f| f)
        && alpha.apply_all(&q.b)? == theta.apply_all(&q.b)?;
    Ok(ok.then_some(alpha))
}
