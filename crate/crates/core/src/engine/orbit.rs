use super::Automorphism;
use crate::error::{Error, Result};
use crate::graph::GraphOfGroups;
use crate::word::{simultaneous_conjugacy, Word};

/// Whether `τ^m(s₁, s₂)` for `m = 0..=n` are pairwise non-conjugate as
/// pairs, `τ` being the unit Dehn twist about `e`.
pub fn twist_orbit_distinct(g: &GraphOfGroups, e: usize, pair: (&Word, &Word), n: usize) -> Result<bool> {
    if pair.0.commutes_with(pair.1) {
        return Err(Error::Precondition("twisted pair must generate a non-abelian subgroup".into()));
    }
    let tau = Automorphism::dehn_twist(g, e, 1)?;
    let mut orbit = vec![vec![pair.0.clone(), pair.1.clone()]];
    for _ in 0..n {
        let next = tau.apply_all(orbit.last().expect("orbit is nonempty"))?;
        orbit.push(next);
    }
    for i in 0..orbit.len() {
        for j in i + 1..orbit.len() {
            if simultaneous_conjugacy(&orbit[i], &orbit[j])?.is_some() {
                return Ok(false);
            }
        }
    }
    Ok(true)
}
