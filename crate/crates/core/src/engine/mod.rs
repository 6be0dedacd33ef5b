//! The independence criterion, chain certificates, Dehn twists, the
//! twist witness, amalgams and twist orbits.

mod amalgam;
mod automorphism;
mod chain;
mod criterion;
mod orbit;
mod witness;

pub use amalgam::{amalgamate, Amalgam};
pub use automorphism::Automorphism;
pub use chain::{chain_certificate, verify_chain, ChainCertificate};
pub use criterion::{check_criterion, PairReport, Verdict};
pub use orbit::twist_orbit_distinct;
pub use witness::mod_witness;

use crate::scenario::Options;
use crate::word::Word;

/// Everything a criterion check depends on.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Question {
    pub params: Vec<Word>,
    pub b: Vec<Word>,
    pub c: Vec<Word>,
    pub options: Options,
}

impl Question {
    pub fn new(params: &[Word], b: &[Word], c: &[Word], options: Options) -> Self {
        Question { params: params.to_vec(), b: b.to_vec(), c: c.to_vec(), options }
    }

    pub(crate) fn with_b(&self) -> Vec<Word> {
        self.params.iter().chain(&self.b).cloned().collect()
    }

    pub(crate) fn with_c(&self) -> Vec<Word> {
        self.params.iter().chain(&self.c).cloned().collect()
    }

    pub fn swapped(&self) -> Question {
        Question { params: self.params.clone(), b: self.c.clone(), c: self.b.clone(), options: self.options }
    }
}
