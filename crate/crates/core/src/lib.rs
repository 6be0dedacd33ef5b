//! Splittings of free groups relative to a subgroup: words, Stallings
//! automata, graphs of groups, cylinders and envelopes, and the block
//! criterion for independence of tuples.

pub mod automaton;
pub mod cylinders;
pub mod dot;
pub mod engine;
pub mod error;
pub mod graph;
pub mod minimal;
pub mod scenario;
pub mod subgraph;
pub mod word;

pub use automaton::SubgroupAutomaton;
pub use cylinders::{Disjointness, Envelope};
pub use engine::{Automorphism, ChainCertificate, Question, Verdict};
pub use error::{Error, Result};
pub use scenario::Scenario;
pub use graph::{EdgeClass, EdgeData, GraphOfGroups, NormalForm, ProjectedPath, Step, VertexData, VertexKind};
pub use minimal::{Block, SandwichTerm};
pub use subgraph::Subgraph;
pub use word::{Alphabet, CyclicWord, Letter, Word};
