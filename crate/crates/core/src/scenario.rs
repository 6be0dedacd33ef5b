//! The JSON scenario format: a graph of groups, parameters, tuples and
//! options.

use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};

use crate::cylinders::Disjointness;
use crate::error::{Error, Result};
use crate::graph::{EdgeClass, EdgeData, GraphOfGroups, VertexData, VertexKind};
use crate::word::{Alphabet, Word};

pub const SCHEMA: &str = "splitkit-scenario/1";

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ScenarioFile {
    pub schema: String,
    pub rank: usize,
    pub basis: Vec<String>,
    pub vertices: Vec<VertexSpec>,
    pub edges: Vec<EdgeSpec>,
    pub base: String,
    pub fa_subgraph: Vec<String>,
    #[serde(rename = "params_A", default)]
    pub params_a: Vec<String>,
    #[serde(default)]
    pub tuples: BTreeMap<String, Vec<String>>,
    #[serde(default)]
    pub options: Options,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub witness: Option<WitnessSpec>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct VertexSpec {
    pub id: String,
    pub kind: VertexKind,
    pub generators: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct EdgeSpec {
    pub id: String,
    pub from: String,
    pub to: String,
    pub class: EdgeClass,
    #[serde(default)]
    pub generator: String,
    pub tree: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub stable_letter: Option<String>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Options {
    #[serde(default = "default_saturation")]
    pub saturation_length: usize,
    #[serde(default)]
    pub envelope_disjointness: Disjointness,
}

fn default_saturation() -> usize {
    1
}

impl Default for Options {
    fn default() -> Self {
        Options { saturation_length: 1, envelope_disjointness: Disjointness::Vertex }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct WitnessSpec {
    pub twists: Vec<TwistSpec>,
    #[serde(default)]
    pub conjugator: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TwistSpec {
    pub edge: String,
    pub power: i64,
}

/// A loaded scenario with every word parsed and every id resolved.
#[derive(Clone, Debug)]
pub struct Scenario {
    pub graph: GraphOfGroups,
    pub params: Vec<Word>,
    pub tuples: BTreeMap<String, Vec<Word>>,
    pub options: Options,
    /// Twists `(edge, power)` and the global conjugator.
    pub witness: Option<(Vec<(usize, i64)>, Word)>,
}

impl Scenario {
    pub fn from_json(text: &str) -> Result<Scenario> {
        let file: ScenarioFile =
            serde_json::from_str(text).map_err(|e| Error::Malformed(format!("scenario JSON: {e}")))?;
        Scenario::from_file(&file)
    }

    pub fn from_file(file: &ScenarioFile) -> Result<Scenario> {
        if file.schema != SCHEMA {
            return Err(Error::Malformed(format!("schema {:?}, expected {SCHEMA:?}", file.schema)));
        }
        let names = file
            .basis
            .iter()
            .map(|s| {
                let mut chars = s.chars();
                match (chars.next(), chars.next()) {
                    (Some(c), None) => Ok(c),
                    _ => Err(Error::Malformed(format!("basis name {s:?} must be a single letter"))),
                }
            })
            .collect::<Result<Vec<char>>>()?;
        if names.len() != file.rank {
            return Err(Error::RankMismatch { expected: file.rank, found: names.len() });
        }
        let alphabet = Alphabet::new(names)?;
        let word = |s: &str| Word::parse(s, &alphabet);
        let vertex_ids: BTreeMap<&str, usize> =
            file.vertices.iter().enumerate().map(|(i, v)| (v.id.as_str(), i)).collect();
        let vid = |s: &str| vertex_ids.get(s).copied().ok_or_else(|| Error::UnknownId(s.to_string()));
        let vertices = file
            .vertices
            .iter()
            .map(|v| {
                Ok(VertexData {
                    id: v.id.clone(),
                    kind: v.kind,
                    generators: v.generators.iter().map(|g| word(g)).collect::<Result<_>>()?,
                })
            })
            .collect::<Result<Vec<_>>>()?;
        let edges = file
            .edges
            .iter()
            .map(|e| {
                Ok(EdgeData {
                    id: e.id.clone(),
                    origin: vid(&e.from)?,
                    terminus: vid(&e.to)?,
                    class: e.class,
                    generator: word(&e.generator)?,
                    tree: e.tree,
                    stable_letter: e.stable_letter.as_deref().map(word).transpose()?,
                })
            })
            .collect::<Result<Vec<_>>>()?;
        let fa = file.fa_subgraph.iter().map(|s| vid(s)).collect::<Result<BTreeSet<_>>>()?;
        let graph = GraphOfGroups::new(alphabet.clone(), vertices, edges, vid(&file.base)?, fa)?;
        let params = file.params_a.iter().map(|s| word(s)).collect::<Result<Vec<_>>>()?;
        if let Some(p) = params.iter().find(|p| !graph.group(graph.base()).contains(p)) {
            return Err(Error::Precondition(format!(
                "parameter {} is not in the base vertex group",
                graph.render(p)
            )));
        }
        let tuples = file
            .tuples
            .iter()
            .map(|(k, ws)| Ok((k.clone(), ws.iter().map(|s| word(s)).collect::<Result<Vec<_>>>()?)))
            .collect::<Result<BTreeMap<_, _>>>()?;
        let witness = file
            .witness
            .as_ref()
            .map(|w| {
                let twists = w
                    .twists
                    .iter()
                    .map(|t| Ok((graph.edge_index(&t.edge)?, t.power)))
                    .collect::<Result<Vec<_>>>()?;
                Ok((twists, word(&w.conjugator)?))
            })
            .transpose()?;
        Ok(Scenario { graph, params, tuples, options: file.options, witness })
    }

    pub fn tuple(&self, name: &str) -> Result<&[Word]> {
        self.tuples.get(name).map(Vec::as_slice).ok_or_else(|| Error::UnknownId(format!("tuple {name}")))
    }

    /// Serializes back to the file format.
    pub fn to_file(&self) -> ScenarioFile {
        let g = &self.graph;
        let render = |w: &Word| g.render(w);
        ScenarioFile {
            schema: SCHEMA.to_string(),
            rank: g.rank(),
            basis: g.alphabet().names().iter().map(|c| c.to_string()).collect(),
            vertices: g
                .vertices()
                .iter()
                .map(|v| VertexSpec { id: v.id.clone(), kind: v.kind, generators: v.generators.iter().map(render).collect() })
                .collect(),
            edges: g
                .edges()
                .iter()
                .map(|e| EdgeSpec {
                    id: e.id.clone(),
                    from: g.vertex(e.origin).id.clone(),
                    to: g.vertex(e.terminus).id.clone(),
                    class: e.class,
                    generator: render(&e.generator),
                    tree: e.tree,
                    stable_letter: e.stable_letter.as_ref().map(render),
                })
                .collect(),
            base: g.vertex(g.base()).id.clone(),
            fa_subgraph: g.fa_vertices().iter().map(|&v| g.vertex(v).id.clone()).collect(),
            params_a: self.params.iter().map(render).collect(),
            tuples: self.tuples.iter().map(|(k, ws)| (k.clone(), ws.iter().map(render).collect())).collect(),
            options: self.options,
            witness: self.witness.as_ref().map(|(twists, conj)| WitnessSpec {
                twists: twists.iter().map(|&(e, power)| TwistSpec { edge: g.edge(e).id.clone(), power }).collect(),
                conjugator: render(conj),
            }),
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(&self.to_file()).expect("scenario serializes")
    }
}
