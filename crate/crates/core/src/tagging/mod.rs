//! Cyclic tags: a circle measure on each cyclic vertex carrying mass.

mod circle;

use std::collections::BTreeMap;

use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::error::Result;
use crate::graph::{Graph, VertexId};
use crate::structure::VertexSet;
use crate::trace::GraphTrace;

pub use circle::{moment, Angle, CircleMeasure, CircleValue};

/// Vertex name to measure.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Tag {
    measures: BTreeMap<String, CircleMeasure>,
}

impl Tag {
    pub fn new(measures: BTreeMap<String, CircleMeasure>) -> Tag {
        Tag { measures }
    }

    pub fn from_pairs<'a>(pairs: impl IntoIterator<Item = (&'a str, CircleMeasure)>) -> Tag {
        Tag {
            measures: pairs.into_iter().map(|(k, m)| (k.to_string(), m)).collect(),
        }
    }

    pub fn get(&self, vertex: &str) -> Option<&CircleMeasure> {
        self.measures.get(vertex)
    }

    pub fn measures(&self) -> &BTreeMap<String, CircleMeasure> {
        &self.measures
    }

    pub fn is_empty(&self) -> bool {
        self.measures.is_empty()
    }

    /// Measures indexed by vertex; vertices without a measure get `None`.
    pub(crate) fn dense(&self, graph: &Graph) -> Vec<Option<CircleMeasure>> {
        graph
            .vertex_ids()
            .map(|v| self.measures.get(graph.vertex_name(v)).cloned())
            .collect()
    }
}

/// `supp^c g`: cyclic vertices where `g` is non-zero.
pub fn cyclic_support(graph: &Graph, g: &GraphTrace) -> VertexSet {
    graph
        .cyclic_structure()
        .cyclic_vertices()
        .into_iter()
        .filter(|&v| !g.at(graph, v).is_zero())
        .collect()
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum TagValidation {
    Valid,
    /// The tag must be defined exactly on the cyclic support.
    DomainMismatch {
        missing: Vec<String>,
        unexpected: Vec<String>,
    },
    /// Two vertices on the same entry-less cycle carry different measures.
    Inconsistent {
        class: Vec<String>,
    },
}

impl TagValidation {
    pub fn is_valid(&self) -> bool {
        matches!(self, TagValidation::Valid)
    }
}

/// Checks the domain and consistency of `mu` for the trace `g`.
pub fn validate_tag(graph: &Graph, g: &GraphTrace, mu: &Tag) -> Result<TagValidation> {
    g.dense(graph)?;
    let support = cyclic_support(graph, g);
    let names = |set: &mut dyn Iterator<Item = VertexId>| -> Vec<String> {
        set.map(|v| graph.vertex_name(v).to_string()).collect()
    };
    let missing = names(
        &mut support
            .iter()
            .copied()
            .filter(|&v| mu.get(graph.vertex_name(v)).is_none()),
    );
    let unexpected: Vec<String> = mu
        .measures
        .keys()
        .filter(|name| graph.vertex(name).map_or(true, |v| !support.contains(&v)))
        .cloned()
        .collect();
    if !missing.is_empty() || !unexpected.is_empty() {
        return Ok(TagValidation::DomainMismatch {
            missing,
            unexpected,
        });
    }
    for class in graph.cyclic_structure().classes() {
        let tagged: Vec<&CircleMeasure> = class
            .vertices
            .iter()
            .filter_map(|&v| mu.get(graph.vertex_name(v)))
            .collect();
        if tagged.windows(2).any(|w| w[0] != w[1]) {
            return Ok(TagValidation::Inconsistent {
                class: names(&mut class.vertices.iter().copied()),
            });
        }
    }
    Ok(TagValidation::Valid)
}

/// Haar measure on every vertex of the cyclic support.
pub fn haar_tag(graph: &Graph, g: &GraphTrace) -> Tag {
    Tag {
        measures: cyclic_support(graph, g)
            .into_iter()
            .map(|v| (graph.vertex_name(v).to_string(), CircleMeasure::haar()))
            .collect(),
    }
}
