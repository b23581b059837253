//! Graph traces: exact vertex weightings satisfying the trace conditions.

mod cylinder;
mod linalg;
mod polytope;

use std::collections::BTreeMap;

use num_traits::{Signed, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::graph::{Graph, VertexId};
use crate::rational::{format_rational, parse_rational, zero, Rational};
use crate::structure::{emit_entry_set, is_hereditary, is_saturated, left_infinite_set, VertexSet};

pub use cylinder::{
    char_implication_check, cylinder_positive, violation_certificate, AdmissibleTuple,
};
pub use linalg::{solve, Solution};
pub use polytope::extreme_traces;

/// A map `g: E⁰ → ℚ`. Validity is checked against a graph by [`validate_trace`].
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct GraphTrace {
    values: BTreeMap<String, Rational>,
}

impl GraphTrace {
    pub fn new(values: BTreeMap<String, Rational>) -> Self {
        GraphTrace { values }
    }

    pub fn from_pairs<'a>(pairs: impl IntoIterator<Item = (&'a str, Rational)>) -> Self {
        GraphTrace {
            values: pairs.into_iter().map(|(k, v)| (k.to_string(), v)).collect(),
        }
    }

    pub fn values(&self) -> &BTreeMap<String, Rational> {
        &self.values
    }

    pub fn get(&self, vertex: &str) -> Option<&Rational> {
        self.values.get(vertex)
    }

    pub fn set(&mut self, vertex: &str, value: Rational) {
        self.values.insert(vertex.to_string(), value);
    }

    /// `‖g‖₁`
    pub fn norm(&self) -> Rational {
        self.values.values().fold(zero(), |acc, x| acc + x)
    }

    /// `g / ‖g‖₁`, or `None` for the zero map.
    pub fn normalize(&self) -> Option<GraphTrace> {
        let n = self.norm();
        if n.is_zero() {
            return None;
        }
        Some(GraphTrace {
            values: self
                .values
                .iter()
                .map(|(k, v)| (k.clone(), v / &n))
                .collect(),
        })
    }

    /// Values in vertex-index order; missing or unknown vertices are errors.
    pub fn dense(&self, graph: &Graph) -> Result<Vec<Rational>> {
        for name in self.values.keys() {
            graph.vertex(name)?;
        }
        graph
            .vertex_ids()
            .map(|v| {
                let name = graph.vertex_name(v);
                self.values
                    .get(name)
                    .cloned()
                    .ok_or_else(|| Error::MissingVertex(name.to_string()))
            })
            .collect()
    }

    pub fn at(&self, graph: &Graph, v: VertexId) -> Rational {
        self.values
            .get(graph.vertex_name(v))
            .cloned()
            .unwrap_or_else(zero)
    }

    /// `N_g`
    pub fn null_space(&self, graph: &Graph) -> VertexSet {
        graph
            .vertex_ids()
            .filter(|&v| self.at(graph, v).is_zero())
            .collect()
    }
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct TraceDoc {
    values: BTreeMap<String, String>,
}

impl Serialize for GraphTrace {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        TraceDoc {
            values: self
                .values
                .iter()
                .map(|(k, v)| (k.clone(), format_rational(v)))
                .collect(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for GraphTrace {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let doc = TraceDoc::deserialize(d)?;
        let values = doc
            .values
            .into_iter()
            .map(|(k, v)| parse_rational(&v).map(|r| (k, r)))
            .collect::<Result<_>>()
            .map_err(serde::de::Error::custom)?;
        Ok(GraphTrace { values })
    }
}

/// Which defining condition failed.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Condition {
    /// `g(v) ≥ Σ_{r(e)=v} g(s(e))`
    Inequality,
    /// equality at a regular vertex
    Equality,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Violation {
    pub vertex: String,
    pub condition: Condition,
    /// `g(v)`
    pub lhs: Rational,
    /// `Σ_{r(e)=v} g(s(e))`
    pub rhs: Rational,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum TraceValidation {
    Valid,
    Invalid(Violation),
}

impl TraceValidation {
    pub fn is_valid(&self) -> bool {
        matches!(self, TraceValidation::Valid)
    }
}

fn inflow(graph: &Graph, values: &[Rational], v: VertexId) -> Rational {
    graph
        .received(v)
        .iter()
        .fold(zero(), |acc, &e| acc + &values[graph.source_of(e).0])
}

/// Checks the trace conditions exactly, reporting the first violated vertex.
pub fn validate_trace(graph: &Graph, g: &GraphTrace) -> Result<TraceValidation> {
    let values = g.dense(graph)?;
    for v in graph.vertex_ids() {
        if values[v.0].is_negative() {
            return Err(Error::NegativeValue(graph.vertex_name(v).to_string()));
        }
    }
    for v in graph.vertex_ids() {
        let lhs = values[v.0].clone();
        let rhs = inflow(graph, &values, v);
        let condition = if lhs < rhs {
            Condition::Inequality
        } else if graph.is_regular(v) && lhs != rhs {
            Condition::Equality
        } else {
            continue;
        };
        return Ok(TraceValidation::Invalid(Violation {
            vertex: graph.vertex_name(v).to_string(),
            condition,
            lhs,
            rhs,
        }));
    }
    Ok(TraceValidation::Valid)
}

/// Extends a trace on `E ∖ H` by zero on `H`.
pub fn lift_trace(graph: &Graph, h: &VertexSet, g: &GraphTrace) -> Result<GraphTrace> {
    if !is_hereditary(graph, h) || !is_saturated(graph, h) {
        return Err(Error::Precondition(
            "vertex set is not saturated and hereditary".into(),
        ));
    }
    let quotient = crate::structure::quotient_graph(graph, h)?;
    if !validate_trace(&quotient, g)?.is_valid() {
        return Err(Error::Precondition(
            "trace is invalid on the quotient".into(),
        ));
    }
    let mut values = g.values.clone();
    for &v in h {
        values.insert(graph.vertex_name(v).to_string(), zero());
    }
    Ok(GraphTrace { values })
}

/// `g` vanishes on every entry emitter and every essentially left infinite vertex.
pub fn trace_vanishing_check(graph: &Graph, g: &GraphTrace) -> bool {
    emit_entry_set(graph)
        .union(&left_infinite_set(graph))
        .all(|&v| g.at(graph, v).is_zero())
}
