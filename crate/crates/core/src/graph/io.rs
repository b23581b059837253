//! The graph interchange document.

use serde::{Deserialize, Serialize};

use super::Graph;
use crate::error::Result;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct EdgeDoc {
    pub id: String,
    pub src: String,
    pub dst: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GraphDoc {
    pub vertices: Vec<String>,
    pub edges: Vec<EdgeDoc>,
}

impl GraphDoc {
    pub fn into_graph(self) -> Result<Graph> {
        Graph::new(
            self.vertices,
            self.edges.into_iter().map(|e| (e.id, e.src, e.dst)),
        )
    }
}

impl Graph {
    pub fn parse(text: &str) -> Result<Graph> {
        serde_json::from_str::<GraphDoc>(text)?.into_graph()
    }

    /// Sorted vertices and edges; parsing the output gives back `self`.
    pub fn to_doc(&self) -> GraphDoc {
        GraphDoc {
            vertices: self.vertices.clone(),
            edges: self
                .edges
                .iter()
                .map(|e| EdgeDoc {
                    id: e.id.clone(),
                    src: self.vertices[e.src.0].clone(),
                    dst: self.vertices[e.dst.0].clone(),
                })
                .collect(),
        }
    }

    pub fn serialize(&self) -> String {
        serde_json::to_string(&self.to_doc()).expect("graph documents serialize")
    }
}

pub fn parse_graph(text: &str) -> Result<Graph> {
    Graph::parse(text)
}

pub fn serialize_graph(graph: &Graph) -> String {
    graph.serialize()
}
