//! Graph traces, cyclic tags and the tracial states of graph C*-algebras,
//! computed exactly.

pub mod error;
pub mod fixtures;
pub mod fuzz;
pub mod graph;
pub mod rational;
pub mod star;
pub mod structure;
pub mod tagging;
pub mod trace;

pub use error::{Error, Result};
pub use graph::{parse_graph, serialize_graph, Cycle, EdgeId, Graph, Path, Ray, VertexId};
pub use rational::Rational;
pub use star::{Functional, Monomial, TraceFunctional};
pub use tagging::{Angle, CircleMeasure, CircleValue, Tag};
pub use trace::GraphTrace;
