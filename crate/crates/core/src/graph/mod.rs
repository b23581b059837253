//! Finite directed graphs `E = (E⁰, E¹, r, s)` and their path calculus.
//!
//! Vertices and edges are addressed by dense indices assigned in sorted-id
//! order, so every iteration over a graph is deterministic.

mod cycles;
mod io;
mod path;

use std::collections::{BTreeSet, HashMap, VecDeque};
use std::fmt;

pub use cycles::{Cycle, CyclicClass, CyclicStructure, Ray};
pub use io::{parse_graph, serialize_graph, EdgeDoc, GraphDoc};
pub use path::Path;

use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct VertexId(pub(crate) usize);

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct EdgeId(pub(crate) usize);

impl VertexId {
    pub fn index(self) -> usize {
        self.0
    }
}

impl EdgeId {
    pub fn index(self) -> usize {
        self.0
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Edge {
    pub id: String,
    /// `s(e)`
    pub src: VertexId,
    /// `r(e)`
    pub dst: VertexId,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum VertexKind {
    /// `r⁻¹(v)` is non-empty (always finite here).
    Regular,
    /// `r⁻¹(v) = ∅`; finite graphs have no infinite receivers.
    SourceSingular,
}

#[derive(Clone)]
pub struct Graph {
    vertices: Vec<String>,
    edges: Vec<Edge>,
    vertex_lookup: HashMap<String, VertexId>,
    edge_lookup: HashMap<String, EdgeId>,
    received: Vec<Vec<EdgeId>>,
    emitted: Vec<Vec<EdgeId>>,
    cyclic: CyclicStructure,
}

impl PartialEq for Graph {
    fn eq(&self, other: &Self) -> bool {
        self.vertices == other.vertices && self.edge_triples() == other.edge_triples()
    }
}

impl Eq for Graph {}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Graph")
            .field("vertices", &self.vertices)
            .field("edges", &self.edge_triples())
            .finish()
    }
}

impl Graph {
    /// Builds a graph from vertex ids and `(edge id, src, dst)` triples.
    pub fn new<V, E>(vertices: V, edges: E) -> Result<Graph>
    where
        V: IntoIterator,
        V::Item: Into<String>,
        E: IntoIterator<Item = (String, String, String)>,
    {
        let mut names: Vec<String> = vertices.into_iter().map(Into::into).collect();
        names.sort();
        for pair in names.windows(2) {
            if pair[0] == pair[1] {
                return Err(Error::DuplicateVertex(pair[0].clone()));
            }
        }
        if names.iter().any(String::is_empty) {
            return Err(Error::EmptyId {
                what: "vertex list",
            });
        }
        let vertex_lookup: HashMap<String, VertexId> = names
            .iter()
            .enumerate()
            .map(|(i, name)| (name.clone(), VertexId(i)))
            .collect();

        let mut raw: Vec<(String, String, String)> = edges.into_iter().collect();
        raw.sort_by(|a, b| a.0.cmp(&b.0));
        for pair in raw.windows(2) {
            if pair[0].0 == pair[1].0 {
                return Err(Error::DuplicateEdge(pair[0].0.clone()));
            }
        }
        let mut edge_list = Vec::with_capacity(raw.len());
        for (id, src, dst) in raw {
            if id.is_empty() {
                return Err(Error::EmptyId { what: "edge list" });
            }
            let resolve = |name: &str| {
                vertex_lookup
                    .get(name)
                    .copied()
                    .ok_or_else(|| Error::DanglingEndpoint {
                        edge: id.clone(),
                        vertex: name.to_string(),
                    })
            };
            let src = resolve(&src)?;
            let dst = resolve(&dst)?;
            edge_list.push(Edge { id, src, dst });
        }
        Ok(Self::assemble(names, vertex_lookup, edge_list))
    }

    fn assemble(
        vertices: Vec<String>,
        vertex_lookup: HashMap<String, VertexId>,
        edges: Vec<Edge>,
    ) -> Graph {
        let edge_lookup = edges
            .iter()
            .enumerate()
            .map(|(i, e)| (e.id.clone(), EdgeId(i)))
            .collect();
        let mut received = vec![Vec::new(); vertices.len()];
        let mut emitted = vec![Vec::new(); vertices.len()];
        for (i, e) in edges.iter().enumerate() {
            received[e.dst.0].push(EdgeId(i));
            emitted[e.src.0].push(EdgeId(i));
        }
        let mut graph = Graph {
            vertices,
            edges,
            vertex_lookup,
            edge_lookup,
            received,
            emitted,
            cyclic: CyclicStructure::default(),
        };
        graph.cyclic = CyclicStructure::compute(&graph);
        graph
    }

    pub fn empty() -> Graph {
        Self::assemble(Vec::new(), HashMap::new(), Vec::new())
    }

    fn edge_triples(&self) -> Vec<(&str, &str, &str)> {
        self.edges
            .iter()
            .map(|e| {
                (
                    e.id.as_str(),
                    self.vertices[e.src.0].as_str(),
                    self.vertices[e.dst.0].as_str(),
                )
            })
            .collect()
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn vertex_ids(&self) -> impl Iterator<Item = VertexId> + '_ {
        (0..self.vertices.len()).map(VertexId)
    }

    pub fn edge_ids(&self) -> impl Iterator<Item = EdgeId> + '_ {
        (0..self.edges.len()).map(EdgeId)
    }

    pub fn vertex_name(&self, v: VertexId) -> &str {
        &self.vertices[v.0]
    }

    pub fn edge_name(&self, e: EdgeId) -> &str {
        &self.edges[e.0].id
    }

    pub fn edge(&self, e: EdgeId) -> &Edge {
        &self.edges[e.0]
    }

    pub fn vertex(&self, name: &str) -> Result<VertexId> {
        self.vertex_lookup
            .get(name)
            .copied()
            .ok_or_else(|| Error::UnknownVertex(name.to_string()))
    }

    pub fn edge_by_name(&self, name: &str) -> Result<EdgeId> {
        self.edge_lookup
            .get(name)
            .copied()
            .ok_or_else(|| Error::UnknownEdge(name.to_string()))
    }

    pub fn source_of(&self, e: EdgeId) -> VertexId {
        self.edges[e.0].src
    }

    pub fn range_of(&self, e: EdgeId) -> VertexId {
        self.edges[e.0].dst
    }

    /// `r⁻¹(v)`
    pub fn received(&self, v: VertexId) -> &[EdgeId] {
        &self.received[v.0]
    }

    /// `s⁻¹(v)`
    pub fn emitted(&self, v: VertexId) -> &[EdgeId] {
        &self.emitted[v.0]
    }

    pub fn is_regular(&self, v: VertexId) -> bool {
        !self.received[v.0].is_empty()
    }

    pub fn classify_vertex(&self, name: &str) -> Result<VertexKind> {
        let v = self.vertex(name)?;
        Ok(if self.is_regular(v) {
            VertexKind::Regular
        } else {
            VertexKind::SourceSingular
        })
    }

    pub fn cyclic_structure(&self) -> &CyclicStructure {
        &self.cyclic
    }

    /// Single-edge path `e`.
    pub fn edge_path(&self, e: EdgeId) -> Path {
        let edge = &self.edges[e.0];
        Path::from_parts(edge.dst, edge.src, vec![e])
    }

    /// Checks `s(e_k) = r(e_{k+1})` and builds the path.
    pub fn path(&self, edges: &[EdgeId]) -> Result<Path> {
        let Some(&first) = edges.first() else {
            return Err(Error::Precondition(
                "a path of length zero needs its vertex; use Path::vertex".into(),
            ));
        };
        for &e in edges {
            if e.0 >= self.edges.len() {
                return Err(Error::ForeignPath);
            }
        }
        for pair in edges.windows(2) {
            let (src, rng) = (self.source_of(pair[0]), self.range_of(pair[1]));
            if src != rng {
                return Err(Error::NotComposable {
                    source_vertex: self.vertex_name(src).to_string(),
                    range_vertex: self.vertex_name(rng).to_string(),
                });
            }
        }
        let last = *edges.last().expect("non-empty");
        Ok(Path::from_parts(
            self.range_of(first),
            self.source_of(last),
            edges.to_vec(),
        ))
    }

    /// Confirms that `p` is a well-formed path of this graph.
    pub fn check_path(&self, p: &Path) -> Result<()> {
        if p.range().0 >= self.vertices.len() || p.source().0 >= self.vertices.len() {
            return Err(Error::ForeignPath);
        }
        if p.is_vertex() {
            return if p.range() == p.source() {
                Ok(())
            } else {
                Err(Error::ForeignPath)
            };
        }
        let rebuilt = self.path(p.edges()).map_err(|_| Error::ForeignPath)?;
        if &rebuilt == p {
            Ok(())
        } else {
            Err(Error::ForeignPath)
        }
    }

    /// `λ·ν`, requiring `s(λ) = r(ν)`.
    pub fn compose(&self, lambda: &Path, nu: &Path) -> Result<Path> {
        lambda.concat(nu).ok_or_else(|| Error::NotComposable {
            source_vertex: self.vertex_name(lambda.source()).to_string(),
            range_vertex: self.vertex_name(nu.range()).to_string(),
        })
    }

    /// `σ ⊖ λ`, requiring `λ ≺ σ`.
    pub fn remainder(&self, sigma: &Path, lambda: &Path) -> Result<Path> {
        lambda.remainder_in(sigma).ok_or(Error::NotPrefix)
    }

    /// Parses `"e1.e2.e3"` (range end first) or `"@v"`.
    pub fn parse_path(&self, literal: &str) -> Result<Path> {
        let text = literal.trim();
        if let Some(name) = text.strip_prefix('@') {
            if name.is_empty() {
                return Err(Error::literal(literal, "missing vertex after '@'"));
            }
            return Ok(Path::vertex(self.vertex(name)?));
        }
        if text.is_empty() {
            return Err(Error::literal(literal, "empty path literal"));
        }
        let mut edges = Vec::new();
        for part in text.split('.') {
            if part.is_empty() {
                return Err(Error::literal(literal, "empty edge id"));
            }
            edges.push(self.edge_by_name(part)?);
        }
        self.path(&edges)
    }

    pub fn path_literal(&self, p: &Path) -> String {
        if p.is_vertex() {
            return format!("@{}", self.vertex_name(p.range()));
        }
        p.edges()
            .iter()
            .map(|&e| self.edge_name(e))
            .collect::<Vec<_>>()
            .join(".")
    }

    /// All paths with source `v` and length at most `max_len`, shortest first.
    pub fn paths_from(&self, v: VertexId, max_len: usize) -> Vec<Path> {
        let mut out = vec![Path::vertex(v)];
        let mut frontier = vec![Path::vertex(v)];
        for _ in 0..max_len {
            let mut next = Vec::new();
            for p in &frontier {
                for &e in self.emitted(p.range()) {
                    let mut edges = Vec::with_capacity(p.len() + 1);
                    edges.push(e);
                    edges.extend_from_slice(p.edges());
                    next.push(Path::from_parts(self.range_of(e), v, edges));
                }
            }
            next.sort();
            out.extend(next.iter().cloned());
            frontier = next;
        }
        out
    }

    /// All paths of length at most `max_len`, in path order.
    pub fn all_paths(&self, max_len: usize) -> Vec<Path> {
        let mut out: Vec<Path> = self
            .vertex_ids()
            .flat_map(|v| self.paths_from(v, max_len))
            .collect();
        out.sort();
        out
    }

    /// Paths `λ·δ` extending `lambda` at its source end, `|λ·δ| <= max_len`.
    pub fn extensions(&self, lambda: &Path, max_len: usize) -> Vec<Path> {
        let mut out = vec![lambda.clone()];
        let mut frontier = vec![lambda.clone()];
        while let Some(p) = frontier.pop() {
            if p.len() >= max_len {
                continue;
            }
            for &e in self.received(p.source()) {
                let mut q = p.clone();
                q.push_source_edge(e, self.source_of(e));
                out.push(q.clone());
                frontier.push(q);
            }
        }
        out.sort();
        out
    }

    /// Prefixes of `p` from the trivial path at `r(p)` up to `p` itself.
    pub fn prefixes(&self, p: &Path) -> Vec<Path> {
        let mut out = vec![Path::vertex(p.range())];
        for k in 1..=p.len() {
            let edges = p.edges()[..k].to_vec();
            let source = self.source_of(edges[k - 1]);
            out.push(Path::from_parts(p.range(), source, edges));
        }
        out
    }

    /// A (possibly trivial) path with source `v` and range `w` exists.
    pub fn reaches(&self, v: VertexId, w: VertexId) -> bool {
        self.reachable_from(v).contains(&w)
    }

    /// Vertices `w` with a path `λ`, `s(λ) = v`, `r(λ) = w`.
    pub fn reachable_from(&self, v: VertexId) -> BTreeSet<VertexId> {
        let mut seen = BTreeSet::from([v]);
        let mut queue = VecDeque::from([v]);
        while let Some(x) = queue.pop_front() {
            for &e in self.emitted(x) {
                let y = self.range_of(e);
                if seen.insert(y) {
                    queue.push_back(y);
                }
            }
        }
        seen
    }

    /// The subgraph on `keep`, retaining edges whose source is kept.
    /// The caller guarantees that such edges also have their range kept.
    pub(crate) fn restrict(&self, keep: &BTreeSet<VertexId>) -> Graph {
        let vertices: Vec<String> = keep.iter().map(|&v| self.vertices[v.0].clone()).collect();
        let edges: Vec<(String, String, String)> = self
            .edges
            .iter()
            .filter(|e| keep.contains(&e.src))
            .map(|e| {
                (
                    e.id.clone(),
                    self.vertices[e.src.0].clone(),
                    self.vertices[e.dst.0].clone(),
                )
            })
            .collect();
        Graph::new(vertices, edges).expect("restriction of a valid graph is valid")
    }

    /// Maps a path of `self` to the same-named path of `other`, if present.
    pub fn transport_path(&self, p: &Path, other: &Graph) -> Option<Path> {
        if p.is_vertex() {
            return other
                .vertex(self.vertex_name(p.range()))
                .ok()
                .map(Path::vertex);
        }
        let edges: Option<Vec<EdgeId>> = p
            .edges()
            .iter()
            .map(|&e| other.edge_by_name(self.edge_name(e)).ok())
            .collect();
        other.path(&edges?).ok()
    }
}
