use std::cmp::Ordering;

use super::{EdgeId, VertexId};

/// A finite path `e1 e2 ... en` read right to left: `s(e_k) = r(e_{k+1})`,
/// so `e1` sits at the range end and `en` at the source end.
///
/// A path of length zero is a single vertex, which is both its range and its
/// source.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Path {
    range: VertexId,
    source: VertexId,
    edges: Vec<EdgeId>,
}

impl Path {
    pub fn vertex(v: VertexId) -> Self {
        Path {
            range: v,
            source: v,
            edges: Vec::new(),
        }
    }

    /// Builds a path from already validated parts. Composability is the
    /// caller's responsibility; [`super::Graph::path`] checks it.
    pub(crate) fn from_parts(range: VertexId, source: VertexId, edges: Vec<EdgeId>) -> Self {
        Path {
            range,
            source,
            edges,
        }
    }

    pub fn len(&self) -> usize {
        self.edges.len()
    }

    pub fn is_vertex(&self) -> bool {
        self.edges.is_empty()
    }

    pub fn range(&self) -> VertexId {
        self.range
    }

    pub fn source(&self) -> VertexId {
        self.source
    }

    pub fn edges(&self) -> &[EdgeId] {
        &self.edges
    }

    /// Range-end edge `e1`.
    pub fn first_edge(&self) -> Option<EdgeId> {
        self.edges.first().copied()
    }

    /// Source-end edge `en`.
    pub fn last_edge(&self) -> Option<EdgeId> {
        self.edges.last().copied()
    }

    /// `self · other`, defined when `s(self) = r(other)`.
    pub fn concat(&self, other: &Path) -> Option<Path> {
        if self.source != other.range {
            return None;
        }
        let mut edges = Vec::with_capacity(self.edges.len() + other.edges.len());
        edges.extend_from_slice(&self.edges);
        edges.extend_from_slice(&other.edges);
        Some(Path {
            range: self.range,
            source: other.source,
            edges,
        })
    }

    /// `self ≺ sigma`: `sigma = self · ν` for some path `ν`.
    pub fn is_prefix_of(&self, sigma: &Path) -> bool {
        self.range == sigma.range
            && self.edges.len() <= sigma.edges.len()
            && sigma.edges[..self.edges.len()] == self.edges[..]
    }

    /// `sigma ⊖ self`, the path `ν` with `sigma = self · ν`.
    pub fn remainder_in(&self, sigma: &Path) -> Option<Path> {
        if !self.is_prefix_of(sigma) {
            return None;
        }
        Some(Path {
            range: self.source,
            source: sigma.source,
            edges: sigma.edges[self.edges.len()..].to_vec(),
        })
    }

    pub fn comparable(&self, other: &Path) -> bool {
        self.is_prefix_of(other) || other.is_prefix_of(self)
    }

    pub fn incomparable(&self, other: &Path) -> bool {
        !self.comparable(other)
    }

    pub fn is_cycle(&self) -> bool {
        !self.edges.is_empty() && self.range == self.source
    }

    /// Drops the source-end edge; `new_source` must be that edge's range.
    pub(crate) fn pop_source_edge(&mut self, new_source: VertexId) -> Option<EdgeId> {
        let e = self.edges.pop()?;
        self.source = new_source;
        Some(e)
    }

    /// Appends an edge at the source end; `new_source` is the edge's source.
    pub(crate) fn push_source_edge(&mut self, e: EdgeId, new_source: VertexId) {
        self.edges.push(e);
        self.source = new_source;
    }

    /// `self^k` for a cycle (`k >= 1`), or the base vertex for `k = 0`.
    pub fn power(&self, k: usize) -> Path {
        debug_assert!(k == 0 || self.range == self.source);
        if k == 0 {
            return Path::vertex(self.source);
        }
        let mut edges = Vec::with_capacity(self.edges.len() * k);
        for _ in 0..k {
            edges.extend_from_slice(&self.edges);
        }
        Path {
            range: self.range,
            source: self.source,
            edges,
        }
    }

    /// Vertices visited, from the source end to the range end.
    pub fn vertices_from_source<'a>(
        &'a self,
        graph: &'a super::Graph,
    ) -> impl Iterator<Item = VertexId> + 'a {
        std::iter::once(self.source).chain(self.edges.iter().rev().map(move |&e| graph.range_of(e)))
    }
}

impl Ord for Path {
    fn cmp(&self, other: &Self) -> Ordering {
        self.edges
            .len()
            .cmp(&other.edges.len())
            .then_with(|| self.edges.cmp(&other.edges))
            .then_with(|| self.range.cmp(&other.range))
            .then_with(|| self.source.cmp(&other.source))
    }
}

impl PartialOrd for Path {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}
