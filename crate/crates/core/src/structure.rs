//! Hereditary and saturated vertex sets, canonical subgraphs and tightenings.

use std::collections::{BTreeMap, BTreeSet, VecDeque};

use crate::error::{Error, Result};
use crate::graph::{Graph, Path, VertexId};
use crate::rational::{int, Rational};
use crate::trace::GraphTrace;

pub type VertexSet = BTreeSet<VertexId>;

/// `r(e) ∈ H ⟹ s(e) ∈ H` for every edge.
pub fn is_hereditary(graph: &Graph, h: &VertexSet) -> bool {
    graph
        .edge_ids()
        .all(|e| !h.contains(&graph.range_of(e)) || h.contains(&graph.source_of(e)))
}

/// Every regular vertex receiving only from `H` lies in `H`.
pub fn is_saturated(graph: &Graph, h: &VertexSet) -> bool {
    graph
        .vertex_ids()
        .all(|v| h.contains(&v) || !receives_only_from(graph, v, h))
}

fn receives_only_from(graph: &Graph, v: VertexId, h: &VertexSet) -> bool {
    graph.is_regular(v)
        && graph
            .received(v)
            .iter()
            .all(|&e| h.contains(&graph.source_of(e)))
}

/// The least saturated superset of `h`.
pub fn saturate(graph: &Graph, h: &VertexSet) -> VertexSet {
    let mut out = h.clone();
    let mut queue: VecDeque<VertexId> = graph.vertex_ids().collect();
    while let Some(v) = queue.pop_front() {
        if out.contains(&v) || !receives_only_from(graph, v, &out) {
            continue;
        }
        out.insert(v);
        for &e in graph.emitted(v) {
            queue.push_back(graph.range_of(e));
        }
    }
    out
}

/// The hereditary closure: everything that reaches `h`.
pub fn hereditary_closure(graph: &Graph, h: &VertexSet) -> VertexSet {
    let mut out = h.clone();
    let mut queue: VecDeque<VertexId> = h.iter().copied().collect();
    while let Some(v) = queue.pop_front() {
        for &e in graph.received(v) {
            let u = graph.source_of(e);
            if out.insert(u) {
                queue.push_back(u);
            }
        }
    }
    out
}

/// `E ∖ H`: vertices outside `H` and the edges they emit.
pub fn quotient_graph(graph: &Graph, h: &VertexSet) -> Result<Graph> {
    if !is_hereditary(graph, h) {
        return Err(Error::Precondition("vertex set is not hereditary".into()));
    }
    if !is_saturated(graph, h) {
        return Err(Error::Precondition("vertex set is not saturated".into()));
    }
    let keep: VertexSet = graph.vertex_ids().filter(|v| !h.contains(v)).collect();
    Ok(graph.restrict(&keep))
}

/// `C_E`: vertices from which some entry to a cycle can be reached.
pub fn emit_entry_set(graph: &Graph) -> VertexSet {
    let starts: VertexSet = graph
        .entry_edges()
        .into_iter()
        .map(|f| graph.source_of(f))
        .collect();
    hereditary_closure(graph, &starts)
}

/// The minimal tightening and the removed set `H = saturate(C_E)`.
pub fn tighten_min(graph: &Graph) -> (Graph, VertexSet) {
    let h = saturate(graph, &emit_entry_set(graph));
    let tight = quotient_graph(graph, &h).expect("saturated entry set is hereditary");
    (tight, h)
}

/// No cycle has an entry.
pub fn is_tight(graph: &Graph) -> bool {
    graph.entry_edges().is_empty()
}

/// For finite graphs, `v` is essentially left infinite iff `v ∈ C_E`.
pub fn essentially_left_infinite(graph: &Graph, v: VertexId) -> bool {
    emit_entry_set(graph).contains(&v)
}

pub fn left_infinite_set(graph: &Graph) -> VertexSet {
    emit_entry_set(graph)
}

/// Every vertex on a cycle is essentially left infinite.
pub fn auto_gauge_criterion(graph: &Graph) -> bool {
    let left = left_infinite_set(graph);
    graph
        .edge_ids()
        .filter(|&e| graph.on_cycle(e))
        .all(|e| left.contains(&graph.source_of(e)))
}

/// Quotient by the saturation of all essentially left infinite vertices.
pub fn tighten_left(graph: &Graph) -> (Graph, VertexSet) {
    let h = saturate(graph, &left_infinite_set(graph));
    let tight = quotient_graph(graph, &h).expect("saturated left-infinite set is hereditary");
    (tight, h)
}

/// Counts acyclic paths with source `s(λ)` by range, normalized.
///
/// The resulting trace is positive at the base of `λ`, so any tag with a
/// non-trivial nonzero moment there breaks gauge invariance.
pub fn witness_nongauge_trace(graph: &Graph, cycle: &Path) -> Result<GraphTrace> {
    graph.check_path(cycle)?;
    if !cycle.is_cycle() {
        return Err(Error::Precondition("witness needs a cycle".into()));
    }
    let v = cycle.source();
    if essentially_left_infinite(graph, v) {
        return Err(Error::Precondition(format!(
            "vertex \"{}\" is essentially left infinite",
            graph.vertex_name(v)
        )));
    }
    let mut counts = vec![0i64; graph.vertex_count()];
    let mut visited = vec![false; graph.vertex_count()];
    count_acyclic(graph, v, &mut visited, &mut counts);
    let values: BTreeMap<String, Rational> = graph
        .vertex_ids()
        .map(|w| (graph.vertex_name(w).to_string(), int(counts[w.0])))
        .collect();
    Ok(GraphTrace::new(values)
        .normalize()
        .expect("the trivial path at the base is counted"))
}

fn count_acyclic(graph: &Graph, at: VertexId, visited: &mut [bool], counts: &mut [i64]) {
    visited[at.0] = true;
    counts[at.0] += 1;
    for &e in graph.emitted(at) {
        let next = graph.range_of(e);
        if !visited[next.0] {
            count_acyclic(graph, next, visited, counts);
        }
    }
    visited[at.0] = false;
}

pub fn vertex_names(graph: &Graph, h: &VertexSet) -> Vec<String> {
    h.iter()
        .map(|&v| graph.vertex_name(v).to_string())
        .collect()
}

pub fn vertex_set(graph: &Graph, names: &[&str]) -> Result<VertexSet> {
    names.iter().map(|n| graph.vertex(n)).collect()
}
