//! Small named graphs used throughout the docs and tests.

use crate::graph::Graph;

fn build(vertices: &[&str], edges: &[(&str, &str, &str)]) -> Graph {
    Graph::new(
        vertices.iter().copied(),
        edges
            .iter()
            .map(|&(id, src, dst)| (id.to_string(), src.to_string(), dst.to_string())),
    )
    .expect("fixture graphs are valid")
}

/// One vertex `v` with a loop `e`.
pub fn loop_graph() -> Graph {
    build(&["v"], &[("e", "v", "v")])
}

/// One vertex `v` with loops `e1`, `e2`.
pub fn o2() -> Graph {
    build(&["v"], &[("e1", "v", "v"), ("e2", "v", "v")])
}

/// `v1 ← v2 ← v3` via `a: v2 → v1`, `b: v3 → v2`.
pub fn line3() -> Graph {
    build(&["v1", "v2", "v3"], &[("a", "v2", "v1"), ("b", "v3", "v2")])
}

/// Loop `e` at `v` with an entry `f: u → v`.
pub fn loop_entry() -> Graph {
    build(&["u", "v"], &[("e", "v", "v"), ("f", "u", "v")])
}

/// `v ⇄ w` via `a: v → w`, `b: w → v`.
pub fn two_cycle() -> Graph {
    build(&["v", "w"], &[("a", "v", "w"), ("b", "w", "v")])
}

/// Disjoint loops `e` at `v` and `f` at `w`.
pub fn two_loops() -> Graph {
    build(&["v", "w"], &[("e", "v", "v"), ("f", "w", "w")])
}
