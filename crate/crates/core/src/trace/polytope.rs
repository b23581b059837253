//! Extreme points of the normalized trace polytope.

use std::cmp::Reverse;
use std::collections::BTreeMap;

use num_traits::{Signed, Zero};

use super::linalg::{solve, Solution};
use super::GraphTrace;
use crate::graph::Graph;
use crate::rational::{int, one, zero, Rational};

/// Extreme points of `{g ≥ 0, equality at regular vertices, Σ g = 1}`.
///
/// A feasible point is extreme iff it is the only solution supported on its
/// own support, so each support is tried once and kept when the restricted
/// system has a unique, strictly positive solution.
pub fn extreme_traces(graph: &Graph) -> Vec<GraphTrace> {
    let n = graph.vertex_count();
    if n == 0 {
        return Vec::new();
    }
    assert!(
        n < usize::BITS as usize,
        "graph too large for support enumeration"
    );
    let regular: Vec<_> = graph
        .vertex_ids()
        .filter(|&v| graph.is_regular(v))
        .collect();
    let mut points: Vec<Vec<Rational>> = Vec::new();
    for mask in 1usize..(1 << n) {
        let support: Vec<usize> = (0..n).filter(|i| mask >> i & 1 == 1).collect();
        let col = |v: usize| support.iter().position(|&s| s == v);
        let mut rows = Vec::new();
        let mut rhs = Vec::new();
        for &v in &regular {
            let mut row = vec![zero(); support.len()];
            if let Some(c) = col(v.index()) {
                row[c] += one();
            }
            for &e in graph.received(v) {
                if let Some(c) = col(graph.source_of(e).index()) {
                    row[c] -= one();
                }
            }
            if row.iter().any(|x| !x.is_zero()) {
                rows.push(row);
                rhs.push(zero());
            }
        }
        rows.push(vec![int(1); support.len()]);
        rhs.push(one());
        if let Solution::Unique(x) = solve(rows, rhs, support.len()) {
            if x.iter().all(|x| x.is_positive()) {
                let mut full = vec![zero(); n];
                for (k, &s) in support.iter().enumerate() {
                    full[s] = x[k].clone();
                }
                points.push(full);
            }
        }
    }
    points.sort_by_key(|p| Reverse(p.clone()));
    points.dedup();
    points
        .into_iter()
        .map(|p| {
            let values: BTreeMap<String, Rational> = graph
                .vertex_ids()
                .map(|v| (graph.vertex_name(v).to_string(), p[v.index()].clone()))
                .collect();
            GraphTrace::new(values)
        })
        .collect()
}
