//! Shared generators and brute-force oracles for the integration tests.
//!
//! The oracles work from raw edge lists and never call the structure or
//! trace algorithms under test.

#![allow(dead_code)]

use std::collections::BTreeSet;

use cktrace::fuzz::random_graph;
use cktrace::graph::Graph;
use cktrace::rational::{zero, Rational};
use cktrace::{Path, VertexId};
use num_bigint::BigUint;
use num_traits::{One, Zero};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub fn seeded_graph(seed: u64) -> Graph {
    random_graph(&mut ChaCha8Rng::seed_from_u64(seed))
}

pub fn arb_graph() -> impl Strategy<Value = Graph> {
    any::<u64>().prop_map(seeded_graph)
}

/// Raw `(src, dst)` pairs by edge index.
pub fn edge_list(g: &Graph) -> Vec<(usize, usize)> {
    g.edge_ids()
        .map(|e| (g.source_of(e).index(), g.range_of(e).index()))
        .collect()
}

/// Number of paths with source `v` of each length `0..=n`.
fn path_counts(g: &Graph, v: usize, n: usize) -> Vec<BigUint> {
    let edges = edge_list(g);
    let mut at = vec![BigUint::zero(); g.vertex_count()];
    at[v] = BigUint::one();
    let mut out = vec![BigUint::one()];
    for _ in 0..n {
        let mut next = vec![BigUint::zero(); g.vertex_count()];
        for &(s, r) in &edges {
            next[r] += &at[s];
        }
        out.push(next.iter().sum());
        at = next;
    }
    out
}

/// Length of the shortest closed path at `v`.
fn girth(g: &Graph, v: usize) -> Option<usize> {
    let edges = edge_list(g);
    let mut at = BTreeSet::from([v]);
    for len in 1..=g.vertex_count() {
        at = edges
            .iter()
            .filter(|(s, _)| at.contains(s))
            .map(|&(_, r)| r)
            .collect();
        if at.contains(&v) {
            return Some(len);
        }
    }
    None
}

/// The largest antichain among paths with source `v` and length at most
/// `n`.
///
/// Under `≺` these paths form a forest, so the largest antichain is the set
/// of maximal elements: paths that cannot absorb another closed path at `v`
/// within the length bound.
pub fn antichain_census(g: &Graph, v: usize, n: usize) -> BigUint {
    let counts = path_counts(g, v, n);
    let from = girth(g, v).map_or(0, |c| (n + 1).saturating_sub(c));
    counts[from..].iter().sum()
}

/// Bounded censuses are periodic in `n` once `n ≥ 3|E⁰|`, with window sums
/// constant; unbounded ones keep growing.
pub fn eli_oracle(g: &Graph, v: usize) -> bool {
    let n = g.vertex_count();
    antichain_census(g, v, 6 * n) > antichain_census(g, v, 4 * n)
}

/// Least saturated superset by naive fixpoint.
pub fn saturate_oracle(g: &Graph, h: &BTreeSet<usize>) -> BTreeSet<usize> {
    let edges = edge_list(g);
    let mut out = h.clone();
    loop {
        let mut grew = false;
        for w in 0..g.vertex_count() {
            if out.contains(&w) {
                continue;
            }
            let incoming: Vec<usize> = edges
                .iter()
                .filter(|&&(_, r)| r == w)
                .map(|&(s, _)| s)
                .collect();
            if !incoming.is_empty() && incoming.iter().all(|s| out.contains(s)) {
                out.insert(w);
                grew = true;
            }
        }
        if !grew {
            return out;
        }
    }
}

/// `r(e) ∈ H ⟹ s(e) ∈ H`
pub fn is_hereditary_oracle(g: &Graph, h: &BTreeSet<usize>) -> bool {
    edge_list(g)
        .iter()
        .all(|&(s, r)| !h.contains(&r) || h.contains(&s))
}

/// Truncations of boundary paths at depth `depth`: every path of exactly
/// that length, and every shorter path starting at a vertex that receives
/// nothing.
pub fn boundary_representatives(g: &Graph, depth: usize) -> Vec<Vec<usize>> {
    let edges = edge_list(g);
    let receives = |v: usize| edges.iter().any(|&(_, r)| r == v);
    // paths stored range-end first, grown at the source end
    let mut out = Vec::new();
    let mut layer: Vec<(Vec<usize>, usize)> = (0..g.vertex_count()).map(|v| (vec![], v)).collect();
    for len in 0..=depth {
        let mut next = Vec::new();
        for (p, src) in layer {
            if len == depth || !receives(src) {
                out.push(prefix_key(&p, src));
            }
            if len < depth {
                for (i, &(s, r)) in edges.iter().enumerate() {
                    if r == src {
                        let mut q = p.clone();
                        q.push(i);
                        next.push((q, s));
                    }
                }
            }
        }
        layer = next;
    }
    out
}

/// A path as its edge indices with a trivial path encoded by its vertex.
fn prefix_key(edges: &[usize], src: usize) -> Vec<usize> {
    if edges.is_empty() {
        vec![usize::MAX - src]
    } else {
        edges.to_vec()
    }
}

fn path_key(p: &Path) -> Vec<usize> {
    if p.is_vertex() {
        vec![usize::MAX - p.range().index()]
    } else {
        p.edges().iter().map(|e| e.index()).collect()
    }
}

/// `λ ≺ μ` on raw keys: `μ` starts with `λ` at its range end.
fn below(lambda: &[usize], mu: &[usize], g: &Graph) -> bool {
    let edges = edge_list(g);
    let range = |k: &[usize]| {
        if k[0] >= usize::MAX - g.vertex_count() {
            usize::MAX - k[0]
        } else {
            edges[k[0]].1
        }
    };
    let trivial = |k: &[usize]| k[0] >= usize::MAX - g.vertex_count();
    if trivial(lambda) {
        return range(lambda) == range(mu);
    }
    !trivial(mu) && mu.len() >= lambda.len() && mu[..lambda.len()] == *lambda
}

/// `Σ ξᵢ 1_{Z(λᵢ)} ≥ 0` on every boundary representative of depth
/// `max|λᵢ| + 2`.
pub fn cylinder_oracle(g: &Graph, terms: &[(Rational, Path)]) -> bool {
    let depth = terms.iter().map(|(_, p)| p.len()).max().unwrap_or(0) + 2;
    let keys: Vec<(Rational, Vec<usize>)> = terms
        .iter()
        .map(|(x, p)| (x.clone(), path_key(p)))
        .collect();
    boundary_representatives(g, depth).iter().all(|mu| {
        let mut total = zero();
        for (x, lambda) in &keys {
            if below(lambda, mu, g) {
                total += x;
            }
        }
        total >= zero()
    })
}

/// Rank of rational vectors by exact elimination.
pub fn rank(mut rows: Vec<Vec<Rational>>) -> usize {
    let cols = rows.first().map_or(0, Vec::len);
    let mut r = 0;
    for c in 0..cols {
        let Some(p) = (r..rows.len()).find(|&i| rows[i][c] != zero()) else {
            continue;
        };
        rows.swap(r, p);
        let pivot = rows[r][c].clone();
        for i in 0..rows.len() {
            if i != r && rows[i][c] != zero() {
                let f = rows[i][c].clone() / &pivot;
                for k in c..cols {
                    let d = &f * &rows[r][k];
                    rows[i][k] -= d;
                }
            }
        }
        r += 1;
    }
    r
}

/// Affine independence: differences from the first point are independent.
pub fn affinely_independent(points: &[Vec<Rational>]) -> bool {
    if points.len() <= 1 {
        return true;
    }
    let diffs: Vec<Vec<Rational>> = points[1..]
        .iter()
        .map(|p| p.iter().zip(&points[0]).map(|(a, b)| a - b).collect())
        .collect();
    rank(diffs) == points.len() - 1
}

/// The in-degree-one cycle through `v`, as its length, when every vertex on
/// the backward walk from `v` receives exactly one edge and the walk closes.
pub fn entryless_period(g: &Graph, v: usize) -> Option<usize> {
    let edges = edge_list(g);
    let mut x = v;
    for len in 1..=g.vertex_count() {
        let incoming: Vec<usize> = edges
            .iter()
            .filter(|&&(_, r)| r == x)
            .map(|&(s, _)| s)
            .collect();
        if incoming.len() != 1 {
            return None;
        }
        x = incoming[0];
        if x == v {
            return Some(len);
        }
    }
    None
}

pub fn vertex_index(v: VertexId) -> usize {
    v.index()
}
