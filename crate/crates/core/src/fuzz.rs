//! Seeded random graphs for property batteries.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::graph::Graph;

pub const MAX_VERTICES: usize = 6;
pub const MAX_EDGES: usize = 10;

/// A graph on `v0…` with `e0…`, at most [`MAX_VERTICES`] vertices and
/// [`MAX_EDGES`] edges; endpoints are uniform, loops and parallel edges
/// allowed.
pub fn random_graph<R: Rng>(rng: &mut R) -> Graph {
    let n = rng.random_range(1..=MAX_VERTICES);
    let m = rng.random_range(0..=MAX_EDGES.min(2 * n));
    let vertices: Vec<String> = (0..n).map(|i| format!("v{i}")).collect();
    let edges: Vec<(String, String, String)> = (0..m)
        .map(|i| {
            let src = rng.random_range(0..n);
            let dst = rng.random_range(0..n);
            (
                format!("e{i}"),
                vertices[src].clone(),
                vertices[dst].clone(),
            )
        })
        .collect();
    Graph::new(vertices, edges).expect("generated ids are distinct")
}

/// `count` graphs from one seed.
pub fn battery(seed: u64, count: usize) -> Vec<Graph> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count).map(|_| random_graph(&mut rng)).collect()
}
