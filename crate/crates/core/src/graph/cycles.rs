//! Cycles, entries, entry-less classes and rays.

use std::collections::BTreeSet;

use super::{EdgeId, Graph, Path, VertexId};

/// A closed path of positive length.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Cycle {
    path: Path,
}

impl Cycle {
    pub fn new(path: Path) -> Option<Cycle> {
        path.is_cycle().then_some(Cycle { path })
    }

    pub fn path(&self) -> &Path {
        &self.path
    }

    pub fn into_path(self) -> Path {
        self.path
    }

    pub fn len(&self) -> usize {
        self.path.len()
    }

    pub fn base(&self) -> VertexId {
        self.path.source()
    }

    /// Vertices `r(e1), r(e2), …, r(en)`.
    pub fn vertices(&self, graph: &Graph) -> Vec<VertexId> {
        self.path
            .edges()
            .iter()
            .map(|&e| graph.range_of(e))
            .collect()
    }

    /// The rotation `e_{i+1} … e_n e_1 … e_i`, based at `r(e_{i+1})`.
    pub fn rotation(&self, graph: &Graph, i: usize) -> Cycle {
        let n = self.len();
        let edges: Vec<EdgeId> = (0..n).map(|k| self.path.edges()[(i + k) % n]).collect();
        let base = graph.range_of(edges[0]);
        Cycle {
            path: Path::from_parts(base, base, edges),
        }
    }

    pub fn is_simple(&self, graph: &Graph) -> bool {
        let vs = self.vertices(graph);
        vs.iter().collect::<BTreeSet<_>>().len() == vs.len()
    }
}

/// One simple entry-less cycle and the vertices it visits.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CyclicClass {
    /// Canonical rotation: the least edge sequence among rotations.
    pub cycle: Path,
    pub vertices: BTreeSet<VertexId>,
}

/// Cyclic vertices of a graph and their classes.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct CyclicStructure {
    classes: Vec<CyclicClass>,
    vertex_class: Vec<Option<usize>>,
    edge_class: Vec<Option<usize>>,
    seeds: Vec<Option<Path>>,
}

impl CyclicStructure {
    /// Entry-less simple cycles are exactly the cycles of the predecessor
    /// map on vertices receiving one edge.
    pub(crate) fn compute(graph: &Graph) -> CyclicStructure {
        let n = graph.vertex_count();
        let only_edge = |v: VertexId| match graph.received(v) {
            [e] => Some(*e),
            _ => None,
        };
        // 0 = unvisited, 1 = on current walk, 2 = done
        let mut state = vec![0u8; n];
        let mut found: Vec<Vec<EdgeId>> = Vec::new();
        for start in graph.vertex_ids() {
            if state[start.0] != 0 {
                continue;
            }
            let mut walk = Vec::new();
            let mut v = start;
            loop {
                if state[v.0] != 0 {
                    if state[v.0] == 1 {
                        let at = walk.iter().position(|&(w, _)| w == v).expect("on walk");
                        found.push(walk[at..].iter().map(|&(_, e)| e).collect());
                    }
                    break;
                }
                state[v.0] = 1;
                match only_edge(v) {
                    Some(e) => {
                        walk.push((v, e));
                        v = graph.source_of(e);
                    }
                    None => break,
                }
            }
            for (w, _) in &walk {
                state[w.0] = 2;
            }
            state[v.0] = state[v.0].max(2);
        }

        let mut classes: Vec<CyclicClass> = found
            .into_iter()
            .map(|edges| {
                let k = edges.len();
                let best = (0..k)
                    .map(|i| (0..k).map(|j| edges[(i + j) % k]).collect::<Vec<_>>())
                    .min()
                    .expect("non-empty cycle");
                let base = graph.range_of(best[0]);
                let vertices = best.iter().map(|&e| graph.range_of(e)).collect();
                CyclicClass {
                    cycle: Path::from_parts(base, base, best),
                    vertices,
                }
            })
            .collect();
        classes.sort_by(|a, b| {
            let key = |c: &CyclicClass| {
                let mut s = c.cycle.edges().to_vec();
                s.sort();
                s
            };
            key(a).cmp(&key(b)).then_with(|| a.cycle.cmp(&b.cycle))
        });

        let mut vertex_class = vec![None; n];
        let mut edge_class = vec![None; graph.edge_count()];
        let mut seeds = vec![None; n];
        for (i, class) in classes.iter().enumerate() {
            let edges = class.cycle.edges();
            let k = edges.len();
            for (j, &e) in edges.iter().enumerate() {
                let v = graph.range_of(e);
                vertex_class[v.0] = Some(i);
                edge_class[e.0] = Some(i);
                let rotated: Vec<EdgeId> = (0..k).map(|t| edges[(j + t) % k]).collect();
                seeds[v.0] = Some(Path::from_parts(v, v, rotated));
            }
        }
        CyclicStructure {
            classes,
            vertex_class,
            edge_class,
            seeds,
        }
    }

    pub fn classes(&self) -> &[CyclicClass] {
        &self.classes
    }

    pub fn cyclic_vertices(&self) -> BTreeSet<VertexId> {
        self.classes
            .iter()
            .flat_map(|c| c.vertices.iter().copied())
            .collect()
    }

    pub fn is_cyclic(&self, v: VertexId) -> bool {
        self.vertex_class.get(v.0).copied().flatten().is_some()
    }

    pub fn class_of(&self, v: VertexId) -> Option<usize> {
        self.vertex_class.get(v.0).copied().flatten()
    }

    pub fn edge_class(&self, e: EdgeId) -> Option<usize> {
        self.edge_class.get(e.0).copied().flatten()
    }

    pub fn equivalent(&self, v: VertexId, w: VertexId) -> bool {
        matches!((self.class_of(v), self.class_of(w)), (Some(a), Some(b)) if a == b)
    }

    /// The simple entry-less cycle rotated to be based at `v`.
    pub fn seed_at(&self, v: VertexId) -> Option<Path> {
        self.seeds.get(v.0).cloned().flatten()
    }

    /// `c` is a cycle all of whose edges lie on entry-less cycles.
    pub fn is_entryless_cycle(&self, c: &Path) -> bool {
        c.is_cycle() && c.edges().iter().all(|&e| self.edge_class(e).is_some())
    }

    /// Writes an entry-less cycle as `ρ^k`, `ρ` the simple cycle at its base.
    pub fn root(&self, c: &Path) -> Option<(Path, usize)> {
        if !self.is_entryless_cycle(c) {
            return None;
        }
        let rho = self.seed_at(c.source())?;
        Some((rho.clone(), c.len() / rho.len()))
    }
}

/// A path `α` ending at a cyclic vertex, disjoint from the seed `ν` at `s(α)`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct Ray {
    pub path: Path,
    pub seed: Path,
}

impl Graph {
    /// Simple cycles, one per rotation class, each in its least rotation,
    /// ordered by sorted edge-id sequence.
    pub fn simple_cycles(&self) -> Vec<Cycle> {
        let mut out = Vec::new();
        for start in self.vertex_ids() {
            let mut on_path = vec![false; self.vertex_count()];
            let mut edges = Vec::new();
            self.circuits_from(start, start, &mut on_path, &mut edges, &mut out);
        }
        let mut cycles: Vec<Cycle> = out
            .into_iter()
            .map(|edges: Vec<EdgeId>| {
                let k = edges.len();
                let best = (0..k)
                    .map(|i| (0..k).map(|j| edges[(i + j) % k]).collect::<Vec<_>>())
                    .min()
                    .expect("non-empty");
                let base = self.range_of(best[0]);
                Cycle {
                    path: Path::from_parts(base, base, best),
                }
            })
            .collect();
        cycles.sort_by(|a, b| {
            let key = |c: &Cycle| {
                let mut s = c.path.edges().to_vec();
                s.sort();
                s
            };
            key(a).cmp(&key(b)).then_with(|| a.cmp(b))
        });
        cycles.dedup();
        cycles
    }

    /// Backtracking walk against edge direction, visiting only vertices
    /// above `start` so each circuit is found from its least vertex.
    fn circuits_from(
        &self,
        start: VertexId,
        at: VertexId,
        on_path: &mut [bool],
        edges: &mut Vec<EdgeId>,
        out: &mut Vec<Vec<EdgeId>>,
    ) {
        on_path[at.0] = true;
        for &e in self.received(at) {
            let next = self.source_of(e);
            if next == start {
                let mut c = edges.clone();
                c.push(e);
                out.push(c);
            } else if next > start && !on_path[next.0] {
                edges.push(e);
                self.circuits_from(start, next, on_path, edges, out);
                edges.pop();
            }
        }
        on_path[at.0] = false;
    }

    /// Edges `f` with `r(f) = r(e_k)` and `f ≠ e_k` for some edge `e_k` of `c`.
    pub fn entries_of(&self, c: &Path) -> BTreeSet<EdgeId> {
        let mut out = BTreeSet::new();
        for &e in c.edges() {
            for &f in self.received(self.range_of(e)) {
                if f != e {
                    out.insert(f);
                }
            }
        }
        out
    }

    pub fn is_entryless(&self, c: &Path) -> bool {
        self.entries_of(c).is_empty()
    }

    /// `e` lies on some cycle: `r(e)` reaches `s(e)`.
    pub fn on_cycle(&self, e: EdgeId) -> bool {
        self.reaches(self.range_of(e), self.source_of(e))
    }

    /// Edges that are entries to some cycle.
    pub fn entry_edges(&self) -> BTreeSet<EdgeId> {
        let cyclic: Vec<EdgeId> = self.edge_ids().filter(|&e| self.on_cycle(e)).collect();
        self.edge_ids()
            .filter(|&f| {
                cyclic
                    .iter()
                    .any(|&e| e != f && self.range_of(e) == self.range_of(f))
            })
            .collect()
    }

    /// Rays of length at most `max_len`, in path order.
    pub fn rays(&self, max_len: usize) -> Vec<Ray> {
        let cs = self.cyclic_structure();
        let mut out = Vec::new();
        for w in cs.cyclic_vertices() {
            let seed = cs.seed_at(w).expect("cyclic vertex has a seed");
            for p in self.paths_from(w, max_len) {
                if p.last_edge().is_none_or(|e| cs.edge_class(e).is_none()) {
                    out.push(Ray {
                        path: p,
                        seed: seed.clone(),
                    });
                }
            }
        }
        out.sort();
        out
    }
}
