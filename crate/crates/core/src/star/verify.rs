//! Exhaustive checks of the identities a trace functional must satisfy.

use std::collections::{BTreeSet, HashMap};
use std::fmt;
use std::str::FromStr;

use nalgebra::{DMatrix, SymmetricEigen};
use num_traits::Zero;
use rayon::prelude::*;

use super::functional::Functional;
use super::monomial::{monomials, Monomial};
use super::normal::is_normal;
use crate::error::{Error, Result};
use crate::graph::{Graph, Path};
use crate::rational::{zero, Rational};
use crate::tagging::CircleValue;
use crate::trace::{validate_trace, GraphTrace};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Counterexample {
    /// Monomial literals involved, in the order of the identity.
    pub monomials: Vec<String>,
    pub lhs: CircleValue,
    pub rhs: CircleValue,
}

impl fmt::Display for Counterexample {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "[{}]: {} != {}",
            self.monomials.join(", "),
            self.lhs,
            self.rhs
        )
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Verdict {
    Pass { checked: usize },
    Fail(Counterexample),
}

impl Verdict {
    pub fn passed(&self) -> bool {
        matches!(self, Verdict::Pass { .. })
    }

    pub fn counterexample(&self) -> Option<&Counterexample> {
        match self {
            Verdict::Fail(c) => Some(c),
            Verdict::Pass { .. } => None,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum GaugeVerdict {
    Invariant {
        checked: usize,
    },
    /// The first monomial of nonzero degree with a nonzero value.
    Witness {
        monomial: String,
        degree: i64,
        value: CircleValue,
    },
}

impl GaugeVerdict {
    pub fn is_invariant(&self) -> bool {
        matches!(self, GaugeVerdict::Invariant { .. })
    }
}

fn literals(graph: &Graph, xs: &[&Monomial]) -> Vec<String> {
    xs.iter().map(|x| x.literal(graph)).collect()
}

/// Monomials indexed by their first and by their second path.
struct PairIndex {
    by_alpha: HashMap<Path, Vec<usize>>,
    by_beta: HashMap<Path, Vec<usize>>,
}

impl PairIndex {
    fn new(monos: &[Monomial]) -> Self {
        let mut by_alpha: HashMap<Path, Vec<usize>> = HashMap::new();
        let mut by_beta: HashMap<Path, Vec<usize>> = HashMap::new();
        for (i, x) in monos.iter().enumerate() {
            if let Some((a, b)) = x.paths() {
                by_alpha.entry(a.clone()).or_default().push(i);
                by_beta.entry(b.clone()).or_default().push(i);
            }
        }
        PairIndex { by_alpha, by_beta }
    }

    /// Indices `j` with `x·y_j ≠ 0` or `y_j·x ≠ 0`.
    fn partners(&self, graph: &Graph, x: &Monomial, max_len: usize) -> BTreeSet<usize> {
        let mut out = BTreeSet::new();
        let Some((alpha, beta)) = x.paths() else {
            return out;
        };
        let comparable = |p: &Path| {
            let mut ps = graph.prefixes(p);
            ps.extend(graph.extensions(p, max_len));
            ps
        };
        for lambda in comparable(beta) {
            out.extend(self.by_alpha.get(&lambda).into_iter().flatten());
        }
        for nu in comparable(alpha) {
            out.extend(self.by_beta.get(&nu).into_iter().flatten());
        }
        out
    }
}

/// `F(xy) = F(yx)` for all monomials with paths of length at most `max_len`.
pub fn check_traciality<F: Functional>(f: &F, max_len: usize) -> Verdict {
    let graph = f.graph();
    let monos = monomials(graph, max_len);
    let index = PairIndex::new(&monos);
    let results = monos
        .par_iter()
        .map(|x| {
            let partners = index.partners(graph, x, max_len);
            let count = partners.len();
            let fail = partners.into_iter().find_map(|j| {
                let y = &monos[j];
                let (lhs, rhs) = (f.eval(&x.mul(y)), f.eval(&y.mul(x)));
                (lhs != rhs).then(|| Counterexample {
                    monomials: literals(graph, &[x, y]),
                    lhs,
                    rhs,
                })
            });
            (count, fail)
        })
        .collect::<Vec<_>>();
    let checked = results.iter().map(|(c, _)| c).sum();
    match results.into_iter().find_map(|(_, fail)| fail) {
        Some(c) => Verdict::Fail(c),
        None => Verdict::Pass { checked },
    }
}

/// `F(n b n*) = F(n* n b)` for normal `b`, first over single edges
/// `n = (e, s(e))`, then over every monomial normalizer.
pub fn check_edge_invariance<F: Functional>(f: &F, max_len: usize) -> Verdict {
    let graph = f.graph();
    let monos = monomials(graph, max_len);
    let normal: Vec<&Monomial> = monos.iter().filter(|b| is_normal(graph, b)).collect();
    let mut normalizers: Vec<Monomial> = graph
        .edge_ids()
        .map(|e| Monomial::Pair {
            alpha: graph.edge_path(e),
            beta: Path::vertex(graph.source_of(e)),
        })
        .collect();
    let singles: BTreeSet<Monomial> = normalizers.iter().cloned().collect();
    normalizers.extend(monos.iter().filter(|n| !singles.contains(n)).cloned());

    let results: Vec<std::result::Result<usize, Counterexample>> = normalizers
        .par_iter()
        .map(|n| {
            let (nstar, nn) = (n.adjoint(), n.adjoint().mul(n));
            for b in &normal {
                let lhs = f.eval(&n.mul(b).mul(&nstar));
                let rhs = f.eval(&nn.mul(b));
                if lhs != rhs {
                    return Err(Counterexample {
                        monomials: literals(graph, &[n, b]),
                        lhs,
                        rhs,
                    });
                }
            }
            Ok(normal.len())
        })
        .collect();
    let mut checked = 0;
    for r in results {
        match r {
            Ok(c) => checked += c,
            Err(c) => return Verdict::Fail(c),
        }
    }
    Verdict::Pass { checked }
}

/// `F` vanishes on every monomial of nonzero degree.
pub fn check_gauge<F: Functional>(f: &F, max_len: usize) -> GaugeVerdict {
    let graph = f.graph();
    let mut checked = 0;
    for x in monomials(graph, max_len) {
        let d = x.degree();
        if d == 0 {
            continue;
        }
        checked += 1;
        let value = f.eval(&x);
        if !value.is_zero() {
            return GaugeVerdict::Witness {
                monomial: x.literal(graph),
                degree: d,
                value,
            };
        }
    }
    GaugeVerdict::Invariant { checked }
}

#[derive(Clone, Debug, PartialEq)]
pub struct GramReport {
    pub size: usize,
    pub min_eigenvalue: f64,
    pub psd: bool,
}

/// Smallest eigenvalue of the Hermitian part of `[F(xᵢ* xⱼ)]`.
pub fn gram_psd_check<F: Functional>(f: &F, family: &[Monomial], tol: f64) -> Result<GramReport> {
    if family.is_empty() {
        return Err(Error::Precondition("gram family is empty".into()));
    }
    let n = family.len();
    let entry = |i: usize, j: usize| f.eval(&family[i].adjoint().mul(&family[j])).to_complex();
    // [[A, -B], [B, A]] has the spectrum of A + iB, doubled
    let mut real = DMatrix::<f64>::zeros(2 * n, 2 * n);
    for i in 0..n {
        for j in 0..n {
            let h = (entry(i, j) + entry(j, i).conj()) * 0.5;
            real[(i, j)] = h.re;
            real[(i + n, j + n)] = h.re;
            real[(i, j + n)] = -h.im;
            real[(i + n, j)] = h.im;
        }
    }
    let min_eigenvalue = SymmetricEigen::new(real)
        .eigenvalues
        .iter()
        .copied()
        .fold(f64::INFINITY, f64::min);
    Ok(GramReport {
        size: n,
        min_eigenvalue,
        psd: min_eigenvalue >= -tol,
    })
}

/// The first `size` monomials of the enumeration order.
pub fn default_gram_family(graph: &Graph, size: usize) -> Vec<Monomial> {
    monomials(graph, 2).into_iter().take(size).collect()
}

/// `F(α, β) = Σ_{r(e) = s(α)} F(αe, βe)` at regular `s(α)`.
pub fn ck_additivity_check<F: Functional>(f: &F, max_len: usize) -> Verdict {
    let graph = f.graph();
    let mut checked = 0;
    for x in monomials(graph, max_len) {
        let Some((alpha, beta)) = x.paths() else {
            continue;
        };
        let s = alpha.source();
        if !graph.is_regular(s) {
            continue;
        }
        checked += 1;
        let lhs = f.eval(&x);
        let rhs = graph
            .received(s)
            .iter()
            .map(|&e| {
                let edge = graph.edge_path(e);
                f.eval(&Monomial::Pair {
                    alpha: alpha.concat(&edge).expect("r(e) = s(α)"),
                    beta: beta.concat(&edge).expect("r(e) = s(β)"),
                })
            })
            .fold(CircleValue::zero(), |acc, v| acc + v);
        if lhs != rhs {
            return Verdict::Fail(Counterexample {
                monomials: vec![x.literal(graph)],
                lhs,
                rhs,
            });
        }
    }
    Verdict::Pass { checked }
}

/// Checks the cylinder measure `m(Z(λ)) = g(s(λ))`: additivity over the
/// one-edge refinements, balance under transfers `αδ ↔ βδ`, and total mass
/// over the depth-`max_len` partition.
pub fn cylinder_measure_check(graph: &Graph, g: &GraphTrace, max_len: usize) -> Result<Verdict> {
    if !validate_trace(graph, g)?.is_valid() {
        return Err(Error::Precondition("not a graph trace".into()));
    }
    let values = g.dense(graph)?;
    let m = |p: &Path| values[p.source().index()].clone();
    let real = |x: Rational| CircleValue::real(x);
    let fail = |paths: Vec<String>, lhs: Rational, rhs: Rational| {
        Ok(Verdict::Fail(Counterexample {
            monomials: paths,
            lhs: real(lhs),
            rhs: real(rhs),
        }))
    };
    let mut checked = 0;

    let paths = graph.all_paths(max_len);
    for lambda in &paths {
        if !graph.is_regular(lambda.source()) {
            continue;
        }
        checked += 1;
        let parts = graph
            .received(lambda.source())
            .iter()
            .fold(zero(), |acc, &e| {
                acc + m(&lambda.concat(&graph.edge_path(e)).expect("r(e) = s(λ)"))
            });
        if m(lambda) != parts {
            return fail(vec![graph.path_literal(lambda)], m(lambda), parts);
        }
    }

    for n in monomials(graph, max_len) {
        let (alpha, beta) = n.paths().expect("non-zero");
        let room = max_len - alpha.len().max(beta.len());
        for delta in graph.extensions(&Path::vertex(alpha.source()), room) {
            checked += 1;
            let (a, b) = (
                alpha.concat(&delta).expect("composable"),
                beta.concat(&delta).expect("composable"),
            );
            if m(&a) != m(&b) {
                return fail(
                    vec![graph.path_literal(&a), graph.path_literal(&b)],
                    m(&a),
                    m(&b),
                );
            }
        }
    }

    let total = paths
        .iter()
        .filter(|mu| mu.len() == max_len || !graph.is_regular(mu.source()))
        .fold(zero(), |acc, mu| acc + m(mu));
    checked += 1;
    if total != g.norm() {
        return fail(vec![format!("depth {max_len}")], total, g.norm());
    }
    if total.is_zero() && graph.vertex_count() > 0 {
        return Err(Error::Precondition("trace is zero".into()));
    }
    Ok(Verdict::Pass { checked })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Suite {
    Traciality,
    Invariance,
    Gauge,
    Gram,
    Ck,
    Cylinder,
}

impl Suite {
    pub const ALL: [Suite; 6] = [
        Suite::Traciality,
        Suite::Invariance,
        Suite::Gauge,
        Suite::Gram,
        Suite::Ck,
        Suite::Cylinder,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Traciality => "traciality",
            Suite::Invariance => "invariance",
            Suite::Gauge => "gauge",
            Suite::Gram => "gram",
            Suite::Ck => "ck",
            Suite::Cylinder => "cylinder",
        }
    }
}

impl FromStr for Suite {
    type Err = Error;

    fn from_str(s: &str) -> Result<Suite> {
        Suite::ALL
            .into_iter()
            .find(|x| x.name() == s.trim())
            .ok_or_else(|| Error::literal(s, "unknown suite"))
    }
}
