//! Positivity of cylinder combinations and admissible tuples.

use num_traits::{Signed, Zero};

use super::GraphTrace;
use crate::error::{Error, Result};
use crate::graph::{Graph, Path};
use crate::rational::{int, zero, Rational};

/// A finite tuple `Ξ = ((ξᵢ, λᵢ))ᵢ`, read as `Σ ξᵢ p_{λᵢ}`.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct AdmissibleTuple {
    pub terms: Vec<(Rational, Path)>,
}

impl AdmissibleTuple {
    pub fn new(terms: Vec<(Rational, Path)>) -> Self {
        AdmissibleTuple { terms }
    }

    pub fn negate(&self) -> Self {
        AdmissibleTuple {
            terms: self.terms.iter().map(|(x, p)| (-x, p.clone())).collect(),
        }
    }

    pub fn union(&self, other: &AdmissibleTuple) -> Self {
        let mut terms = self.terms.clone();
        terms.extend(other.terms.iter().cloned());
        AdmissibleTuple { terms }
    }

    /// `Σ ξᵢ g(s(λᵢ))`
    pub fn pairing(&self, graph: &Graph, g: &GraphTrace) -> Result<Rational> {
        let values = g.dense(graph)?;
        Ok(self
            .terms
            .iter()
            .fold(zero(), |acc, (x, p)| acc + x * &values[p.source().index()]))
    }

    pub fn render(&self, graph: &Graph) -> Vec<(String, String)> {
        self.terms
            .iter()
            .map(|(x, p)| (x.to_string(), graph.path_literal(p)))
            .collect()
    }
}

/// `Σ ξᵢ 1_{Z(λᵢ)}` evaluated at the boundary paths through `μ`.
fn evaluate(terms: &[(Rational, Path)], mu: &Path) -> Rational {
    terms
        .iter()
        .filter(|(_, p)| p.is_prefix_of(mu))
        .fold(zero(), |acc, (x, _)| acc + x)
}

/// Decides `Σ ξᵢ p_{λᵢ} ≥ 0` on the boundary path space.
///
/// With `L = max |λᵢ|` the function depends only on the first `L` edges of a
/// boundary path, so the paths of length `L` together with the shorter
/// paths starting at a source are enough.
pub fn cylinder_positive(graph: &Graph, terms: &[(Rational, Path)]) -> Result<bool> {
    for (_, p) in terms {
        graph.check_path(p)?;
    }
    let depth = terms.iter().map(|(_, p)| p.len()).max().unwrap_or(0);
    Ok(graph
        .all_paths(depth)
        .iter()
        .filter(|mu| mu.len() == depth || !graph.is_regular(mu.source()))
        .all(|mu| !evaluate(terms, mu).is_negative()))
}

/// Returns `Σ ξᵢ g(s(λᵢ)) ≥ 0` for an admissible tuple.
pub fn char_implication_check(graph: &Graph, g: &GraphTrace, xi: &AdmissibleTuple) -> Result<bool> {
    if !cylinder_positive(graph, &xi.terms)? {
        return Err(Error::NotAdmissible);
    }
    Ok(!xi.pairing(graph, g)?.is_negative())
}

/// An admissible tuple on which a failing candidate pairs negatively,
/// built from the first violated condition in vertex order.
pub fn violation_certificate(graph: &Graph, g: &GraphTrace) -> Result<Option<AdmissibleTuple>> {
    let values = g.dense(graph)?;
    for v in graph.vertex_ids() {
        if values[v.index()].is_negative() {
            return Ok(Some(AdmissibleTuple::new(vec![(int(1), Path::vertex(v))])));
        }
    }
    for v in graph.vertex_ids() {
        let inflow = graph
            .received(v)
            .iter()
            .fold(zero(), |acc, &e| acc + &values[graph.source_of(e).index()]);
        let gap = &values[v.index()] - &inflow;
        if gap.is_zero() || (gap.is_positive() && !graph.is_regular(v)) {
            continue;
        }
        let mut terms = vec![(int(1), Path::vertex(v))];
        terms.extend(
            graph
                .received(v)
                .iter()
                .map(|&e| (int(-1), graph.edge_path(e))),
        );
        let tuple = AdmissibleTuple::new(terms);
        return Ok(Some(if gap.is_negative() {
            tuple
        } else {
            tuple.negate()
        }));
    }
    Ok(None)
}
