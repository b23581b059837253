//! Trace functionals on the monomial semigroup.

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use super::monomial::Monomial;
use super::normal::{classify, NormalForm};
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::rational::Rational;
use crate::structure::{quotient_graph, VertexSet};
use crate::tagging::{validate_tag, Angle, CircleMeasure, CircleValue, Tag, TagValidation};
use crate::trace::{validate_trace, GraphTrace, TraceValidation};

/// A linear functional known through its values on monomials.
pub trait Functional: Sync {
    fn graph(&self) -> &Graph;

    fn eval(&self, x: &Monomial) -> CircleValue;
}

#[derive(Clone, Debug, PartialEq, Eq)]
enum Kind {
    Haar,
    Tagged(Vec<Option<CircleMeasure>>),
}

/// `χ_g` or `τ_(g,μ)`.
#[derive(Clone, Debug)]
pub struct TraceFunctional {
    graph: Graph,
    trace: GraphTrace,
    values: Vec<Rational>,
    tag: Option<Tag>,
    kind: Kind,
}

fn checked_trace(graph: &Graph, g: &GraphTrace) -> Result<Vec<Rational>> {
    if let TraceValidation::Invalid(v) = validate_trace(graph, g)? {
        return Err(Error::Precondition(format!(
            "not a graph trace: at \"{}\", {} vs {}",
            v.vertex, v.lhs, v.rhs
        )));
    }
    if !g.norm().is_one() {
        return Err(Error::Precondition(format!(
            "trace has total mass {}, not 1",
            g.norm()
        )));
    }
    g.dense(graph)
}

impl TraceFunctional {
    /// `χ_g = ψ_g ∘ 𝔼_D`
    pub fn haar(graph: &Graph, g: &GraphTrace) -> Result<TraceFunctional> {
        let values = checked_trace(graph, g)?;
        Ok(TraceFunctional {
            graph: graph.clone(),
            trace: g.clone(),
            values,
            tag: None,
            kind: Kind::Haar,
        })
    }

    /// `τ_(g,μ)` for a consistent tag.
    pub fn tagged(graph: &Graph, g: &GraphTrace, tag: &Tag) -> Result<TraceFunctional> {
        let f = Self::tagged_unchecked(graph, g, tag)?;
        match validate_tag(graph, g, tag)? {
            TagValidation::Valid => Ok(f),
            TagValidation::Inconsistent { class } => Err(Error::Tag(format!(
                "inconsistent measures on class {{{}}}",
                class.join(", ")
            ))),
            TagValidation::DomainMismatch { .. } => unreachable!("domain checked above"),
        }
    }

    /// Like [`TraceFunctional::tagged`] but accepts inconsistent tags.
    pub fn tagged_unchecked(graph: &Graph, g: &GraphTrace, tag: &Tag) -> Result<TraceFunctional> {
        let values = checked_trace(graph, g)?;
        if let TagValidation::DomainMismatch {
            missing,
            unexpected,
        } = validate_tag(graph, g, tag)?
        {
            return Err(Error::Tag(format!(
                "tag must cover exactly the cyclic support (missing [{}], unexpected [{}])",
                missing.join(", "),
                unexpected.join(", ")
            )));
        }
        Ok(TraceFunctional {
            graph: graph.clone(),
            trace: g.clone(),
            values,
            tag: Some(tag.clone()),
            kind: Kind::Tagged(tag.dense(graph)),
        })
    }

    pub fn trace(&self) -> &GraphTrace {
        &self.trace
    }

    pub fn tag(&self) -> Option<&Tag> {
        self.tag.as_ref()
    }

    pub fn is_haar(&self) -> bool {
        matches!(self.kind, Kind::Haar)
    }

    /// `χ_g(α, β)`
    pub fn chi(&self, x: &Monomial) -> CircleValue {
        match x {
            Monomial::Pair { alpha, beta } if alpha == beta => {
                CircleValue::real(self.values[alpha.source().index()].clone())
            }
            _ => CircleValue::zero(),
        }
    }

    /// `τ_(g,μ)(α, β)`
    fn tau(&self, measures: &[Option<CircleMeasure>], x: &Monomial) -> CircleValue {
        match classify(&self.graph, x) {
            NormalForm::NonNormal => CircleValue::zero(),
            NormalForm::Diagonal(lambda) => {
                CircleValue::real(self.values[lambda.source().index()].clone())
            }
            NormalForm::Cyclic { ray, exponent, .. } => {
                let v = ray.source().index();
                let weight = &self.values[v];
                if weight.is_zero() {
                    return CircleValue::zero();
                }
                let mu = measures[v].as_ref().expect("tag covers the cyclic support");
                mu.moment(exponent).scale(weight)
            }
        }
    }
}

impl Functional for TraceFunctional {
    fn graph(&self) -> &Graph {
        &self.graph
    }

    fn eval(&self, x: &Monomial) -> CircleValue {
        match &self.kind {
            Kind::Haar => self.chi(x),
            Kind::Tagged(measures) => self.tau(measures, x),
        }
    }
}

pub fn chi_eval(graph: &Graph, g: &GraphTrace, x: &Monomial) -> Result<CircleValue> {
    Ok(TraceFunctional::haar(graph, g)?.eval(x))
}

pub fn tau_eval(graph: &Graph, g: &GraphTrace, tag: &Tag, x: &Monomial) -> Result<CircleValue> {
    Ok(TraceFunctional::tagged(graph, g, tag)?.eval(x))
}

/// `F ∘ ρ_H` for a functional `F` on `E ∖ H`.
#[derive(Clone, Debug)]
pub struct PulledBack<F> {
    graph: Graph,
    removed: VertexSet,
    inner: F,
}

impl<F: Functional> PulledBack<F> {
    pub fn new(graph: &Graph, removed: &VertexSet, inner: F) -> Result<PulledBack<F>> {
        if &quotient_graph(graph, removed)? != inner.graph() {
            return Err(Error::Precondition(
                "functional does not live on the quotient graph".into(),
            ));
        }
        Ok(PulledBack {
            graph: graph.clone(),
            removed: removed.clone(),
            inner,
        })
    }

    pub fn inner(&self) -> &F {
        &self.inner
    }
}

impl<F: Functional> Functional for PulledBack<F> {
    fn graph(&self) -> &Graph {
        &self.graph
    }

    fn eval(&self, x: &Monomial) -> CircleValue {
        let Monomial::Pair { alpha, beta } = x else {
            return CircleValue::zero();
        };
        if self.removed.contains(&alpha.source()) {
            return CircleValue::zero();
        }
        let target = self.inner.graph();
        let (Some(a), Some(b)) = (
            self.graph.transport_path(alpha, target),
            self.graph.transport_path(beta, target),
        ) else {
            unreachable!("paths with source outside a hereditary set survive the quotient")
        };
        self.inner.eval(&Monomial::Pair { alpha: a, beta: b })
    }
}

/// `F ∘ γ_z` for `z = ζ(θ)`.
pub struct Twisted<'a, F> {
    pub inner: &'a F,
    pub angle: Angle,
}

impl<F: Functional> Functional for Twisted<'_, F> {
    fn graph(&self) -> &Graph {
        self.inner.graph()
    }

    fn eval(&self, x: &Monomial) -> CircleValue {
        self.inner.eval(x).rotate(&self.angle.times(x.degree()))
    }
}

/// The functional document.
#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FunctionalDoc {
    pub kind: FunctionalKind,
    pub trace: GraphTrace,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub tag: Option<Tag>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum FunctionalKind {
    Haar,
    Tagged,
}

impl FunctionalDoc {
    pub fn build(&self, graph: &Graph) -> Result<TraceFunctional> {
        match self.kind {
            FunctionalKind::Haar => {
                if self.tag.as_ref().is_some_and(|t| !t.is_empty()) {
                    return Err(Error::Tag("a haar functional takes no tag".into()));
                }
                TraceFunctional::haar(graph, &self.trace)
            }
            FunctionalKind::Tagged => {
                TraceFunctional::tagged(graph, &self.trace, &self.tag.clone().unwrap_or_default())
            }
        }
    }
}
