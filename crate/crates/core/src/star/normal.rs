//! Normal monomials and their presentation as powers `b_γ^m`.

use super::monomial::Monomial;
use crate::error::{Error, Result};
use crate::graph::{Graph, Path};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum NormalForm {
    /// `p_λ`
    Diagonal(Path),
    /// `b_γ^m` with `b_γ = s_γ s_ν s_γ*`, `m ≠ 0`.
    Cyclic {
        ray: Path,
        seed: Path,
        exponent: i64,
    },
    NonNormal,
}

/// `(α, β)` with `α = β·c` for an entry-less cycle `c`: returns `(β, c)`.
fn cycle_extension(graph: &Graph, longer: &Path, shorter: &Path) -> Option<Path> {
    let c = shorter.remainder_in(longer)?;
    graph.cyclic_structure().is_entryless_cycle(&c).then_some(c)
}

/// Classifies a monomial and, for cyclic ones, strips the seed edges off
/// the shorter path.
///
/// Vertices of an entry-less cycle receive only the cycle's edge, so the
/// source-end edge `e` of the shorter path is a seed edge exactly when `r(e)`
/// is on the seed; popping `e` and rotating the seed to `r(e)` presents the
/// same element.
pub fn classify(graph: &Graph, x: &Monomial) -> NormalForm {
    let Monomial::Pair { alpha, beta } = x else {
        return NormalForm::NonNormal;
    };
    if alpha == beta {
        return NormalForm::Diagonal(alpha.clone());
    }
    let (shorter, c, sign) = if let Some(c) = cycle_extension(graph, alpha, beta) {
        (beta, c, 1)
    } else if let Some(c) = cycle_extension(graph, beta, alpha) {
        (alpha, c, -1)
    } else {
        return NormalForm::NonNormal;
    };
    let cs = graph.cyclic_structure();
    let (_, k) = cs.root(&c).expect("entry-less cycle has a root");
    let mut ray = shorter.clone();
    while let Some(e) = ray.last_edge() {
        if cs.edge_class(e).is_none() {
            break;
        }
        ray.pop_source_edge(graph.range_of(e));
    }
    let seed = cs
        .seed_at(ray.source())
        .expect("ray ends on a cyclic vertex");
    NormalForm::Cyclic {
        ray,
        seed,
        exponent: sign * k as i64,
    }
}

/// `𝔼_M`: keeps normal monomials.
pub fn expect_m(graph: &Graph, x: &Monomial) -> Monomial {
    match classify(graph, x) {
        NormalForm::NonNormal => Monomial::Zero,
        _ => x.clone(),
    }
}

pub fn is_normal(graph: &Graph, x: &Monomial) -> bool {
    !matches!(classify(graph, x), NormalForm::NonNormal)
}

/// The cyclic presentation of a normal, non-diagonal monomial.
pub fn canonical_cyclic_form(graph: &Graph, x: &Monomial) -> Result<NormalForm> {
    match classify(graph, x) {
        f @ NormalForm::Cyclic { .. } => Ok(f),
        NormalForm::Diagonal(_) => Err(Error::Precondition("monomial is diagonal".into())),
        NormalForm::NonNormal => Err(Error::Precondition("monomial is zero or not normal".into())),
    }
}

/// `b_γ^m` as a pair: `(γν^m, γ)` for `m > 0`, `(γ, γν^{-m})` for `m < 0`.
pub fn ray_power(ray: &Path, seed: &Path, m: i64) -> Monomial {
    let loops = ray
        .concat(&seed.power(m.unsigned_abs() as usize))
        .expect("seed is based at the ray's source");
    if m >= 0 {
        Monomial::Pair {
            alpha: loops,
            beta: ray.clone(),
        }
    } else {
        Monomial::Pair {
            alpha: ray.clone(),
            beta: loops,
        }
    }
}
