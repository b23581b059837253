//! Spanning monomials `s_α s_β*` and their product rule.

use std::cmp::{Ordering, Reverse};

use crate::error::{Error, Result};
use crate::graph::{Graph, Path};

/// `s_α s_β*` with `s(α) = s(β)`, or zero.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Monomial {
    Zero,
    Pair { alpha: Path, beta: Path },
}

impl Monomial {
    pub fn pair(alpha: Path, beta: Path) -> Result<Monomial> {
        if alpha.source() != beta.source() {
            return Err(Error::SourceMismatch);
        }
        Ok(Monomial::Pair { alpha, beta })
    }

    /// `p_λ = s_λ s_λ*`
    pub fn projection(lambda: Path) -> Monomial {
        Monomial::Pair {
            alpha: lambda.clone(),
            beta: lambda,
        }
    }

    pub fn is_zero(&self) -> bool {
        matches!(self, Monomial::Zero)
    }

    pub fn paths(&self) -> Option<(&Path, &Path)> {
        match self {
            Monomial::Zero => None,
            Monomial::Pair { alpha, beta } => Some((alpha, beta)),
        }
    }

    /// `(α, β)(λ, ν)`
    pub fn mul(&self, other: &Monomial) -> Monomial {
        let (
            Monomial::Pair { alpha, beta },
            Monomial::Pair {
                alpha: lambda,
                beta: nu,
            },
        ) = (self, other)
        else {
            return Monomial::Zero;
        };
        if let Some(rest) = lambda.remainder_in(beta) {
            // λ ≺ β: (α, ν(β ⊖ λ))
            let beta = nu.concat(&rest).expect("s(ν) = s(λ) = r(β ⊖ λ)");
            Monomial::Pair {
                alpha: alpha.clone(),
                beta,
            }
        } else if let Some(rest) = beta.remainder_in(lambda) {
            // β ≺ λ: (α(λ ⊖ β), ν)
            let alpha = alpha.concat(&rest).expect("s(α) = s(β) = r(λ ⊖ β)");
            Monomial::Pair {
                alpha,
                beta: nu.clone(),
            }
        } else {
            Monomial::Zero
        }
    }

    pub fn adjoint(&self) -> Monomial {
        match self {
            Monomial::Zero => Monomial::Zero,
            Monomial::Pair { alpha, beta } => Monomial::Pair {
                alpha: beta.clone(),
                beta: alpha.clone(),
            },
        }
    }

    /// `|α| − |β|`; zero has degree 0.
    pub fn degree(&self) -> i64 {
        match self {
            Monomial::Zero => 0,
            Monomial::Pair { alpha, beta } => alpha.len() as i64 - beta.len() as i64,
        }
    }

    pub fn is_diagonal(&self) -> bool {
        matches!(self, Monomial::Pair { alpha, beta } if alpha == beta)
    }

    /// Longest path length.
    pub fn max_len(&self) -> usize {
        self.paths().map_or(0, |(a, b)| a.len().max(b.len()))
    }

    /// Parses `"α|β"` or `"0"`.
    pub fn parse(graph: &Graph, literal: &str) -> Result<Monomial> {
        let text = literal.trim();
        if text == "0" {
            return Ok(Monomial::Zero);
        }
        let Some((a, b)) = text.split_once('|') else {
            return Err(Error::literal(literal, "expected \"α|β\""));
        };
        Monomial::pair(graph.parse_path(a)?, graph.parse_path(b)?)
    }

    pub fn literal(&self, graph: &Graph) -> String {
        match self {
            Monomial::Zero => "0".to_string(),
            Monomial::Pair { alpha, beta } => {
                format!("{}|{}", graph.path_literal(alpha), graph.path_literal(beta))
            }
        }
    }
}

/// `𝔼_D`: keeps diagonal monomials.
pub fn expect_d(x: &Monomial) -> Monomial {
    if x.is_diagonal() {
        x.clone()
    } else {
        Monomial::Zero
    }
}

/// Shorter total length first, then larger `|α|`, then paths.
impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        match (self, other) {
            (Monomial::Zero, Monomial::Zero) => Ordering::Equal,
            (Monomial::Zero, _) => Ordering::Less,
            (_, Monomial::Zero) => Ordering::Greater,
            (Monomial::Pair { alpha: a, beta: b }, Monomial::Pair { alpha: c, beta: d }) => {
                let key = |x: &Path, y: &Path| (x.len() + y.len(), Reverse(x.len()));
                key(a, b)
                    .cmp(&key(c, d))
                    .then_with(|| a.cmp(c))
                    .then_with(|| b.cmp(d))
            }
        }
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// All non-zero monomials with both paths of length at most `max_len`.
pub fn monomials(graph: &Graph, max_len: usize) -> Vec<Monomial> {
    let mut out = Vec::new();
    for v in graph.vertex_ids() {
        let paths = graph.paths_from(v, max_len);
        for a in &paths {
            for b in &paths {
                out.push(Monomial::Pair {
                    alpha: a.clone(),
                    beta: b.clone(),
                });
            }
        }
    }
    out.sort();
    out
}
