mod common;

use cktrace::graph::Graph;
use cktrace::rational::{int, one, ratio, zero, Rational};
use cktrace::structure::{essentially_left_infinite, tighten_min, witness_nongauge_trace};
use cktrace::trace::{
    char_implication_check, cylinder_positive, extreme_traces, lift_trace, trace_vanishing_check,
    validate_trace, violation_certificate, AdmissibleTuple, GraphTrace,
};
use cktrace::Path;
use common::{affinely_independent, arb_graph, cylinder_oracle, rank, seeded_graph};
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Up to three terms with `|λ| ≤ 2` and `ξ ∈ [−3, 3]` in steps of ½.
fn random_terms<R: Rng>(g: &Graph, rng: &mut R) -> Vec<(Rational, Path)> {
    let paths = g.all_paths(2);
    let n = rng.random_range(1..=3);
    (0..n)
        .map(|_| {
            let x = ratio(rng.random_range(-6..=6), 2);
            (x, paths[rng.random_range(0..paths.len())].clone())
        })
        .collect()
}

fn lifted_extremes(g: &Graph) -> Vec<GraphTrace> {
    let (t, removed) = tighten_min(g);
    extreme_traces(&t)
        .iter()
        .map(|x| lift_trace(g, &removed, x).unwrap())
        .collect()
}

fn fails_validation(g: &Graph, t: &GraphTrace) -> bool {
    !matches!(validate_trace(g, t), Ok(v) if v.is_valid())
}

/// Coefficients `c` with `Σ cᵢ pᵢ = w`, `Σ cᵢ = 1`, when the points are
/// affinely independent and `w` lies in their affine hull.
fn barycentric(points: &[Vec<Rational>], w: &[Rational]) -> Option<Vec<Rational>> {
    let k = points.len();
    // rows: one per coordinate plus the mass row; columns: the k unknowns
    // followed by the right-hand side
    let mut rows: Vec<Vec<Rational>> = (0..w.len())
        .map(|i| {
            let mut row: Vec<Rational> = points.iter().map(|p| p[i].clone()).collect();
            row.push(w[i].clone());
            row
        })
        .collect();
    let mut mass = vec![one(); k];
    mass.push(one());
    rows.push(mass);
    let coefficient_rank = rank(rows.iter().map(|r| r[..k].to_vec()).collect());
    if rank(rows.clone()) != coefficient_rank || coefficient_rank != k {
        return None;
    }
    // back-substitute by elimination on the augmented system
    let mut m = rows;
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..k {
        let p = (r..m.len()).find(|&i| m[i][c] != zero())?;
        m.swap(r, p);
        let pivot = m[r][c].clone();
        for x in m[r].iter_mut() {
            *x /= &pivot;
        }
        for i in 0..m.len() {
            if i != r && m[i][c] != zero() {
                let f = m[i][c].clone();
                for j in 0..=k {
                    let d = &f * &m[r][j];
                    m[i][j] -= d;
                }
            }
        }
        pivots.push(r);
        r += 1;
    }
    Some(pivots.iter().map(|&i| m[i][k].clone()).collect())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn extreme_traces_are_exact_vertices(g in arb_graph()) {
        let (t, _) = tighten_min(&g);
        let xs = extreme_traces(&t);
        let mut points = Vec::new();
        for x in &xs {
            prop_assert!(validate_trace(&t, x).unwrap().is_valid());
            prop_assert_eq!(x.norm(), one());
            prop_assert!(trace_vanishing_check(&t, x));
            points.push(x.dense(&t).unwrap());
        }
        prop_assert!(affinely_independent(&points));
        for x in lifted_extremes(&g) {
            prop_assert!(validate_trace(&g, &x).unwrap().is_valid());
            prop_assert!(trace_vanishing_check(&g, &x));
        }
    }

    #[test]
    fn acyclic_witnesses_lie_in_the_hull(g in arb_graph()) {
        let points: Vec<Vec<Rational>> =
            lifted_extremes(&g).iter().map(|x| x.dense(&g).unwrap()).collect();
        for c in g.simple_cycles() {
            if essentially_left_infinite(&g, c.base()) {
                prop_assert!(witness_nongauge_trace(&g, c.path()).is_err());
                continue;
            }
            let w = witness_nongauge_trace(&g, c.path()).unwrap();
            prop_assert!(validate_trace(&g, &w).unwrap().is_valid());
            let coeffs = barycentric(&points, &w.dense(&g).unwrap());
            prop_assert!(coeffs.is_some(), "witness outside the affine hull");
            for x in coeffs.unwrap() {
                prop_assert!(x >= zero());
            }
        }
    }

    #[test]
    fn cylinder_positivity_matches_deeper_oracle(seed in any::<u64>()) {
        let g = seeded_graph(seed);
        let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x5eed);
        for _ in 0..20 {
            let terms = random_terms(&g, &mut rng);
            prop_assert_eq!(cylinder_positive(&g, &terms).unwrap(), cylinder_oracle(&g, &terms));
        }
    }

    #[test]
    fn admissible_tuples_union(seed in any::<u64>()) {
        let g = seeded_graph(seed);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut admissible = Vec::new();
        for _ in 0..40 {
            let terms = random_terms(&g, &mut rng);
            if cylinder_positive(&g, &terms).unwrap() {
                admissible.push(AdmissibleTuple::new(terms));
            }
        }
        for a in &admissible {
            for b in &admissible {
                prop_assert!(cylinder_positive(&g, &a.union(b).terms).unwrap());
            }
        }
    }

    #[test]
    fn characterization_holds_both_ways(seed in any::<u64>()) {
        let g = seeded_graph(seed);
        let mut rng = ChaCha8Rng::seed_from_u64(seed.rotate_left(7));
        let extremes = lifted_extremes(&g);
        for _ in 0..30 {
            let terms = random_terms(&g, &mut rng);
            if !cylinder_positive(&g, &terms).unwrap() {
                continue;
            }
            let xi = AdmissibleTuple::new(terms);
            for x in &extremes {
                prop_assert!(char_implication_check(&g, x, &xi).unwrap());
            }
        }
        // random non-negative candidates, valid or not
        for _ in 0..10 {
            let candidate = GraphTrace::from_pairs(
                g.vertex_ids().map(|v| (g.vertex_name(v), int(rng.random_range(0..4)))),
            );
            let cert = violation_certificate(&g, &candidate).unwrap();
            prop_assert_eq!(cert.is_some(), fails_validation(&g, &candidate));
            if let Some(cert) = cert {
                prop_assert!(cylinder_positive(&g, &cert.terms).unwrap());
                prop_assert!(!char_implication_check(&g, &candidate, &cert).unwrap());
            }
        }
    }
}
