mod common;

use std::time::Instant;

use cktrace::graph::Graph;
use cktrace::rational::{int, ratio, Rational};
use cktrace::star::{
    check_edge_invariance, check_gauge, check_traciality, ck_additivity_check, classify,
    default_gram_family, expect_d, expect_m, gram_psd_check, monomials, ray_power, Functional,
    NormalForm, Twisted,
};
use cktrace::structure::tighten_min;
use cktrace::tagging::cyclic_support;
use cktrace::trace::extreme_traces;
use cktrace::{Angle, CircleMeasure, CircleValue, GraphTrace, Monomial, Tag, TraceFunctional};
use common::{arb_graph, edge_list, entryless_period, seeded_graph};
use proptest::prelude::*;

fn angle(p: i64, q: i64) -> Angle {
    Angle::new(ratio(p, q))
}

/// A small pool of circle measures, Haar included.
fn measure_pool() -> Vec<CircleMeasure> {
    vec![
        CircleMeasure::haar(),
        CircleMeasure::dirac(angle(1, 3)),
        CircleMeasure::dirac(angle(0, 1)),
        CircleMeasure::new(
            int(0),
            vec![(angle(0, 1), ratio(1, 2)), (angle(1, 2), ratio(1, 2))],
        )
        .unwrap(),
        CircleMeasure::new(ratio(1, 2), vec![(angle(1, 4), ratio(1, 2))]).unwrap(),
        CircleMeasure::new(
            int(0),
            vec![
                (angle(0, 1), ratio(1, 3)),
                (angle(1, 3), ratio(1, 3)),
                (angle(2, 3), ratio(1, 3)),
            ],
        )
        .unwrap(),
    ]
}

/// One measure per cyclic class, chosen by `pick`.
fn class_tag(t: &Graph, g: &GraphTrace, pick: usize) -> Tag {
    let pool = measure_pool();
    let cs = t.cyclic_structure();
    Tag::from_pairs(cyclic_support(t, g).into_iter().map(|v| {
        let class = cs.class_of(v).unwrap();
        (
            t.vertex_name(v),
            pool[(pick + 3 * class) % pool.len()].clone(),
        )
    }))
}

/// Largest `L ≤ cap` keeping the monomial count manageable.
fn affordable_len(g: &Graph, cap: usize, budget: usize) -> usize {
    (0..=cap)
        .rev()
        .find(|&l| monomials(g, l).len() <= budget)
        .unwrap_or(0)
}

/// `τ(s_α s_β*)` straight from the edge list: diagonal terms give
/// `g(s(α))`, a cycle of in-degree-one vertices wound `k` times gives
/// `g(v) ∫ z^{±k} dμ_v`, everything else vanishes.
fn tau_oracle(g: &Graph, trace: &GraphTrace, tag: Option<&Tag>, x: &Monomial) -> CircleValue {
    let Monomial::Pair { alpha, beta } = x else {
        return CircleValue::zero();
    };
    let v = alpha.source();
    let weight: Rational = trace.at(g, v);
    if alpha == beta {
        return CircleValue::real(weight);
    }
    let (long, short, sign) = if alpha.len() > beta.len() {
        (alpha, beta, 1)
    } else {
        (beta, alpha, -1)
    };
    if long.range() != short.range() || long.edges()[..short.len()] != *short.edges() {
        return CircleValue::zero();
    }
    let edges = edge_list(g);
    let c = &long.edges()[short.len()..];
    let indegree = |w: usize| edges.iter().filter(|&&(_, r)| r == w).count();
    if c.iter().any(|e| indegree(edges[e.index()].1) != 1) {
        return CircleValue::zero();
    }
    let period =
        entryless_period(g, v.index()).expect("closed walk through in-degree one vertices");
    let k = sign * (c.len() / period) as i64;
    match tag.and_then(|t| t.get(g.vertex_name(v))) {
        Some(mu) => mu.moment(k).scale(&weight),
        None => CircleValue::zero(),
    }
}

fn functionals(t: &Graph) -> Vec<(TraceFunctional, Option<Tag>)> {
    let mut out = Vec::new();
    for (i, x) in extreme_traces(t).into_iter().enumerate() {
        out.push((TraceFunctional::haar(t, &x).unwrap(), None));
        let tag = class_tag(t, &x, i);
        out.push((TraceFunctional::tagged(t, &x, &tag).unwrap(), Some(tag)));
    }
    out
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn adjoint_is_anti_multiplicative(g in arb_graph()) {
        let ms = monomials(&g, 2);
        for x in &ms {
            prop_assert_eq!(&x.adjoint().adjoint(), x);
            for y in &ms {
                prop_assert_eq!(x.mul(y).adjoint(), y.adjoint().mul(&x.adjoint()));
                let xy = x.mul(y);
                if !xy.is_zero() {
                    prop_assert_eq!(xy.degree(), x.degree() + y.degree());
                }
            }
        }
    }

    #[test]
    fn expectations_are_projections(g in arb_graph()) {
        let ms = monomials(&g, 2);
        let diagonal: Vec<&Monomial> = ms.iter().filter(|x| x.is_diagonal()).collect();
        for x in &ms {
            let d = expect_d(x);
            let m = expect_m(&g, x);
            prop_assert_eq!(&expect_d(&d), &d);
            prop_assert_eq!(&expect_m(&g, &m), &m);
            prop_assert_eq!(&expect_d(&m), &d);
            prop_assert_eq!(expect_d(&x.adjoint()), d.adjoint());
            prop_assert_eq!(expect_m(&g, &x.adjoint()), m.adjoint());
            if x.is_diagonal() {
                prop_assert_eq!(&d, x);
                prop_assert_eq!(&m, x);
            }
            for p in diagonal.iter().take(6) {
                for q in diagonal.iter().take(6) {
                    let pxq = p.mul(x).mul(q);
                    prop_assert_eq!(expect_d(&pxq), p.mul(&d).mul(q));
                    prop_assert_eq!(expect_m(&g, &pxq), p.mul(&m).mul(q));
                }
            }
        }
    }

    #[test]
    fn functionals_match_the_edge_list_oracle(g in arb_graph()) {
        let (t, _) = tighten_min(&g);
        let len = affordable_len(&t, 5, 600);
        let ms = monomials(&t, len);
        for (f, tag) in functionals(&t) {
            for x in &ms {
                prop_assert_eq!(
                    f.eval(x),
                    tau_oracle(&t, f.trace(), tag.as_ref(), x),
                    "{}", x.literal(&t)
                );
            }
        }
    }

    #[test]
    fn haar_tagged_is_chi(g in arb_graph()) {
        let (t, _) = tighten_min(&g);
        let len = affordable_len(&t, 6, 1500);
        let ms = monomials(&t, len);
        for x in extreme_traces(&t) {
            let chi = TraceFunctional::haar(&t, &x).unwrap();
            let haar = Tag::from_pairs(
                cyclic_support(&t, &x).into_iter().map(|v| (t.vertex_name(v), CircleMeasure::haar())),
            );
            let tau = TraceFunctional::tagged(&t, &x, &haar).unwrap();
            for m in &ms {
                prop_assert_eq!(chi.eval(m), tau.eval(m));
            }
        }
    }

    #[test]
    fn canonical_forms_reassemble(g in arb_graph()) {
        let (t, _) = tighten_min(&g);
        let len = affordable_len(&t, 5, 600);
        let cs = t.cyclic_structure();
        let fs = functionals(&t);
        for x in monomials(&t, len) {
            if let NormalForm::Cyclic { ray, seed, exponent } = classify(&t, &x) {
                prop_assert!(exponent != 0);
                prop_assert!(ray.edges().iter().all(|e| !seed.edges().contains(e)));
                prop_assert!(cs.is_entryless_cycle(&seed));
                prop_assert_eq!(seed.source(), ray.source());
                let y = ray_power(&ray, &seed, exponent);
                prop_assert_eq!(y.degree(), x.degree());
                for (f, _) in &fs {
                    prop_assert_eq!(f.eval(&y), f.eval(&x));
                }
            }
        }
    }

    #[test]
    fn tagged_traces_pass_the_suites(g in arb_graph()) {
        let (t, _) = tighten_min(&g);
        let len = affordable_len(&t, 3, 400);
        for (f, tag) in functionals(&t) {
            prop_assert!(check_traciality(&f, len).passed());
            prop_assert!(check_edge_invariance(&f, len).passed());
            prop_assert!(ck_additivity_check(&f, len).passed());
            let gram = gram_psd_check(&f, &default_gram_family(&t, 6), 1e-9).unwrap();
            prop_assert!(gram.psd, "min eigenvalue {}", gram.min_eigenvalue);

            // gauge invariant exactly when the tested moments vanish
            let expected = tag.as_ref().is_none_or(|tag| {
                tag.measures().iter().all(|(name, mu)| {
                    let v = t.vertex(name).unwrap();
                    let period = entryless_period(&t, v.index()).unwrap();
                    (1..=(len / period) as i64).all(|m| mu.moment(m).is_zero())
                })
            });
            prop_assert_eq!(check_gauge(&f, len).is_invariant(), expected);
        }
    }

    #[test]
    fn gauge_twist_scales_by_degree(g in arb_graph(), p in 0i64..12) {
        let (t, _) = tighten_min(&g);
        let theta = angle(p, 12);
        for (f, _) in functionals(&t) {
            let twisted = Twisted { inner: &f, angle: theta.clone() };
            for x in monomials(&t, affordable_len(&t, 3, 300)) {
                let expected = f.eval(&x).rotate(&theta.times(x.degree()));
                prop_assert_eq!(twisted.eval(&x), expected);
                if f.is_haar() {
                    prop_assert_eq!(twisted.eval(&x), f.eval(&x));
                }
            }
        }
    }
}

/// Exhaustive associativity over monomials with paths of length at most 2
/// on battery graphs with at most 4 vertices.
#[test]
fn multiplication_is_associative() {
    let start = Instant::now();
    let mut checked = 0usize;
    for seed in 0..40 {
        let g = seeded_graph(seed);
        if g.vertex_count() > 4 {
            continue;
        }
        let ms = monomials(&g, 2);
        let mut products = vec![Vec::with_capacity(ms.len()); ms.len()];
        for (i, x) in ms.iter().enumerate() {
            for y in &ms {
                products[i].push(x.mul(y));
            }
        }
        for (i, x) in ms.iter().enumerate() {
            for (j, _) in ms.iter().enumerate() {
                let xy = &products[i][j];
                for (k, z) in ms.iter().enumerate() {
                    let left = xy.mul(z);
                    let right = x.mul(&products[j][k]);
                    assert_eq!(left, right, "seed {seed}");
                    checked += 1;
                }
            }
        }
    }
    assert!(checked > 0);
    eprintln!("associativity: {checked} triples in {:?}", start.elapsed());
}

/// The oracle comparisons above are not vacuous: the battery contains
/// cyclic monomials with non-real tagged values.
#[test]
fn battery_reaches_cyclic_values() {
    let mut cyclic = 0;
    for seed in 0..60 {
        let (t, _) = tighten_min(&seeded_graph(seed));
        for (f, tag) in functionals(&t) {
            for x in monomials(&t, affordable_len(&t, 3, 300)) {
                let v = f.eval(&x);
                if tag.is_some() && x.degree() != 0 && !v.is_zero() {
                    assert_eq!(v, tau_oracle(&t, f.trace(), tag.as_ref(), &x));
                    cyclic += 1;
                }
            }
        }
    }
    assert!(cyclic > 20, "only {cyclic} cyclic values");
}
