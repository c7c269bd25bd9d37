mod common;

use common::*;
use hamres::exact::{is_hamiltonian, longest_path, longest_path_length, max_matching_size};
use hamres::posa::{booster_augment, enumerate_boosters, posa_find_hamilton};
use hamres::properties::{
    check_p1, check_property, dense_case_hamilton_cycle, estimate_probability, witness_violates, CheckContext,
    CheckMode, PropertyId, SearchOptions, Witness,
};
use hamres::random::{derive_seed, sample_capped_subgraph, sample_gnp, GnpParams, SparsificationParams};
use hamres::resilience::{global_resilience, verify_resilience_equals, Property, DEFAULT_ORACLE_BUDGET};
use hamres::{EdgeSet, Graph, VertexSet};
use proptest::prelude::*;
use statrs::distribution::{ChiSquared, ContinuousCDF};

fn graph_strategy(max_n: usize) -> impl Strategy<Value = Graph> {
    (1..=max_n).prop_flat_map(|n| {
        let pairs = n * (n - 1) / 2;
        prop::collection::vec(any::<bool>(), pairs).prop_map(move |bits| {
            let mut g = Graph::empty(n);
            let mut i = 0;
            for u in 0..n {
                for v in u + 1..n {
                    if bits[i] {
                        g.add_edge(u, v).unwrap();
                    }
                    i += 1;
                }
            }
            g
        })
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn witnesses_validate(g in graph_strategy(10)) {
        if let Some(w) = is_hamiltonian(&g).unwrap() {
            prop_assert!(w.validate(&g));
        }
        let path = longest_path(&g).unwrap();
        prop_assert_eq!(path.len(), longest_path_length(&g).unwrap() + 1);
        prop_assert!(path.windows(2).all(|w| g.has_edge(w[0], w[1])));
        prop_assert_eq!(VertexSet::from_vertices(g.n(), path.iter().copied()).len(), path.len());
    }

    #[test]
    fn adding_an_edge_never_hurts(g in graph_strategy(9), pick in any::<prop::sample::Index>()) {
        let non_edges: Vec<_> = g.non_edges().collect();
        prop_assume!(!non_edges.is_empty());
        let (u, v) = non_edges[pick.index(non_edges.len())];
        let h = g.with_edge(u, v).unwrap();
        prop_assert!(is_hamiltonian(&h).unwrap().is_some() >= is_hamiltonian(&g).unwrap().is_some());
        prop_assert!(longest_path_length(&h).unwrap() >= longest_path_length(&g).unwrap());
        prop_assert!(max_matching_size(&h) >= max_matching_size(&g));
    }

    #[test]
    fn capped_subgraph_postconditions(g in graph_strategy(12), d0 in 1usize..6, seed in any::<u64>()) {
        let gamma = sample_capped_subgraph(&g, &SparsificationParams::new(d0, seed).unwrap()).unwrap();
        prop_assert!(gamma.is_spanning_subgraph_of(&g));
        prop_assert!(gamma.m() <= d0 * g.n());
        for v in 0..g.n() {
            prop_assert!(gamma.degree(v) >= g.degree(v).min(d0));
            if g.degree(v) <= d0 {
                prop_assert_eq!(gamma.degree(v), g.degree(v));
            }
        }
        prop_assert!(gamma.min_degree() >= g.min_degree().min(d0));
    }

    #[test]
    fn resilience_upper_bounds(g in graph_strategy(8)) {
        let r = global_resilience(&g, Property::Hamiltonicity, DEFAULT_ORACLE_BUDGET).unwrap();
        prop_assert!(r.value <= g.min_degree().saturating_sub(1));
        prop_assert_eq!(r.value == 0, !perm_hamiltonian(&g));
        prop_assert!(!perm_hamiltonian(&g.remove_edges(&r.witness).unwrap()));

        let pm = global_resilience(&g, Property::PerfectMatching, DEFAULT_ORACLE_BUDGET).unwrap();
        prop_assert!(pm.value <= g.min_degree());
        prop_assert_eq!(pm.value == 0, !naive_perfect_matching(&g));
        prop_assert!(!naive_perfect_matching(&g.remove_edges(&pm.witness).unwrap()));

        if r.value > 0 {
            let (ok, _) = verify_resilience_equals(&g, Property::Hamiltonicity, r.value, DEFAULT_ORACLE_BUDGET).unwrap();
            prop_assert!(ok);
            let (ok, cex) = verify_resilience_equals(&g, Property::Hamiltonicity, r.value + 1, DEFAULT_ORACLE_BUDGET).unwrap();
            prop_assert!(!ok);
            prop_assert!(cex.unwrap().len() <= r.value);
        }
    }

    #[test]
    fn property_failures_recheck(n in 6usize..16, p in 0.05f64..0.95, seed in any::<u64>(), c in 0.1f64..0.6) {
        let params = GnpParams::new(n, p, seed).unwrap();
        let g = sample_gnp(&params).unwrap();
        let search = SearchOptions { mode: CheckMode::Exact, ..SearchOptions::default() };
        let ctx = CheckContext::for_gnp(&params, c, search);
        for id in PropertyId::ALL {
            let Ok(report) = check_property(id, &g, &ctx) else { continue };
            if report.holds {
                continue;
            }
            prop_assert!(witness_violates(&g, &report, ctx.np, ctx.d0), "{id} {report:?}");
            // structural recheck of the witness against the graph itself
            match report.witness.as_ref().unwrap() {
                Witness::Degree { vertex, degree } => prop_assert_eq!(g.degree(*vertex), *degree),
                Witness::Path(path) => {
                    prop_assert!(path.windows(2).all(|w| g.has_edge(w[0], w[1])));
                    prop_assert!(g.degree(path[0]) < ctx.d0 && g.degree(*path.last().unwrap()) < ctx.d0);
                }
                Witness::Vertices(vs) => prop_assert!(vs.iter().all(|&v| v < n)),
                Witness::Pair(u, w) => prop_assert!(u.iter().all(|x| !w.contains(x))),
            }
        }
    }

    #[test]
    fn coupled_sampling_is_monotone(n in 2usize..40, p in 0.0f64..1.0, q in 0.0f64..1.0, seed in any::<u64>()) {
        let (lo, hi) = if p <= q { (p, q) } else { (q, p) };
        let a = sample_gnp(&GnpParams::new(n, lo, seed).unwrap()).unwrap();
        let b = sample_gnp(&GnpParams::new(n, hi, seed).unwrap()).unwrap();
        prop_assert!(a.is_spanning_subgraph_of(&b));
        // the δ-clause of P1 can only switch on as p grows
        let np = n as f64 * hi;
        if a.min_degree() >= 2 {
            prop_assert!(b.min_degree() >= 2);
            prop_assert!(check_p1(&b, np).holds || b.max_degree() as f64 > (5.0 * np).floor());
        }
    }
}

#[test]
fn edge_presence_frequency() {
    let (n, p, trials) = (6, 0.3, 10_000u64);
    let hits = (0..trials)
        .filter(|&i| sample_gnp(&GnpParams::new(n, p, derive_seed(77, i)).unwrap()).unwrap().has_edge(2, 4))
        .count() as f64;
    let mean = trials as f64 * p;
    let sigma = (trials as f64 * p * (1.0 - p)).sqrt();
    assert!((hits - mean).abs() <= 4.0 * sigma, "hits {hits}, mean {mean}, sigma {sigma}");
}

#[test]
fn edge_count_mean() {
    let seeds = 1000u64;
    let total: usize = (0..seeds)
        .map(|s| sample_gnp(&GnpParams::new(20, 0.5, s).unwrap()).unwrap().m())
        .sum();
    let mean = total as f64 / seeds as f64;
    // standard error of the mean: sqrt(190 / 4) / sqrt(1000)
    let se = (190.0f64 * 0.25).sqrt() / (seeds as f64).sqrt();
    assert!((mean - 95.0).abs() <= 3.0 * se, "mean {mean}");
}

#[test]
fn capped_star_keeps_every_leaf() {
    // leaves have degree 1 <= d0, so they keep their edge and nothing is lost
    let star = Graph::star(6);
    for s in 0..50 {
        let gamma = sample_capped_subgraph(&star, &SparsificationParams::new(2, s).unwrap()).unwrap();
        assert_eq!(gamma, star);
    }
}

#[test]
fn capped_complete_graph_is_uniform() {
    // In K_7 with d0 = 2 each vertex keeps a uniform 2-subset of its 6 edges.
    // Vertex 0 keeps its own 2 and each of the other 4 neighbours picks it
    // with probability 1/3, so deg(0) = 2 + Bin(4, 1/3); an edge survives
    // unless both ends skip it: 1 - (2/3)^2 = 5/9.
    let k7 = Graph::complete(7);
    let samples = 6000u64;
    let mut degree_counts = [0u64; 5];
    let mut edge_counts = std::collections::BTreeMap::new();
    for s in 0..samples {
        let gamma = sample_capped_subgraph(&k7, &SparsificationParams::new(2, derive_seed(5, s)).unwrap()).unwrap();
        degree_counts[gamma.degree(0) - 2] += 1;
        for e in gamma.edges() {
            *edge_counts.entry(e).or_insert(0u64) += 1;
        }
    }
    let binom4 = |k: i32| [1.0, 4.0, 6.0, 4.0, 1.0][k as usize] * (1.0f64 / 3.0).powi(k) * (2.0f64 / 3.0).powi(4 - k);
    let chi2: f64 = (0..5)
        .map(|k| {
            let expected = samples as f64 * binom4(k);
            (degree_counts[k as usize] as f64 - expected).powi(2) / expected
        })
        .sum();
    let p_value = 1.0 - ChiSquared::new(4.0).unwrap().cdf(chi2);
    assert!(p_value > 0.001, "chi2 {chi2}, p {p_value}, counts {degree_counts:?}");

    assert_eq!(edge_counts.len(), 21);
    let q = 5.0 / 9.0;
    let sigma = (samples as f64 * q * (1.0 - q)).sqrt();
    for (e, c) in edge_counts {
        assert!((c as f64 - samples as f64 * q).abs() <= 4.0 * sigma, "{e:?}: {c}");
    }
}

#[test]
fn rotation_extension_success_rate() {
    let n = 100;
    let p = 6.0 * (n as f64).ln() / n as f64;
    let found = (0..100u64)
        .filter(|&i| {
            let g = sample_gnp(&GnpParams::new(n, p, derive_seed(31, i)).unwrap()).unwrap();
            match posa_find_hamilton(&g, i) {
                Some(w) => {
                    assert!(w.validate(&g));
                    true
                }
                None => false,
            }
        })
        .count();
    assert!(found >= 90, "{found}/100");
}

#[test]
fn rotation_extension_agrees_with_exact_solver() {
    let n = 20;
    let p = 6.0 * (n as f64).ln() / n as f64;
    for i in 0..30u64 {
        let g = sample_gnp(&GnpParams::new(n, p, derive_seed(32, i)).unwrap()).unwrap();
        if let Some(w) = posa_find_hamilton(&g, i) {
            assert!(w.validate(&g));
            assert!(is_hamiltonian(&g).unwrap().is_some());
        }
    }
    assert!(posa_find_hamilton(&Graph::complete(8), 0).is_some());
    assert!(posa_find_hamilton(&Graph::cycle(4).disjoint_union(&Graph::cycle(4)), 0).is_none());
}

#[test]
fn booster_examples() {
    // two triangles joined by one edge: not Hamiltonian, longest path 2 -> 5
    let tri = Graph::cycle(3).disjoint_union(&Graph::cycle(3));
    assert!(naive_is_booster(&tri, 0, 3));
    assert!(enumerate_boosters(&tri).unwrap().pairs.contains(0, 3));

    let path = Graph::path(7);
    assert!(enumerate_boosters(&path).unwrap().pairs.contains(0, 6));
    assert!(enumerate_boosters(&Graph::complete(6)).unwrap().is_empty());
}

#[test]
fn booster_augment_closes_a_cycle() {
    let c = Graph::cycle(8);
    let spanning = Graph::path(8);
    let out = booster_augment(&c, &EdgeSet::new(), &spanning, 8).unwrap();
    assert_eq!(out.steps.len(), 1);
    assert!(out.cycle.unwrap().validate(&c));
    assert!(out.graph.m() <= spanning.m() + 8);
}

#[test]
fn dense_pipeline_examples() {
    let k6 = Graph::complete(6);
    let h = EdgeSet::from_pairs([(0, 1), (0, 2)]).unwrap();
    let out = dense_case_hamilton_cycle(&k6, &h).unwrap();
    assert!(out.precondition);
    assert!(out.cycle.unwrap().validate(&k6.remove_edges(&h).unwrap()));

    let c6 = Graph::cycle(6);
    let out = dense_case_hamilton_cycle(&c6, &EdgeSet::new()).unwrap();
    assert_eq!((out.kappa, out.alpha), (Some(1), Some(3)));
    assert!(!out.precondition && out.cycle.is_none());

    assert!(dense_case_hamilton_cycle(&c6, &EdgeSet::from_pairs([(0, 1)]).unwrap()).is_err());
}

#[test]
fn p1_estimate_dense() {
    let params = GnpParams::new(100, 0.5, 3).unwrap();
    let ctx = CheckContext::for_gnp(&params, 0.1, SearchOptions::default());
    let est = estimate_probability(PropertyId::P1, &params, 200, &ctx).unwrap();
    assert_eq!(est.fraction, 1.0);
    assert!(est.ci_low > 0.95);
    assert!(estimate_probability(PropertyId::P1, &params, 0, &ctx).is_err());

    let full = GnpParams::new(12, 1.0, 3).unwrap();
    let ctx = CheckContext::for_gnp(&full, 0.1, SearchOptions::default());
    let verdict = check_property(PropertyId::Q1, &Graph::complete(12), &ctx).unwrap().holds;
    let est = estimate_probability(PropertyId::Q1, &full, 5, &ctx).unwrap();
    assert_eq!(est.fraction, if verdict { 1.0 } else { 0.0 });
}
