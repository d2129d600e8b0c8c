mod common;

use clawnet::canonical::{canonicalize, greedy_maximal_stable_set, CanonicalMove};
use clawnet::cli::{parse_graph, write_graph};
use clawnet::detect::{find_claw, find_net};
use clawnet::gen::{gen_strip_instance, generate, is_claw_net_free, GenMode, GenSpec};
use clawnet::oracle::{enumerate_mwss, oracle_mwss};
use clawnet::solver::{find_stable4, solve, solve_with, SolveOptions};
use clawnet::twins::{find_twin_pair, remove_twins};
use clawnet::wings::free_components;
use clawnet::{Graph, GraphBuilder, NodeSet};
use proptest::prelude::*;

use common::*;

/// Arbitrary graph on up to `max_n` nodes with weights in `-3..=20`.
fn any_graph(max_n: usize) -> impl Strategy<Value = Graph> {
    (1..=max_n).prop_flat_map(|n| {
        let pairs = n * (n - 1) / 2;
        (
            proptest::collection::vec(any::<bool>(), pairs),
            proptest::collection::vec(-3i64..=20, n),
            0.0f64..1.0,
        )
            .prop_map(move |(bits, w, _)| {
                let mut b = GraphBuilder::new(n);
                let mut k = 0;
                for u in 0..n {
                    for v in u + 1..n {
                        if bits[k] {
                            b.add_edge(u, v).unwrap();
                        }
                        k += 1;
                    }
                }
                b.build().with_weights(w).unwrap()
            })
    })
}

/// Generated claw-free, net-free instance.
fn instance(max_n: usize) -> impl Strategy<Value = Graph> {
    (any::<u64>(), 0..1000u64).prop_map(move |(seed, i)| {
        let mut spec = suite_spec(i, max_n);
        spec.seed = seed;
        generate(&spec).unwrap()
    })
}

fn pipeline_runs(g: &Graph) -> Vec<clawnet::solver::PipelineRun> {
    let opts = SolveOptions {
        keep_trace: true,
        ..SolveOptions::default()
    };
    let (_, trace) = solve_with(g, opts).unwrap();
    trace
        .unwrap()
        .components
        .into_iter()
        .filter_map(|c| c.run)
        .collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(10_000))]

    #[test]
    fn oracles_agree(g in any_graph(18)) {
        let bb = oracle_mwss(&g).unwrap();
        let en = enumerate_mwss(&g).unwrap();
        prop_assert_eq!(bb.value, en.value);
        prop_assert!(check_stable_value(&g, &bb.set, bb.value).is_none());
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(300))]

    #[test]
    fn neighborhoods(g in any_graph(16), pick in proptest::collection::vec(any::<bool>(), 16)) {
        let w: NodeSet = g.nodes().filter(|&v| pick[v]).collect();
        let open = g.neighborhood(&w).unwrap();
        let closed = g.closed_neighborhood(&w).unwrap();
        prop_assert_eq!(closed, open.union(&w));
        prop_assert!(open.intersection(&w).is_empty());
    }

    #[test]
    fn oracle_monotone_under_deletion(g in any_graph(16), drop in 0usize..16) {
        let v = drop % g.n();
        let keep: NodeSet = g.nodes().filter(|&u| u != v).collect();
        let sub = g.induced_subgraph(&keep).unwrap();
        prop_assert!(oracle_mwss(&sub.graph).unwrap().value <= oracle_mwss(&g).unwrap().value);
    }

    #[test]
    fn twin_reduction_preserves_optimum(g in any_graph(14)) {
        let positive: NodeSet = g.nodes().filter(|&v| g.weight(v) > 0).collect();
        let sub = g.induced_subgraph(&positive).unwrap();
        let (r, log) = remove_twins(&sub.graph).unwrap();
        prop_assert_eq!(find_twin_pair(&r), None);
        let best = enumerate_mwss(&r).unwrap();
        let lifted = log.lift(&best.set);
        prop_assert!(check_stable_value(&sub.graph, &lifted, best.value).is_none());
        prop_assert_eq!(best.value, brute_alpha(&g));
    }

    #[test]
    fn detector_witnesses_validate(g in any_graph(12)) {
        for w in [find_claw(&g), find_net(&g)].into_iter().flatten() {
            prop_assert!(w.validate(&g), "{}", w);
        }
    }

    #[test]
    fn round_trip(g in any_graph(15)) {
        let h = parse_graph(&write_graph(&g, &[])).unwrap();
        prop_assert_eq!(g.edges().collect::<Vec<_>>(), h.edges().collect::<Vec<_>>());
        prop_assert_eq!(g.weights(), h.weights());
    }

    #[test]
    fn generated_instances_are_claw_net_free(g in instance(30)) {
        prop_assert!(is_claw_net_free(&g));
    }

    #[test]
    fn strip_instances_have_stable_four(seed in any::<u64>(), nodes in 28usize..60) {
        let g = gen_strip_instance(&GenSpec { seed, nodes, ..GenSpec::default() }).unwrap();
        prop_assert_eq!(g.connected_components().len(), 1);
        prop_assert!(find_stable4(&g).is_some());
        let again = gen_strip_instance(&GenSpec { seed, nodes, ..GenSpec::default() }).unwrap();
        prop_assert_eq!(write_graph(&g, &[]), write_graph(&again, &[]));
    }

    #[test]
    fn solve_matches_oracle(g in instance(22)) {
        let s = solve(&g).unwrap();
        prop_assert_eq!(s.value, enumerate_mwss(&g).unwrap().value);
        prop_assert!(check_stable_value(&g, &s.set, s.value).is_none());
    }

    #[test]
    fn isolated_node_adds_its_weight(g in instance(20)) {
        let n = g.n();
        let mut b = GraphBuilder::new(n + 1);
        for v in g.nodes() {
            b.set_weight(v, g.weight(v)).unwrap();
        }
        b.set_weight(n, 3).unwrap();
        for (u, v) in g.edges() {
            b.add_edge(u, v).unwrap();
        }
        prop_assert_eq!(solve(&b.build()).unwrap().value, solve(&g).unwrap().value + 3);
    }

    #[test]
    fn canonical_moves(g in instance(30)) {
        let st = greedy_maximal_stable_set(&g);
        let seed = st.stable_set();
        let done = canonicalize(&g, st).unwrap();
        prop_assert!(done.len() >= seed.len());
        prop_assert!(done.steps() <= 50 * (g.n() + g.m()) as u64);
        // Replay: sizes never drop and augmentations shrink the free set.
        let mut replay = state(&g, &seed);
        for m in done.history() {
            let before = replay.free_nodes();
            let size = replay.len();
            match *m {
                CanonicalMove::Augment { s, x, y } => {
                    replay.augment(&g, s, x, y).unwrap();
                    prop_assert_eq!(replay.len(), size + 1);
                    let after = replay.free_nodes();
                    prop_assert!(after.len() < before.len() && after.difference(&before).is_empty());
                }
                CanonicalMove::Alternate { s, x } => {
                    replay.alternate(&g, s, x).unwrap();
                    prop_assert_eq!(replay.len(), size);
                }
            }
        }
        prop_assert_eq!(replay.stable_set(), done.stable_set());
    }

    #[test]
    fn pipeline_structure(g in instance(40)) {
        for run in pipeline_runs(&g) {
            let mut issues = wing_violations(&run);
            issues.extend(locality_violations(&run));
            issues.extend(strip_violations(&run, 200));
            issues.extend(transform_violations(&run));
            issues.extend(canonical_violations(&run));
            prop_assert!(issues.is_empty(), "{:?}", issues);
            let m = run.graph.m() as f64;
            prop_assert_eq!(run.dp_passes, run.decomposition.x.len() + 1);
            prop_assert!(run.decomposition.x.len() as f64 <= (2.0 * m).sqrt() + 1.0);
        }
    }

    #[test]
    fn pipeline_preserves_weights(g in instance(18)) {
        for run in pipeline_runs(&g) {
            let issues = weight_violations(&run);
            prop_assert!(issues.is_empty(), "{:?}", issues);
        }
    }

    #[test]
    fn similar_free_components_are_cliques(g in instance(30)) {
        if find_stable4(&g).is_none() {
            return Ok(());
        }
        let mut st = greedy_maximal_stable_set(&g);
        st.extend_to_maximal(&g);
        let st = canonicalize(&g, st).unwrap();
        for c in free_components(&g, &st) {
            if c.classes >= 3 {
                prop_assert!(g.is_clique(c.nodes.as_slice()));
                let outside = g.nodes().filter(|&u| !c.nodes.contains(u));
                let extendable = outside.clone().any(|u| c.nodes.iter().all(|v| g.has_edge(u, v)));
                prop_assert!(!extendable);
                prop_assert!(c.maximal_clique);
            }
        }
    }

    #[test]
    fn rejection_mode_mixes_stability(seed in any::<u64>()) {
        let g = generate(&GenSpec { seed, mode: GenMode::Rejection, nodes: 10, ..GenSpec::default() }).unwrap();
        prop_assert!(is_claw_net_free(&g));
    }
}
