//! Shared instance suites and library-independent checkers.

#![allow(dead_code)]

use clawnet::canonical::{
    canonical_violation, find_augmenting_p3, find_dominating_free, CanonicalState,
};
use clawnet::decompose::QKind;
use clawnet::detect::{find_claw, find_square_in, square_semi_homogeneous_check};
use clawnet::gen::{generate, GenMode, GenSpec, WeightRegime};
use clawnet::graph::Regularity;
use clawnet::order::{mwss_on_order, verify_consistent};
use clawnet::solver::PipelineRun;
use clawnet::wings::{build_wing_table, WingShape};
use clawnet::{Graph, NodeSet, Weight};

pub fn regime(i: u64) -> WeightRegime {
    match i % 3 {
        0 => WeightRegime::Unit,
        1 => WeightRegime::Random { lo: 1, hi: 100 },
        _ => WeightRegime::Ties,
    }
}

/// Instance `i` of the mixed suite: alternating rejection and strip
/// instances with at most `max_n` nodes (22 for rejection sampling) and
/// all weight regimes.
pub fn suite_spec(i: u64, max_n: usize) -> GenSpec {
    let nodes = 4 + (i.wrapping_mul(7) % (max_n as u64 - 3)) as usize;
    let mode = if i.is_multiple_of(2) {
        GenMode::Rejection
    } else {
        GenMode::StripBuild
    };
    GenSpec {
        seed: i.wrapping_mul(0x9E37_79B9_7F4A_7C15) ^ 0x5EED,
        mode,
        nodes: if mode == GenMode::Rejection {
            nodes.min(22)
        } else {
            nodes
        },
        clique_min: 1,
        clique_max: 1 + (i / 2 % 4) as usize,
        density: 0.15 + 0.1 * (i / 3 % 9) as f64,
        weights: regime(i / 5),
    }
}

pub fn suite_instance(i: u64, max_n: usize) -> Graph {
    generate(&suite_spec(i, max_n)).expect("generator succeeds")
}

/// Maximum weight of a stable set of `g` inside `mask`, by plain branching
/// on the lowest node. Independent of the library oracles.
pub fn brute_alpha_in(g: &Graph, mask: u64) -> Weight {
    assert!(g.n() <= 64);
    let nb: Vec<u64> = g
        .nodes()
        .map(|v| g.neighbors(v).iter().fold(0u64, |a, &u| a | 1 << u))
        .collect();
    fn go(nb: &[u64], w: &[Weight], mask: u64) -> Weight {
        if mask == 0 {
            return 0;
        }
        let v = mask.trailing_zeros() as usize;
        let rest = mask & !(1 << v);
        let take = w[v].max(0) + go(nb, w, rest & !nb[v]);
        if nb[v] & rest == 0 {
            return take;
        }
        take.max(go(nb, w, rest))
    }
    go(&nb, g.weights(), mask)
}

pub fn brute_alpha(g: &Graph) -> Weight {
    let all = if g.n() == 64 {
        u64::MAX
    } else {
        (1u64 << g.n()) - 1
    };
    brute_alpha_in(g, all)
}

pub fn mask_of(nodes: impl IntoIterator<Item = usize>) -> u64 {
    nodes.into_iter().fold(0, |a, v| a | 1 << v)
}

pub fn check_stable_value(g: &Graph, set: &NodeSet, value: Weight) -> Option<String> {
    if !g.is_stable(set.as_slice()) {
        return Some(format!("set {set:?} is not stable"));
    }
    if g.total_weight(set) != value {
        return Some(format!(
            "set weight {} != value {value}",
            g.total_weight(set)
        ));
    }
    None
}

/// Wing partition, wing graph and regularity of the component in `run`.
pub fn wing_violations(run: &PipelineRun) -> Vec<String> {
    let g = &run.graph;
    let st = &run.canonical;
    let mut out = Vec::new();
    let s_set = st.stable_set();
    let mut expected: Vec<Option<(usize, usize)>> = vec![None; g.n()];
    for u in g.nodes().filter(|&u| !st.contains(u)) {
        let stable: Vec<usize> = g
            .neighbors(u)
            .iter()
            .copied()
            .filter(|&v| st.contains(v))
            .collect();
        let mut wings = Vec::new();
        match stable.as_slice() {
            [s] => {
                let mut ts: Vec<usize> = g
                    .neighbors(u)
                    .iter()
                    .filter(|&&v| st.is_free(v))
                    .filter_map(|&v| st.s_of(v))
                    .filter(|&t| t != *s)
                    .collect();
                ts.sort_unstable();
                ts.dedup();
                wings.extend(ts.into_iter().map(|t| (*s.min(&t), *s.max(&t))));
            }
            [s, t] => wings.push((*s.min(t), *s.max(t))),
            [] => out.push(format!("node {u} has no stable neighbor")),
            _ => out.push(format!("node {u} has {} stable neighbors", stable.len())),
        }
        if wings.len() > 1 {
            out.push(format!("node {u} lies in wings {wings:?}"));
        }
        expected[u] = wings.first().copied();
    }
    match build_wing_table(g, st) {
        Ok(wt) => {
            for u in g.nodes() {
                let got = wt.wing_of[u].map(|i| wt.wings[i].ends);
                if got != expected[u] {
                    out.push(format!(
                        "node {u}: wing {got:?}, expected {:?}",
                        expected[u]
                    ));
                }
            }
        }
        Err(e) => out.push(format!("wing table: {e}")),
    }
    let mut edges: Vec<(usize, usize)> = expected.iter().flatten().copied().collect();
    edges.sort_unstable();
    edges.dedup();
    let h = &run.decomposition.wing_graph;
    let mut sorted_order = h.order.clone();
    sorted_order.sort_unstable();
    if sorted_order != s_set.as_slice() {
        out.push("wing graph order does not cover the stable set".into());
    }
    let k = h.order.len();
    let mut from_order: Vec<(usize, usize)> = (0..k.saturating_sub(1))
        .map(|i| (h.order[i], h.order[i + 1]))
        .collect();
    if h.shape == WingShape::Cycle {
        from_order.push((h.order[k - 1], h.order[0]));
    }
    let mut from_order: Vec<(usize, usize)> = from_order
        .into_iter()
        .map(|(a, b)| (a.min(b), a.max(b)))
        .collect();
    from_order.sort_unstable();
    if from_order != edges {
        out.push(format!(
            "wing graph edges {edges:?} do not form the reported {:?}",
            h.shape
        ));
    }
    for v in g.nodes() {
        match g.regularity(v) {
            Ok(Regularity::Regular(_)) => {}
            _ => out.push(format!("node {v} is not regular")),
        }
    }
    out
}

/// Checks that nodes near `s_i` only see nodes near `s_{i-1}, s_i, s_{i+1}`.
pub fn locality_violations(run: &PipelineRun) -> Vec<String> {
    let g = &run.graph;
    let h = &run.decomposition.wing_graph;
    let k = h.order.len();
    let cyclic = h.shape == WingShape::Cycle;
    let mut out = Vec::new();
    for i in 0..k {
        let mut allowed = vec![false; g.n()];
        let mut mark = |s: usize| {
            for v in g.closed_neighbors(s).iter() {
                allowed[v] = true;
            }
        };
        mark(h.order[i]);
        if i > 0 || cyclic {
            mark(h.order[(i + k - 1) % k]);
        }
        if i + 1 < k || cyclic {
            mark(h.order[(i + 1) % k]);
        }
        for u in g.closed_neighbors(h.order[i]).iter() {
            if let Some(&x) = g.neighbors(u).iter().find(|&&x| !allowed[x]) {
                out.push(format!(
                    "node {u} near stable {} sees distant {x}",
                    h.order[i]
                ));
            }
        }
    }
    out
}

/// Strip shape: cliques, consecutive-only adjacency, mutually null strips,
/// cover of `G - X`, square-semi-homogeneity and the dominating case.
pub fn strip_violations(run: &PipelineRun, certify_limit: usize) -> Vec<String> {
    let g = &run.graph;
    let d = &run.decomposition;
    let mut out = Vec::new();
    let mut place: Vec<Option<(usize, usize)>> = vec![None; g.n()];
    for (si, strip) in d.strips.iter().enumerate() {
        for (li, layer) in strip.iter().enumerate() {
            if !g.is_clique(layer.as_slice()) {
                out.push(format!("strip {si} layer {li} is not a clique"));
            }
            for v in layer.iter() {
                if place[v].replace((si, li)).is_some() {
                    out.push(format!("node {v} appears twice in the strips"));
                }
            }
        }
    }
    for v in g.nodes() {
        if place[v].is_some() == d.x.contains(v) {
            out.push(format!("node {v}: strips and X do not partition V"));
        }
    }
    for (u, v) in g.edges() {
        if let (Some((su, lu)), Some((sv, lv))) = (place[u], place[v]) {
            if su != sv {
                out.push(format!("edge {u}-{v} joins strips {su} and {sv}"));
            } else if lu.abs_diff(lv) > 1 {
                out.push(format!("edge {u}-{v} joins layers {lu} and {lv}"));
            }
        }
    }
    if g.n() <= certify_limit {
        for strip in &d.strips {
            for pair in strip.windows(2) {
                match square_semi_homogeneous_check(g, &pair[0], &pair[1]) {
                    Ok(None) => {}
                    Ok(Some(v)) => out.push(format!(
                        "layers not square-semi-homogeneous: {} / {}",
                        v.square, v.node
                    )),
                    Err(e) => out.push(e.to_string()),
                }
            }
        }
    }
    if d.kind == QKind::Dominating {
        let nq = g.closed_neighborhood(&d.q).expect("valid Q");
        let rest: Vec<usize> = g.nodes().filter(|&v| !nq.contains(v)).collect();
        if !g.is_clique(&rest) {
            out.push("dominating Q but V \\ N[Q] is not a clique".into());
        }
    }
    out
}

/// Transformed graph: claw-free, no squares across consecutive layers,
/// bounded stage counts, consistent order.
pub fn transform_violations(run: &PipelineRun) -> Vec<String> {
    let gbar = &run.interval.graph;
    let mut out = Vec::new();
    if let Some(w) = find_claw(gbar) {
        out.push(format!("transformed graph has {w}"));
    }
    for strip in &run.local_strips {
        for pair in strip.windows(2) {
            match find_square_in(gbar, &pair[0], &pair[1]) {
                Ok(None) => {}
                Ok(Some(w)) => out.push(format!("square left between layers: {w}")),
                Err(e) => out.push(e.to_string()),
            }
        }
    }
    for pl in &run.interval.pairs {
        let k = run.decomposition.strips[pl.strip][pl.layer].len();
        if pl.actions.len() > 3 * k {
            out.push(format!(
                "{} stages on a layer of size {k}",
                pl.actions.len()
            ));
        }
    }
    if let Some(t) = verify_consistent(gbar, &run.order) {
        out.push(format!("order not consistent at {t:?}"));
    }
    out
}

/// Canonical set of `run`: no augmenting `P3`, no dominating free node and
/// step counter within `50 (n + m)`.
pub fn canonical_violations(run: &PipelineRun) -> Vec<String> {
    let g = &run.graph;
    let mut out = Vec::new();
    let mut st = run.canonical.clone();
    for s in st.stable_set().iter() {
        if let Ok(Some(p)) = find_augmenting_p3(g, &mut st, s) {
            out.push(format!("augmenting P3 {p:?} at {s}"));
        }
        if let Ok(Some(x)) = find_dominating_free(g, &mut st, s) {
            out.push(format!("dominating free node {x} at {s}"));
        }
    }
    if let Some(s) = canonical_violation(g, &run.canonical) {
        out.push(format!("canonical_violation reports {s}"));
    }
    if !st.is_maximal() {
        out.push("canonical set is not maximal".into());
    }
    let bound = 50 * (g.n() + g.m()) as u64;
    if run.canonical.steps() > bound {
        out.push(format!("{} steps exceed {bound}", run.canonical.steps()));
    }
    out
}

/// Values the interval graph must preserve, against the brute-force oracle
/// on the component: `α_w(Ḡ) = α_w(G - X)` and, for `v ∈ X`, the
/// recurrence on `Ḡ - N[v]` equals `α_w(G - N[v])`.
pub fn weight_violations(run: &PipelineRun) -> Vec<String> {
    let g = &run.graph;
    let d = &run.decomposition;
    let gbar = &run.interval.graph;
    let mut out = Vec::new();
    let all = mask_of(g.nodes());
    let without_x = all & !mask_of(d.x.iter());
    let expect = brute_alpha_in(g, without_x);
    let on_gbar = brute_alpha(gbar);
    let (dp, set) = mwss_on_order(&run.order, gbar.weights(), &NodeSet::new());
    if on_gbar != expect || dp != expect {
        out.push(format!(
            "α_w(G - X) = {expect}, α_w(Ḡ) = {on_gbar}, recurrence {dp}"
        ));
    }
    if let Some(e) = check_stable_value(gbar, &set, dp) {
        out.push(e);
    }
    for v in d.x.iter() {
        let nv = g.closed_neighbors(v);
        let expect = brute_alpha_in(g, all & !mask_of(nv.iter()));
        let excluded: NodeSet = nv.iter().filter_map(|u| run.interval.to_local[u]).collect();
        let (dp, set) = mwss_on_order(&run.order, gbar.weights(), &excluded);
        if dp != expect {
            out.push(format!(
                "v = {v}: α_w(G - N[v]) = {expect}, recurrence {dp}"
            ));
        }
        if set.iter().any(|u| excluded.contains(u)) {
            out.push(format!("v = {v}: recurrence used an excluded node"));
        }
        if let Some(e) = check_stable_value(gbar, &set, dp) {
            out.push(e);
        }
    }
    out
}

/// Fresh state for `s` on `g`, for replaying canonical moves.
pub fn state(g: &Graph, s: &NodeSet) -> CanonicalState {
    CanonicalState::new(g, s).expect("stable seed")
}
