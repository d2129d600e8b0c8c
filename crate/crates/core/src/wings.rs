//! Wings of a maximal stable set `S`: groups of non-stable nodes attached to
//! a pair of stable nodes, and the graph on `S` they induce.

use std::collections::BTreeMap;

use serde::Serialize;

use crate::canonical::CanonicalState;
use crate::detect::{PatternKind, PatternWitness};
use crate::error::{Error, Result};
use crate::graph::{Graph, NodeSet};

/// The wing defined by the stable pair `ends = (s, t)`, `s < t`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Wing {
    pub ends: (usize, usize),
    /// Bound nodes whose stable neighbors are exactly `s` and `t`.
    pub bound: NodeSet,
    /// Free neighbors of `s` adjacent to a free neighbor of `t`.
    pub free_s: NodeSet,
    /// Free neighbors of `t` adjacent to a free neighbor of `s`.
    pub free_t: NodeSet,
}

impl Wing {
    fn new(ends: (usize, usize)) -> Self {
        Wing {
            ends,
            bound: NodeSet::new(),
            free_s: NodeSet::new(),
            free_t: NodeSet::new(),
        }
    }

    pub fn members(&self) -> NodeSet {
        self.bound.union(&self.free_s).union(&self.free_t)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct WingTable {
    /// Wing id of each node; `None` for stable nodes and for free nodes
    /// without a dissimilar free neighbor.
    pub wing_of: Vec<Option<usize>>,
    /// Wings ordered by their extrema pair.
    pub wings: Vec<Wing>,
}

impl WingTable {
    pub fn find(&self, s: usize, t: usize) -> Option<&Wing> {
        let key = (s.min(t), s.max(t));
        self.wings
            .binary_search_by(|w| w.ends.cmp(&key))
            .ok()
            .map(|i| &self.wings[i])
    }

    /// `W(s, t)`, empty if there is no such wing.
    pub fn members(&self, s: usize, t: usize) -> NodeSet {
        self.find(s, t).map(Wing::members).unwrap_or_default()
    }
}

/// The two stable neighbors of a bound node (scanning its neighbors).
pub fn bound_ends(g: &Graph, st: &CanonicalState, u: usize) -> Vec<usize> {
    g.neighbors(u)
        .iter()
        .copied()
        .filter(|&v| st.contains(v))
        .collect()
}

/// Witness for a free node `u` with stable neighbor `s` that is adjacent to
/// free nodes `v1`, `v2` attached to two other stable nodes `t1`, `t2`.
fn two_free_wings_witness(
    g: &Graph,
    u: usize,
    s: usize,
    (v1, t1): (usize, usize),
    (v2, t2): (usize, usize),
) -> PatternWitness {
    if g.has_edge(v1, v2) {
        PatternWitness::new(PatternKind::Net, vec![u, v1, v2, s, t1, t2])
    } else {
        let mut leaves = [s, v1, v2];
        leaves.sort_unstable();
        PatternWitness::new(PatternKind::Claw, vec![u, leaves[0], leaves[1], leaves[2]])
    }
}

pub fn build_wing_table(g: &Graph, st: &CanonicalState) -> Result<WingTable> {
    let mut by_ends: BTreeMap<(usize, usize), Wing> = BTreeMap::new();
    let mut key_of: Vec<Option<(usize, usize)>> = vec![None; g.n()];
    for u in g.nodes() {
        if st.contains(u) {
            continue;
        }
        match st.stable_degree(u) {
            0 => {
                return Err(Error::Input(format!(
                    "stable set is not maximal: {u} has no stable neighbor"
                )));
            }
            1 => {
                let s = st.s_of(u).expect("free node");
                let mut other: Option<(usize, usize)> = None;
                for &v in g.neighbors(u) {
                    let Some(t) = st.s_of(v) else { continue };
                    if t == s {
                        continue;
                    }
                    match other {
                        None => other = Some((v, t)),
                        Some((v1, t1)) if t1 != t => {
                            return Err(Error::Forbidden(two_free_wings_witness(
                                g,
                                u,
                                s,
                                (v1, t1),
                                (v, t),
                            )));
                        }
                        Some(_) => {}
                    }
                }
                if let Some((_, t)) = other {
                    let key = (s.min(t), s.max(t));
                    let wing = by_ends.entry(key).or_insert_with(|| Wing::new(key));
                    if s == key.0 {
                        wing.free_s.insert(u);
                    } else {
                        wing.free_t.insert(u);
                    }
                    key_of[u] = Some(key);
                }
            }
            2 => {
                let ends = bound_ends(g, st, u);
                let key = (ends[0], ends[1]);
                by_ends
                    .entry(key)
                    .or_insert_with(|| Wing::new(key))
                    .bound
                    .insert(u);
                key_of[u] = Some(key);
            }
            _ => {
                let ends = bound_ends(g, st, u);
                return Err(Error::Forbidden(PatternWitness::new(
                    PatternKind::Claw,
                    vec![u, ends[0], ends[1], ends[2]],
                )));
            }
        }
    }
    let ids: BTreeMap<(usize, usize), usize> =
        by_ends.keys().enumerate().map(|(i, &k)| (k, i)).collect();
    Ok(WingTable {
        wing_of: key_of.iter().map(|k| k.map(|k| ids[&k])).collect(),
        wings: by_ends.into_values().collect(),
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum WingShape {
    Path,
    Cycle,
}

/// Graph on `S` with an edge `st` whenever `W(s, t)` is non-empty.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct WingGraph {
    pub shape: WingShape,
    /// `s_1, ..., s_t` along the path or cycle. A path starts at its
    /// lower-id end; a cycle starts at its lowest id and continues toward
    /// the lower-id neighbor.
    pub order: Vec<usize>,
}

impl WingGraph {
    pub fn len(&self) -> usize {
        self.order.len()
    }

    pub fn is_empty(&self) -> bool {
        self.order.is_empty()
    }
}

pub fn build_wing_graph(st: &CanonicalState, wt: &WingTable) -> Result<WingGraph> {
    let nodes = st.stable_set();
    let mut adj: BTreeMap<usize, Vec<usize>> = nodes.iter().map(|s| (s, Vec::new())).collect();
    for w in &wt.wings {
        let (s, t) = w.ends;
        for (a, b) in [(s, t), (t, s)] {
            let list = adj
                .get_mut(&a)
                .ok_or_else(|| Error::Input(format!("wing end {a} is not stable")))?;
            list.push(b);
        }
    }
    for (&s, list) in &mut adj {
        list.sort_unstable();
        if list.len() > 2 {
            let mut witness = vec![s];
            witness.extend_from_slice(list);
            return Err(Error::structure(
                "stable node defines more than two wings",
                witness,
            ));
        }
    }
    let Some(&first) = nodes.as_slice().first() else {
        return Ok(WingGraph {
            shape: WingShape::Path,
            order: Vec::new(),
        });
    };
    let edge_count = adj.values().map(Vec::len).sum::<usize>() / 2;
    let shape = if edge_count == nodes.len() && nodes.len() >= 3 {
        WingShape::Cycle
    } else {
        WingShape::Path
    };
    let start = match shape {
        WingShape::Cycle => first,
        WingShape::Path => nodes.iter().find(|s| adj[s].len() <= 1).unwrap_or(first),
    };
    let mut order = vec![start];
    let mut prev = usize::MAX;
    let mut cur = start;
    while let Some(&next) = adj[&cur].iter().find(|&&v| v != prev && v != start) {
        if order.len() > nodes.len() {
            break;
        }
        order.push(next);
        prev = cur;
        cur = next;
    }
    if order.len() != nodes.len() {
        let reached = NodeSet::from_vec(order.clone());
        let missing = nodes.difference(&reached);
        return Err(Error::structure(
            "wing graph is disconnected",
            vec![start, missing.as_slice()[0]],
        ));
    }
    Ok(WingGraph { shape, order })
}

/// A connected component of the free dissimilarity graph.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FreeComponent {
    pub nodes: NodeSet,
    /// Number of distinct stable neighbors among its nodes.
    pub classes: usize,
    pub maximal_clique: bool,
}

fn is_maximal_clique(g: &Graph, set: &NodeSet) -> bool {
    if !g.is_clique(set.as_slice()) {
        return false;
    }
    let Some(first) = set.iter().next() else {
        return false;
    };
    !g.neighbors(first)
        .iter()
        .any(|&u| !set.contains(u) && set.iter().all(|v| g.has_edge(u, v)))
}

/// Components of the graph on free nodes whose edges join adjacent free
/// nodes with different stable neighbors.
pub fn free_components(g: &Graph, st: &CanonicalState) -> Vec<FreeComponent> {
    let mut seen = vec![false; g.n()];
    let mut out = Vec::new();
    for start in g.nodes().filter(|&u| st.is_free(u)) {
        if seen[start] {
            continue;
        }
        seen[start] = true;
        let mut stack = vec![start];
        let mut comp = Vec::new();
        while let Some(u) = stack.pop() {
            comp.push(u);
            let su = st.s_of(u);
            for &v in g.neighbors(u) {
                if !seen[v] && st.is_free(v) && st.s_of(v) != su {
                    seen[v] = true;
                    stack.push(v);
                }
            }
        }
        let nodes = NodeSet::from_vec(comp);
        let mut labels: Vec<usize> = nodes.iter().filter_map(|u| st.s_of(u)).collect();
        labels.sort_unstable();
        labels.dedup();
        let maximal_clique = is_maximal_clique(g, &nodes);
        out.push(FreeComponent {
            nodes,
            classes: labels.len(),
            maximal_clique,
        });
    }
    out
}
