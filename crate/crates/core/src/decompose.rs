//! Splits a connected {claw, net}-free graph with a canonical stable set of
//! size at least four into a removable clique `X` and at most two clique
//! strips covering the rest.
//!
//! A clique `Q` containing a stable node `s_i` and its side of a wing is
//! bisimplicial: `N(Q)` splits into the clique `X` toward `s_{i+1}` and the
//! clique `Y` toward `s_{i-1}`. Either `Q` dominates the graph (then
//! `V \ N[Q]` is a clique) or `X` is null to `Y`; in both cases `G - X` is a
//! union of clique strips.

use std::collections::VecDeque;

use serde::Serialize;

use crate::canonical::CanonicalState;
use crate::detect::square_semi_homogeneous_check;
use crate::error::{Error, Result};
use crate::graph::{CliqueCover, Graph, NodeSet, Regularity};
use crate::wings::{build_wing_graph, build_wing_table, WingGraph, WingTable};

/// Strips with more nodes than this are not certified square by square
/// unless asked to.
pub const DEFAULT_CERTIFY_LIMIT: usize = 200;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum QKind {
    /// Some edge joins `X` and `Y`; `V \ N[Q]` is a clique.
    Dominating,
    /// `X` is null to `Y`.
    StronglyBisimplicial,
}

/// Which side of the anchor's wing `Q` contains.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum AnchorCase {
    /// `Q ⊇ W(s_{i-1}, s_i) ∩ N(s_i)`.
    Previous,
    /// `Q ⊇ W(s_i, s_{i+1}) ∩ N(s_i)`.
    Next,
}

/// How `Q` was obtained from the clique covers of `s_2` and `s_3`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum QSource {
    /// First cover clique of `s_2` misses `W(s_1, s_2)`; `Q` is the second.
    FirstOfS2Empty,
    /// Second cover clique of `s_2` misses `W(s_1, s_2)`; `Q` is the first.
    SecondOfS2Empty,
    /// First cover clique of `s_3` misses `W(s_3, s_4)`; `Q` is the second.
    FirstOfS3Empty,
    /// Second cover clique of `s_3` misses `W(s_3, s_4)`; `Q` is the first.
    SecondOfS3Empty,
    /// Maximal clique grown around `s_2` and its side of `W(s_2, s_3)`.
    Grown,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Anchor {
    /// Zero-based position of the anchor node in the wing graph order.
    pub index: usize,
    pub node: usize,
    pub case: AnchorCase,
    pub source: QSource,
}

/// Clique families `K_1, ..., K_p` where `K_i` is adjacent to `K_j` only if
/// `|i - j| = 1`.
pub type CliqueStrip = Vec<NodeSet>;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Decomposition {
    pub wing_graph: WingGraph,
    pub q: NodeSet,
    pub anchor: Anchor,
    /// Removal clique.
    pub x: NodeSet,
    pub y: NodeSet,
    pub kind: QKind,
    /// One or two mutually null strips partitioning `V \ X`.
    pub strips: Vec<CliqueStrip>,
    /// Clique covers of `s_2` and `s_3`.
    pub covers: [(NodeSet, NodeSet); 2],
}

fn cover(g: &Graph, s: usize) -> Result<CliqueCover> {
    match g.regularity(s)? {
        Regularity::Regular(c) => Ok(c),
        Regularity::Irregular { odd_cycle } => Err(Error::structure(
            format!("stable node {s} is not regular"),
            odd_cycle,
        )),
    }
}

/// Maximal clique containing `seed`, extended by ascending id within
/// `N[s]`.
fn grow_clique(g: &Graph, s: usize, seed: &NodeSet) -> NodeSet {
    let mut clique = seed.clone();
    for &u in g.neighbors(s) {
        if !clique.contains(u) && clique.iter().all(|c| g.has_edge(u, c)) {
            clique.insert(u);
        }
    }
    clique
}

/// Two cliques covering the closed neighborhood of a stable node.
pub type SidePair = (NodeSet, NodeSet);

/// Chooses `Q` from the first four nodes of the wing graph order.
pub fn select_q(
    g: &Graph,
    h: &WingGraph,
    wt: &WingTable,
) -> Result<(NodeSet, Anchor, [SidePair; 2])> {
    if h.len() < 4 {
        return Err(Error::Input(format!(
            "need a stable set of size at least 4, got {}",
            h.len()
        )));
    }
    let s = &h.order;
    let c2 = cover(g, s[1])?.cliques;
    let c3 = cover(g, s[2])?.cliques;
    let w12 = wt.members(s[0], s[1]);
    let w34 = wt.members(s[2], s[3]);
    let anchor = |index, case, source| Anchor {
        index,
        node: s[index],
        case,
        source,
    };
    let candidates = [
        (
            &c2.0,
            &w12,
            &c2.1,
            anchor(1, AnchorCase::Previous, QSource::FirstOfS2Empty),
        ),
        (
            &c2.1,
            &w12,
            &c2.0,
            anchor(1, AnchorCase::Previous, QSource::SecondOfS2Empty),
        ),
        (
            &c3.0,
            &w34,
            &c3.1,
            anchor(2, AnchorCase::Next, QSource::FirstOfS3Empty),
        ),
        (
            &c3.1,
            &w34,
            &c3.0,
            anchor(2, AnchorCase::Next, QSource::SecondOfS3Empty),
        ),
    ];
    for (side, wing, other, a) in candidates {
        if side.intersection(wing).is_empty() {
            return Ok((other.clone(), a, [c2.clone(), c3.clone()]));
        }
    }
    let w23 = wt.members(s[1], s[2]);
    let mut seed = w23.intersection(&NodeSet::from_vec(g.neighbors(s[1]).to_vec()));
    if let Some((u, v)) = g.find_non_edge(seed.as_slice()) {
        return Err(Error::structure(
            "wing between s2 and s3 is not a clique next to s2",
            vec![u, v],
        ));
    }
    seed.insert(s[1]);
    let q = grow_clique(g, s[1], &seed);
    Ok((q, anchor(1, AnchorCase::Next, QSource::Grown), [c2, c3]))
}

fn in_closed(g: &Graph, u: usize, s: usize) -> bool {
    u == s || g.has_edge(u, s)
}

fn require_clique(g: &Graph, set: &NodeSet, what: &str) -> Result<()> {
    match g.find_non_edge(set.as_slice()) {
        None => Ok(()),
        Some((u, v)) => Err(Error::structure(
            format!("{what} is not a clique"),
            vec![u, v],
        )),
    }
}

/// Splits `N(Q)` into `X` (toward `s_{i+1}`) and `Y` (toward `s_{i-1}`).
pub fn classify_q(
    g: &Graph,
    q: &NodeSet,
    order: &[usize],
    anchor: &Anchor,
) -> Result<(NodeSet, NodeSet, QKind)> {
    let t = order.len();
    let i = anchor.index;
    let prev = order[(i + t - 1) % t];
    let cur = order[i];
    let next = order[(i + 1) % t];
    let nq = g.neighborhood(q)?;
    let mut x = Vec::new();
    let mut y = Vec::new();
    for u in nq.iter() {
        let (in_x, in_y) = match anchor.case {
            AnchorCase::Previous => (
                in_closed(g, u, cur) || in_closed(g, u, next),
                in_closed(g, u, prev),
            ),
            AnchorCase::Next => (
                in_closed(g, u, next),
                in_closed(g, u, prev) || in_closed(g, u, cur),
            ),
        };
        match (in_x, in_y) {
            (true, false) => x.push(u),
            (false, true) => y.push(u),
            _ => {
                return Err(Error::structure(
                    "neighbor of Q is not split between the two sides",
                    vec![u, prev, cur, next],
                ))
            }
        }
    }
    let (x, y) = (NodeSet::from_vec(x), NodeSet::from_vec(y));
    require_clique(g, &x, "X")?;
    require_clique(g, &y, "Y")?;
    let joined = x.iter().any(|u| y.iter().any(|v| g.has_edge(u, v)));
    let kind = if joined {
        QKind::Dominating
    } else {
        QKind::StronglyBisimplicial
    };
    Ok((x, y, kind))
}

/// Breadth-first layers from `sources` avoiding `blocked`.
fn layers(g: &Graph, sources: &NodeSet, blocked: &[bool]) -> Vec<NodeSet> {
    let mut dist = vec![usize::MAX; g.n()];
    let mut queue: VecDeque<usize> = VecDeque::new();
    let mut out: Vec<Vec<usize>> = Vec::new();
    for v in sources.iter() {
        dist[v] = 0;
        queue.push_back(v);
    }
    while let Some(v) = queue.pop_front() {
        let d = dist[v];
        if out.len() <= d {
            out.push(Vec::new());
        }
        out[d].push(v);
        for &u in g.neighbors(v) {
            if !blocked[u] && dist[u] == usize::MAX {
                dist[u] = d + 1;
                queue.push_back(u);
            }
        }
    }
    out.into_iter().map(NodeSet::from_vec).collect()
}

/// Checks the clique-strip shape of `strips` and that they partition
/// `V \ x`.
pub fn validate_strips(g: &Graph, x: &NodeSet, strips: &[CliqueStrip]) -> Result<()> {
    const NONE: usize = usize::MAX;
    let mut strip_of = vec![NONE; g.n()];
    let mut index_of = vec![NONE; g.n()];
    for (si, strip) in strips.iter().enumerate() {
        for (ki, k) in strip.iter().enumerate() {
            if k.is_empty() {
                return Err(Error::structure(
                    format!("strip {si} has an empty clique"),
                    vec![],
                ));
            }
            g.check_set(k)?;
            require_clique(g, k, "strip layer")?;
            for v in k.iter() {
                if strip_of[v] != NONE || x.contains(v) {
                    return Err(Error::structure("strips overlap or contain X", vec![v]));
                }
                strip_of[v] = si;
                index_of[v] = ki;
            }
        }
    }
    for v in g.nodes() {
        if strip_of[v] == NONE {
            if x.contains(v) {
                continue;
            }
            return Err(Error::structure("node not covered by the strips", vec![v]));
        }
        for &u in g.neighbors(v) {
            if strip_of[u] == NONE {
                continue;
            }
            if strip_of[u] != strip_of[v] || index_of[u].abs_diff(index_of[v]) > 1 {
                return Err(Error::structure(
                    "strip layers adjacent out of order",
                    vec![v, u],
                ));
            }
        }
    }
    Ok(())
}

/// Runs the square-semi-homogeneity check on every consecutive pair.
pub fn certify_squares(g: &Graph, strips: &[CliqueStrip]) -> Result<()> {
    for strip in strips {
        for pair in strip.windows(2) {
            if let Some(bad) = square_semi_homogeneous_check(g, &pair[0], &pair[1])? {
                let mut witness = bad.square.nodes.clone();
                witness.push(bad.node);
                return Err(Error::structure(
                    "square between strip layers is not semi-homogeneous",
                    witness,
                ));
            }
        }
    }
    Ok(())
}

/// Builds the strips covering `G - X`.
pub fn build_strips(
    g: &Graph,
    q: &NodeSet,
    x: &NodeSet,
    y: &NodeSet,
    kind: QKind,
) -> Result<Vec<CliqueStrip>> {
    let mut strips: Vec<CliqueStrip> = Vec::new();
    match kind {
        QKind::Dominating => {
            let nq = g.closed_neighborhood(q)?;
            let p: NodeSet = g.nodes().filter(|&v| !nq.contains(v)).collect();
            require_clique(g, &p, "V \\ N[Q]")?;
            strips.push(vec![q.clone(), y.clone(), p]);
        }
        QKind::StronglyBisimplicial => {
            let mut blocked = vec![false; g.n()];
            for v in q.iter() {
                blocked[v] = true;
            }
            let from_x = layers(g, x, &blocked);
            let x_side: NodeSet = from_x.iter().flat_map(|l| l.iter()).collect();
            let shared = y.iter().any(|v| x_side.contains(v));
            let from_y = layers(g, y, &blocked);
            if shared {
                let mut strip = vec![q.clone()];
                strip.extend(from_y.into_iter().map(|l| l.difference(x)));
                strips.push(strip);
            } else {
                let mut first = vec![q.clone()];
                first.extend(from_y);
                strips.push(first);
                strips.push(from_x.into_iter().skip(1).collect());
            }
        }
    }
    for strip in &mut strips {
        strip.retain(|k| !k.is_empty());
    }
    strips.retain(|s| !s.is_empty());
    validate_strips(g, x, &strips)?;
    Ok(strips)
}

/// Options for [`decompose`].
#[derive(Debug, Clone, Copy)]
pub struct DecomposeOptions {
    /// Certify square-semi-homogeneity of consecutive layers when the graph
    /// has at most this many nodes.
    pub certify_limit: usize,
}

impl Default for DecomposeOptions {
    fn default() -> Self {
        DecomposeOptions {
            certify_limit: DEFAULT_CERTIFY_LIMIT,
        }
    }
}

/// Full decomposition of a connected graph from a canonical stable set of
/// size at least 4.
pub fn decompose(g: &Graph, st: &CanonicalState, opts: DecomposeOptions) -> Result<Decomposition> {
    let wt = build_wing_table(g, st)?;
    let h = build_wing_graph(st, &wt)?;
    let (q, anchor, covers) = select_q(g, &h, &wt)?;
    let (x, y, kind) = classify_q(g, &q, &h.order, &anchor)?;
    let strips = build_strips(g, &q, &x, &y, kind)?;
    if g.n() <= opts.certify_limit {
        certify_squares(g, &strips)?;
    }
    Ok(Decomposition {
        wing_graph: h,
        q,
        anchor,
        x,
        y,
        kind,
        strips,
        covers,
    })
}
