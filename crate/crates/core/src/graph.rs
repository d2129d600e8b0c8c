//! Immutable node-weighted simple graphs and the neighborhood primitives the
//! rest of the crate is built on.

use std::collections::VecDeque;

use rustc_hash::FxHashSet;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Node weight and stable-set value type.
pub type Weight = i64;

/// Sorted set of node ids without duplicates.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct NodeSet(Vec<usize>);

impl NodeSet {
    pub fn new() -> Self {
        NodeSet(Vec::new())
    }

    /// Sorts and deduplicates `ids`.
    pub fn from_vec(mut ids: Vec<usize>) -> Self {
        ids.sort_unstable();
        ids.dedup();
        NodeSet(ids)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn contains(&self, v: usize) -> bool {
        self.0.binary_search(&v).is_ok()
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.0.iter().copied()
    }

    pub fn as_slice(&self) -> &[usize] {
        &self.0
    }

    pub fn into_vec(self) -> Vec<usize> {
        self.0
    }

    pub fn insert(&mut self, v: usize) -> bool {
        match self.0.binary_search(&v) {
            Ok(_) => false,
            Err(pos) => {
                self.0.insert(pos, v);
                true
            }
        }
    }

    pub fn union(&self, other: &NodeSet) -> NodeSet {
        let mut out = Vec::with_capacity(self.len() + other.len());
        let (a, b) = (&self.0, &other.0);
        let (mut i, mut j) = (0, 0);
        while i < a.len() && j < b.len() {
            match a[i].cmp(&b[j]) {
                std::cmp::Ordering::Less => {
                    out.push(a[i]);
                    i += 1;
                }
                std::cmp::Ordering::Greater => {
                    out.push(b[j]);
                    j += 1;
                }
                std::cmp::Ordering::Equal => {
                    out.push(a[i]);
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&a[i..]);
        out.extend_from_slice(&b[j..]);
        NodeSet(out)
    }

    pub fn difference(&self, other: &NodeSet) -> NodeSet {
        NodeSet(self.iter().filter(|&v| !other.contains(v)).collect())
    }

    pub fn intersection(&self, other: &NodeSet) -> NodeSet {
        NodeSet(self.iter().filter(|&v| other.contains(v)).collect())
    }
}

impl FromIterator<usize> for NodeSet {
    fn from_iter<I: IntoIterator<Item = usize>>(iter: I) -> Self {
        NodeSet::from_vec(iter.into_iter().collect())
    }
}

impl From<Vec<usize>> for NodeSet {
    fn from(v: Vec<usize>) -> Self {
        NodeSet::from_vec(v)
    }
}

impl<'a> IntoIterator for &'a NodeSet {
    type Item = &'a usize;
    type IntoIter = std::slice::Iter<'a, usize>;
    fn into_iter(self) -> Self::IntoIter {
        self.0.iter()
    }
}

#[inline]
fn edge_key(u: usize, v: usize) -> u64 {
    let (a, b) = if u < v { (u, v) } else { (v, u) };
    ((a as u64) << 32) | b as u64
}

/// Simple undirected graph with 64-bit node weights.
///
/// Neighbor lists are kept sorted; edge membership is answered from a hash
/// set in expected constant time.
#[derive(Debug, Clone, Default)]
pub struct Graph {
    weights: Vec<Weight>,
    adj: Vec<Vec<usize>>,
    edges: FxHashSet<u64>,
}

impl PartialEq for Graph {
    fn eq(&self, other: &Self) -> bool {
        self.weights == other.weights && self.adj == other.adj
    }
}

impl Eq for Graph {}

/// Accumulates edges before freezing them into a [`Graph`].
#[derive(Debug, Clone)]
pub struct GraphBuilder {
    weights: Vec<Weight>,
    adj: Vec<Vec<usize>>,
    edges: FxHashSet<u64>,
}

impl GraphBuilder {
    /// `n` isolated nodes of weight 1.
    pub fn new(n: usize) -> Self {
        GraphBuilder {
            weights: vec![1; n],
            adj: vec![Vec::new(); n],
            edges: FxHashSet::default(),
        }
    }

    pub fn n(&self) -> usize {
        self.weights.len()
    }

    pub fn set_weight(&mut self, v: usize, w: Weight) -> Result<()> {
        let n = self.n();
        *self
            .weights
            .get_mut(v)
            .ok_or(Error::NodeOutOfRange { node: v, n })? = w;
        Ok(())
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.edges.contains(&edge_key(u, v))
    }

    /// Adds `uv`; returns false if it was already present.
    pub fn add_edge(&mut self, u: usize, v: usize) -> Result<bool> {
        let n = self.n();
        for x in [u, v] {
            if x >= n {
                return Err(Error::NodeOutOfRange { node: x, n });
            }
        }
        if u == v {
            return Err(Error::Input(format!("self-loop at node {u}")));
        }
        if !self.edges.insert(edge_key(u, v)) {
            return Ok(false);
        }
        self.adj[u].push(v);
        self.adj[v].push(u);
        Ok(true)
    }

    pub fn build(mut self) -> Graph {
        for list in &mut self.adj {
            list.sort_unstable();
        }
        Graph {
            weights: self.weights,
            adj: self.adj,
            edges: self.edges,
        }
    }
}

/// An induced subgraph together with the id mapping in both directions.
#[derive(Debug, Clone)]
pub struct Subgraph {
    pub graph: Graph,
    /// Local id -> parent id.
    pub to_parent: Vec<usize>,
    /// Parent id -> local id.
    pub to_local: Vec<Option<usize>>,
}

impl Subgraph {
    pub fn lift(&self, set: &NodeSet) -> NodeSet {
        set.iter().map(|v| self.to_parent[v]).collect()
    }

    /// Parent ids of `set` that lie in the subgraph, as local ids.
    pub fn project(&self, set: &NodeSet) -> NodeSet {
        set.iter().filter_map(|v| self.to_local[v]).collect()
    }
}

/// Result of [`Graph::regularity`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Regularity {
    Regular(CliqueCover),
    /// Odd cycle of the complement of `G[N(v)]`, i.e. an odd antihole or
    /// independent triple inside the neighborhood.
    Irregular {
        odd_cycle: Vec<usize>,
    },
}

/// Two cliques covering a closed neighborhood `N[v]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CliqueCover {
    /// Partition of `N(v)` into two cliques; the first side holds the
    /// lowest id of each complement component.
    pub parts: (NodeSet, NodeSet),
    /// The two parts plus `v`, each grown to a maximal clique inside `N[v]`
    /// (the `C_v`, `C̄_v` pair).
    pub cliques: (NodeSet, NodeSet),
}

impl Graph {
    /// `n` isolated unit-weight nodes.
    pub fn empty(n: usize) -> Self {
        GraphBuilder::new(n).build()
    }

    /// Strict constructor: rejects self-loops, duplicate edges and
    /// out-of-range ids. Weights default to 1.
    pub fn from_edges(n: usize, edges: impl IntoIterator<Item = (usize, usize)>) -> Result<Self> {
        let mut b = GraphBuilder::new(n);
        for (u, v) in edges {
            if !b.add_edge(u, v)? {
                return Err(Error::Input(format!("duplicate edge {u} {v}")));
            }
        }
        Ok(b.build())
    }

    pub fn with_weights(mut self, weights: Vec<Weight>) -> Result<Self> {
        if weights.len() != self.n() {
            return Err(Error::Input(format!(
                "{} weights given for {} nodes",
                weights.len(),
                self.n()
            )));
        }
        self.weights = weights;
        Ok(self)
    }

    pub fn n(&self) -> usize {
        self.weights.len()
    }

    pub fn m(&self) -> usize {
        self.edges.len()
    }

    pub fn weight(&self, v: usize) -> Weight {
        self.weights[v]
    }

    pub fn weights(&self) -> &[Weight] {
        &self.weights
    }

    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adj[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    #[inline]
    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        u != v && self.edges.contains(&edge_key(u, v))
    }

    /// Edges as `(u, v)` with `u < v`, sorted.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.adj
            .iter()
            .enumerate()
            .flat_map(|(u, list)| list.iter().filter(move |&&v| u < v).map(move |&v| (u, v)))
    }

    pub fn nodes(&self) -> std::ops::Range<usize> {
        0..self.n()
    }

    pub fn check_node(&self, v: usize) -> Result<()> {
        if v < self.n() {
            Ok(())
        } else {
            Err(Error::NodeOutOfRange {
                node: v,
                n: self.n(),
            })
        }
    }

    pub fn check_set(&self, set: &NodeSet) -> Result<()> {
        set.iter().try_for_each(|v| self.check_node(v))
    }

    /// `N(W)`: nodes outside `W` adjacent to some node of `W`.
    pub fn neighborhood(&self, set: &NodeSet) -> Result<NodeSet> {
        self.check_set(set)?;
        let mut out: Vec<usize> = set
            .iter()
            .flat_map(|v| self.adj[v].iter().copied())
            .filter(|&u| !set.contains(u))
            .collect();
        out.sort_unstable();
        out.dedup();
        Ok(NodeSet(out))
    }

    /// `N[W] = N(W) ∪ W`.
    pub fn closed_neighborhood(&self, set: &NodeSet) -> Result<NodeSet> {
        Ok(self.neighborhood(set)?.union(set))
    }

    pub fn closed_neighbors(&self, v: usize) -> NodeSet {
        let mut out = self.adj[v].clone();
        let pos = out.partition_point(|&u| u < v);
        out.insert(pos, v);
        NodeSet(out)
    }

    pub fn total_weight(&self, set: &NodeSet) -> Weight {
        set.iter().map(|v| self.weights[v]).sum()
    }

    /// First non-adjacent pair of `set` in lexicographic order, if any.
    pub fn find_non_edge(&self, set: &[usize]) -> Option<(usize, usize)> {
        for (i, &u) in set.iter().enumerate() {
            for &v in &set[i + 1..] {
                if !self.has_edge(u, v) {
                    return Some((u, v));
                }
            }
        }
        None
    }

    pub fn is_clique(&self, set: &[usize]) -> bool {
        self.find_non_edge(set).is_none()
    }

    /// First adjacent pair of `set`, if any.
    pub fn find_edge_within(&self, set: &[usize]) -> Option<(usize, usize)> {
        if set.len() > 32 {
            let mut pos = vec![usize::MAX; self.n()];
            for (i, &u) in set.iter().enumerate() {
                pos[u] = i;
            }
            for (i, &u) in set.iter().enumerate() {
                let later = self.adj[u]
                    .iter()
                    .map(|&v| pos[v])
                    .filter(|&p| p != usize::MAX && p > i)
                    .min();
                if let Some(p) = later {
                    return Some((u, set[p]));
                }
            }
            return None;
        }
        for (i, &u) in set.iter().enumerate() {
            for &v in &set[i + 1..] {
                if self.has_edge(u, v) {
                    return Some((u, v));
                }
            }
        }
        None
    }

    pub fn is_stable(&self, set: &[usize]) -> bool {
        self.find_edge_within(set).is_none()
    }

    /// Subgraph induced by `keep`, weights carried over.
    pub fn induced_subgraph(&self, keep: &NodeSet) -> Result<Subgraph> {
        self.check_set(keep)?;
        let mut to_local = vec![None; self.n()];
        for (i, v) in keep.iter().enumerate() {
            to_local[v] = Some(i);
        }
        let mut b = GraphBuilder::new(keep.len());
        for (i, v) in keep.iter().enumerate() {
            b.weights[i] = self.weights[v];
            for &u in &self.adj[v] {
                if let Some(j) = to_local[u] {
                    if i < j {
                        b.add_edge(i, j)?;
                    }
                }
            }
        }
        Ok(Subgraph {
            graph: b.build(),
            to_parent: keep.as_slice().to_vec(),
            to_local,
        })
    }

    /// Connected components, each sorted, ordered by smallest member.
    pub fn connected_components(&self) -> Vec<NodeSet> {
        let n = self.n();
        let mut seen = vec![false; n];
        let mut comps = Vec::new();
        let mut queue = VecDeque::new();
        for start in 0..n {
            if seen[start] {
                continue;
            }
            seen[start] = true;
            queue.push_back(start);
            let mut comp = Vec::new();
            while let Some(v) = queue.pop_front() {
                comp.push(v);
                for &u in &self.adj[v] {
                    if !seen[u] {
                        seen[u] = true;
                        queue.push_back(u);
                    }
                }
            }
            comps.push(NodeSet::from_vec(comp));
        }
        comps
    }

    /// Tests whether `N(v)` splits into two cliques.
    ///
    /// Each component of the complement of `G[N(v)]` is 2-colored by BFS
    /// from its lowest id, which goes to the first side; this keeps the
    /// cover deterministic.
    pub fn regularity(&self, v: usize) -> Result<Regularity> {
        self.check_node(v)?;
        let nb = &self.adj[v];
        let d = nb.len();
        let mut color: Vec<Option<bool>> = vec![None; d];
        let mut parent = vec![usize::MAX; d];
        let mut queue = VecDeque::new();
        for seed in 0..d {
            if color[seed].is_some() {
                continue;
            }
            color[seed] = Some(false);
            queue.push_back(seed);
            while let Some(i) = queue.pop_front() {
                let ci = color[i].unwrap();
                for j in 0..d {
                    if i == j || self.has_edge(nb[i], nb[j]) {
                        continue;
                    }
                    match color[j] {
                        None => {
                            color[j] = Some(!ci);
                            parent[j] = i;
                            queue.push_back(j);
                        }
                        Some(cj) if cj == ci => {
                            let cycle = odd_cycle(&parent, i, j);
                            return Ok(Regularity::Irregular {
                                odd_cycle: cycle.into_iter().map(|k| nb[k]).collect(),
                            });
                        }
                        Some(_) => {}
                    }
                }
            }
        }
        let one: Vec<usize> = (0..d)
            .filter(|&i| color[i] == Some(false))
            .map(|i| nb[i])
            .collect();
        let two: Vec<usize> = (0..d)
            .filter(|&i| color[i] == Some(true))
            .map(|i| nb[i])
            .collect();
        let grow = |part: &[usize]| {
            let mut clique = part.to_vec();
            clique.push(v);
            for &u in nb {
                if !clique.contains(&u) && clique.iter().all(|&c| self.has_edge(u, c)) {
                    clique.push(u);
                }
            }
            NodeSet::from_vec(clique)
        };
        let cliques = (grow(&one), grow(&two));
        Ok(Regularity::Regular(CliqueCover {
            parts: (NodeSet(one), NodeSet(two)),
            cliques,
        }))
    }
}

/// Closes the BFS-tree paths from `a` and `b` (same color, adjacent in the
/// searched graph) into an odd cycle.
fn odd_cycle(parent: &[usize], a: usize, b: usize) -> Vec<usize> {
    let path_to_root = |mut x: usize| {
        let mut p = vec![x];
        while parent[x] != usize::MAX {
            x = parent[x];
            p.push(x);
        }
        p
    };
    let pa = path_to_root(a);
    let pb = path_to_root(b);
    // Strip the shared suffix, keeping the lowest common ancestor once.
    let (mut i, mut j) = (pa.len(), pb.len());
    while i > 0 && j > 0 && pa[i - 1] == pb[j - 1] {
        i -= 1;
        j -= 1;
    }
    let mut cycle: Vec<usize> = pa[..=i].to_vec();
    cycle.extend(pb[..j].iter().rev());
    cycle
}
