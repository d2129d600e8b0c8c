//! Canonical stable sets: maximal stable sets with no augmenting `P3`
//! `(x, s, y)` (two non-adjacent free neighbors of a stable node) and no
//! free node whose closed neighborhood strictly contains that of its
//! stable neighbor.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::{Graph, NodeSet};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum NodeClass {
    Stable,
    /// No stable neighbor.
    Superfree,
    /// Exactly one stable neighbor.
    Free,
    /// Two or more stable neighbors.
    Bound,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(tag = "op", rename_all = "lowercase")]
pub enum CanonicalMove {
    /// `s` replaced by its non-adjacent free neighbors `x`, `y`.
    Augment { s: usize, x: usize, y: usize },
    /// `s` replaced by the free neighbor `x` dominating it.
    Alternate { s: usize, x: usize },
}

/// A stable set with incrementally maintained stable-neighbor counts.
///
/// For each node the XOR of its stable neighbors is kept as well, which
/// names the stable neighbor of a free node in constant time.
#[derive(Debug, Clone)]
pub struct CanonicalState {
    in_s: Vec<bool>,
    count: Vec<u32>,
    xor: Vec<usize>,
    size: usize,
    steps: u64,
    history: Vec<CanonicalMove>,
}

impl CanonicalState {
    /// State for an arbitrary stable set (not necessarily maximal).
    pub fn new(g: &Graph, s: &NodeSet) -> Result<Self> {
        g.check_set(s)?;
        if let Some((u, v)) = g.find_edge_within(s.as_slice()) {
            return Err(Error::Input(format!(
                "set is not stable: {u} and {v} are adjacent"
            )));
        }
        let mut st = CanonicalState {
            in_s: vec![false; g.n()],
            count: vec![0; g.n()],
            xor: vec![0; g.n()],
            size: 0,
            steps: 0,
            history: Vec::new(),
        };
        for v in s.iter() {
            st.insert(g, v);
        }
        Ok(st)
    }

    fn insert(&mut self, g: &Graph, v: usize) {
        self.in_s[v] = true;
        self.size += 1;
        for &u in g.neighbors(v) {
            self.count[u] += 1;
            self.xor[u] ^= v;
        }
        self.steps += g.degree(v) as u64 + 1;
    }

    fn remove(&mut self, g: &Graph, v: usize) {
        self.in_s[v] = false;
        self.size -= 1;
        for &u in g.neighbors(v) {
            self.count[u] -= 1;
            self.xor[u] ^= v;
        }
        self.steps += g.degree(v) as u64 + 1;
    }

    pub fn contains(&self, v: usize) -> bool {
        self.in_s[v]
    }

    pub fn len(&self) -> usize {
        self.size
    }

    pub fn is_empty(&self) -> bool {
        self.size == 0
    }

    pub fn stable_set(&self) -> NodeSet {
        (0..self.in_s.len()).filter(|&v| self.in_s[v]).collect()
    }

    /// Number of stable neighbors of `u`.
    pub fn stable_degree(&self, u: usize) -> usize {
        self.count[u] as usize
    }

    pub fn class(&self, u: usize) -> NodeClass {
        if self.in_s[u] {
            return NodeClass::Stable;
        }
        match self.count[u] {
            0 => NodeClass::Superfree,
            1 => NodeClass::Free,
            _ => NodeClass::Bound,
        }
    }

    pub fn is_free(&self, u: usize) -> bool {
        !self.in_s[u] && self.count[u] == 1
    }

    /// The stable neighbor `S(u)` of a free node.
    pub fn s_of(&self, u: usize) -> Option<usize> {
        self.is_free(u).then(|| self.xor[u])
    }

    pub fn free_nodes(&self) -> NodeSet {
        (0..self.in_s.len()).filter(|&u| self.is_free(u)).collect()
    }

    /// Adds every node without a stable neighbor, in ascending id order.
    pub fn extend_to_maximal(&mut self, g: &Graph) {
        for v in g.nodes() {
            self.steps += 1;
            if !self.in_s[v] && self.count[v] == 0 {
                self.insert(g, v);
            }
        }
    }

    pub fn is_maximal(&self) -> bool {
        (0..self.in_s.len()).all(|u| self.in_s[u] || self.count[u] > 0)
    }

    /// Elementary steps (neighbor visits and pair checks) spent so far.
    pub fn steps(&self) -> u64 {
        self.steps
    }

    pub fn history(&self) -> &[CanonicalMove] {
        &self.history
    }

    fn require_stable(&self, s: usize) -> Result<()> {
        if s < self.in_s.len() && self.in_s[s] {
            Ok(())
        } else {
            Err(Error::Input(format!("node {s} is not in the stable set")))
        }
    }

    /// Replaces `s` by its non-adjacent free neighbors `x` and `y`.
    pub fn augment(&mut self, g: &Graph, s: usize, x: usize, y: usize) -> Result<()> {
        self.require_stable(s)?;
        if self.s_of(x) != Some(s) || self.s_of(y) != Some(s) || g.has_edge(x, y) || x == y {
            return Err(Error::Input(format!(
                "({x}, {s}, {y}) is not an augmenting P3"
            )));
        }
        self.remove(g, s);
        self.insert(g, x);
        self.insert(g, y);
        self.history.push(CanonicalMove::Augment { s, x, y });
        Ok(())
    }

    /// Replaces `s` by a free neighbor `x`.
    pub fn alternate(&mut self, g: &Graph, s: usize, x: usize) -> Result<()> {
        self.require_stable(s)?;
        if self.s_of(x) != Some(s) {
            return Err(Error::Input(format!("{x} is not a free neighbor of {s}")));
        }
        self.remove(g, s);
        self.insert(g, x);
        self.history.push(CanonicalMove::Alternate { s, x });
        Ok(())
    }
}

/// Ascending-id greedy maximal stable set.
pub fn greedy_maximal_stable_set(g: &Graph) -> CanonicalState {
    let mut st = CanonicalState {
        in_s: vec![false; g.n()],
        count: vec![0; g.n()],
        xor: vec![0; g.n()],
        size: 0,
        steps: 0,
        history: Vec::new(),
    };
    for v in g.nodes() {
        st.steps += 1;
        if st.count[v] == 0 {
            st.insert(g, v);
        }
    }
    st
}

fn free_neighbors(g: &Graph, st: &mut CanonicalState, s: usize) -> Vec<usize> {
    st.steps += g.degree(s) as u64;
    g.neighbors(s)
        .iter()
        .copied()
        .filter(|&u| st.count[u] == 1)
        .collect()
}

/// Lexicographically first pair of non-adjacent free neighbors of `s`.
pub fn find_augmenting_p3(
    g: &Graph,
    st: &mut CanonicalState,
    s: usize,
) -> Result<Option<(usize, usize)>> {
    st.require_stable(s)?;
    let free = free_neighbors(g, st, s);
    for (i, &x) in free.iter().enumerate() {
        for &y in &free[i + 1..] {
            st.steps += 1;
            if !g.has_edge(x, y) {
                return Ok(Some((x, y)));
            }
        }
    }
    Ok(None)
}

/// Free neighbor `x` of `s` with `N[x] ⊋ N[s]`, of maximum degree (lowest
/// id on ties).
pub fn find_dominating_free(g: &Graph, st: &mut CanonicalState, s: usize) -> Result<Option<usize>> {
    st.require_stable(s)?;
    let mut cand = free_neighbors(g, st, s);
    // Strict containment needs a strictly larger closed neighborhood.
    cand.retain(|&x| g.degree(x) > g.degree(s));
    cand.sort_by_key(|&x| (std::cmp::Reverse(g.degree(x)), x));
    for x in cand {
        let mut dominates = true;
        for &u in g.neighbors(s) {
            st.steps += 1;
            if u != x && !g.has_edge(x, u) {
                dominates = false;
                break;
            }
        }
        if dominates {
            return Ok(Some(x));
        }
    }
    Ok(None)
}

/// Turns the maximal stable set of `st` into a canonical one: first every
/// seed node is checked once for an augmenting `P3`, then every node of the
/// resulting set once for a dominating free neighbor.
pub fn canonicalize(g: &Graph, mut st: CanonicalState) -> Result<CanonicalState> {
    if st.in_s.len() != g.n() {
        return Err(Error::Input("state belongs to a different graph".into()));
    }
    if let Some(u) = g.nodes().find(|&u| !st.in_s[u] && st.count[u] == 0) {
        return Err(Error::Input(format!(
            "stable set is not maximal: {u} has no stable neighbor"
        )));
    }
    let seed = st.stable_set();
    for s in seed.iter() {
        if !st.in_s[s] {
            continue;
        }
        if let Some((x, y)) = find_augmenting_p3(g, &mut st, s)? {
            st.augment(g, s, x, y)?;
        }
    }
    let after_augment = st.stable_set();
    for s in after_augment.iter() {
        if !st.in_s[s] {
            continue;
        }
        if let Some(x) = find_dominating_free(g, &mut st, s)? {
            st.alternate(g, s, x)?;
        }
    }
    Ok(st)
}

/// First stable node violating canonicity, if any. Work is not charged to
/// the step counter.
pub fn canonical_violation(g: &Graph, st: &CanonicalState) -> Option<usize> {
    let mut scratch = st.clone();
    st.stable_set().iter().find(|&s| {
        matches!(find_augmenting_p3(g, &mut scratch, s), Ok(Some(_)))
            || matches!(find_dominating_free(g, &mut scratch, s), Ok(Some(_)))
    })
}
