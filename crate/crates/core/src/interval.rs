//! Square elimination between consecutive layers of clique strips.
//!
//! For each consecutive pair `(K_i, K_{i+1})` the active sets
//! `A = K_i ∩ N(K_{i+1})` and `B = K_{i+1} ∩ N(K_i)` are processed in
//! stages. Each stage either retires a node of `A` universal to `B`, or adds
//! diagonals of squares so that the heaviest stable pair among the nodes
//! involved survives. The result has no square between consecutive layers
//! and keeps every maximum weight stable set value the solver needs.

use serde::Serialize;

use crate::decompose::CliqueStrip;
use crate::detect::semi_homogeneous_violation;
use crate::error::{Error, Result};
use crate::graph::{Graph, GraphBuilder, NodeSet, Weight};

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "action", rename_all = "snake_case")]
pub enum StageAction {
    /// `a` was universal to `B` and left `A`; `dropped` left `B`.
    Remove { a: usize, dropped: Vec<usize> },
    /// Square `a_max - b2 - b1 - a2` (diagonals `a_max b1`, `a2 b2`): one
    /// diagonal became an edge.
    KillC4 {
        a_max: usize,
        a2: usize,
        b1: usize,
        b2: usize,
        added: (usize, usize),
    },
    /// `a` was joined to all its non-neighbors in `B` except `spared`.
    KillDiags {
        a: usize,
        spared: usize,
        added: Vec<usize>,
    },
}

/// Stage machine for one consecutive pair of layers.
#[derive(Debug, Clone)]
pub struct EliminationState {
    a: Vec<usize>,
    b: Vec<usize>,
    a_alive: Vec<bool>,
    b_alive: Vec<bool>,
    /// Row-major `|A| x |B|` adjacency, current edges included.
    adj: Vec<bool>,
    d_a: Vec<usize>,
    d_b: Vec<usize>,
    a_left: usize,
    b_left: usize,
    added: Vec<(usize, usize)>,
}

impl EliminationState {
    pub fn new(g: &Graph, k: &NodeSet, next: &NodeSet) -> Self {
        let a: Vec<usize> = k
            .iter()
            .filter(|&u| g.neighbors(u).iter().any(|&v| next.contains(v)))
            .collect();
        let b: Vec<usize> = next
            .iter()
            .filter(|&v| g.neighbors(v).iter().any(|&u| k.contains(u)))
            .collect();
        let mut adj = vec![false; a.len() * b.len()];
        let mut d_a = vec![0; a.len()];
        let mut d_b = vec![0; b.len()];
        for (i, &u) in a.iter().enumerate() {
            for (j, &v) in b.iter().enumerate() {
                if g.has_edge(u, v) {
                    adj[i * b.len() + j] = true;
                    d_a[i] += 1;
                    d_b[j] += 1;
                }
            }
        }
        EliminationState {
            a_alive: vec![true; a.len()],
            b_alive: vec![true; b.len()],
            a_left: a.len(),
            b_left: b.len(),
            a,
            b,
            adj,
            d_a,
            d_b,
            added: Vec::new(),
        }
    }

    /// Active `A`.
    pub fn active_a(&self) -> NodeSet {
        self.a
            .iter()
            .zip(&self.a_alive)
            .filter(|p| *p.1)
            .map(|p| *p.0)
            .collect()
    }

    /// Active `B`.
    pub fn active_b(&self) -> NodeSet {
        self.b
            .iter()
            .zip(&self.b_alive)
            .filter(|p| *p.1)
            .map(|p| *p.0)
            .collect()
    }

    pub fn added(&self) -> &[(usize, usize)] {
        &self.added
    }

    pub fn is_done(&self) -> bool {
        self.a_left == 0
    }

    /// `d[a]` over the active `B`, for every active `a`.
    pub fn degrees(&self) -> Vec<(usize, usize)> {
        (0..self.a.len())
            .filter(|&i| self.a_alive[i])
            .map(|i| (self.a[i], self.d_a[i]))
            .collect()
    }

    fn edge(&self, i: usize, j: usize) -> bool {
        self.adj[i * self.b.len() + j]
    }

    fn add(&mut self, i: usize, j: usize) {
        debug_assert!(!self.edge(i, j));
        self.adj[i * self.b.len() + j] = true;
        self.d_a[i] += 1;
        self.d_b[j] += 1;
        self.added.push((self.a[i], self.b[j]));
    }

    /// Active non-neighbors of `A[i]` in `B`.
    fn non_neighbors(&self, i: usize) -> impl Iterator<Item = usize> + '_ {
        (0..self.b.len()).filter(move |&j| self.b_alive[j] && !self.edge(i, j))
    }

    fn kill_diags(&mut self, i: usize, w: &[Weight]) -> StageAction {
        let missing: Vec<usize> = self.non_neighbors(i).collect();
        // Heaviest non-neighbor is spared; lowest id on ties.
        let spared = *missing
            .iter()
            .max_by(|&&p, &&q| {
                w[self.b[p]]
                    .cmp(&w[self.b[q]])
                    .then(self.b[q].cmp(&self.b[p]))
            })
            .expect("at least two non-neighbors");
        let mut added = Vec::new();
        for &j in missing.iter().filter(|&&j| j != spared) {
            self.add(i, j);
            added.push(self.b[j]);
        }
        StageAction::KillDiags {
            a: self.a[i],
            spared: self.b[spared],
            added,
        }
    }

    /// Runs one stage; `None` once `A` is exhausted. `w` is indexed by node
    /// id.
    pub fn stage(&mut self, w: &[Weight]) -> Result<Option<StageAction>> {
        if self.a_left == 0 {
            return Ok(None);
        }
        let nb = self.b_left;
        let mut imax = usize::MAX;
        for i in (0..self.a.len()).filter(|&i| self.a_alive[i]) {
            if imax == usize::MAX || self.d_a[i] > self.d_a[imax] {
                imax = i;
            }
        }
        let dmax = self.d_a[imax];
        if dmax == nb {
            self.a_alive[imax] = false;
            self.a_left -= 1;
            let mut dropped = Vec::new();
            for j in 0..self.b.len() {
                if !self.b_alive[j] {
                    continue;
                }
                if self.edge(imax, j) {
                    self.d_b[j] -= 1;
                }
                if self.d_b[j] == 0 {
                    self.b_alive[j] = false;
                    self.b_left -= 1;
                    dropped.push(self.b[j]);
                }
            }
            return Ok(Some(StageAction::Remove {
                a: self.a[imax],
                dropped,
            }));
        }
        if dmax + 1 == nb {
            let j1 = self.non_neighbors(imax).next().expect("one non-neighbor");
            let Some(i2) = (0..self.a.len()).find(|&i| self.a_alive[i] && self.edge(i, j1)) else {
                return Err(Error::structure(
                    "node of B has no neighbor in A",
                    vec![self.b[j1], self.a[imax]],
                ));
            };
            if self.d_a[i2] + 1 == nb {
                let j2 = self.non_neighbors(i2).next().expect("one non-neighbor");
                let (a_max, a2, b1, b2) = (self.a[imax], self.a[i2], self.b[j1], self.b[j2]);
                let added = if w[a2] + w[b2] >= w[a_max] + w[b1] {
                    self.add(imax, j1);
                    (a_max, b1)
                } else {
                    self.add(i2, j2);
                    (a2, b2)
                };
                return Ok(Some(StageAction::KillC4 {
                    a_max,
                    a2,
                    b1,
                    b2,
                    added,
                }));
            }
            return Ok(Some(self.kill_diags(i2, w)));
        }
        Ok(Some(self.kill_diags(imax, w)))
    }
}

/// Log of one consecutive pair.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PairLog {
    pub strip: usize,
    /// Index of the first layer of the pair.
    pub layer: usize,
    pub actions: Vec<StageAction>,
}

/// Square-free supergraph of `G - X` restricted to the strips.
#[derive(Debug, Clone)]
pub struct IntervalGraph {
    /// Graph on the strip nodes, local ids ordered as in `to_parent`.
    pub graph: Graph,
    /// Local id -> id in the decomposed graph, ascending.
    pub to_parent: Vec<usize>,
    pub to_local: Vec<Option<usize>>,
    /// Added edges in decomposed-graph ids.
    pub added: Vec<(usize, usize)>,
    pub pairs: Vec<PairLog>,
}

impl IntervalGraph {
    pub fn stage_count(&self) -> usize {
        self.pairs.iter().map(|p| p.actions.len()).sum()
    }
}

/// Eliminates all squares between consecutive layers of `strips`.
pub fn interval_transform(g: &Graph, strips: &[CliqueStrip]) -> Result<IntervalGraph> {
    let mut added = Vec::new();
    let mut pairs = Vec::new();
    for (si, strip) in strips.iter().enumerate() {
        for (li, pair) in strip.windows(2).enumerate() {
            let mut st = EliminationState::new(g, &pair[0], &pair[1]);
            let mut actions = Vec::new();
            while let Some(action) = st.stage(g.weights())? {
                actions.push(action);
            }
            added.extend_from_slice(st.added());
            pairs.push(PairLog {
                strip: si,
                layer: li,
                actions,
            });
        }
    }
    let keep: NodeSet = strips.iter().flatten().flat_map(|k| k.iter()).collect();
    let sub = g.induced_subgraph(&keep)?;
    let mut b = GraphBuilder::new(keep.len());
    for v in sub.graph.nodes() {
        b.set_weight(v, sub.graph.weight(v))?;
    }
    for (u, v) in sub.graph.edges() {
        b.add_edge(u, v)?;
    }
    for &(u, v) in &added {
        let (lu, lv) = (sub.to_local[u], sub.to_local[v]);
        match (lu, lv) {
            (Some(lu), Some(lv)) => {
                if !b.add_edge(lu, lv)? {
                    return Err(Error::structure("added edge already present", vec![u, v]));
                }
            }
            _ => return Err(Error::structure("added edge leaves the strips", vec![u, v])),
        }
    }
    Ok(IntervalGraph {
        graph: b.build(),
        to_parent: sub.to_parent,
        to_local: sub.to_local,
        added,
        pairs,
    })
}

/// Why `({a1}, bbar)` fails to certify a stage.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CertificateViolation {
    /// A node distinguishing the pair.
    NotSemiHomogeneous(usize),
    /// `{a1, b}` is not a diagonal of any square.
    NotADiagonal(usize),
}

/// Checks that `({a1}, bbar)` is a semi-homogeneous pair in `g` and that
/// every `{a1, b}`, `b ∈ bbar`, is a diagonal of some square of `g`.
pub fn semi_homog_pair_certificate(
    g: &Graph,
    a1: usize,
    bbar: &NodeSet,
) -> Option<CertificateViolation> {
    let single = NodeSet::from_vec(vec![a1]);
    if let Some(u) = semi_homogeneous_violation(g, &single, bbar) {
        return Some(CertificateViolation::NotSemiHomogeneous(u));
    }
    for b in bbar.iter() {
        let common: Vec<usize> = g
            .neighbors(a1)
            .iter()
            .copied()
            .filter(|&u| g.has_edge(u, b))
            .collect();
        if g.has_edge(a1, b) || g.is_clique(&common) {
            return Some(CertificateViolation::NotADiagonal(b));
        }
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::detect::{find_claw, find_square_in};

    fn set(v: &[usize]) -> NodeSet {
        NodeSet::from_vec(v.to_vec())
    }

    /// Exhaustive maximum weight stable set, independent of the solver.
    fn brute_alpha(g: &Graph) -> Weight {
        let n = g.n();
        (0u32..1 << n)
            .filter(|&mask| {
                (0..n).all(|u| {
                    mask >> u & 1 == 0 || g.neighbors(u).iter().all(|&v| mask >> v & 1 == 0)
                })
            })
            .map(|mask| {
                (0..n)
                    .filter(|&u| mask >> u & 1 == 1)
                    .map(|u| g.weight(u))
                    .sum()
            })
            .max()
            .unwrap_or(0)
    }

    #[test]
    fn universal_pair_adds_nothing() {
        let g = Graph::from_edges(4, [(0, 1), (2, 3), (0, 2), (0, 3), (1, 2), (1, 3)]).unwrap();
        let out = interval_transform(&g, &[vec![set(&[0, 1]), set(&[2, 3])]]).unwrap();
        assert!(out.added.is_empty());
        assert!(out.pairs[0]
            .actions
            .iter()
            .all(|a| matches!(a, StageAction::Remove { .. })));
        assert_eq!(out.graph, g);
    }

    #[test]
    fn single_square_keeps_heaviest_pair() {
        // a1 = 0, a2 = 1, b1 = 2, b2 = 3: a1 misses b1, a2 misses b2.
        let g = Graph::from_edges(4, [(0, 1), (2, 3), (0, 3), (1, 2)])
            .unwrap()
            .with_weights(vec![5, 3, 4, 2])
            .unwrap();
        let out = interval_transform(&g, &[vec![set(&[0, 1]), set(&[2, 3])]]).unwrap();
        assert_eq!(out.added, vec![(1, 3)]);
        assert!(matches!(
            out.pairs[0].actions[0],
            StageAction::KillC4 { added: (1, 3), .. }
        ));
        assert_eq!(brute_alpha(&g), 9);
        assert_eq!(brute_alpha(&out.graph), 9);
        assert!(find_square_in(&out.graph, &set(&[0, 1]), &set(&[2, 3]))
            .unwrap()
            .is_none());
    }

    #[test]
    fn kill_diags_spares_heaviest() {
        // a_max = 1 misses 5, whose neighbor 0 misses 2, 3, 4 of weights
        // 2, 7, 2.
        let g = diags_fixture()
            .with_weights(vec![1, 1, 2, 7, 2, 1])
            .unwrap();
        assert!(find_claw(&g).is_none());
        let before = brute_alpha(&g);
        let out = interval_transform(&g, &[vec![set(&[0, 1]), set(&[2, 3, 4, 5])]]).unwrap();
        let first_diags = out.pairs[0]
            .actions
            .iter()
            .find_map(|a| match a {
                StageAction::KillDiags { a, spared, added } => Some((*a, *spared, added.clone())),
                _ => None,
            })
            .unwrap();
        assert_eq!(first_diags, (0, 3, vec![2, 4]));
        assert_eq!(brute_alpha(&out.graph), before);
    }

    #[test]
    fn stage_cases() {
        let g = Graph::from_edges(4, [(0, 1), (2, 3), (0, 2), (0, 3), (1, 2)]).unwrap();
        let mut st = EliminationState::new(&g, &set(&[0, 1]), &set(&[2, 3]));
        assert!(matches!(
            st.stage(g.weights()).unwrap(),
            Some(StageAction::Remove { a: 0, .. })
        ));

        let sq = Graph::from_edges(4, [(0, 1), (2, 3), (0, 3), (1, 2)]).unwrap();
        let mut st = EliminationState::new(&sq, &set(&[0, 1]), &set(&[2, 3]));
        assert!(matches!(
            st.stage(sq.weights()).unwrap(),
            Some(StageAction::KillC4 { .. })
        ));
        let mut stages = 1;
        while st.stage(sq.weights()).unwrap().is_some() {
            stages += 1;
        }
        assert!(stages <= 3 * 2);
        assert!(st.is_done());
    }

    /// A = {0, 1}, B = {2, 3, 4, 5}; 0 sees only 5, 1 sees 2, 3, 4.
    fn diags_fixture() -> Graph {
        let mut edges = vec![(0, 1), (0, 5), (1, 2), (1, 3), (1, 4)];
        for (u, v) in [(2, 3), (2, 4), (2, 5), (3, 4), (3, 5), (4, 5)] {
            edges.push((u, v));
        }
        Graph::from_edges(6, edges).unwrap()
    }

    #[test]
    fn kill_diags_certificate() {
        let g = diags_fixture();
        // (iii-a): a_max = 1 misses 5 only, a1 = 0 is adjacent to 5.
        assert_eq!(semi_homog_pair_certificate(&g, 0, &set(&[2, 3, 4])), None);
        // (iii-b): A = {0, 1}, B = {2, 3, 4, 5}, 0 sees 2, 3 and 1 sees
        // 4, 5, so a_max = 0 has two non-neighbors.
        let mut edges = vec![(0, 1), (0, 2), (0, 3), (1, 4), (1, 5)];
        for (u, v) in [(2, 3), (2, 4), (2, 5), (3, 4), (3, 5), (4, 5)] {
            edges.push((u, v));
        }
        let k = Graph::from_edges(6, edges).unwrap();
        let mut st = EliminationState::new(&k, &set(&[0, 1]), &set(&[2, 3, 4, 5]));
        assert_eq!(st.degrees(), vec![(0, 2), (1, 2)]);
        let action = st.stage(k.weights()).unwrap().unwrap();
        assert!(matches!(action, StageAction::KillDiags { a: 0, .. }));
        assert_eq!(semi_homog_pair_certificate(&k, 0, &set(&[4, 5])), None);

        // 6 hangs off 2 alone and distinguishes the pair.
        let mut edges: Vec<(usize, usize)> = g.edges().collect();
        edges.push((2, 6));
        let h = Graph::from_edges(7, edges).unwrap();
        assert_eq!(
            semi_homog_pair_certificate(&h, 0, &set(&[2, 3, 4])),
            Some(CertificateViolation::NotSemiHomogeneous(6))
        );
        assert_eq!(
            semi_homog_pair_certificate(&g, 0, &set(&[5])),
            Some(CertificateViolation::NotADiagonal(5))
        );
    }

    #[test]
    fn claws_not_created() {
        let g = Graph::from_edges(4, [(0, 1), (2, 3), (0, 3), (1, 2)]).unwrap();
        let out = interval_transform(&g, &[vec![set(&[0, 1]), set(&[2, 3])]]).unwrap();
        assert!(find_claw(&out.graph).is_none());
    }
}
