//! Twin reduction. Twins `u, v` satisfy `N(u) \ {v} = N(v) \ {u}`; adjacent
//! twins keep the heavier node, non-adjacent twins merge their weights onto
//! one survivor. Neither changes the maximum stable set weight.

use crate::error::Result;
use crate::graph::{Graph, NodeSet, Weight};

/// Partition of `0..n` supporting refinement by arbitrary subsets.
struct Partition {
    order: Vec<usize>,
    pos: Vec<usize>,
    class_of: Vec<usize>,
    start: Vec<usize>,
    end: Vec<usize>,
    moved: Vec<usize>,
}

impl Partition {
    fn new(n: usize) -> Self {
        Partition {
            order: (0..n).collect(),
            pos: (0..n).collect(),
            class_of: vec![0; n],
            start: vec![0],
            end: vec![n],
            moved: vec![0],
        }
    }

    /// Splits every class `C` into `C ∩ set` and `C \ set`.
    fn refine(&mut self, set: impl Iterator<Item = usize>, touched: &mut Vec<usize>) {
        touched.clear();
        for x in set {
            let c = self.class_of[x];
            if self.moved[c] == 0 {
                touched.push(c);
            }
            let target = self.start[c] + self.moved[c];
            let px = self.pos[x];
            let y = self.order[target];
            self.order.swap(px, target);
            self.pos[x] = target;
            self.pos[y] = px;
            self.moved[c] += 1;
        }
        for &c in touched.iter() {
            let k = self.moved[c];
            self.moved[c] = 0;
            if k == self.end[c] - self.start[c] {
                continue;
            }
            let nc = self.start.len();
            self.start.push(self.start[c]);
            self.end.push(self.start[c] + k);
            self.moved.push(0);
            self.start[c] += k;
            for i in self.start[nc]..self.end[nc] {
                self.class_of[self.order[i]] = nc;
            }
        }
    }

    fn classes(&self) -> impl Iterator<Item = &[usize]> {
        self.start
            .iter()
            .zip(&self.end)
            .map(move |(&s, &e)| &self.order[s..e])
    }
}

/// Classes of nodes with identical open (`closed == false`) or closed
/// neighborhoods, singletons omitted. Each class is sorted.
pub fn twin_classes(g: &Graph, closed: bool) -> Vec<Vec<usize>> {
    let mut p = Partition::new(g.n());
    let mut touched = Vec::new();
    for x in g.nodes() {
        if closed {
            p.refine(
                g.neighbors(x).iter().copied().chain(std::iter::once(x)),
                &mut touched,
            );
        } else {
            p.refine(g.neighbors(x).iter().copied(), &mut touched);
        }
    }
    let mut out: Vec<Vec<usize>> = p
        .classes()
        .filter(|c| c.len() > 1)
        .map(|c| {
            let mut c = c.to_vec();
            c.sort_unstable();
            c
        })
        .collect();
    out.sort();
    out
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TwinStep {
    /// `removed` was adjacent to `survivor` and no heavier.
    Dropped { removed: usize, survivor: usize },
    /// `removed` was non-adjacent to `survivor`, whose weight absorbed it.
    Merged { removed: usize, survivor: usize },
}

/// Record of a twin reduction, in the ids of the input graph.
#[derive(Debug, Clone, Default)]
pub struct TwinLog {
    /// Reduced id -> input id.
    pub kept: Vec<usize>,
    pub steps: Vec<TwinStep>,
}

impl TwinLog {
    /// Maps a stable set of the reduced graph back to the input graph with
    /// the same total weight.
    pub fn lift(&self, reduced: &NodeSet) -> NodeSet {
        let mut inside = vec![false; self.input_size()];
        for v in reduced.iter() {
            inside[self.kept[v]] = true;
        }
        for step in self.steps.iter().rev() {
            if let TwinStep::Merged { removed, survivor } = *step {
                if inside[survivor] {
                    inside[removed] = true;
                }
            }
        }
        inside
            .iter()
            .enumerate()
            .filter_map(|(v, &b)| b.then_some(v))
            .collect()
    }

    fn input_size(&self) -> usize {
        let from_steps = self.steps.iter().map(|s| match *s {
            TwinStep::Dropped { removed, survivor } | TwinStep::Merged { removed, survivor } => {
                removed.max(survivor)
            }
        });
        self.kept
            .iter()
            .copied()
            .chain(from_steps)
            .max()
            .map_or(0, |m| m + 1)
    }
}

/// Removes twins until none remain.
pub fn remove_twins(g: &Graph) -> Result<(Graph, TwinLog)> {
    let mut current = g.clone();
    let mut ids: Vec<usize> = g.nodes().collect();
    let mut steps = Vec::new();
    loop {
        let n = current.n();
        let mut weight: Vec<Weight> = current.weights().to_vec();
        let mut alive = vec![true; n];
        let mut changed = false;
        for class in twin_classes(&current, false) {
            let survivor = class[0];
            for &u in &class[1..] {
                weight[survivor] += weight[u];
                alive[u] = false;
                steps.push(TwinStep::Merged {
                    removed: ids[u],
                    survivor: ids[survivor],
                });
                changed = true;
            }
        }
        for class in twin_classes(&current, true) {
            // Heaviest node survives; lowest id on ties.
            let survivor = *class
                .iter()
                .max_by(|&&a, &&b| weight[a].cmp(&weight[b]).then(b.cmp(&a)))
                .unwrap();
            for &u in class.iter().filter(|&&u| u != survivor) {
                alive[u] = false;
                steps.push(TwinStep::Dropped {
                    removed: ids[u],
                    survivor: ids[survivor],
                });
                changed = true;
            }
        }
        if !changed {
            break;
        }
        let keep: NodeSet = (0..n).filter(|&v| alive[v]).collect();
        let sub = current.induced_subgraph(&keep)?;
        let new_weights = keep.iter().map(|v| weight[v]).collect();
        ids = keep.iter().map(|v| ids[v]).collect();
        current = sub.graph.with_weights(new_weights)?;
    }
    Ok((current, TwinLog { kept: ids, steps }))
}

/// Quadratic recheck used by tests: first twin pair, if any.
pub fn find_twin_pair(g: &Graph) -> Option<(usize, usize)> {
    for u in g.nodes() {
        for v in u + 1..g.n() {
            let nu = g.neighbors(u).iter().filter(|&&x| x != v);
            let nv = g.neighbors(v).iter().filter(|&&x| x != u);
            if nu.eq(nv) {
                return Some((u, v));
            }
        }
    }
    None
}
