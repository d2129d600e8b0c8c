//! Consistent orderings of square-free clique strips and the linear-time
//! weighted stable set recurrence on them.
//!
//! An order `v_1, ..., v_n` is consistent when `v_i v_k ∈ E` implies
//! `v_j v_k ∈ E` for every `i < j < k`; the earlier neighbors of each node
//! then form a contiguous block just before it.

use serde::Serialize;

use crate::decompose::CliqueStrip;
use crate::detect::{PatternKind, PatternWitness};
use crate::error::{Error, Result};
use crate::graph::{Graph, NodeSet, Weight};

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ConsistentOrder {
    pub order: Vec<usize>,
    #[serde(skip)]
    pub pos: Vec<usize>,
    /// Position of the earliest earlier neighbor of `order[k]`, or `k` if it
    /// has none.
    #[serde(skip)]
    pub first_prev: Vec<usize>,
}

impl ConsistentOrder {
    /// Wraps an arbitrary permutation of the nodes of `g`, without checking
    /// consistency.
    pub fn from_sequence(g: &Graph, order: Vec<usize>) -> Result<Self> {
        let mut pos = vec![usize::MAX; g.n()];
        for (k, &v) in order.iter().enumerate() {
            g.check_node(v)?;
            if pos[v] != usize::MAX {
                return Err(Error::Input(format!("node {v} repeated in order")));
            }
            pos[v] = k;
        }
        if order.len() != g.n() {
            return Err(Error::Input(format!(
                "order covers {} of {} nodes",
                order.len(),
                g.n()
            )));
        }
        let first_prev = order
            .iter()
            .enumerate()
            .map(|(k, &v)| {
                g.neighbors(v)
                    .iter()
                    .map(|&u| pos[u])
                    .filter(|&p| p < k)
                    .min()
                    .unwrap_or(k)
            })
            .collect();
        Ok(ConsistentOrder {
            order,
            pos,
            first_prev,
        })
    }

    pub fn len(&self) -> usize {
        self.order.len()
    }

    pub fn is_empty(&self) -> bool {
        self.order.is_empty()
    }
}

/// Orders the nodes of `gbar` strip by strip, layer by layer, and inside a
/// layer by increasing number of neighbors in the next layer (ties by id).
/// Strips must be mutually null and cover `gbar`.
pub fn consistent_order(gbar: &Graph, strips: &[CliqueStrip]) -> Result<ConsistentOrder> {
    let mut order = Vec::with_capacity(gbar.n());
    for strip in strips {
        for (t, k) in strip.iter().enumerate() {
            let next = strip.get(t + 1);
            let forward = |v: usize| match next {
                Some(nk) => gbar
                    .neighbors(v)
                    .iter()
                    .filter(|&&u| nk.contains(u))
                    .count(),
                None => 0,
            };
            let mut layer: Vec<(usize, usize)> = k.iter().map(|v| (forward(v), v)).collect();
            layer.sort_unstable();
            if let Some(nk) = next {
                for pair in layer.windows(2) {
                    let (h, k) = (pair[0].1, pair[1].1);
                    let only_h = gbar
                        .neighbors(h)
                        .iter()
                        .copied()
                        .find(|&b| nk.contains(b) && !gbar.has_edge(k, b));
                    if let Some(b1) = only_h {
                        let b2 = gbar
                            .neighbors(k)
                            .iter()
                            .copied()
                            .find(|&b| nk.contains(b) && !gbar.has_edge(h, b))
                            .expect("larger neighborhood not nested");
                        return Err(Error::structure(
                            format!(
                                "layer neighborhoods are not nested: {}",
                                PatternWitness::new(PatternKind::Square, vec![h, b1, b2, k])
                            ),
                            vec![h, b1, b2, k],
                        ));
                    }
                }
            }
            order.extend(layer.into_iter().map(|(_, v)| v));
        }
    }
    ConsistentOrder::from_sequence(gbar, order)
}

/// Exhaustive check; returns the first `(v_i, v_j, v_k)` with `v_i v_k` an
/// edge and `v_j v_k` not.
pub fn verify_consistent(g: &Graph, co: &ConsistentOrder) -> Option<(usize, usize, usize)> {
    for (k, &vk) in co.order.iter().enumerate() {
        let mut earlier: Vec<usize> = g
            .neighbors(vk)
            .iter()
            .map(|&u| co.pos[u])
            .filter(|&p| p < k)
            .collect();
        earlier.sort_unstable();
        for &i in &earlier {
            for j in i + 1..k {
                if !g.has_edge(co.order[j], vk) {
                    return Some((co.order[i], co.order[j], vk));
                }
            }
        }
    }
    None
}

/// Maximum weight stable set of `g - excluded` along a consistent order.
/// On equal values a node is left out.
pub fn mwss_on_order(co: &ConsistentOrder, w: &[Weight], excluded: &NodeSet) -> (Weight, NodeSet) {
    let n = co.len();
    let mut skip = vec![false; n];
    for v in excluded.iter() {
        if let Some(&p) = co.pos.get(v) {
            if p != usize::MAX {
                skip[p] = true;
            }
        }
    }
    let mut best: Vec<Weight> = vec![0; n + 1];
    let mut take = vec![false; n];
    for k in 0..n {
        best[k + 1] = best[k];
        if skip[k] {
            continue;
        }
        let with = w[co.order[k]] + best[co.first_prev[k]];
        if with > best[k] {
            best[k + 1] = with;
            take[k] = true;
        }
    }
    let mut set = Vec::new();
    let mut k = n;
    while k > 0 {
        if take[k - 1] {
            set.push(co.order[k - 1]);
            k = co.first_prev[k - 1];
        } else {
            k -= 1;
        }
    }
    (best[n], NodeSet::from_vec(set))
}
