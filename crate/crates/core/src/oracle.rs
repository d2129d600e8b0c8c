//! Exact maximum weight stable set by brute force, used as ground truth on
//! small graphs.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::{Graph, NodeSet, Weight};

/// Default refusal threshold for [`oracle_mwss`].
pub const DEFAULT_LIMIT: usize = 64;
/// Absolute size cap of the bitset representation.
pub const HARD_LIMIT: usize = 128;
/// Largest graph [`enumerate_mwss`] accepts.
pub const ENUMERATION_LIMIT: usize = 24;
/// Environment variable overriding [`DEFAULT_LIMIT`].
pub const LIMIT_ENV: &str = "MWSS_ORACLE_LIMIT";

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct StableSet {
    pub value: Weight,
    pub set: NodeSet,
}

/// Size limit in effect: `MWSS_ORACLE_LIMIT` if set and valid, else the
/// default.
pub fn configured_limit() -> usize {
    std::env::var(LIMIT_ENV)
        .ok()
        .and_then(|s| s.trim().parse().ok())
        .unwrap_or(DEFAULT_LIMIT)
}

fn bits(set: u128) -> impl Iterator<Item = usize> {
    let mut rest = set;
    std::iter::from_fn(move || {
        if rest == 0 {
            return None;
        }
        let v = rest.trailing_zeros() as usize;
        rest &= rest - 1;
        Some(v)
    })
}

struct BranchAndBound<'g> {
    g: &'g Graph,
    adj: Vec<u128>,
    best: Weight,
    best_set: u128,
}

impl BranchAndBound<'_> {
    /// Sum over a greedy clique cover of `cand` of the heaviest member.
    fn bound(&self, mut cand: u128) -> Weight {
        let mut total = 0;
        while cand != 0 {
            let v = cand.trailing_zeros() as usize;
            let mut clique_cand = cand & self.adj[v];
            let mut heaviest = self.g.weight(v);
            cand &= !(1u128 << v);
            while clique_cand != 0 {
                let u = clique_cand.trailing_zeros() as usize;
                clique_cand &= self.adj[u];
                cand &= !(1u128 << u);
                heaviest = heaviest.max(self.g.weight(u));
            }
            total += heaviest;
        }
        total
    }

    fn search(&mut self, cand: u128, value: Weight, chosen: u128) {
        if cand == 0 {
            if value > self.best {
                self.best = value;
                self.best_set = chosen;
            }
            return;
        }
        if value + self.bound(cand) <= self.best {
            return;
        }
        let (v, deg) = bits(cand)
            .map(|v| (v, (self.adj[v] & cand).count_ones()))
            .max_by(|a, b| a.1.cmp(&b.1).then(b.0.cmp(&a.0)))
            .expect("non-empty candidates");
        if deg == 0 {
            let w: Weight = bits(cand).map(|u| self.g.weight(u)).sum();
            self.search(0, value + w, chosen | cand);
            return;
        }
        let bit = 1u128 << v;
        self.search(
            cand & !bit & !self.adj[v],
            value + self.g.weight(v),
            chosen | bit,
        );
        self.search(cand & !bit, value, chosen);
    }
}

/// Branch and bound with max-degree branching and clique-cover bounds.
/// Refuses graphs above `limit` nodes (and always above [`HARD_LIMIT`]).
pub fn oracle_mwss_with_limit(g: &Graph, limit: usize) -> Result<StableSet> {
    let limit = limit.min(HARD_LIMIT);
    if g.n() > limit {
        return Err(Error::OracleLimit { n: g.n(), limit });
    }
    let adj: Vec<u128> = g
        .nodes()
        .map(|v| {
            g.neighbors(v)
                .iter()
                .fold(0u128, |acc, &u| acc | 1u128 << u)
        })
        .collect();
    let positive = g
        .nodes()
        .filter(|&v| g.weight(v) > 0)
        .fold(0u128, |acc, v| acc | 1u128 << v);
    let mut bb = BranchAndBound {
        g,
        adj,
        best: 0,
        best_set: 0,
    };
    bb.search(positive, 0, 0);
    Ok(StableSet {
        value: bb.best,
        set: bits(bb.best_set).collect(),
    })
}

/// [`oracle_mwss_with_limit`] with the configured limit.
pub fn oracle_mwss(g: &Graph) -> Result<StableSet> {
    oracle_mwss_with_limit(g, configured_limit())
}

/// Visits every stable set; the independent cross-check for the branch and
/// bound. Only for graphs with at most [`ENUMERATION_LIMIT`] nodes.
pub fn enumerate_mwss(g: &Graph) -> Result<StableSet> {
    if g.n() > ENUMERATION_LIMIT {
        return Err(Error::OracleLimit {
            n: g.n(),
            limit: ENUMERATION_LIMIT,
        });
    }
    fn walk(
        g: &Graph,
        v: usize,
        chosen: &mut Vec<usize>,
        value: Weight,
        best: &mut (Weight, Vec<usize>),
    ) {
        if v == g.n() {
            if value > best.0 {
                *best = (value, chosen.clone());
            }
            return;
        }
        if chosen.iter().all(|&u| !g.has_edge(u, v)) {
            chosen.push(v);
            walk(g, v + 1, chosen, value + g.weight(v), best);
            chosen.pop();
        }
        walk(g, v + 1, chosen, value, best);
    }
    let mut best = (0, Vec::new());
    walk(g, 0, &mut Vec::new(), 0, &mut best);
    Ok(StableSet {
        value: best.0,
        set: NodeSet::from_vec(best.1),
    })
}
