//! End-to-end maximum weight stable set: preprocessing, the `α ≤ 3`
//! fallback, and the strip pipeline for components with a stable set of
//! size four.

use serde::Serialize;

use crate::canonical::{canonicalize, CanonicalState};
use crate::decompose::{decompose, CliqueStrip, DecomposeOptions, Decomposition};
use crate::error::{Error, Result};
use crate::graph::{Graph, NodeSet, Weight};
use crate::interval::{interval_transform, IntervalGraph};
use crate::order::{consistent_order, mwss_on_order, ConsistentOrder};
use crate::twins::{remove_twins, TwinLog};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Route {
    /// No stable set of size four: exhaustive search over sets of size ≤ 3.
    Alpha3Fallback,
    /// Canonical set, strips, square elimination and interval recurrences.
    StripPipeline,
    /// Several components solved independently and summed.
    ComponentMerge,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Solution {
    pub value: Weight,
    pub set: NodeSet,
    pub route: Route,
}

#[derive(Debug, Clone, Copy, Default)]
pub struct SolveOptions {
    pub decompose: DecomposeOptions,
    /// Keep per-component artifacts in [`SolveTrace`].
    pub keep_trace: bool,
}

/// Everything the strip pipeline computed for one connected, twin-free
/// component. Node ids are those of `graph`.
#[derive(Debug, Clone)]
pub struct PipelineRun {
    pub graph: Graph,
    /// Stable set of size four the canonical set was grown from.
    pub seed: NodeSet,
    pub canonical: CanonicalState,
    pub decomposition: Decomposition,
    /// Square-free supergraph of the strips.
    pub interval: IntervalGraph,
    /// Strips in ids of `interval.graph`.
    pub local_strips: Vec<CliqueStrip>,
    /// Consistent order of `interval.graph`.
    pub order: ConsistentOrder,
    /// Number of recurrence passes, `|X| + 1`.
    pub dp_passes: usize,
    /// Node of `X` in the optimum, if any.
    pub chosen_x: Option<usize>,
    pub value: Weight,
    pub set: NodeSet,
}

#[derive(Debug, Clone)]
pub struct ComponentTrace {
    /// Component nodes in ids of the reduced graph.
    pub nodes: NodeSet,
    pub route: Route,
    pub value: Weight,
    pub run: Option<PipelineRun>,
}

/// Preprocessing and per-component record of a [`solve_with`] call.
#[derive(Debug, Clone)]
pub struct SolveTrace {
    /// Input nodes with positive weight, ascending.
    pub positive: NodeSet,
    /// Twin reduction of the positive part (ids relative to `positive`).
    pub twins: TwinLog,
    /// Twin-free graph the components are taken from.
    pub reduced: Graph,
    pub components: Vec<ComponentTrace>,
}

/// Small dense bitset used by the enumeration routines.
struct Bits(Vec<u64>);

impl Bits {
    fn new(n: usize) -> Self {
        Bits(vec![0; n.div_ceil(64)])
    }

    fn set(&mut self, v: usize) {
        self.0[v / 64] |= 1 << (v % 64);
    }

    fn and(&self, other: &Bits) -> Bits {
        Bits(self.0.iter().zip(&other.0).map(|(a, b)| a & b).collect())
    }

    /// Elements strictly greater than `v`.
    fn above(&self, v: usize) -> impl Iterator<Item = usize> + '_ {
        let start = v + 1;
        self.0
            .iter()
            .enumerate()
            .skip(start / 64)
            .flat_map(move |(i, &word)| {
                let word = if i == start / 64 {
                    word & (!0u64).checked_shl((start % 64) as u32).unwrap_or(0)
                } else {
                    word
                };
                let mut rest = word;
                std::iter::from_fn(move || {
                    if rest == 0 {
                        return None;
                    }
                    let b = rest.trailing_zeros() as usize;
                    rest &= rest - 1;
                    Some(i * 64 + b)
                })
            })
    }
}

fn non_adjacency(g: &Graph) -> Vec<Bits> {
    g.nodes()
        .map(|v| {
            let mut row = Bits::new(g.n());
            let mut nb = g.neighbors(v).iter().peekable();
            for u in g.nodes() {
                if nb.peek() == Some(&&u) {
                    nb.next();
                } else if u != v {
                    row.set(u);
                }
            }
            row
        })
        .collect()
}

/// A stable set of size four, or `None` when `α(g) ≤ 3`. Tries the greedy
/// maximal stable set first, then enumerates stable triples.
pub fn find_stable4(g: &Graph) -> Option<NodeSet> {
    let greedy = crate::canonical::greedy_maximal_stable_set(g).stable_set();
    if greedy.len() >= 4 {
        return Some(greedy.iter().take(4).collect());
    }
    let rows = non_adjacency(g);
    for u in g.nodes() {
        for v in rows[u].above(u) {
            let uv = rows[u].and(&rows[v]);
            for x in uv.above(v) {
                if let Some(y) = uv.and(&rows[x]).above(x).next() {
                    return Some(NodeSet::from_vec(vec![u, v, x, y]));
                }
            }
        }
    }
    None
}

/// Exact optimum over all stable sets of size at most three; correct
/// whenever `α(g) ≤ 3`. Among optima the lexicographically smallest set is
/// returned.
pub fn alpha3_fallback(g: &Graph) -> Solution {
    let rows = non_adjacency(g);
    let w = g.weights();
    let mut best = (0, Vec::new());
    let mut offer = |value: Weight, set: &[usize]| {
        if value > best.0 {
            best = (value, set.to_vec());
        }
    };
    for u in g.nodes() {
        offer(w[u], &[u]);
        for v in rows[u].above(u) {
            offer(w[u] + w[v], &[u, v]);
            let uv = rows[u].and(&rows[v]);
            for x in uv.above(v) {
                offer(w[u] + w[v] + w[x], &[u, v, x]);
            }
        }
    }
    Solution {
        value: best.0,
        set: NodeSet::from_vec(best.1),
        route: Route::Alpha3Fallback,
    }
}

/// Runs the strip pipeline on a connected twin-free graph with positive
/// weights, starting from a stable set of size four.
pub fn run_pipeline(g: &Graph, seed: &NodeSet, opts: DecomposeOptions) -> Result<PipelineRun> {
    let mut st = CanonicalState::new(g, seed)?;
    st.extend_to_maximal(g);
    let st = canonicalize(g, st)?;
    let d = decompose(g, &st, opts)?;
    let ig = interval_transform(g, &d.strips)?;
    let local_strips: Vec<CliqueStrip> = d
        .strips
        .iter()
        .map(|strip| {
            strip
                .iter()
                .map(|k| {
                    k.iter()
                        .map(|v| ig.to_local[v].expect("strip node in interval graph"))
                        .collect()
                })
                .collect()
        })
        .collect();
    let co = consistent_order(&ig.graph, &local_strips)?;
    let lw = ig.graph.weights();
    let to_parent = |set: &NodeSet| -> NodeSet { set.iter().map(|v| ig.to_parent[v]).collect() };

    let (value, local) = mwss_on_order(&co, lw, &NodeSet::new());
    let mut best = (value, to_parent(&local), None);
    for v in d.x.iter() {
        let excluded: NodeSet = g
            .closed_neighbors(v)
            .iter()
            .filter_map(|u| ig.to_local[u])
            .collect();
        let (value, local) = mwss_on_order(&co, lw, &excluded);
        let mut set = to_parent(&local);
        set.insert(v);
        let value = value + g.weight(v);
        if value > best.0 || (value == best.0 && set < best.1) {
            best = (value, set, Some(v));
        }
    }
    let dp_passes = d.x.len() + 1;
    Ok(PipelineRun {
        graph: g.clone(),
        seed: seed.clone(),
        canonical: st,
        decomposition: d,
        interval: ig,
        local_strips,
        order: co,
        dp_passes,
        chosen_x: best.2,
        value: best.0,
        set: best.1,
    })
}

/// Maximum weight stable set of a claw-free, net-free graph.
pub fn solve(g: &Graph) -> Result<Solution> {
    solve_with(g, SolveOptions::default()).map(|(s, _)| s)
}

/// [`solve`] with options; the trace is returned when requested.
pub fn solve_with(g: &Graph, opts: SolveOptions) -> Result<(Solution, Option<SolveTrace>)> {
    let positive: NodeSet = g.nodes().filter(|&v| g.weight(v) > 0).collect();
    let sub = g.induced_subgraph(&positive)?;
    let (reduced, twins) = remove_twins(&sub.graph)?;
    let comps = reduced.connected_components();
    let mut reduced_set = NodeSet::new();
    let mut value = 0;
    let mut traces = Vec::new();
    let mut routes = Vec::new();
    for nodes in comps {
        let part = reduced.induced_subgraph(&nodes)?;
        let h = &part.graph;
        let (sol, run) = match find_stable4(h) {
            None => (alpha3_fallback(h), None),
            Some(seed) => {
                let run = run_pipeline(h, &seed, opts.decompose)?;
                let sol = Solution {
                    value: run.value,
                    set: run.set.clone(),
                    route: Route::StripPipeline,
                };
                (sol, opts.keep_trace.then_some(run))
            }
        };
        value += sol.value;
        reduced_set = reduced_set.union(&part.lift(&sol.set));
        routes.push(sol.route);
        if opts.keep_trace {
            traces.push(ComponentTrace {
                nodes,
                route: sol.route,
                value: sol.value,
                run,
            });
        }
    }
    let set = sub.lift(&twins.lift(&reduced_set));
    if !g.is_stable(set.as_slice()) || g.total_weight(&set) != value {
        return Err(Error::structure(
            "assembled set fails re-validation",
            set.into_vec(),
        ));
    }
    let route = match routes.as_slice() {
        [single] => *single,
        [] => Route::Alpha3Fallback,
        _ => Route::ComponentMerge,
    };
    let trace = opts.keep_trace.then(|| SolveTrace {
        positive,
        twins,
        reduced,
        components: traces,
    });
    Ok((Solution { value, set, route }, trace))
}
