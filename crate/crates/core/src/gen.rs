//! Seeded generators of claw-free, net-free instances.
//!
//! All randomness comes from a `ChaCha8Rng` seeded with [`GenSpec::seed`],
//! so equal specs give identical graphs.

use rand::seq::{IndexedRandom, SliceRandom};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rustc_hash::FxHashSet;
use serde::{Deserialize, Serialize};

use crate::detect::{find_claw, find_net};
use crate::error::{Error, Result};
use crate::graph::{Graph, GraphBuilder, Weight};
use crate::solver::find_stable4;

/// Name of the generator recorded in file headers.
pub const RNG_NAME: &str = "chacha8";
/// Largest graph [`gen_rejection`] accepts.
pub const REJECTION_LIMIT: usize = 24;
const MAX_RESEEDS: usize = 64;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum GenMode {
    StripBuild,
    Rejection,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", tag = "regime")]
pub enum WeightRegime {
    Unit,
    /// Uniform in `lo..=hi`.
    Random {
        lo: Weight,
        hi: Weight,
    },
    /// Uniform in `{1, 2}`, so optima are rarely unique.
    Ties,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GenSpec {
    pub seed: u64,
    pub mode: GenMode,
    pub nodes: usize,
    pub clique_min: usize,
    pub clique_max: usize,
    /// Probability of each edge between consecutive cliques.
    pub density: f64,
    pub weights: WeightRegime,
}

impl Default for GenSpec {
    fn default() -> Self {
        GenSpec {
            seed: 0,
            mode: GenMode::StripBuild,
            nodes: 20,
            clique_min: 2,
            clique_max: 4,
            density: 0.5,
            weights: WeightRegime::Unit,
        }
    }
}

impl GenSpec {
    /// Strip instance with about `8n` edges, used for timing.
    pub fn scaling(nodes: usize, seed: u64) -> Self {
        GenSpec {
            seed,
            nodes,
            clique_min: 4,
            clique_max: 8,
            density: 0.5,
            weights: WeightRegime::Random { lo: 1, hi: 100 },
            ..GenSpec::default()
        }
    }
}

/// Generates according to `spec.mode`.
pub fn generate(spec: &GenSpec) -> Result<Graph> {
    match spec.mode {
        GenMode::StripBuild => gen_strip_instance(spec),
        GenMode::Rejection => gen_rejection(spec),
    }
}

pub fn is_claw_net_free(g: &Graph) -> bool {
    find_claw(g).is_none() && find_net(g).is_none()
}

/// Adjacency under construction; edges are only ever added.
struct Draft {
    adj: Vec<FxHashSet<usize>>,
}

impl Draft {
    fn new(n: usize) -> Self {
        Draft {
            adj: vec![FxHashSet::default(); n],
        }
    }

    fn has(&self, u: usize, v: usize) -> bool {
        self.adj[u].contains(&v)
    }

    fn add(&mut self, u: usize, v: usize) {
        if u != v {
            self.adj[u].insert(v);
            self.adj[v].insert(u);
        }
    }

    fn sorted_neighbors(&self, v: usize) -> Vec<usize> {
        let mut nb: Vec<usize> = self.adj[v].iter().copied().collect();
        nb.sort_unstable();
        nb
    }

    fn into_graph(self) -> Graph {
        let mut b = GraphBuilder::new(self.adj.len());
        for (u, nb) in self.adj.iter().enumerate() {
            let mut nb: Vec<usize> = nb.iter().copied().filter(|&v| v > u).collect();
            nb.sort_unstable();
            for v in nb {
                b.add_edge(u, v).expect("valid draft edge");
            }
        }
        b.build()
    }
}

/// A path (or, with at least four cliques, a cycle) of cliques with random
/// edges between consecutive cliques, repaired until claw-free. `None` when
/// the repair budget of `10 n` edges runs out.
fn clique_chain(
    rng: &mut ChaCha8Rng,
    sizes: &[usize],
    density: f64,
    cyclic: bool,
) -> Option<Graph> {
    let p = sizes.len();
    let cyclic = cyclic && p >= 4;
    let mut clique_of = Vec::new();
    let mut members: Vec<Vec<usize>> = Vec::with_capacity(p);
    for (i, &s) in sizes.iter().enumerate() {
        let start = clique_of.len();
        members.push((start..start + s).collect());
        clique_of.extend(std::iter::repeat_n(i, s));
    }
    let n = clique_of.len();
    let mut d = Draft::new(n);
    for k in &members {
        for (i, &u) in k.iter().enumerate() {
            for &v in &k[i + 1..] {
                d.add(u, v);
            }
        }
    }
    let links = if cyclic { p } else { p.saturating_sub(1) };
    for i in 0..links {
        let (a, b) = (&members[i], &members[(i + 1) % p]);
        let mut any = false;
        for &u in a {
            for &v in b {
                if rng.random_bool(density.clamp(0.0, 1.0)) {
                    d.add(u, v);
                    any = true;
                }
            }
        }
        if !any {
            let u = *a.choose(rng).expect("non-empty clique");
            let v = *b.choose(rng).expect("non-empty clique");
            d.add(u, v);
        }
    }
    let side = |c: usize, step: isize| -> Option<usize> {
        let t = c as isize + step;
        if cyclic {
            Some(t.rem_euclid(p as isize) as usize)
        } else {
            (0..p as isize).contains(&t).then_some(t as usize)
        }
    };
    // Any claw has its center and one leaf in a clique and the other two
    // leaves in the two neighboring cliques.
    let mut budget = 10 * n;
    let mut work: Vec<usize> = (0..n).rev().collect();
    while let Some(v) = work.pop() {
        let c = clique_of[v];
        let (Some(l), Some(r)) = (side(c, -1), side(c, 1)) else {
            continue;
        };
        let nb = d.sorted_neighbors(v);
        let claw = nb.iter().filter(|&&b| clique_of[b] == c).find_map(|&b| {
            let a = nb
                .iter()
                .copied()
                .find(|&a| clique_of[a] == l && !d.has(a, b))?;
            let e = nb
                .iter()
                .copied()
                .find(|&e| clique_of[e] == r && !d.has(e, b))?;
            Some((a, b, e))
        });
        if let Some((a, b, e)) = claw {
            if budget == 0 {
                return None;
            }
            budget -= 1;
            let leaf = if rng.random_bool(0.5) { a } else { e };
            d.add(b, leaf);
            work.extend([v, b, leaf]);
        }
    }
    Some(d.into_graph())
}

fn clique_sizes(rng: &mut ChaCha8Rng, nodes: usize, lo: usize, hi: usize) -> Vec<usize> {
    let lo = lo.max(1);
    let hi = hi.max(lo);
    let mut sizes = Vec::new();
    let mut left = nodes;
    while left > 0 {
        let s = rng.random_range(lo..=hi).min(left);
        sizes.push(s);
        left -= s;
    }
    sizes
}

fn relabel(rng: &mut ChaCha8Rng, g: &Graph) -> Graph {
    let mut perm: Vec<usize> = g.nodes().collect();
    perm.shuffle(rng);
    let mut b = GraphBuilder::new(g.n());
    for (u, v) in g.edges() {
        b.add_edge(perm[u], perm[v]).expect("permuted edge");
    }
    b.build()
}

fn apply_weights(rng: &mut ChaCha8Rng, g: Graph, regime: WeightRegime) -> Result<Graph> {
    let w: Vec<Weight> = match regime {
        WeightRegime::Unit => vec![1; g.n()],
        WeightRegime::Random { lo, hi } => {
            if lo > hi {
                return Err(Error::Input(format!("empty weight range {lo}..={hi}")));
            }
            (0..g.n()).map(|_| rng.random_range(lo..=hi)).collect()
        }
        WeightRegime::Ties => (0..g.n()).map(|_| rng.random_range(1..=2)).collect(),
    };
    g.with_weights(w)
}

/// Connected chain of cliques: a strongly bisimplicial clique with a
/// clique-strip on each side, or a single closed strip. With at least seven
/// cliques the result has a stable set of size four.
pub fn gen_strip_instance(spec: &GenSpec) -> Result<Graph> {
    if spec.nodes == 0 {
        return Err(Error::Input(
            "strip instances need at least one node".into(),
        ));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(spec.seed);
    for _ in 0..MAX_RESEEDS {
        let sizes = clique_sizes(&mut rng, spec.nodes, spec.clique_min, spec.clique_max);
        let cyclic = rng.random_bool(0.3);
        let Some(g) = clique_chain(&mut rng, &sizes, spec.density, cyclic) else {
            continue;
        };
        if sizes.len() >= 7 && find_stable4(&g).is_none() {
            continue;
        }
        if !is_claw_net_free(&g) {
            continue;
        }
        let g = relabel(&mut rng, &g);
        return apply_weights(&mut rng, g, spec.weights);
    }
    Err(Error::Input(format!(
        "no valid strip instance after {MAX_RESEEDS} attempts"
    )))
}

fn random_graph(rng: &mut ChaCha8Rng, n: usize, p: f64) -> Graph {
    let mut d = Draft::new(n);
    for u in 0..n {
        for v in u + 1..n {
            if rng.random_bool(p) {
                d.add(u, v);
            }
        }
    }
    d.into_graph()
}

/// Line graph of a random simple graph with `n` edges.
fn random_line_graph(rng: &mut ChaCha8Rng, n: usize) -> Graph {
    let mut k = 2;
    while k * (k - 1) / 2 < n {
        k += 1;
    }
    let k = rng.random_range(k..=(k + n / 2).max(k));
    let mut pairs: Vec<(usize, usize)> = (0..k)
        .flat_map(|a| (a + 1..k).map(move |b| (a, b)))
        .collect();
    pairs.shuffle(rng);
    pairs.truncate(n);
    let mut d = Draft::new(n);
    for i in 0..n {
        for j in i + 1..n {
            let (a, b) = (pairs[i], pairs[j]);
            if a.0 == b.0 || a.0 == b.1 || a.1 == b.0 || a.1 == b.1 {
                d.add(i, j);
            }
        }
    }
    d.into_graph()
}

/// Complement of a random triangle-free graph, so stability number ≤ 2.
fn co_triangle_free(rng: &mut ChaCha8Rng, n: usize) -> Graph {
    let mut tf = Draft::new(n);
    let mut pairs: Vec<(usize, usize)> = (0..n)
        .flat_map(|a| (a + 1..n).map(move |b| (a, b)))
        .collect();
    pairs.shuffle(rng);
    let keep = rng.random_range(0.2..0.9);
    for (u, v) in pairs {
        if rng.random_bool(keep) && !tf.adj[u].iter().any(|&x| tf.has(x, v)) {
            tf.add(u, v);
        }
    }
    let mut d = Draft::new(n);
    for u in 0..n {
        for v in u + 1..n {
            if !tf.has(u, v) {
                d.add(u, v);
            }
        }
    }
    d.into_graph()
}

fn flip_edges(rng: &mut ChaCha8Rng, g: &Graph, flips: usize) -> Graph {
    let n = g.n();
    let mut edges: FxHashSet<(usize, usize)> = g.edges().collect();
    for _ in 0..flips {
        let u = rng.random_range(0..n);
        let v = rng.random_range(0..n);
        if u == v {
            continue;
        }
        let e = (u.min(v), u.max(v));
        if !edges.remove(&e) {
            edges.insert(e);
        }
    }
    let mut sorted: Vec<(usize, usize)> = edges.into_iter().collect();
    sorted.sort_unstable();
    Graph::from_edges(n, sorted).expect("flipped edges are valid")
}

/// Mixture of random proposals filtered by the claw and net detectors.
/// Covers small instances of every stability number, including `α ≤ 3`.
pub fn gen_rejection(spec: &GenSpec) -> Result<Graph> {
    let n = spec.nodes;
    if n > REJECTION_LIMIT {
        return Err(Error::Input(format!(
            "rejection sampling supports at most {REJECTION_LIMIT} nodes, got {n}"
        )));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(spec.seed);
    loop {
        let g = match rng.random_range(0..5) {
            0 => {
                let p = rng.random_range(0.03..0.3);
                random_graph(&mut rng, n, p)
            }
            1 => {
                let p = rng.random_range(0.55..0.95);
                random_graph(&mut rng, n, p)
            }
            2 => random_line_graph(&mut rng, n),
            3 => co_triangle_free(&mut rng, n),
            _ => {
                let hi = rng.random_range(1..=4);
                let sizes = clique_sizes(&mut rng, n, 1, hi);
                let density = rng.random_range(0.2..=1.0);
                let cyclic = rng.random_bool(0.3);
                let Some(g) = clique_chain(&mut rng, &sizes, density, cyclic) else {
                    continue;
                };
                let flips = rng.random_range(0..=2);
                flip_edges(&mut rng, &g, flips)
            }
        };
        if is_claw_net_free(&g) {
            let g = relabel(&mut rng, &g);
            return apply_weights(&mut rng, g, spec.weights);
        }
    }
}
