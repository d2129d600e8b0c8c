//! Detectors for the induced patterns the structure theory reasons with:
//! claws, nets, squares and `S3-`. They are used by the generators, the
//! input checks and the test suite, never on the solver's hot path.
//!
//! Every detector returns the lexicographically first witness under
//! ascending-id enumeration.

use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::{Graph, NodeSet};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum PatternKind {
    /// `(w: x, y, z)`
    Claw,
    /// `(x, y, z: x', y', z')`
    Net,
    /// 4-hole `(v1, v2, v3, v4)`, diagonals `v1v3` and `v2v4`.
    Square,
    /// `(a, b, c, d, e, f)` with edges `ad ae be bf cd cf de df`.
    S3Minus,
}

impl PatternKind {
    fn edges(self) -> &'static [(usize, usize)] {
        match self {
            PatternKind::Claw => &[(0, 1), (0, 2), (0, 3)],
            PatternKind::Net => &[(0, 1), (0, 2), (1, 2), (0, 3), (1, 4), (2, 5)],
            PatternKind::Square => &[(0, 1), (1, 2), (2, 3), (0, 3)],
            PatternKind::S3Minus => &[
                (0, 3),
                (0, 4),
                (1, 4),
                (1, 5),
                (2, 3),
                (2, 5),
                (3, 4),
                (3, 5),
            ],
        }
    }

    fn size(self) -> usize {
        match self {
            PatternKind::Claw | PatternKind::Square => 4,
            PatternKind::Net | PatternKind::S3Minus => 6,
        }
    }
}

/// Node tuple inducing a pattern, in the order documented on [`PatternKind`].
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct PatternWitness {
    pub kind: PatternKind,
    pub nodes: Vec<usize>,
}

impl PatternWitness {
    pub fn new(kind: PatternKind, nodes: Vec<usize>) -> Self {
        PatternWitness { kind, nodes }
    }

    /// True iff the tuple induces exactly the claimed pattern in `g`.
    pub fn validate(&self, g: &Graph) -> bool {
        let k = self.kind.size();
        if self.nodes.len() != k || self.nodes.iter().any(|&v| v >= g.n()) {
            return false;
        }
        let mut distinct = self.nodes.clone();
        distinct.sort_unstable();
        distinct.dedup();
        if distinct.len() != k {
            return false;
        }
        let edges = self.kind.edges();
        for i in 0..k {
            for j in i + 1..k {
                let want = edges.contains(&(i, j));
                if g.has_edge(self.nodes[i], self.nodes[j]) != want {
                    return false;
                }
            }
        }
        true
    }

    /// Same pattern with ids translated through `map`.
    pub fn map(&self, map: impl Fn(usize) -> usize) -> Self {
        PatternWitness {
            kind: self.kind,
            nodes: self.nodes.iter().map(|&v| map(v)).collect(),
        }
    }
}

impl fmt::Display for PatternWitness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let v = &self.nodes;
        match self.kind {
            PatternKind::Claw => write!(f, "claw ({}: {}, {}, {})", v[0], v[1], v[2], v[3]),
            PatternKind::Net => write!(
                f,
                "net ({}, {}, {}: {}, {}, {})",
                v[0], v[1], v[2], v[3], v[4], v[5]
            ),
            PatternKind::Square => write!(f, "square ({}, {}, {}, {})", v[0], v[1], v[2], v[3]),
            PatternKind::S3Minus => write!(f, "s3minus {v:?}"),
        }
    }
}

/// Non-adjacency bit matrix of a node list.
struct LocalComplement {
    words: usize,
    rows: Vec<u64>,
}

impl LocalComplement {
    fn new(g: &Graph, nodes: &[usize]) -> Self {
        let d = nodes.len();
        let words = d.div_ceil(64).max(1);
        let mut rows = vec![0u64; d * words];
        for i in 0..d {
            for j in i + 1..d {
                if !g.has_edge(nodes[i], nodes[j]) {
                    rows[i * words + j / 64] |= 1 << (j % 64);
                    rows[j * words + i / 64] |= 1 << (i % 64);
                }
            }
        }
        LocalComplement { words, rows }
    }

    fn get(&self, i: usize, j: usize) -> bool {
        self.rows[i * self.words + j / 64] >> (j % 64) & 1 == 1
    }

    /// Smallest `k > after` non-adjacent to both `i` and `j`.
    fn common_after(&self, i: usize, j: usize, after: usize) -> Option<usize> {
        let start = after + 1;
        for w in start / 64..self.words {
            let mut bits = self.rows[i * self.words + w] & self.rows[j * self.words + w];
            if w == start / 64 {
                bits &= u64::MAX.checked_shl((start % 64) as u32).unwrap_or(0);
            }
            if bits != 0 {
                return Some(w * 64 + bits.trailing_zeros() as usize);
            }
        }
        None
    }
}

/// Claw centered at `w`, if `N(w)` contains an independent triple.
pub fn find_claw_at(g: &Graph, w: usize) -> Option<PatternWitness> {
    let nb = g.neighbors(w);
    if nb.len() < 3 {
        return None;
    }
    let comp = LocalComplement::new(g, nb);
    for i in 0..nb.len() {
        for j in i + 1..nb.len() {
            if !comp.get(i, j) {
                continue;
            }
            if let Some(k) = comp.common_after(i, j, j) {
                return Some(PatternWitness::new(
                    PatternKind::Claw,
                    vec![w, nb[i], nb[j], nb[k]],
                ));
            }
        }
    }
    None
}

pub fn find_claw(g: &Graph) -> Option<PatternWitness> {
    g.nodes().find_map(|w| find_claw_at(g, w))
}

fn intersect_sorted(a: &[usize], b: &[usize], out: &mut Vec<usize>) {
    out.clear();
    let (mut i, mut j) = (0, 0);
    while i < a.len() && j < b.len() {
        match a[i].cmp(&b[j]) {
            std::cmp::Ordering::Less => i += 1,
            std::cmp::Ordering::Greater => j += 1,
            std::cmp::Ordering::Equal => {
                out.push(a[i]);
                i += 1;
                j += 1;
            }
        }
    }
}

/// Net with triangle `{x, y, z}` (any order), if pendants exist.
fn net_on_triangle(g: &Graph, t: [usize; 3]) -> Option<PatternWitness> {
    let pendants = |k: usize| -> Vec<usize> {
        let (p, q) = (t[(k + 1) % 3], t[(k + 2) % 3]);
        g.neighbors(t[k])
            .iter()
            .copied()
            .filter(|&u| u != p && u != q && !g.has_edge(u, p) && !g.has_edge(u, q))
            .collect()
    };
    let px = pendants(0);
    if px.is_empty() {
        return None;
    }
    let py = pendants(1);
    if py.is_empty() {
        return None;
    }
    let pz = pendants(2);
    for &a in &px {
        for &b in py.iter().filter(|&&b| !g.has_edge(a, b)) {
            for &c in &pz {
                if !g.has_edge(a, c) && !g.has_edge(b, c) {
                    return Some(PatternWitness::new(
                        PatternKind::Net,
                        vec![t[0], t[1], t[2], a, b, c],
                    ));
                }
            }
        }
    }
    None
}

pub fn find_net(g: &Graph) -> Option<PatternWitness> {
    let mut common = Vec::new();
    for x in g.nodes() {
        for &y in g.neighbors(x).iter().filter(|&&y| y > x) {
            intersect_sorted(g.neighbors(x), g.neighbors(y), &mut common);
            for &z in common.iter().filter(|&&z| z > y) {
                if let Some(w) = net_on_triangle(g, [x, y, z]) {
                    return Some(w);
                }
            }
        }
    }
    None
}

fn require_clique(g: &Graph, set: &NodeSet) -> Result<()> {
    g.check_set(set)?;
    match g.find_non_edge(set.as_slice()) {
        None => Ok(()),
        Some((u, v)) => Err(Error::Input(format!(
            "{u} and {v} are not adjacent in a clique argument"
        ))),
    }
}

/// All induced squares with two nodes in each of the cliques `a`, `b`, as
/// `(a1, b1, b2, a2)` with `a1 < a2`, edges `a1b1`, `a2b2` and diagonals
/// `a1b2`, `a2b1`.
pub fn squares_between<'g>(
    g: &'g Graph,
    a: &'g NodeSet,
    b: &'g NodeSet,
) -> impl Iterator<Item = PatternWitness> + 'g {
    let av = a.as_slice();
    av.iter().enumerate().flat_map(move |(i, &a1)| {
        av[i + 1..].iter().flat_map(move |&a2| {
            b.iter()
                .filter(move |&b1| g.has_edge(a1, b1) && !g.has_edge(a2, b1))
                .flat_map(move |b1| {
                    b.iter()
                        .filter(move |&b2| g.has_edge(a2, b2) && !g.has_edge(a1, b2))
                        .map(move |b2| {
                            PatternWitness::new(PatternKind::Square, vec![a1, b1, b2, a2])
                        })
                })
        })
    })
}

/// First induced square across the disjoint cliques `a` and `b`.
pub fn find_square_in(g: &Graph, a: &NodeSet, b: &NodeSet) -> Result<Option<PatternWitness>> {
    require_clique(g, a)?;
    require_clique(g, b)?;
    Ok(squares_between(g, a, b).next())
}

/// First node outside `x ∪ y` that is universal to neither clique and not
/// null to their union.
pub fn semi_homogeneous_violation(g: &Graph, x: &NodeSet, y: &NodeSet) -> Option<usize> {
    let both = x.union(y);
    let Ok(outside) = g.neighborhood(&both) else {
        return None;
    };
    let found = outside.iter().find(|&u| {
        let universal = |set: &NodeSet| set.iter().all(|v| g.has_edge(u, v));
        !universal(x) && !universal(y)
    });
    found
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SquareViolation {
    pub square: PatternWitness,
    pub node: usize,
}

/// Checks that the two sides of every induced square across `(a, b)` form
/// a semi-homogeneous pair.
pub fn square_semi_homogeneous_check(
    g: &Graph,
    a: &NodeSet,
    b: &NodeSet,
) -> Result<Option<SquareViolation>> {
    require_clique(g, a)?;
    require_clique(g, b)?;
    for sq in squares_between(g, a, b) {
        let v = &sq.nodes;
        let side_a = NodeSet::from_vec(vec![v[0], v[3]]);
        let side_b = NodeSet::from_vec(vec![v[1], v[2]]);
        if let Some(node) = semi_homogeneous_violation(g, &side_a, &side_b) {
            return Ok(Some(SquareViolation { square: sq, node }));
        }
    }
    Ok(None)
}

/// For an induced `S3-` witness, the first outside node with fewer than two
/// neighbors in it.
pub fn brandstadt_check(g: &Graph, h: &PatternWitness) -> Result<Option<usize>> {
    if h.kind != PatternKind::S3Minus || !h.validate(g) {
        return Err(Error::Input(format!("{h} does not induce S3-")));
    }
    Ok(g.nodes()
        .filter(|v| !h.nodes.contains(v))
        .find(|&v| h.nodes.iter().filter(|&&u| g.has_edge(u, v)).count() < 2))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn g(n: usize, edges: &[(usize, usize)]) -> Graph {
        Graph::from_edges(n, edges.iter().copied()).unwrap()
    }

    // a b c d e f = 0..6
    const S3M: [(usize, usize); 8] = [
        (0, 3),
        (0, 4),
        (1, 4),
        (1, 5),
        (2, 3),
        (2, 5),
        (3, 4),
        (3, 5),
    ];

    /// Exhaustive 4-subset and 6-subset scans, independent of the detectors.
    fn brute_claw_exists(g: &Graph) -> bool {
        let n = g.n();
        for w in 0..n {
            for x in 0..n {
                for y in x + 1..n {
                    for z in y + 1..n {
                        let tuple = vec![w, x, y, z];
                        if PatternWitness::new(PatternKind::Claw, tuple).validate(g) {
                            return true;
                        }
                    }
                }
            }
        }
        false
    }

    #[test]
    fn claw_detection() {
        let star = g(4, &[(0, 1), (0, 2), (0, 3)]);
        let w = find_claw(&star).unwrap();
        assert_eq!(w.nodes, vec![0, 1, 2, 3]);
        assert!(w.validate(&star));
        assert!(find_claw(&g(3, &[(0, 1), (1, 2), (0, 2)])).is_none());
        let s3m = g(6, &S3M);
        assert!(!brute_claw_exists(&s3m));
        assert!(find_claw(&s3m).is_none());
    }

    #[test]
    fn net_detection() {
        let net = g(6, &[(0, 1), (0, 2), (1, 2), (0, 3), (1, 4), (2, 5)]);
        let w = find_net(&net).unwrap();
        assert_eq!(w.nodes, vec![0, 1, 2, 3, 4, 5]);
        assert!(w.validate(&net));
        let p6 = g(6, &[(0, 1), (1, 2), (2, 3), (3, 4), (4, 5)]);
        assert!(find_net(&p6).is_none());
        assert!(find_net(&g(6, &S3M)).is_none());
    }

    #[test]
    fn squares() {
        // a1=0 a2=1 b1=2 b2=3, cross edges a1b2 and a2b1 only.
        let sq = g(4, &[(0, 1), (2, 3), (0, 3), (1, 2)]);
        let (a, b) = (NodeSet::from_vec(vec![0, 1]), NodeSet::from_vec(vec![2, 3]));
        let w = find_square_in(&sq, &a, &b).unwrap().unwrap();
        assert_eq!(w.nodes, vec![0, 3, 2, 1]);
        assert!(w.validate(&sq));

        let full = g(4, &[(0, 1), (2, 3), (0, 2), (0, 3), (1, 2), (1, 3)]);
        assert!(find_square_in(&full, &a, &b).unwrap().is_none());

        // Nested neighborhoods: N(0) ∩ B = {2} ⊂ N(1) ∩ B = {2, 3}.
        let nested = g(4, &[(0, 1), (2, 3), (0, 2), (1, 2), (1, 3)]);
        assert!(find_square_in(&nested, &a, &b).unwrap().is_none());

        let not_clique = g(4, &[(2, 3)]);
        assert!(find_square_in(&not_clique, &a, &b).is_err());
    }

    /// The two-triangle example: K1 = {a1, b1, c1}, K2 = {a2, b2, c2}, a1
    /// adjacent to b2 and c2, b1 to b2, c1 to c2, and v adjacent to b1, c1.
    fn two_triangles() -> (Graph, NodeSet, NodeSet) {
        let (a1, b1, c1, a2, b2, c2, v) = (0, 1, 2, 3, 4, 5, 6);
        let edges = [
            (a1, b1),
            (a1, c1),
            (b1, c1),
            (a2, b2),
            (a2, c2),
            (b2, c2),
            (a1, b2),
            (a1, c2),
            (b1, b2),
            (c1, c2),
            (v, b1),
            (v, c1),
        ];
        (
            g(7, &edges),
            NodeSet::from_vec(vec![a1, b1, c1]),
            NodeSet::from_vec(vec![a2, b2, c2]),
        )
    }

    #[test]
    fn semi_homogeneity() {
        let p3 = g(3, &[(0, 2), (1, 2)]);
        let (x, y) = (NodeSet::from_vec(vec![0]), NodeSet::from_vec(vec![1]));
        assert_eq!(semi_homogeneous_violation(&p3, &x, &y), None);

        // u = 3 adjacent to one of the two nodes of x, null to y.
        let h = g(4, &[(0, 1), (0, 3), (2, 1)]);
        let (x, y) = (NodeSet::from_vec(vec![0, 1]), NodeSet::from_vec(vec![2]));
        assert_eq!(semi_homogeneous_violation(&h, &x, &y), Some(3));

        let (tt, k1, k2) = two_triangles();
        assert_eq!(semi_homogeneous_violation(&tt, &k1, &k2), Some(6));
        assert_eq!(square_semi_homogeneous_check(&tt, &k1, &k2).unwrap(), None);
    }

    #[test]
    fn square_semi_homogeneous_counterexample() {
        let p4 = g(4, &[(0, 1), (1, 2), (2, 3)]);
        let (a, b) = (NodeSet::from_vec(vec![0]), NodeSet::from_vec(vec![3]));
        assert_eq!(square_semi_homogeneous_check(&p4, &a, &b).unwrap(), None);

        // Square (a1, b2, b1, ...) of the two-triangle example is
        // {a1, c1, b2, c2}: a1-b2, c1-c2 edges. Add u adjacent to a1 and c2.
        let (tt, k1, k2) = two_triangles();
        let mut edges: Vec<(usize, usize)> = tt.edges().collect();
        edges.push((0, 7));
        edges.push((5, 7));
        let h = g(8, &edges);
        let squares: Vec<_> = squares_between(&h, &k1, &k2).collect();
        let bad = square_semi_homogeneous_check(&h, &k1, &k2)
            .unwrap()
            .unwrap();
        assert_eq!(bad.node, 7);
        assert!(squares.contains(&bad.square));
        let sides = (
            NodeSet::from_vec(vec![bad.square.nodes[0], bad.square.nodes[3]]),
            NodeSet::from_vec(vec![bad.square.nodes[1], bad.square.nodes[2]]),
        );
        assert_eq!(semi_homogeneous_violation(&h, &sides.0, &sides.1), Some(7));
    }

    #[test]
    fn brandstadt() {
        let s3m = g(6, &S3M);
        let h = PatternWitness::new(PatternKind::S3Minus, (0..6).collect());
        assert!(h.validate(&s3m));
        assert_eq!(brandstadt_check(&s3m, &h).unwrap(), None);

        let mut edges = S3M.to_vec();
        edges.extend([(3, 6), (4, 6)]);
        assert_eq!(brandstadt_check(&g(7, &edges), &h).unwrap(), None);

        let mut edges = S3M.to_vec();
        edges.push((0, 6));
        assert_eq!(brandstadt_check(&g(7, &edges), &h).unwrap(), Some(6));
    }
}
