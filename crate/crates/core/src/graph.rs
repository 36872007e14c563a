//! Simple undirected graphs over vertices `0..n-1`, with the file format,
//! generators, and the elementary quantities the rest of the crate consumes.
//!
//! Graphs are immutable after construction and safe to share across threads;
//! every operation here is a pure function.

use crate::bitset::BitSet;
use crate::rng::SplitMix64;
use thiserror::Error;

/// An unordered vertex pair `(u, v)` with `u < v`.
pub type Pair = (usize, usize);

/// Normalises an unordered pair to `u < v`.
pub fn pair(a: usize, b: usize) -> Pair {
    if a < b {
        (a, b)
    } else {
        (b, a)
    }
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum GraphError {
    #[error("line {line}: malformed line: {text:?}")]
    Malformed { line: usize, text: String },
    #[error("line {line}: vertex {v} out of range 1..={n}")]
    OutOfRange { line: usize, v: usize, n: usize },
    #[error("line {line}: duplicate edge {u} {v}")]
    DuplicateEdge { line: usize, u: usize, v: usize },
    #[error("line {line}: self-loop at vertex {v}")]
    SelfLoop { line: usize, v: usize },
    #[error("line {line}: duplicate problem line")]
    DuplicateHeader { line: usize },
    #[error("line {line}: edge before problem line")]
    EdgeBeforeHeader { line: usize },
    #[error("missing problem line")]
    MissingHeader,
    #[error("edge count mismatch: header says {expected}, found {found}")]
    EdgeCountMismatch { expected: usize, found: usize },
    #[error("unknown family {0:?}")]
    UnknownFamily(String),
    #[error("invalid parameter for {family}: {reason}")]
    BadParameter { family: String, reason: String },
}

/// A simple undirected graph with adjacency bitsets.
#[derive(Clone, PartialEq, Eq)]
pub struct Graph {
    n: usize,
    adj: Vec<BitSet>,
}

impl Graph {
    /// Edgeless graph on `n` vertices.
    pub fn empty(n: usize) -> Self {
        Graph {
            n,
            adj: (0..n).map(|_| BitSet::new(n)).collect(),
        }
    }

    /// Builds a graph from an edge list. Self-loops and duplicates are rejected.
    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Result<Self, GraphError> {
        let mut g = Graph::empty(n);
        for &(a, b) in edges {
            if a >= n || b >= n {
                return Err(GraphError::OutOfRange {
                    line: 0,
                    v: a.max(b) + 1,
                    n,
                });
            }
            if a == b {
                return Err(GraphError::SelfLoop { line: 0, v: a + 1 });
            }
            if g.adj[a].contains(b) {
                let (u, v) = pair(a, b);
                return Err(GraphError::DuplicateEdge {
                    line: 0,
                    u: u + 1,
                    v: v + 1,
                });
            }
            g.adj[a].insert(b);
            g.adj[b].insert(a);
        }
        Ok(g)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn edge_count(&self) -> usize {
        self.adj.iter().map(|row| row.len()).sum::<usize>() / 2
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        u != v && self.adj[u].contains(v)
    }

    /// Open neighbourhood `N(v)` as a bitset.
    pub fn neighbors(&self, v: usize) -> &BitSet {
        &self.adj[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    /// Edges as pairs `(u, v)` with `u < v`, lexicographically sorted.
    pub fn edges(&self) -> Vec<Pair> {
        let mut out = Vec::with_capacity(self.edge_count());
        for u in 0..self.n {
            for v in self.adj[u].iter() {
                if v > u {
                    out.push((u, v));
                }
            }
        }
        out
    }

    /// All unordered pairs that are not edges.
    pub fn non_edges(&self) -> Vec<Pair> {
        let mut out = Vec::new();
        for u in 0..self.n {
            for v in u + 1..self.n {
                if !self.adj[u].contains(v) {
                    out.push((u, v));
                }
            }
        }
        out
    }

    pub fn is_complete(&self) -> bool {
        self.edge_count() == self.n * self.n.saturating_sub(1) / 2
    }

    pub fn is_edgeless(&self) -> bool {
        self.edge_count() == 0
    }

    /// Complement graph (used by flip tests).
    pub fn complement(&self) -> Graph {
        let mut g = Graph::empty(self.n);
        for u in 0..self.n {
            for v in u + 1..self.n {
                if !self.has_edge(u, v) {
                    g.adj[u].insert(v);
                    g.adj[v].insert(u);
                }
            }
        }
        g
    }

    /// Induced subgraph on `keep` (ascending original ids). Returns the graph
    /// and the list mapping new id -> original id.
    pub fn induced(&self, keep: &BitSet) -> (Graph, Vec<usize>) {
        let ids = keep.to_vec();
        let mut g = Graph::empty(ids.len());
        for (i, &u) in ids.iter().enumerate() {
            for (j, &v) in ids.iter().enumerate().skip(i + 1) {
                if self.has_edge(u, v) {
                    g.adj[i].insert(j);
                    g.adj[j].insert(i);
                }
            }
        }
        (g, ids)
    }

    /// Symmetric difference of open neighbourhoods, `N(x) xor N(y)`.
    pub fn neighbourhood_delta(&self, x: usize, y: usize) -> BitSet {
        assert!(x < self.n && y < self.n, "vertex out of range");
        self.adj[x].symmetric_difference(&self.adj[y])
    }

    /// Ball of radius `r` around `x`, including `x` itself.
    pub fn ball(&self, x: usize, r: usize) -> BitSet {
        assert!(x < self.n, "vertex out of range");
        let mut seen = BitSet::new(self.n);
        seen.insert(x);
        let mut frontier = vec![x];
        for _ in 0..r {
            let mut next = Vec::new();
            for &u in &frontier {
                for v in self.adj[u].iter() {
                    if !seen.contains(v) {
                        seen.insert(v);
                        next.push(v);
                    }
                }
            }
            if next.is_empty() {
                break;
            }
            frontier = next;
        }
        seen
    }

    /// A pair `(x, y)` minimising the near-twin difference
    /// `|(N(x) xor N(y)) \ {x, y}|` (so any pair of twins scores 0 whether or
    /// not the pair is an edge), ties broken by smallest `(x, y)`
    /// lexicographically, together with the minimum size.
    pub fn min_symmetric_difference(&self) -> Result<(Pair, usize), GraphError> {
        if self.n < 2 {
            return Err(GraphError::BadParameter {
                family: "min_symmetric_difference".into(),
                reason: format!("need at least 2 vertices, have {}", self.n),
            });
        }
        let mut best: Option<(Pair, usize)> = None;
        for u in 0..self.n {
            for v in u + 1..self.n {
                let mut delta = self.neighbourhood_delta(u, v);
                delta.remove(u);
                delta.remove(v);
                let d = delta.len();
                if best.is_none_or(|(_, bd)| d < bd) {
                    best = Some(((u, v), d));
                }
            }
        }
        Ok(best.unwrap())
    }

    /// Exact clique number via branch and bound with a greedy colouring bound.
    pub fn clique_number(&self) -> usize {
        if self.n == 0 {
            return 0;
        }
        let all = BitSet::full(self.n);
        let mut best = 1;
        self.expand_clique(&all, 0, usize::MAX, &mut best);
        best
    }

    /// Whether some clique of size `t` lies inside `within`.
    pub fn has_clique_of_size(&self, within: &BitSet, t: usize) -> bool {
        if t == 0 {
            return true;
        }
        if within.len() < t {
            return false;
        }
        let mut best = 0;
        self.expand_clique(within, 0, t, &mut best);
        best >= t
    }

    /// Tomita-style expansion: candidates are coloured greedily; a branch is cut
    /// once `size + colour <= best`. `target` short-circuits the search.
    fn expand_clique(&self, candidates: &BitSet, size: usize, target: usize, best: &mut usize) {
        if candidates.is_empty() {
            if size > *best {
                *best = size;
            }
            return;
        }
        if *best >= target {
            return;
        }
        // Greedy colouring of the candidate set; vertices listed colour-class by
        // colour-class so colour numbers ascend along `order`.
        let mut order = Vec::with_capacity(candidates.len());
        let mut colors = Vec::with_capacity(candidates.len());
        let mut uncolored = candidates.clone();
        let mut color = 0;
        while !uncolored.is_empty() {
            color += 1;
            let mut class_pool = uncolored.clone();
            while let Some(v) = class_pool.min() {
                order.push(v);
                colors.push(color);
                uncolored.remove(v);
                class_pool.remove(v);
                class_pool.difference_with(&self.adj[v]);
            }
        }
        for idx in (0..order.len()).rev() {
            if size + colors[idx] <= *best {
                return;
            }
            let v = order[idx];
            let mut next = candidates.intersection(&self.adj[v]);
            // Only vertices preceding v in the order stay candidates.
            for &w in &order[idx..] {
                next.remove(w);
            }
            self.expand_clique(&next, size + 1, target, best);
            if *best >= target {
                return;
            }
        }
    }

    /// Canonical text form: one `p edge n m` header, then `e u v` lines with
    /// `u < v` one-indexed, lexicographically sorted.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        out.push_str(&format!("p edge {} {}\n", self.n, self.edge_count()));
        for (u, v) in self.edges() {
            out.push_str(&format!("e {} {}\n", u + 1, v + 1));
        }
        out
    }
}

impl std::fmt::Debug for Graph {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "Graph(n={}, m={})", self.n, self.edge_count())
    }
}

/// Parses the `p edge` format: `c` comment lines, exactly one
/// `p edge <n> <m>` before any edge, then `e <u> <v>` lines (one-indexed).
/// Blank lines are ignored.
pub fn parse_graph(text: &str) -> Result<Graph, GraphError> {
    let mut header: Option<(usize, usize)> = None;
    let mut graph: Option<Graph> = None;
    let mut found_edges = 0usize;
    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        let line = raw.trim();
        if line.is_empty() || line.starts_with('c') {
            continue;
        }
        let fields: Vec<&str> = line.split_ascii_whitespace().collect();
        match fields[0] {
            "p" => {
                if header.is_some() {
                    return Err(GraphError::DuplicateHeader { line: line_no });
                }
                if fields.len() != 4 || fields[1] != "edge" {
                    return Err(GraphError::Malformed {
                        line: line_no,
                        text: raw.to_string(),
                    });
                }
                let n: usize = fields[2].parse().map_err(|_| GraphError::Malformed {
                    line: line_no,
                    text: raw.to_string(),
                })?;
                let m: usize = fields[3].parse().map_err(|_| GraphError::Malformed {
                    line: line_no,
                    text: raw.to_string(),
                })?;
                header = Some((n, m));
                graph = Some(Graph::empty(n));
            }
            "e" => {
                let g = graph.as_mut().ok_or(GraphError::EdgeBeforeHeader { line: line_no })?;
                if fields.len() != 3 {
                    return Err(GraphError::Malformed {
                        line: line_no,
                        text: raw.to_string(),
                    });
                }
                let u: usize = fields[1].parse().map_err(|_| GraphError::Malformed {
                    line: line_no,
                    text: raw.to_string(),
                })?;
                let v: usize = fields[2].parse().map_err(|_| GraphError::Malformed {
                    line: line_no,
                    text: raw.to_string(),
                })?;
                let n = g.n();
                if u < 1 || u > n {
                    return Err(GraphError::OutOfRange { line: line_no, v: u, n });
                }
                if v < 1 || v > n {
                    return Err(GraphError::OutOfRange { line: line_no, v, n });
                }
                if u == v {
                    return Err(GraphError::SelfLoop { line: line_no, v: u });
                }
                let (a, b) = pair(u - 1, v - 1);
                if g.adj[a].contains(b) {
                    return Err(GraphError::DuplicateEdge {
                        line: line_no,
                        u: a + 1,
                        v: b + 1,
                    });
                }
                g.adj[a].insert(b);
                g.adj[b].insert(a);
                found_edges += 1;
            }
            _ => {
                return Err(GraphError::Malformed {
                    line: line_no,
                    text: raw.to_string(),
                });
            }
        }
    }
    let (_, m) = header.ok_or(GraphError::MissingHeader)?;
    if m != found_edges {
        return Err(GraphError::EdgeCountMismatch {
            expected: m,
            found: found_edges,
        });
    }
    Ok(graph.unwrap())
}

/// Graph families available to `generate`.
#[derive(Clone, Debug, PartialEq)]
pub enum Family {
    /// `K_n`.
    Complete(usize),
    /// Edgeless graph on `n` vertices.
    Empty(usize),
    /// Path `0 - 1 - .. - (n-1)`.
    Path(usize),
    /// Cycle on `n >= 3` vertices.
    Cycle(usize),
    /// Complete bipartite graph; left side `0..a`, right side `a..a+b`.
    Biclique(usize, usize),
    /// `a x b` grid; vertex `(i, j)` is numbered `i*b + j`.
    Grid(usize, usize),
    /// Each pair independently an edge with probability `p` (SplitMix64 stream
    /// over pairs `(u, v)`, `u < v`, in lexicographic order).
    Random { n: usize, p: f64, seed: u64 },
    /// Shift graph: vertices are pairs `(i, j)` with `1 <= i < j <= n` sorted
    /// lexicographically; `(i, j)` and `(j, k)` are adjacent.
    Shift(usize),
}

impl Family {
    /// Parses `(name, params, seed)` as accepted by the CLI.
    pub fn parse(name: &str, params: &[f64], seed: Option<u64>) -> Result<Family, GraphError> {
        let int = |i: usize| -> Result<usize, GraphError> {
            let v = *params.get(i).ok_or_else(|| GraphError::BadParameter {
                family: name.to_string(),
                reason: format!("missing parameter {}", i + 1),
            })?;
            if v < 0.0 || v.fract() != 0.0 {
                return Err(GraphError::BadParameter {
                    family: name.to_string(),
                    reason: format!("parameter {} must be a non-negative integer", i + 1),
                });
            }
            Ok(v as usize)
        };
        let fam = match name {
            "complete" => Family::Complete(int(0)?),
            "empty" => Family::Empty(int(0)?),
            "path" => Family::Path(int(0)?),
            "cycle" => Family::Cycle(int(0)?),
            "biclique" => Family::Biclique(int(0)?, int(1)?),
            "grid" => Family::Grid(int(0)?, int(1)?),
            "random" => {
                let n = int(0)?;
                let p = *params.get(1).ok_or_else(|| GraphError::BadParameter {
                    family: name.to_string(),
                    reason: "missing edge probability".into(),
                })?;
                Family::Random {
                    n,
                    p,
                    seed: seed.unwrap_or(0),
                }
            }
            "shift" => Family::Shift(int(0)?),
            other => return Err(GraphError::UnknownFamily(other.to_string())),
        };
        Ok(fam)
    }
}

/// Deterministic generator; output is canonical per family.
pub fn generate(family: &Family) -> Result<Graph, GraphError> {
    let need = |ok: bool, family: &str, reason: &str| -> Result<(), GraphError> {
        if ok {
            Ok(())
        } else {
            Err(GraphError::BadParameter {
                family: family.into(),
                reason: reason.into(),
            })
        }
    };
    match *family {
        Family::Complete(n) => {
            need(n >= 1, "complete", "n must be >= 1")?;
            let mut edges = Vec::new();
            for u in 0..n {
                for v in u + 1..n {
                    edges.push((u, v));
                }
            }
            Graph::from_edges(n, &edges)
        }
        Family::Empty(n) => {
            need(n >= 1, "empty", "n must be >= 1")?;
            Ok(Graph::empty(n))
        }
        Family::Path(n) => {
            need(n >= 1, "path", "n must be >= 1")?;
            let edges: Vec<_> = (0..n.saturating_sub(1)).map(|i| (i, i + 1)).collect();
            Graph::from_edges(n, &edges)
        }
        Family::Cycle(n) => {
            need(n >= 3, "cycle", "n must be >= 3")?;
            let mut edges: Vec<_> = (0..n - 1).map(|i| (i, i + 1)).collect();
            edges.push((0, n - 1));
            Graph::from_edges(n, &edges)
        }
        Family::Biclique(a, b) => {
            need(a >= 1 && b >= 1, "biclique", "sides must be >= 1")?;
            let mut edges = Vec::new();
            for u in 0..a {
                for v in 0..b {
                    edges.push((u, a + v));
                }
            }
            Graph::from_edges(a + b, &edges)
        }
        Family::Grid(a, b) => {
            need(a >= 1 && b >= 1, "grid", "sides must be >= 1")?;
            let mut edges = Vec::new();
            for i in 0..a {
                for j in 0..b {
                    let v = i * b + j;
                    if i + 1 < a {
                        edges.push((v, (i + 1) * b + j));
                    }
                    if j + 1 < b {
                        edges.push((v, v + 1));
                    }
                }
            }
            Graph::from_edges(a * b, &edges)
        }
        Family::Random { n, p, seed } => {
            need(n >= 1, "random", "n must be >= 1")?;
            need((0.0..=1.0).contains(&p), "random", "p must be in [0, 1]")?;
            let mut rng = SplitMix64::new(seed);
            let mut edges = Vec::new();
            for u in 0..n {
                for v in u + 1..n {
                    if rng.next_f64() < p {
                        edges.push((u, v));
                    }
                }
            }
            Graph::from_edges(n, &edges)
        }
        Family::Shift(n) => {
            need(n >= 2, "shift", "n must be >= 2")?;
            let mut labels = Vec::new();
            for i in 1..=n {
                for j in i + 1..=n {
                    labels.push((i, j));
                }
            }
            let index = |i: usize, j: usize| labels.binary_search(&(i, j)).unwrap();
            let mut edges = Vec::new();
            for &(i, j) in &labels {
                for k in j + 1..=n {
                    edges.push((index(i, j), index(j, k)));
                }
            }
            Graph::from_edges(labels.len(), &edges)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn naive_clique_number(g: &Graph) -> usize {
        // All-subsets oracle, for n <= 8.
        assert!(g.n() <= 8);
        let mut best = 0;
        for mask in 0u32..(1 << g.n()) {
            let vs: Vec<usize> = (0..g.n()).filter(|&v| mask >> v & 1 == 1).collect();
            let is_clique = vs
                .iter()
                .enumerate()
                .all(|(i, &u)| vs[i + 1..].iter().all(|&v| g.has_edge(u, v)));
            if is_clique {
                best = best.max(vs.len());
            }
        }
        best
    }

    #[test]
    fn parse_p3() {
        let g = parse_graph("p edge 3 2\ne 1 2\ne 2 3\n").unwrap();
        assert_eq!(g.n(), 3);
        assert_eq!(g.edges(), vec![(0, 1), (1, 2)]);
    }

    #[test]
    fn parse_single_vertex() {
        let g = parse_graph("p edge 1 0\n").unwrap();
        assert_eq!(g.n(), 1);
        assert_eq!(g.edge_count(), 0);
    }

    #[test]
    fn parse_rejects_self_loop() {
        let err = parse_graph("p edge 2 1\ne 1 1\n").unwrap_err();
        assert_eq!(err, GraphError::SelfLoop { line: 2, v: 1 });
    }

    #[test]
    fn parse_rejects_duplicates_and_range() {
        assert!(matches!(
            parse_graph("p edge 3 2\ne 1 2\ne 2 1\n").unwrap_err(),
            GraphError::DuplicateEdge { line: 3, u: 1, v: 2 }
        ));
        assert!(matches!(
            parse_graph("p edge 3 1\ne 1 4\n").unwrap_err(),
            GraphError::OutOfRange { line: 2, v: 4, n: 3 }
        ));
        assert!(matches!(
            parse_graph("c hi\ne 1 2\n").unwrap_err(),
            GraphError::EdgeBeforeHeader { line: 2 }
        ));
        assert!(matches!(
            parse_graph("p edge 3 2\ne 1 2\n").unwrap_err(),
            GraphError::EdgeCountMismatch { expected: 2, found: 1 }
        ));
    }

    #[test]
    fn roundtrip_is_bit_exact() {
        let g = generate(&Family::Random {
            n: 17,
            p: 0.4,
            seed: 11,
        })
        .unwrap();
        let text = g.to_text();
        let g2 = parse_graph(&text).unwrap();
        assert_eq!(g, g2);
        assert_eq!(text, g2.to_text());
    }

    #[test]
    fn generate_complete_and_biclique() {
        assert_eq!(generate(&Family::Complete(5)).unwrap().edge_count(), 10);
        assert_eq!(generate(&Family::Biclique(3, 3)).unwrap().edge_count(), 9);
        assert_eq!(generate(&Family::Grid(2, 3)).unwrap().edge_count(), 7);
    }

    #[test]
    fn generate_shift4() {
        // Pairs (1,2)(1,3)(1,4)(2,3)(2,4)(3,4); edges (i,j)-(j,k).
        let g = generate(&Family::Shift(4)).unwrap();
        assert_eq!(g.n(), 6);
        assert_eq!(g.edge_count(), 4);
        // (1,2)-(2,3), (1,2)-(2,4), (1,3)-(3,4), (2,3)-(3,4)
        assert!(g.has_edge(0, 3));
        assert!(g.has_edge(0, 4));
        assert!(g.has_edge(1, 5));
        assert!(g.has_edge(3, 5));
    }

    #[test]
    fn generate_rejects_bad_params() {
        assert!(generate(&Family::Cycle(2)).is_err());
        assert!(generate(&Family::Complete(0)).is_err());
        assert!(Family::parse("frobnicate", &[3.0], None).is_err());
        assert!(Family::parse("complete", &[3.5], None).is_err());
        assert!(Family::parse("biclique", &[2.0], None).is_err());
        assert!(generate(&Family::Random { n: 4, p: 1.5, seed: 0 }).is_err());
    }

    #[test]
    fn random_is_seed_deterministic() {
        let a = generate(&Family::Random { n: 12, p: 0.5, seed: 7 }).unwrap();
        let b = generate(&Family::Random { n: 12, p: 0.5, seed: 7 }).unwrap();
        let c = generate(&Family::Random { n: 12, p: 0.5, seed: 8 }).unwrap();
        assert_eq!(a, b);
        assert_ne!(a, c);
    }

    #[test]
    fn clique_number_examples() {
        assert_eq!(generate(&Family::Complete(5)).unwrap().clique_number(), 5);
        assert_eq!(generate(&Family::Cycle(5)).unwrap().clique_number(), 2);
        // Shift graphs are triangle-free.
        assert_eq!(generate(&Family::Shift(5)).unwrap().clique_number(), 2);
        assert_eq!(Graph::empty(0).clique_number(), 0);
        assert_eq!(Graph::empty(4).clique_number(), 1);
    }

    #[test]
    fn clique_number_matches_naive_oracle() {
        for seed in 0..30 {
            let n = 5 + (seed as usize % 4);
            let g = generate(&Family::Random {
                n,
                p: 0.2 + 0.1 * (seed % 7) as f64,
                seed,
            })
            .unwrap();
            assert_eq!(g.clique_number(), naive_clique_number(&g), "seed {seed}");
        }
    }

    #[test]
    fn has_clique_of_size_within() {
        let g = generate(&Family::Complete(4)).unwrap();
        let part = BitSet::from_iter(4, [0, 2, 3]);
        assert!(g.has_clique_of_size(&part, 3));
        assert!(!g.has_clique_of_size(&part, 4));
    }

    #[test]
    fn delta_examples() {
        let p3 = generate(&Family::Path(3)).unwrap();
        assert!(p3.neighbourhood_delta(0, 0).is_empty());
        // Leaves of P_3 are twins over {1}.
        assert!(p3.neighbourhood_delta(0, 2).is_empty());
        assert_eq!(p3.neighbourhood_delta(0, 1).to_vec(), vec![0, 1, 2]);
    }

    #[test]
    fn delta_symmetry() {
        let g = generate(&Family::Random { n: 9, p: 0.5, seed: 3 }).unwrap();
        for x in 0..9 {
            for y in 0..9 {
                assert_eq!(
                    g.neighbourhood_delta(x, y).to_vec(),
                    g.neighbourhood_delta(y, x).to_vec()
                );
            }
        }
    }

    #[test]
    fn ball_examples() {
        let c5 = generate(&Family::Cycle(5)).unwrap();
        assert_eq!(c5.ball(2, 0).to_vec(), vec![2]);
        assert_eq!(c5.ball(0, 1).len(), 3);
        assert_eq!(c5.ball(0, 2).len(), 5);
        // |ball(x, 1)| = deg(x) + 1
        let g = generate(&Family::Random { n: 11, p: 0.3, seed: 5 }).unwrap();
        for x in 0..11 {
            assert_eq!(g.ball(x, 1).len(), g.degree(x) + 1);
        }
    }

    #[test]
    fn min_symmetric_difference_examples() {
        let k4 = generate(&Family::Complete(4)).unwrap();
        assert_eq!(k4.min_symmetric_difference().unwrap(), ((0, 1), 0));
        let p3 = generate(&Family::Path(3)).unwrap();
        assert_eq!(p3.min_symmetric_difference().unwrap(), ((0, 2), 0));
        let c5 = generate(&Family::Cycle(5)).unwrap();
        assert_eq!(c5.min_symmetric_difference().unwrap().1, 2);
        assert!(Graph::empty(1).min_symmetric_difference().is_err());
    }
}
