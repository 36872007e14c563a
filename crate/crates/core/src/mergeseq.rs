//! Merge sequences: coarsening partition chains with monotone resolved-pair
//! sets, their validation, radius-r width, minimisation, restriction, and
//! structural predicates, plus the `.mseq` text format.
//!
//! A sequence holds `m` steps; step `i` carries the partition `P_i` and the
//! newly resolved pairs of that step. The cumulative resolved set `R_i` is the
//! union of the deltas of steps `1..=i`, so monotonicity holds by
//! construction. All values are immutable; operations are pure.

use crate::bitset::BitSet;
use crate::graph::{pair, Graph, Pair};
use std::collections::HashMap;
use thiserror::Error;

/// A set of unordered vertex pairs over `0..n-1`, bit-packed.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct PairSet {
    n: usize,
    bits: BitSet,
}

impl PairSet {
    pub fn new(n: usize) -> Self {
        PairSet {
            n,
            bits: BitSet::new(n * n),
        }
    }

    fn index(&self, p: Pair) -> usize {
        debug_assert!(p.0 < p.1 && p.1 < self.n);
        p.0 * self.n + p.1
    }

    pub fn insert(&mut self, p: Pair) {
        let i = self.index(p);
        self.bits.insert(i);
    }

    pub fn contains(&self, p: Pair) -> bool {
        self.bits.contains(self.index(p))
    }

    pub fn len(&self) -> usize {
        self.bits.len()
    }

    pub fn is_empty(&self) -> bool {
        self.bits.is_empty()
    }

    pub fn union_with(&mut self, other: &PairSet) {
        self.bits.union_with(&other.bits);
    }

    pub fn iter(&self) -> impl Iterator<Item = Pair> + '_ {
        let n = self.n;
        self.bits.iter().map(move |i| (i / n, i % n))
    }

    pub fn to_vec(&self) -> Vec<Pair> {
        self.iter().collect()
    }
}

impl PairSet {
    pub fn from_pairs<I: IntoIterator<Item = Pair>>(n: usize, pairs: I) -> Self {
        let mut s = PairSet::new(n);
        for p in pairs {
            s.insert(p);
        }
        s
    }
}

/// A partition of `0..n-1` in canonical form: vertices ascending within each
/// block, blocks ordered by their minimum element.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Partition {
    n: usize,
    blocks: Vec<Vec<usize>>,
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum PartitionError {
    #[error("vertex {0} out of range 0..{1}")]
    OutOfRange(usize, usize),
    #[error("vertex {0} appears in more than one block")]
    Overlap(usize),
    #[error("vertex {0} is missing from all blocks")]
    Missing(usize),
    #[error("empty block")]
    EmptyBlock,
}

impl Partition {
    /// The partition into singletons.
    pub fn singletons(n: usize) -> Self {
        Partition {
            n,
            blocks: (0..n).map(|v| vec![v]).collect(),
        }
    }

    /// The one-block partition `{V}`.
    pub fn whole(n: usize) -> Self {
        Partition {
            n,
            blocks: if n == 0 { vec![] } else { vec![(0..n).collect()] },
        }
    }

    /// Validates and canonicalises a block list.
    pub fn from_blocks(n: usize, blocks: Vec<Vec<usize>>) -> Result<Self, PartitionError> {
        let mut seen = vec![false; n];
        let mut canon: Vec<Vec<usize>> = Vec::with_capacity(blocks.len());
        for mut block in blocks {
            if block.is_empty() {
                return Err(PartitionError::EmptyBlock);
            }
            block.sort_unstable();
            for &v in &block {
                if v >= n {
                    return Err(PartitionError::OutOfRange(v, n));
                }
                if seen[v] {
                    return Err(PartitionError::Overlap(v));
                }
                seen[v] = true;
            }
            if block.windows(2).any(|w| w[0] == w[1]) {
                let d = block.windows(2).find(|w| w[0] == w[1]).unwrap()[0];
                return Err(PartitionError::Overlap(d));
            }
            canon.push(block);
        }
        if let Some(v) = seen.iter().position(|&s| !s) {
            return Err(PartitionError::Missing(v));
        }
        canon.sort_by_key(|b| b[0]);
        Ok(Partition { n, blocks: canon })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn num_blocks(&self) -> usize {
        self.blocks.len()
    }

    pub fn blocks(&self) -> &[Vec<usize>] {
        &self.blocks
    }

    pub fn block(&self, i: usize) -> &[usize] {
        &self.blocks[i]
    }

    /// Map from vertex to the index of its block.
    pub fn block_index(&self) -> Vec<usize> {
        let mut idx = vec![0; self.n];
        for (b, block) in self.blocks.iter().enumerate() {
            for &v in block {
                idx[v] = b;
            }
        }
        idx
    }

    /// Checks that every block of `finer` lies inside one block of `self`.
    /// On failure returns the index of an offending block of `finer`.
    pub fn is_coarsening_of(&self, finer: &Partition) -> Result<(), usize> {
        let idx = self.block_index();
        for (b, block) in finer.blocks.iter().enumerate() {
            let target = idx[block[0]];
            if block.iter().any(|&v| idx[v] != target) {
                return Err(b);
            }
        }
        Ok(())
    }

    /// Intersects blocks with `keep`, drops empty blocks, and renumbers
    /// vertices to `0..|keep|-1` by ascending original identifier.
    pub fn restrict(&self, keep: &BitSet) -> Partition {
        let ids = keep.to_vec();
        let mut new_id = HashMap::new();
        for (i, &v) in ids.iter().enumerate() {
            new_id.insert(v, i);
        }
        let blocks: Vec<Vec<usize>> = self
            .blocks
            .iter()
            .filter_map(|block| {
                let nb: Vec<usize> = block.iter().filter_map(|v| new_id.get(v).copied()).collect();
                if nb.is_empty() {
                    None
                } else {
                    Some(nb)
                }
            })
            .collect();
        Partition::from_blocks(ids.len(), blocks).expect("restriction of a partition is a partition")
    }
}

fn fmt_block_1indexed(block: &[usize]) -> String {
    block
        .iter()
        .map(|v| (v + 1).to_string())
        .collect::<Vec<_>>()
        .join(" ")
}

/// Why a sequence failed validation. Vertices are printed one-indexed.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Violation {
    #[error("vertex count mismatch: graph has {graph_n}, sequence has {seq_n}")]
    VertexCountMismatch { graph_n: usize, seq_n: usize },
    #[error("sequence has no steps")]
    Empty,
    #[error("step 1 is not the singleton partition")]
    FirstNotSingletons,
    #[error("final step is not the one-block partition")]
    LastNotWhole,
    #[error("step {step}: block {{{}}} of the previous partition is split", fmt_block_1indexed(block))]
    NotCoarsening { step: usize, block: Vec<usize> },
    #[error("step {step}: pair {} {} resolved twice", pair.0 + 1, pair.1 + 1)]
    DuplicateResolvedPair { step: usize, pair: Pair },
    #[error(
        "step {step}: blocks {{{}}} and {{{}}} mix unresolved edge {} {} with unresolved non-edge {} {}",
        fmt_block_1indexed(block_a),
        fmt_block_1indexed(block_b),
        unresolved_edge.0 + 1,
        unresolved_edge.1 + 1,
        unresolved_non_edge.0 + 1,
        unresolved_non_edge.1 + 1
    )]
    Homogeneity {
        step: usize,
        block_a: Vec<usize>,
        block_b: Vec<usize>,
        unresolved_edge: Pair,
        unresolved_non_edge: Pair,
    },
}

impl Violation {
    /// Input mistakes (as opposed to mathematical counterexamples).
    pub fn is_input_error(&self) -> bool {
        matches!(self, Violation::VertexCountMismatch { .. } | Violation::Empty)
    }
}

/// Construction-time errors for raw step data.
#[derive(Debug, Error, PartialEq, Eq)]
pub enum BuildError {
    #[error("sequence has no steps")]
    Empty,
    #[error("step {step}: {source}")]
    Partition {
        step: usize,
        source: PartitionError,
    },
    #[error("step {step}: partition is over {got} vertices, expected {expected}")]
    WrongUniverse { step: usize, got: usize, expected: usize },
    #[error("step {step}: resolved pair ({u}, {v}) is invalid")]
    BadPair { step: usize, u: usize, v: usize },
}

/// One step: the partition after the step's merges plus the pairs newly
/// resolved at this step.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Step {
    pub partition: Partition,
    pub delta: Vec<Pair>,
}

/// A chain of steps over a fixed vertex universe.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct MergeSequence {
    n: usize,
    steps: Vec<Step>,
}

/// Outcome of the Lemma-style synchronisation check.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SyncResult {
    Ok,
    Counterexample {
        step_i: usize,
        step_j: usize,
        block_x: Vec<usize>,
        block_y: Vec<usize>,
        resolved_pair: Pair,
        unresolved_pair: Pair,
    },
}

impl std::fmt::Display for SyncResult {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            SyncResult::Ok => write!(f, "sync ok"),
            SyncResult::Counterexample {
                step_i,
                step_j,
                block_x,
                block_y,
                resolved_pair,
                unresolved_pair,
            } => write!(
                f,
                "sync counterexample: at step {step_i}, blocks {{{}}} and {{{}}}: pair {} {} resolved at step {step_j} but {} {} is not",
                fmt_block_1indexed(block_x),
                fmt_block_1indexed(block_y),
                resolved_pair.0 + 1,
                resolved_pair.1 + 1,
                unresolved_pair.0 + 1,
                unresolved_pair.1 + 1
            ),
        }
    }
}

/// Outcome of the structural boundedness predicate.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum StructuralResult {
    Ok,
    Counterexample {
        step: usize,
        block: Vec<usize>,
        edge: Pair,
    },
}

impl std::fmt::Display for StructuralResult {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            StructuralResult::Ok => write!(f, "structurally bounded"),
            StructuralResult::Counterexample { step, block, edge } => write!(
                f,
                "not structurally bounded: step {step}, block {{{}}} is not independent and edge {} {} is unresolved",
                fmt_block_1indexed(block),
                edge.0 + 1,
                edge.1 + 1
            ),
        }
    }
}

impl MergeSequence {
    /// Builds a sequence from raw steps. Pairs are normalised to `u < v` and
    /// sorted; structural nonsense (bad partitions, out-of-range pairs) is
    /// rejected here, while the sequence axioms are left to `validate`.
    pub fn new(n: usize, steps: Vec<(Partition, Vec<(usize, usize)>)>) -> Result<Self, BuildError> {
        if steps.is_empty() {
            return Err(BuildError::Empty);
        }
        let mut out = Vec::with_capacity(steps.len());
        for (i, (partition, delta)) in steps.into_iter().enumerate() {
            let step_no = i + 1;
            if partition.n() != n {
                return Err(BuildError::WrongUniverse {
                    step: step_no,
                    got: partition.n(),
                    expected: n,
                });
            }
            let mut norm = Vec::with_capacity(delta.len());
            for (a, b) in delta {
                if a == b || a >= n || b >= n {
                    return Err(BuildError::BadPair { step: step_no, u: a, v: b });
                }
                norm.push(pair(a, b));
            }
            norm.sort_unstable();
            out.push(Step {
                partition,
                delta: norm,
            });
        }
        Ok(MergeSequence { n, steps: out })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Number of steps `m`.
    pub fn len(&self) -> usize {
        self.steps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.steps.is_empty()
    }

    pub fn steps(&self) -> &[Step] {
        &self.steps
    }

    pub fn partition(&self, step: usize) -> &Partition {
        &self.steps[step - 1].partition
    }

    /// Cumulative resolved sets `R_1, .., R_m`.
    pub fn resolved_sets(&self) -> Vec<PairSet> {
        let mut out = Vec::with_capacity(self.steps.len());
        let mut acc = PairSet::new(self.n);
        for step in &self.steps {
            for &p in &step.delta {
                acc.insert(p);
            }
            out.push(acc.clone());
        }
        out
    }

    /// The smallest valid witness: singletons, then one merge into `{V}`
    /// resolving the smaller of the edge/non-edge classes (edges on ties),
    /// or nothing if the graph is complete or edgeless.
    pub fn trivial(g: &Graph) -> MergeSequence {
        let n = g.n();
        assert!(n >= 1, "trivial sequence needs at least one vertex");
        if n == 1 {
            return MergeSequence {
                n,
                steps: vec![Step {
                    partition: Partition::singletons(1),
                    delta: vec![],
                }],
            };
        }
        let delta: Vec<Pair> = if g.is_complete() || g.is_edgeless() {
            vec![]
        } else {
            let edges = g.edges();
            let non_edges = g.non_edges();
            if edges.len() <= non_edges.len() {
                edges
            } else {
                non_edges
            }
        };
        MergeSequence {
            n,
            steps: vec![
                Step {
                    partition: Partition::singletons(n),
                    delta: vec![],
                },
                Step {
                    partition: Partition::whole(n),
                    delta,
                },
            ],
        }
    }

    /// Checks every sequence axiom against `g`; reports the first violation in
    /// a fixed scan order (step 1 shape, then per step: coarsening, duplicate
    /// deltas, homogeneity; finally the last partition).
    pub fn validate(&self, g: &Graph) -> Result<(), Violation> {
        if g.n() != self.n {
            return Err(Violation::VertexCountMismatch {
                graph_n: g.n(),
                seq_n: self.n,
            });
        }
        self.validate_impl(Some(g))
    }

    /// The graph-independent axioms only (shape, coarsening, delta
    /// disjointness) — everything except homogeneity.
    pub fn validate_structure(&self) -> Result<(), Violation> {
        self.validate_impl(None)
    }

    fn validate_impl(&self, g: Option<&Graph>) -> Result<(), Violation> {
        if self.steps.is_empty() {
            return Err(Violation::Empty);
        }
        if self.steps[0].partition != Partition::singletons(self.n) {
            return Err(Violation::FirstNotSingletons);
        }
        let mut resolved = PairSet::new(self.n);
        for (i, step) in self.steps.iter().enumerate() {
            let step_no = i + 1;
            if i > 0 {
                if let Err(b) = step.partition.is_coarsening_of(&self.steps[i - 1].partition) {
                    return Err(Violation::NotCoarsening {
                        step: step_no,
                        block: self.steps[i - 1].partition.block(b).to_vec(),
                    });
                }
            }
            for w in step.delta.windows(2) {
                if w[0] == w[1] {
                    return Err(Violation::DuplicateResolvedPair {
                        step: step_no,
                        pair: w[0],
                    });
                }
            }
            for &p in &step.delta {
                if resolved.contains(p) {
                    return Err(Violation::DuplicateResolvedPair { step: step_no, pair: p });
                }
                resolved.insert(p);
            }
            if let Some(g) = g {
                if let Some(v) = homogeneity_violation(g, &step.partition, &resolved, step_no) {
                    return Err(v);
                }
            }
        }
        if self.steps.last().unwrap().partition != Partition::whole(self.n) {
            return Err(Violation::LastNotWhole);
        }
        Ok(())
    }

    /// Radius-`r` width: the maximum, over steps `i >= 2` and vertices `v`, of
    /// the number of blocks of `P_(i-1)` met by the radius-`r` ball of `v` in
    /// the resolved-pair graph `(V, R_i)`. The block containing `v` always
    /// counts. Zero when the sequence has a single step.
    pub fn width(&self, r: usize) -> usize {
        if self.steps.len() <= 1 {
            return 0;
        }
        let n = self.n;
        let mut radj: Vec<BitSet> = (0..n).map(|_| BitSet::new(n)).collect();
        for &(u, v) in &self.steps[0].delta {
            radj[u].insert(v);
            radj[v].insert(u);
        }
        let mut best = 0;
        for i in 1..self.steps.len() {
            for &(u, v) in &self.steps[i].delta {
                radj[u].insert(v);
                radj[v].insert(u);
            }
            let prev = &self.steps[i - 1].partition;
            let idx = prev.block_index();
            for v in 0..n {
                let mut seen = BitSet::new(n);
                seen.insert(v);
                let mut frontier = seen.clone();
                for _ in 0..r {
                    let mut next = BitSet::new(n);
                    for u in frontier.iter() {
                        next.union_with(&radj[u]);
                    }
                    next.difference_with(&seen);
                    if next.is_empty() {
                        break;
                    }
                    seen.union_with(&next);
                    frontier = next;
                }
                let mut blocks_met = BitSet::new(prev.num_blocks());
                for u in seen.iter() {
                    blocks_met.insert(idx[u]);
                }
                best = best.max(blocks_met.len());
            }
        }
        best
    }

    /// Rebuilds the resolved deltas as the forced-resolution family: nothing
    /// at step 1, and afterwards, per mixed block pair, exactly the one full
    /// class (unresolved edges or unresolved non-edges) that the input's
    /// resolved set already covers — with ties broken towards the class with
    /// fewer pairs and then towards edges. The output's resolved sets are
    /// inclusion-wise minimal for the partition chain and never exceed the
    /// input's, so the width cannot increase at any radius.
    pub fn minimize(&self, g: &Graph) -> Result<MergeSequence, Violation> {
        self.validate(g)?;
        let input_cumulative = self.resolved_sets();
        let mut resolved = PairSet::new(self.n);
        let mut steps = Vec::with_capacity(self.steps.len());
        for (i, step) in self.steps.iter().enumerate() {
            let mut delta: Vec<Pair> = Vec::new();
            if i > 0 {
                let input_now = &input_cumulative[i];
                for (_, _, edges, non_edges) in mixed_block_pairs(g, &step.partition, &resolved) {
                    let edges_in = edges.iter().all(|&p| input_now.contains(p));
                    let non_edges_in = non_edges.iter().all(|&p| input_now.contains(p));
                    let class = match (edges_in, non_edges_in) {
                        (true, false) => edges,
                        (false, true) => non_edges,
                        (true, true) => {
                            if edges.len() <= non_edges.len() {
                                edges
                            } else {
                                non_edges
                            }
                        }
                        (false, false) => {
                            unreachable!("validated input resolves one class per mixed pair")
                        }
                    };
                    delta.extend(class);
                }
            }
            delta.sort_unstable();
            for &p in &delta {
                resolved.insert(p);
            }
            steps.push(Step {
                partition: step.partition.clone(),
                delta,
            });
        }
        let out = MergeSequence { n: self.n, steps };
        debug_assert_eq!(out.validate(g), Ok(()));
        Ok(out)
    }

    /// Checks the synchronisation property of minimal sequences: pairs between
    /// the same two blocks that are both unresolved at step `i` must become
    /// resolved at the same step, if ever. Returns the first counterexample.
    pub fn check_sync(&self, g: &Graph) -> Result<SyncResult, Violation> {
        self.validate(g)?;
        // Step at which each pair gets resolved (usize::MAX = never).
        let mut time = HashMap::new();
        for (i, step) in self.steps.iter().enumerate() {
            for &p in &step.delta {
                time.insert(p, i + 1);
            }
        }
        let at = |p: Pair| time.get(&p).copied().unwrap_or(usize::MAX);
        for (i, step) in self.steps.iter().enumerate() {
            let step_no = i + 1;
            let part = &step.partition;
            for a in 0..part.num_blocks() {
                for b in a..part.num_blocks() {
                    let mut group: Vec<Pair> = Vec::new();
                    pairs_between(part.block(a), part.block(b), a == b, |p| group.push(p));
                    group.retain(|&p| at(p) > step_no);
                    group.sort_unstable();
                    let Some(j) = group.iter().map(|&p| at(p)).min() else {
                        continue;
                    };
                    if j == usize::MAX || group.iter().all(|&p| at(p) == j) {
                        continue;
                    }
                    let resolved_pair = *group.iter().find(|&&p| at(p) == j).unwrap();
                    let unresolved_pair = *group.iter().find(|&&p| at(p) != j).unwrap();
                    return Ok(SyncResult::Counterexample {
                        step_i: step_no,
                        step_j: j,
                        block_x: part.block(a).to_vec(),
                        block_y: part.block(b).to_vec(),
                        resolved_pair,
                        unresolved_pair,
                    });
                }
            }
        }
        Ok(SyncResult::Ok)
    }

    /// Restriction to the induced subgraph on `keep`: partitions and deltas
    /// intersected, steps that change nothing (same restricted partition and
    /// empty restricted delta) dropped, vertices renumbered ascending. Returns
    /// the sequence together with the map from new to original identifiers.
    pub fn restrict(&self, g: &Graph, keep: &BitSet) -> Result<(MergeSequence, Vec<usize>), Violation> {
        self.validate(g)?;
        assert!(!keep.is_empty(), "restriction to an empty set");
        let ids = keep.to_vec();
        let mut new_id = HashMap::new();
        for (i, &v) in ids.iter().enumerate() {
            new_id.insert(v, i);
        }
        let mut steps: Vec<Step> = Vec::new();
        let mut prev_raw: Option<Partition> = None;
        for step in &self.steps {
            let part = step.partition.restrict(keep);
            let mut delta: Vec<Pair> = step
                .delta
                .iter()
                .filter(|(u, v)| keep.contains(*u) && keep.contains(*v))
                .map(|&(u, v)| pair(new_id[&u], new_id[&v]))
                .collect();
            delta.sort_unstable();
            let noop = prev_raw.as_ref() == Some(&part) && delta.is_empty();
            prev_raw = Some(part.clone());
            if noop {
                continue;
            }
            steps.push(Step { partition: part, delta });
        }
        let out = MergeSequence { n: ids.len(), steps };
        debug_assert_eq!(out.validate(&g.induced(keep).0), Ok(()));
        Ok((out, ids))
    }

    /// Structural boundedness: every block that is not an independent set of
    /// `g` must have all incident edges resolved at its step.
    pub fn is_structurally_bounded(&self, g: &Graph) -> Result<StructuralResult, Violation> {
        self.validate(g)?;
        let mut resolved = PairSet::new(self.n);
        for (i, step) in self.steps.iter().enumerate() {
            for &p in &step.delta {
                resolved.insert(p);
            }
            for block in step.partition.blocks() {
                let independent = block
                    .iter()
                    .enumerate()
                    .all(|(bi, &u)| block[bi + 1..].iter().all(|&v| !g.has_edge(u, v)));
                if independent {
                    continue;
                }
                let mut offending: Option<Pair> = None;
                'scan: for &u in block {
                    for v in g.neighbors(u).iter() {
                        let p = pair(u, v);
                        if !resolved.contains(p) {
                            offending = Some(p);
                            break 'scan;
                        }
                    }
                }
                if let Some(edge) = offending {
                    return Ok(StructuralResult::Counterexample {
                        step: i + 1,
                        block: block.to_vec(),
                        edge,
                    });
                }
            }
        }
        Ok(StructuralResult::Ok)
    }

    /// Moves any step-1 resolutions into step 2, leaving `R_1` empty and every
    /// later cumulative set unchanged. No-op for single-step sequences.
    pub fn reset_first_resolutions(&self) -> MergeSequence {
        if self.steps.len() <= 1 || self.steps[0].delta.is_empty() {
            return self.clone();
        }
        let mut steps = self.steps.clone();
        let moved = std::mem::take(&mut steps[0].delta);
        steps[1].delta.extend(moved);
        steps[1].delta.sort_unstable();
        MergeSequence { n: self.n, steps }
    }

    /// Canonical `.mseq` text form.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        out.push_str(&format!("p mseq {} {}\n", self.n, self.steps.len()));
        for (i, step) in self.steps.iter().enumerate() {
            out.push_str(&format!("s {}\n", i + 1));
            for block in step.partition.blocks() {
                out.push_str(&format!("b {}\n", fmt_block_1indexed(block)));
            }
            for &(u, v) in &step.delta {
                out.push_str(&format!("r {} {}\n", u + 1, v + 1));
            }
        }
        out
    }
}

/// Calls `f` on every unordered pair with one endpoint in each block (all
/// pairs of distinct vertices within the block when `same` is set).
fn pairs_between(a: &[usize], b: &[usize], same: bool, mut f: impl FnMut(Pair)) {
    if same {
        for (i, &u) in a.iter().enumerate() {
            for &v in &a[i + 1..] {
                f(pair(u, v));
            }
        }
    } else {
        for &u in a {
            for &v in b {
                f(pair(u, v));
            }
        }
    }
}

/// First homogeneity violation of `partition` against `resolved`, if any.
fn homogeneity_violation(
    g: &Graph,
    partition: &Partition,
    resolved: &PairSet,
    step_no: usize,
) -> Option<Violation> {
    for a in 0..partition.num_blocks() {
        for b in a..partition.num_blocks() {
            let mut unresolved_edge: Option<Pair> = None;
            let mut unresolved_non_edge: Option<Pair> = None;
            pairs_between(partition.block(a), partition.block(b), a == b, |p| {
                if resolved.contains(p) {
                    return;
                }
                if g.has_edge(p.0, p.1) {
                    unresolved_edge.get_or_insert(p);
                } else {
                    unresolved_non_edge.get_or_insert(p);
                }
            });
            if let (Some(e), Some(ne)) = (unresolved_edge, unresolved_non_edge) {
                return Some(Violation::Homogeneity {
                    step: step_no,
                    block_a: partition.block(a).to_vec(),
                    block_b: partition.block(b).to_vec(),
                    unresolved_edge: e,
                    unresolved_non_edge: ne,
                });
            }
        }
    }
    None
}

/// All block pairs of `partition` whose unresolved pairs mix edges and
/// non-edges, with the two classes listed (canonical pair order).
fn mixed_block_pairs(
    g: &Graph,
    partition: &Partition,
    resolved: &PairSet,
) -> Vec<(usize, usize, Vec<Pair>, Vec<Pair>)> {
    let mut out = Vec::new();
    for a in 0..partition.num_blocks() {
        for b in a..partition.num_blocks() {
            let mut edges = Vec::new();
            let mut non_edges = Vec::new();
            pairs_between(partition.block(a), partition.block(b), a == b, |p| {
                if resolved.contains(p) {
                    return;
                }
                if g.has_edge(p.0, p.1) {
                    edges.push(p);
                } else {
                    non_edges.push(p);
                }
            });
            if !edges.is_empty() && !non_edges.is_empty() {
                edges.sort_unstable();
                non_edges.sort_unstable();
                out.push((a, b, edges, non_edges));
            }
        }
    }
    out
}

/// Parse errors for the `.mseq` format.
#[derive(Debug, Error, PartialEq, Eq)]
pub enum MseqParseError {
    #[error("line {line}: malformed line: {text:?}")]
    Malformed { line: usize, text: String },
    #[error("line {line}: expected header `p mseq <n> <m>`")]
    BadHeader { line: usize },
    #[error("missing header")]
    MissingHeader,
    #[error("line {line}: expected step {expected}, found {found}")]
    StepOutOfOrder { line: usize, expected: usize, found: usize },
    #[error("line {line}: data outside any step")]
    OutsideStep { line: usize },
    #[error("step {step}: {source}")]
    Partition { step: usize, source: PartitionError },
    #[error("line {line}: vertex {v} out of range 1..={n}")]
    OutOfRange { line: usize, v: usize, n: usize },
    #[error("step count mismatch: header says {expected}, found {found}")]
    StepCountMismatch { expected: usize, found: usize },
    #[error("{0}")]
    Build(#[from] BuildError),
}

type RawStep = (Vec<Vec<usize>>, Vec<(usize, usize)>);

/// Parses the `.mseq` format; block and delta lines may arrive in any order
/// within a step and are canonicalised.
pub fn parse_mseq(text: &str) -> Result<MergeSequence, MseqParseError> {
    let mut header: Option<(usize, usize)> = None;
    let mut raw_steps: Vec<RawStep> = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        let line = raw.trim();
        if line.is_empty() || line.starts_with('c') {
            continue;
        }
        let fields: Vec<&str> = line.split_ascii_whitespace().collect();
        let malformed = || MseqParseError::Malformed {
            line: line_no,
            text: raw.to_string(),
        };
        match fields[0] {
            "p" => {
                if header.is_some() || fields.len() != 4 || fields[1] != "mseq" {
                    return Err(MseqParseError::BadHeader { line: line_no });
                }
                let n = fields[2].parse().map_err(|_| malformed())?;
                let m = fields[3].parse().map_err(|_| malformed())?;
                header = Some((n, m));
            }
            "s" => {
                if header.is_none() || fields.len() != 2 {
                    return Err(malformed());
                }
                let found: usize = fields[1].parse().map_err(|_| malformed())?;
                if found != raw_steps.len() + 1 {
                    return Err(MseqParseError::StepOutOfOrder {
                        line: line_no,
                        expected: raw_steps.len() + 1,
                        found,
                    });
                }
                raw_steps.push((Vec::new(), Vec::new()));
            }
            "b" | "r" => {
                let (n, _) = header.ok_or(MseqParseError::MissingHeader)?;
                let current = raw_steps.last_mut().ok_or(MseqParseError::OutsideStep { line: line_no })?;
                let mut vs = Vec::with_capacity(fields.len() - 1);
                for f in &fields[1..] {
                    let v: usize = f.parse().map_err(|_| malformed())?;
                    if v < 1 || v > n {
                        return Err(MseqParseError::OutOfRange { line: line_no, v, n });
                    }
                    vs.push(v - 1);
                }
                if fields[0] == "b" {
                    if vs.is_empty() {
                        return Err(malformed());
                    }
                    current.0.push(vs);
                } else {
                    if vs.len() != 2 {
                        return Err(malformed());
                    }
                    current.1.push((vs[0], vs[1]));
                }
            }
            _ => return Err(malformed()),
        }
    }
    let (n, m) = header.ok_or(MseqParseError::MissingHeader)?;
    if raw_steps.len() != m {
        return Err(MseqParseError::StepCountMismatch {
            expected: m,
            found: raw_steps.len(),
        });
    }
    let mut steps = Vec::with_capacity(m);
    for (i, (blocks, delta)) in raw_steps.into_iter().enumerate() {
        let partition = Partition::from_blocks(n, blocks)
            .map_err(|source| MseqParseError::Partition { step: i + 1, source })?;
        steps.push((partition, delta));
    }
    Ok(MergeSequence::new(n, steps)?)
}
