//! Exact merge-width at small scale, and the binary-merge normal form.
//!
//! The search explores chains in which every step merges exactly two blocks.
//! This loses no generality: a step merging several blocks can be split into a
//! chain of pairwise merges all carrying the step's resolved pairs up front,
//! and splitting never increases the width at any radius (the intermediate
//! partitions are coarser than the original previous partition, so each ball
//! meets at most as many of their blocks). Resolved pairs are added only when
//! a merge leaves a block pair mixed, in which case exactly one of the two
//! classes (unresolved edges / unresolved non-edges) must be resolved — the
//! search branches over that choice. Since the width is pointwise monotone in
//! the resolved sets, such forced-only families dominate all others.

use crate::graph::{Graph, Pair};
use crate::mergeseq::{MergeSequence, PairSet, Partition, Violation};
use std::collections::HashMap;
use thiserror::Error;

/// Default cap on explored search states.
pub const DEFAULT_BUDGET: u64 = 10_000_000;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum SolveError {
    #[error("cannot solve the empty graph")]
    EmptyGraph,
    #[error("invalid sequence: {0}")]
    InvalidSequence(#[from] Violation),
}

/// Result of an exact search.
#[derive(Debug, Clone)]
pub struct SolveResult {
    pub radius: usize,
    /// The optimum when `optimal`, otherwise the best proven upper bound.
    pub value: usize,
    pub optimal: bool,
    /// A sequence achieving `value` at this radius.
    pub witness: MergeSequence,
    /// Search states expanded.
    pub nodes: u64,
}

/// Splits every multi-merge step into a chain of two-block merges; the first
/// sub-step carries all pairs resolved by the original step, later sub-steps
/// none. Steps that merge nothing are folded into the next merging step, and
/// resolutions after the final merge are dropped (they can no longer affect
/// any width term). The width never increases at any radius.
pub fn normalize_binary(s: &MergeSequence) -> Result<MergeSequence, Violation> {
    s.validate_structure()?;
    let n = s.n();
    if n <= 1 || s.len() == 1 {
        return Ok(MergeSequence::new(n, vec![(Partition::singletons(n), vec![])]).unwrap());
    }
    let mut out: Vec<(Partition, Vec<(usize, usize)>)> =
        vec![(Partition::singletons(n), Vec::new())];
    let mut current: Vec<Vec<usize>> = (0..n).map(|v| vec![v]).collect();
    let mut pending: Vec<Pair> = s.steps()[0].delta.clone();
    for step in &s.steps()[1..] {
        let target = &step.partition;
        let mut delta: Vec<Pair> = std::mem::take(&mut pending);
        delta.extend(step.delta.iter().copied());
        // Group current blocks (by content) under their target block.
        let tidx = target.block_index();
        let mut groups: HashMap<usize, Vec<Vec<usize>>> = HashMap::new();
        for block in &current {
            groups.entry(tidx[block[0]]).or_default().push(block.clone());
        }
        let mut merge_plan: Vec<Vec<Vec<usize>>> = groups
            .into_values()
            .filter(|members| members.len() >= 2)
            .collect();
        if merge_plan.is_empty() {
            // No merge at this step; carry the resolutions forward.
            pending = delta;
            continue;
        }
        merge_plan.sort_by_key(|members| members[0][0]);
        let mut first = true;
        for members in merge_plan {
            // Blocks of one group, ascending by minimum vertex; distinct
            // blocks always have distinct minima.
            let mut acc = members[0].clone();
            for other in &members[1..] {
                let mut merged = acc.clone();
                merged.extend(other.iter().copied());
                merged.sort_unstable();
                let mut blocks: Vec<Vec<usize>> = current
                    .iter()
                    .filter(|blk| blk[0] != acc[0] && blk[0] != other[0])
                    .cloned()
                    .collect();
                blocks.push(merged.clone());
                let partition = Partition::from_blocks(n, blocks).unwrap();
                let step_delta = if first { delta.clone() } else { Vec::new() };
                first = false;
                out.push((partition.clone(), step_delta));
                current = partition.blocks().to_vec();
                acc = merged;
            }
        }
    }
    let result = MergeSequence::new(n, out).unwrap();
    debug_assert_eq!(result.validate_structure(), Ok(()));
    Ok(result)
}

/// Max over vertices of the number of `prev` blocks met by the radius-`r`
/// ball in the graph of `resolved` pairs.
fn width_term(n: usize, prev: &Partition, resolved: &PairSet, r: usize) -> usize {
    let mut radj: Vec<Vec<usize>> = vec![Vec::new(); n];
    for (u, v) in resolved.iter() {
        radj[u].push(v);
        radj[v].push(u);
    }
    let idx = prev.block_index();
    let mut best = 0;
    let mut seen = vec![false; n];
    for v in 0..n {
        seen.iter_mut().for_each(|s| *s = false);
        seen[v] = true;
        let mut frontier = vec![v];
        for _ in 0..r {
            let mut next = Vec::new();
            for &u in &frontier {
                for &w in &radj[u] {
                    if !seen[w] {
                        seen[w] = true;
                        next.push(w);
                    }
                }
            }
            if next.is_empty() {
                break;
            }
            frontier = next;
        }
        let mut blocks_met = vec![false; prev.num_blocks()];
        let mut count = 0;
        for (u, &s) in seen.iter().enumerate() {
            if s && !blocks_met[idx[u]] {
                blocks_met[idx[u]] = true;
                count += 1;
            }
        }
        best = best.max(count);
    }
    best
}

#[derive(Clone, Copy)]
enum MemoEntry {
    Exact(usize),
    AtLeast(usize),
}

struct Search<'a> {
    g: &'a Graph,
    r: usize,
    budget: u64,
    nodes: u64,
    poisoned: bool,
    memo: HashMap<(Partition, PairSet), MemoEntry>,
}

impl<'a> Search<'a> {
    /// Children of a state: all two-block merges, each combined with every
    /// forced class choice for the block pairs the merge turned mixed.
    /// Returned in canonical order.
    fn children(&self, part: &Partition, resolved: &PairSet) -> Vec<(Partition, PairSet)> {
        let n = self.g.n();
        let mut out = Vec::new();
        let blocks = part.blocks();
        for a in 0..blocks.len() {
            for b in a + 1..blocks.len() {
                let mut merged = blocks[a].clone();
                merged.extend(blocks[b].iter().copied());
                merged.sort_unstable();
                let mut new_blocks: Vec<Vec<usize>> = Vec::with_capacity(blocks.len() - 1);
                for (i, blk) in blocks.iter().enumerate() {
                    if i != a && i != b {
                        new_blocks.push(blk.clone());
                    }
                }
                new_blocks.push(merged.clone());
                let child = Partition::from_blocks(n, new_blocks).unwrap();
                // Mixed pairs can only involve the merged block.
                let cidx = child.block_index();
                let merged_id = cidx[merged[0]];
                let mut decisions: Vec<(Vec<Pair>, Vec<Pair>)> = Vec::new();
                for other in 0..child.num_blocks() {
                    let mut edges = Vec::new();
                    let mut non_edges = Vec::new();
                    if other == merged_id {
                        let ba = child.block(merged_id);
                        for (i, &u) in ba.iter().enumerate() {
                            for &v in &ba[i + 1..] {
                                classify(self.g, resolved, u, v, &mut edges, &mut non_edges);
                            }
                        }
                    } else {
                        for &u in child.block(other) {
                            for &v in child.block(merged_id) {
                                classify(self.g, resolved, u, v, &mut edges, &mut non_edges);
                            }
                        }
                    }
                    if !edges.is_empty() && !non_edges.is_empty() {
                        decisions.push((edges, non_edges));
                    }
                }
                let d = decisions.len();
                for combo in 0..(1u32 << d) {
                    let mut new_resolved = resolved.clone();
                    for (i, (edges, non_edges)) in decisions.iter().enumerate() {
                        let class = if combo >> i & 1 == 0 { edges } else { non_edges };
                        for &p in class {
                            new_resolved.insert(p);
                        }
                    }
                    out.push((child.clone(), new_resolved));
                }
            }
        }
        out
    }

    /// Minimum over completions of the maximum future width term, starting
    /// from `part` with resolved set `resolved`. Returns `(value, exact)`;
    /// when not exact, `value` is a lower bound that is at least `ub`.
    fn search(&mut self, part: &Partition, resolved: &PairSet, ub: usize) -> (usize, bool) {
        if part.num_blocks() <= 1 {
            return (0, true);
        }
        if self.poisoned {
            return (ub, false);
        }
        let key = (part.clone(), resolved.clone());
        match self.memo.get(&key) {
            Some(MemoEntry::Exact(v)) => return (*v, true),
            Some(MemoEntry::AtLeast(b)) if *b >= ub => return (*b, false),
            _ => {}
        }
        self.nodes += 1;
        if self.nodes > self.budget {
            self.poisoned = true;
            return (ub, false);
        }
        let mut best = usize::MAX;
        let mut lower = usize::MAX;
        let mut pruned = false;
        for (child, new_resolved) in self.children(part, resolved) {
            let term = width_term(self.g.n(), part, &new_resolved, self.r);
            let cutoff = ub.min(best);
            if term >= cutoff {
                pruned = true;
                lower = lower.min(term);
                continue;
            }
            let (sub, sub_exact) = self.search(&child, &new_resolved, cutoff);
            if self.poisoned {
                return (ub, false);
            }
            let val = term.max(sub);
            if sub_exact {
                best = best.min(val);
                lower = lower.min(val);
            } else {
                pruned = true;
                lower = lower.min(val);
            }
        }
        if best < ub {
            self.memo.insert(key, MemoEntry::Exact(best));
            (best, true)
        } else {
            // Everything relevant was at or above the cutoff, so `lower`
            // (the least of all child lower bounds) is a sound bound >= ub.
            debug_assert!(pruned || best < usize::MAX);
            let bound = lower.min(best);
            let improved = match self.memo.get(&key) {
                Some(MemoEntry::AtLeast(b)) => bound > *b,
                Some(MemoEntry::Exact(_)) => false,
                None => true,
            };
            if improved {
                self.memo.insert(key, MemoEntry::AtLeast(bound));
            }
            (bound, false)
        }
    }

    /// Rebuilds an optimal chain by walking exact memo entries.
    fn reconstruct(&self, value: usize) -> Vec<(Partition, Vec<Pair>)> {
        let n = self.g.n();
        let mut part = Partition::singletons(n);
        let mut resolved = PairSet::new(n);
        let mut steps: Vec<(Partition, Vec<Pair>)> = vec![(part.clone(), Vec::new())];
        let mut remaining = value;
        while part.num_blocks() > 1 {
            let mut advanced = false;
            for (child, new_resolved) in self.children(&part, &resolved) {
                let term = width_term(n, &part, &new_resolved, self.r);
                if term > remaining {
                    continue;
                }
                let sub = if child.num_blocks() <= 1 {
                    Some(0)
                } else {
                    match self.memo.get(&(child.clone(), new_resolved.clone())) {
                        Some(MemoEntry::Exact(v)) => Some(*v),
                        _ => None,
                    }
                };
                let Some(sub) = sub else { continue };
                if sub <= remaining {
                    let delta: Vec<Pair> = new_resolved
                        .iter()
                        .filter(|&p| !resolved.contains(p))
                        .collect();
                    steps.push((child.clone(), delta));
                    // The subtree realises exactly `sub`; the chain maximum
                    // stays at the original optimum.
                    remaining = sub;
                    part = child;
                    resolved = new_resolved;
                    advanced = true;
                    break;
                }
            }
            assert!(advanced, "optimal chain reconstruction failed");
        }
        steps
    }
}

fn classify(
    g: &Graph,
    resolved: &PairSet,
    u: usize,
    v: usize,
    edges: &mut Vec<Pair>,
    non_edges: &mut Vec<Pair>,
) {
    let p = crate::graph::pair(u, v);
    if resolved.contains(p) {
        return;
    }
    if g.has_edge(p.0, p.1) {
        edges.push(p);
    } else {
        non_edges.push(p);
    }
}

/// Exact radius-`r` merge-width by branch and bound over binary merge chains
/// with forced resolutions. With the node budget exhausted, returns the best
/// upper bound found, flagged non-optimal.
pub fn exact_merge_width(g: &Graph, r: usize, budget: Option<u64>) -> Result<SolveResult, SolveError> {
    let n = g.n();
    if n == 0 {
        return Err(SolveError::EmptyGraph);
    }
    let trivial = MergeSequence::trivial(g);
    let incumbent = normalize_binary(&trivial.minimize(g).expect("trivial sequence validates"))
        .expect("normalised trivial sequence is well-formed");
    let incumbent_width = incumbent.width(r);
    if n == 1 || incumbent_width <= 1 {
        // n >= 2 forces width >= 1, so the incumbent is already optimal.
        return Ok(SolveResult {
            radius: r,
            value: incumbent_width,
            optimal: true,
            witness: incumbent,
            nodes: 0,
        });
    }
    let mut search = Search {
        g,
        r,
        budget: budget.unwrap_or(DEFAULT_BUDGET),
        nodes: 0,
        poisoned: false,
        memo: HashMap::new(),
    };
    let root_part = Partition::singletons(n);
    let root_resolved = PairSet::new(n);
    let (value, exact) = search.search(&root_part, &root_resolved, incumbent_width);
    let result = if search.poisoned {
        SolveResult {
            radius: r,
            value: incumbent_width,
            optimal: false,
            witness: incumbent,
            nodes: search.nodes,
        }
    } else if exact && value < incumbent_width {
        let steps = search.reconstruct(value);
        let witness = MergeSequence::new(
            n,
            steps
                .into_iter()
                .map(|(p, d)| (p, d.into_iter().collect()))
                .collect(),
        )
        .unwrap();
        debug_assert_eq!(witness.validate(g), Ok(()));
        debug_assert_eq!(witness.width(r), value);
        SolveResult {
            radius: r,
            value,
            optimal: true,
            witness,
            nodes: search.nodes,
        }
    } else {
        // The search proved nothing beats the incumbent.
        SolveResult {
            radius: r,
            value: incumbent_width,
            optimal: true,
            witness: incumbent,
            nodes: search.nodes,
        }
    };
    debug_assert_eq!(result.witness.width(r), result.value);
    Ok(result)
}
