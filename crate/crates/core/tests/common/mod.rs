//! Shared test fixtures: the naive width oracle, graph enumeration up to
//! isomorphism, the random valid-sequence generator, and the test corpus.
#![allow(dead_code)]

use mwkit::graph::{generate, pair, Family, Graph, Pair};
use mwkit::mergeseq::{MergeSequence, Partition};
use mwkit::rng::SplitMix64;
use std::collections::HashSet;

// ---------------------------------------------------------------------------
// Naive merge-width oracle
// ---------------------------------------------------------------------------

/// Exhaustive reference for the radius-`r` merge-width: every chain of
/// strictly coarsening partitions from singletons to one block, resolving per
/// mixed block pair exactly one class, branching over both classes. No
/// memoisation, no binary restriction, no pruning; independent of the solver.
pub fn naive_merge_width(g: &Graph, r: usize) -> usize {
    let n = g.n();
    assert!(n >= 1);
    if n == 1 {
        return 0;
    }
    let blocks: Vec<Vec<usize>> = (0..n).map(|v| vec![v]).collect();
    naive_rec(g, &blocks, &HashSet::new(), r)
}

fn naive_rec(g: &Graph, blocks: &[Vec<usize>], resolved: &HashSet<Pair>, r: usize) -> usize {
    if blocks.len() == 1 {
        return 0;
    }
    let mut best = usize::MAX;
    // All ways to merge groups of blocks (every non-discrete set partition of
    // the block list).
    for grouping in set_partitions(blocks.len()) {
        if grouping.len() == blocks.len() {
            continue;
        }
        let new_blocks: Vec<Vec<usize>> = grouping
            .iter()
            .map(|group| {
                let mut b: Vec<usize> = group
                    .iter()
                    .flat_map(|&i| blocks[i].iter().copied())
                    .collect();
                b.sort_unstable();
                b
            })
            .collect();
        // Mixed block pairs of the new partition and their two classes.
        let mut decisions: Vec<(Vec<Pair>, Vec<Pair>)> = Vec::new();
        for a in 0..new_blocks.len() {
            for b in a..new_blocks.len() {
                let mut edges = Vec::new();
                let mut non_edges = Vec::new();
                let mut push = |p: Pair| {
                    if resolved.contains(&p) {
                        return;
                    }
                    if g.has_edge(p.0, p.1) {
                        edges.push(p);
                    } else {
                        non_edges.push(p);
                    }
                };
                if a == b {
                    for (i, &u) in new_blocks[a].iter().enumerate() {
                        for &v in &new_blocks[a][i + 1..] {
                            push(pair(u, v));
                        }
                    }
                } else {
                    for &u in &new_blocks[a] {
                        for &v in &new_blocks[b] {
                            push(pair(u, v));
                        }
                    }
                }
                if !edges.is_empty() && !non_edges.is_empty() {
                    decisions.push((edges, non_edges));
                }
            }
        }
        for combo in 0u32..(1 << decisions.len()) {
            let mut new_resolved = resolved.clone();
            for (i, (edges, non_edges)) in decisions.iter().enumerate() {
                let class = if combo >> i & 1 == 0 { edges } else { non_edges };
                new_resolved.extend(class.iter().copied());
            }
            let term = naive_term(g.n(), blocks, &new_resolved, r);
            let sub = naive_rec(g, &new_blocks, &new_resolved, r);
            best = best.min(term.max(sub));
        }
    }
    best
}

/// Max over vertices of previous-partition blocks met by the radius-`r` ball
/// in the resolved-pair graph.
fn naive_term(n: usize, prev_blocks: &[Vec<usize>], resolved: &HashSet<Pair>, r: usize) -> usize {
    let mut adj: Vec<Vec<usize>> = vec![Vec::new(); n];
    for &(u, v) in resolved {
        adj[u].push(v);
        adj[v].push(u);
    }
    let mut block_of = vec![0usize; n];
    for (b, block) in prev_blocks.iter().enumerate() {
        for &v in block {
            block_of[v] = b;
        }
    }
    let mut best = 0;
    for v in 0..n {
        let mut seen = vec![false; n];
        seen[v] = true;
        let mut frontier = vec![v];
        for _ in 0..r {
            let mut next = Vec::new();
            for &u in &frontier {
                for &w in &adj[u] {
                    if !seen[w] {
                        seen[w] = true;
                        next.push(w);
                    }
                }
            }
            frontier = next;
        }
        let mut met = HashSet::new();
        for (u, &s) in seen.iter().enumerate() {
            if s {
                met.insert(block_of[u]);
            }
        }
        best = best.max(met.len());
    }
    best
}

/// All set partitions of `0..k` as lists of groups.
fn set_partitions(k: usize) -> Vec<Vec<Vec<usize>>> {
    let mut out = Vec::new();
    let mut rgs = vec![0usize; k];
    loop {
        let groups_count = rgs.iter().copied().max().unwrap_or(0) + 1;
        let mut groups: Vec<Vec<usize>> = vec![Vec::new(); groups_count];
        for (i, &gix) in rgs.iter().enumerate() {
            groups[gix].push(i);
        }
        out.push(groups);
        // Next restricted growth string.
        let mut i = k;
        loop {
            if i <= 1 {
                return out;
            }
            i -= 1;
            let prefix_max = rgs[..i].iter().copied().max().unwrap_or(0);
            if rgs[i] <= prefix_max {
                rgs[i] += 1;
                for v in rgs[i + 1..].iter_mut() {
                    *v = 0;
                }
                break;
            }
        }
    }
}

// ---------------------------------------------------------------------------
// Graph enumeration
// ---------------------------------------------------------------------------

fn pair_bit(n: usize, u: usize, v: usize) -> usize {
    let (u, v) = if u < v { (u, v) } else { (v, u) };
    // Lexicographic rank of (u, v) among pairs of 0..n.
    u * n - u * (u + 1) / 2 + (v - u - 1)
}

fn graph_from_mask(n: usize, mask: u32) -> Graph {
    let mut edges = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            if mask >> pair_bit(n, u, v) & 1 == 1 {
                edges.push((u, v));
            }
        }
    }
    Graph::from_edges(n, &edges).unwrap()
}

/// Every labelled graph on `n <= 5` vertices.
pub fn all_labelled_graphs(n: usize) -> Vec<Graph> {
    assert!(n <= 5);
    let bits = n * (n - 1) / 2;
    (0u32..1 << bits).map(|mask| graph_from_mask(n, mask)).collect()
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut items: Vec<usize> = (0..n).collect();
    fn heap(items: &mut Vec<usize>, k: usize, out: &mut Vec<Vec<usize>>) {
        if k <= 1 {
            out.push(items.clone());
            return;
        }
        for i in 0..k {
            heap(items, k - 1, out);
            if k.is_multiple_of(2) {
                items.swap(i, k - 1);
            } else {
                items.swap(0, k - 1);
            }
        }
    }
    heap(&mut items, n, &mut out);
    out
}

/// One representative of every isomorphism class of graphs on `n <= 6`
/// vertices (canonical form: minimum edge mask over all permutations).
pub fn iso_representatives(n: usize) -> Vec<Graph> {
    assert!((1..=6).contains(&n));
    let bits = n * (n - 1) / 2;
    let perms = permutations(n);
    // Precompute bit remap tables per permutation.
    let remaps: Vec<Vec<usize>> = perms
        .iter()
        .map(|p| {
            let mut remap = vec![0usize; bits];
            for u in 0..n {
                for v in u + 1..n {
                    remap[pair_bit(n, u, v)] = pair_bit(n, p[u], p[v]);
                }
            }
            remap
        })
        .collect();
    let mut seen = HashSet::new();
    let mut reps = Vec::new();
    for mask in 0u32..(1 << bits) {
        let mut canon = u32::MAX;
        for remap in &remaps {
            let mut image = 0u32;
            let mut rest = mask;
            while rest != 0 {
                let b = rest.trailing_zeros() as usize;
                rest &= rest - 1;
                image |= 1 << remap[b];
            }
            canon = canon.min(image);
        }
        if seen.insert(canon) {
            reps.push(graph_from_mask(n, canon));
        }
    }
    reps
}

// ---------------------------------------------------------------------------
// Random valid sequences
// ---------------------------------------------------------------------------

/// Seeded random valid merge sequence for `g`: random merges (occasionally
/// multi-merges or stalling steps), forced resolutions with random class
/// choices, and occasional gratuitous resolutions so minimisation has work.
pub fn random_valid_sequence(g: &Graph, rng: &mut SplitMix64) -> MergeSequence {
    let n = g.n();
    assert!(n >= 1);
    let mut steps: Vec<(Partition, Vec<(usize, usize)>)> =
        vec![(Partition::singletons(n), Vec::new())];
    let mut resolved: HashSet<Pair> = HashSet::new();
    // Sometimes resolve something already at step 1.
    if n >= 2 && rng.next_below(4) == 0 {
        let u = rng.next_below(n);
        let mut v = rng.next_below(n);
        while v == u {
            v = rng.next_below(n);
        }
        let p = pair(u, v);
        steps[0].1.push(p);
        resolved.insert(p);
    }
    let mut blocks: Vec<Vec<usize>> = (0..n).map(|v| vec![v]).collect();
    let mut stalls = 0;
    while blocks.len() > 1 {
        let stall = stalls < 2 && blocks.len() > 2 && rng.next_below(6) == 0;
        let mut new_blocks = blocks.clone();
        if stall {
            stalls += 1;
        } else {
            // Merge two random blocks; sometimes fold in a third.
            let count = if new_blocks.len() > 2 && rng.next_below(3) == 0 { 3 } else { 2 };
            let mut picked: Vec<usize> = Vec::new();
            while picked.len() < count {
                let i = rng.next_below(new_blocks.len());
                if !picked.contains(&i) {
                    picked.push(i);
                }
            }
            picked.sort_unstable();
            let mut merged = Vec::new();
            for &i in picked.iter().rev() {
                merged.extend(new_blocks.remove(i));
            }
            merged.sort_unstable();
            new_blocks.push(merged);
        }
        let partition = Partition::from_blocks(n, new_blocks.clone()).unwrap();
        blocks = partition.blocks().to_vec();
        // Forced resolutions with random class choice.
        let mut delta: Vec<Pair> = Vec::new();
        for a in 0..blocks.len() {
            for b in a..blocks.len() {
                let mut edges = Vec::new();
                let mut non_edges = Vec::new();
                let mut push = |p: Pair| {
                    if resolved.contains(&p) {
                        return;
                    }
                    if g.has_edge(p.0, p.1) {
                        edges.push(p);
                    } else {
                        non_edges.push(p);
                    }
                };
                if a == b {
                    for (i, &u) in blocks[a].iter().enumerate() {
                        for &v in &blocks[a][i + 1..] {
                            push(pair(u, v));
                        }
                    }
                } else {
                    for &u in &blocks[a] {
                        for &v in &blocks[b] {
                            push(pair(u, v));
                        }
                    }
                }
                if !edges.is_empty() && !non_edges.is_empty() {
                    let class = if rng.next_below(2) == 0 { edges } else { non_edges };
                    delta.extend(class);
                }
            }
        }
        // Occasional gratuitous resolutions: always safe, resolving more can
        // only shrink (still homogeneous) unresolved sets.
        if rng.next_below(3) == 0 {
            for _ in 0..=rng.next_below(3) {
                let u = rng.next_below(n);
                let mut v = rng.next_below(n);
                while v == u {
                    v = rng.next_below(n);
                }
                let p = pair(u, v);
                if !resolved.contains(&p) && !delta.contains(&p) {
                    delta.push(p);
                }
            }
        }
        resolved.extend(delta.iter().copied());
        steps.push((partition, delta));
    }
    let s = MergeSequence::new(n, steps).unwrap();
    assert_eq!(s.validate(g), Ok(()), "generator must produce valid sequences");
    s
}

// ---------------------------------------------------------------------------
// Corpus and crafted instances
// ---------------------------------------------------------------------------

/// Named corpus graphs: cliques, empty graphs, cycles, paths, bicliques,
/// shift graphs, and seeded random graphs up to 40 vertices.
pub fn corpus() -> Vec<(String, Graph)> {
    let mut out: Vec<(String, Graph)> = Vec::new();
    for n in [2usize, 5, 12, 40] {
        out.push((format!("K_{n}"), generate(&Family::Complete(n)).unwrap()));
    }
    for n in [2usize, 7, 25] {
        out.push((format!("empty_{n}"), generate(&Family::Empty(n)).unwrap()));
    }
    for n in [3usize, 5, 8, 13, 24] {
        out.push((format!("C_{n}"), generate(&Family::Cycle(n)).unwrap()));
    }
    for n in [2usize, 3, 9, 17] {
        out.push((format!("P_{n}"), generate(&Family::Path(n)).unwrap()));
    }
    for (a, b) in [(1usize, 1usize), (2, 3), (3, 3), (4, 7), (5, 20)] {
        out.push((format!("K_{a},{b}"), generate(&Family::Biclique(a, b)).unwrap()));
    }
    for n in [4usize, 5, 6] {
        out.push((format!("shift_{n}"), generate(&Family::Shift(n)).unwrap()));
    }
    for (n, p, seed) in [
        (10usize, 0.3, 1u64),
        (16, 0.5, 2),
        (25, 0.2, 3),
        (33, 0.8, 4),
        (40, 0.5, 5),
    ] {
        out.push((
            format!("random_{n}_{seed}"),
            generate(&Family::Random { n, p, seed }).unwrap(),
        ));
    }
    out
}

/// Graph realising all `2^q` traces on `q` columns (columns `0..q`, trace
/// vertex `q + j` adjacent to column `i` iff bit `i` of `j` is set).
pub fn all_traces_graph(q: usize) -> (Graph, Vec<usize>, Vec<usize>) {
    let n = q + (1 << q);
    let mut edges = Vec::new();
    for j in 0..(1usize << q) {
        for i in 0..q {
            if j >> i & 1 == 1 {
                edges.push((i, q + j));
            }
        }
    }
    let g = Graph::from_edges(n, &edges).unwrap();
    (g, (0..q).collect(), (q..n).collect())
}

/// Two-step sequence resolving every edge in the final step; structurally
/// bounded for every graph.
pub fn fully_resolving(g: &Graph) -> MergeSequence {
    let n = g.n();
    if n == 1 {
        return MergeSequence::trivial(g);
    }
    MergeSequence::new(
        n,
        vec![
            (Partition::singletons(n), vec![]),
            (Partition::whole(n), g.edges()),
        ],
    )
    .unwrap()
}
