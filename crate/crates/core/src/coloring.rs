//! Proper colourings extracted from merge sequences: the structural greedy
//! colouring, the three-way edge partition it rests on, and the recursive
//! colouring bounded by `(t+1)! * k^(2t-2)` in terms of the radius-2 width `k`
//! and the clique number `t`.
//!
//! The intermediate combinatorial facts (every maximally unresolved part has a
//! dominating resolved vertex; parts see few same-or-later parts; the resolved
//! edge graph inherits the sequence) are asserted at run time — a failure
//! panics, because it cannot happen for valid inputs.

use crate::bitset::BitSet;
use crate::graph::{pair, Graph, Pair};
use crate::mergeseq::{MergeSequence, PairSet, StructuralResult, Violation};
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ColoringError {
    #[error("invalid sequence: {0}")]
    InvalidSequence(#[from] Violation),
    #[error("sequence is not structurally bounded: {0}")]
    NotStructurallyBounded(String),
    #[error("sequence is not minimal; run minimisation first")]
    NotMinimal,
    #[error("clique number is {actual}, expected {expected} >= 2")]
    WrongCliqueNumber { expected: usize, actual: usize },
}

/// A proper colouring with the bound it was certified against.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Colouring {
    /// Colour of each vertex, starting from 1.
    pub colors: Vec<usize>,
    /// Certified upper bound on the number of distinct colours.
    pub bound: u128,
}

impl Colouring {
    pub fn num_colors(&self) -> usize {
        let mut distinct: Vec<usize> = self.colors.clone();
        distinct.sort_unstable();
        distinct.dedup();
        distinct.len()
    }

    /// Edge-by-edge properness plus the colour-count bound.
    pub fn verify(&self, g: &Graph) -> Result<(), String> {
        if self.colors.len() != g.n() {
            return Err(format!(
                "colouring covers {} vertices, graph has {}",
                self.colors.len(),
                g.n()
            ));
        }
        for (u, v) in g.edges() {
            if self.colors[u] == self.colors[v] {
                return Err(format!("edge {} {} is monochromatic", u + 1, v + 1));
            }
        }
        if (self.num_colors() as u128) > self.bound {
            return Err(format!(
                "{} colours exceed the certified bound {}",
                self.num_colors(),
                self.bound
            ));
        }
        Ok(())
    }

    pub fn to_text(&self) -> String {
        let mut out = format!("c bound {}\nc colours {}\n", self.bound, self.num_colors());
        for (v, c) in self.colors.iter().enumerate() {
            out.push_str(&format!("v {} {}\n", v + 1, c));
        }
        out
    }

    pub fn parse(text: &str) -> Result<Colouring, String> {
        let mut bound = None;
        let mut entries: Vec<(usize, usize)> = Vec::new();
        for line in text.lines() {
            let line = line.trim();
            if line.is_empty() {
                continue;
            }
            if let Some(rest) = line.strip_prefix("c bound ") {
                bound = Some(rest.trim().parse::<u128>().map_err(|e| e.to_string())?);
            } else if line.starts_with('c') {
                continue;
            } else if let Some(rest) = line.strip_prefix("v ") {
                let fields: Vec<&str> = rest.split_ascii_whitespace().collect();
                if fields.len() != 2 {
                    return Err(format!("bad vertex line {line:?}"));
                }
                let v: usize = fields[0].parse().map_err(|_| "bad vertex id".to_string())?;
                let c: usize = fields[1].parse().map_err(|_| "bad colour".to_string())?;
                if v == 0 || c == 0 {
                    return Err("vertex ids and colours are one-based".into());
                }
                entries.push((v - 1, c));
            } else {
                return Err(format!("unexpected line {line:?}"));
            }
        }
        let n = entries.iter().map(|&(v, _)| v + 1).max().unwrap_or(0);
        let mut colors = vec![0; n];
        for (v, c) in entries {
            colors[v] = c;
        }
        if colors.contains(&0) {
            return Err("missing vertex colour".into());
        }
        Ok(Colouring {
            colors,
            bound: bound.ok_or("missing `c bound` line")?,
        })
    }
}

/// The certified colour bound `(t+1)! * k^(2t-2)`, clamped at `u128::MAX`.
pub fn chi_bound(t: usize, k: usize) -> u128 {
    let mut acc: u128 = 1;
    for i in 2..=(t as u128 + 1) {
        acc = acc.saturating_mul(i);
    }
    let exp = 2 * t.max(1) - 2;
    for _ in 0..exp {
        acc = acc.saturating_mul(k.max(1) as u128);
    }
    acc
}

/// Maximally unresolved (or maximally clique-free) parts: for each vertex the
/// block at its last "good" step, which the goodness predicates below make a
/// partition. Returns canonical parts with their step index.
struct IndexedParts {
    /// Blocks, canonical order (ascending minimum vertex).
    parts: Vec<Vec<usize>>,
    /// Step index per part (0 = never good after step 1 resolution reset).
    index: Vec<usize>,
    /// Part id per vertex.
    of_vertex: Vec<usize>,
}

fn collect_parts(n: usize, vertex_index: &[usize], block_at: impl Fn(usize, usize) -> Vec<usize>) -> IndexedParts {
    // Group vertices by (index, block at that step); index 0 means singleton.
    let mut seen: std::collections::HashMap<(usize, usize), usize> = Default::default();
    let mut parts: Vec<Vec<usize>> = Vec::new();
    let mut index: Vec<usize> = Vec::new();
    let mut of_vertex = vec![usize::MAX; n];
    for v in 0..n {
        let i = vertex_index[v];
        let block = if i == 0 { vec![v] } else { block_at(i, v) };
        let key = (i, block[0]);
        let id = *seen.entry(key).or_insert_with(|| {
            parts.push(block.clone());
            index.push(i);
            parts.len() - 1
        });
        debug_assert!(parts[id].contains(&v), "indexed parts must form a partition");
        of_vertex[v] = id;
    }
    // Canonical order: ascending minimum vertex.
    let mut order: Vec<usize> = (0..parts.len()).collect();
    order.sort_by_key(|&p| parts[p][0]);
    let mut remap = vec![0; parts.len()];
    for (new_id, &old_id) in order.iter().enumerate() {
        remap[old_id] = new_id;
    }
    let parts_sorted: Vec<Vec<usize>> = order.iter().map(|&p| parts[p].clone()).collect();
    let index_sorted: Vec<usize> = order.iter().map(|&p| index[p]).collect();
    let of_vertex = of_vertex.into_iter().map(|p| remap[p]).collect();
    IndexedParts {
        parts: parts_sorted,
        index: index_sorted,
        of_vertex,
    }
}

/// Greedy colouring of parts in descending index order (canonical order within
/// ties). `limit` bounds the previously coloured neighbours each part may see;
/// exceeding it is a hard internal error named by `claim`.
fn greedy_on_parts(
    parts: &IndexedParts,
    adjacency: &[BitSet],
    limit: usize,
    claim: &str,
) -> Vec<usize> {
    let m = parts.parts.len();
    let mut order: Vec<usize> = (0..m).collect();
    order.sort_by(|&a, &b| parts.index[b].cmp(&parts.index[a]).then(a.cmp(&b)));
    let mut color = vec![0usize; m];
    for &p in &order {
        let mut used: Vec<usize> = adjacency[p]
            .iter()
            .filter(|&q| color[q] != 0)
            .map(|q| color[q])
            .collect();
        assert!(
            used.len() <= limit,
            "{claim}: part saw {} previously coloured neighbours, limit {limit}",
            used.len()
        );
        used.sort_unstable();
        used.dedup();
        let mut c = 1;
        for u in used {
            if u == c {
                c += 1;
            } else if u > c {
                break;
            }
        }
        color[p] = c;
    }
    color
}

/// Colours a graph along a structurally bounded sequence with at most
/// `max(width(s, 2), 1)` colours: vertices inherit the colour of their
/// maximally unresolved part, and parts are coloured greedily in descending
/// index order, where each sees fewer than `width` earlier parts.
pub fn color_structural(g: &Graph, s: &MergeSequence) -> Result<Colouring, ColoringError> {
    s.validate(g)?;
    let s = s.reset_first_resolutions();
    match s.is_structurally_bounded(g).expect("validated above") {
        StructuralResult::Ok => {}
        counterexample => {
            return Err(ColoringError::NotStructurallyBounded(counterexample.to_string()))
        }
    }
    let n = g.n();
    let k = s.width(2).max(1);
    if n == 0 {
        return Ok(Colouring {
            colors: vec![],
            bound: k as u128,
        });
    }
    let resolved = s.resolved_sets();
    // Unresolved-part indicator per step and block.
    let m = s.len();
    let mut vertex_index = vec![0usize; n];
    for i in 1..=m {
        let part = s.partition(i);
        let r = &resolved[i - 1];
        for block in part.blocks() {
            let unresolved = block.iter().any(|&u| {
                g.neighbors(u).iter().any(|v| !r.contains(pair(u, v)))
            });
            if unresolved {
                for &v in block {
                    vertex_index[v] = i;
                }
            }
        }
    }
    // With R_1 empty, only isolated vertices can have index 0.
    for (v, &idx) in vertex_index.iter().enumerate() {
        if idx == 0 {
            assert_eq!(g.degree(v), 0, "non-isolated vertex with no unresolved step");
        }
    }
    let parts = collect_parts(n, &vertex_index, |i, v| {
        let part = s.partition(i);
        let idx = part.block_index();
        part.block(idx[v]).to_vec()
    });
    // Every part with a positive index has a vertex whose pairs into the part
    // all get resolved right after the part's step.
    for (p, block) in parts.parts.iter().enumerate() {
        let i = parts.index[p];
        if i == 0 {
            continue;
        }
        assert!(i < m, "an unresolved part at the final step means unresolved edges of {{V}}");
        let r_i = &resolved[i - 1];
        let r_next = &resolved[i];
        let x = block
            .iter()
            .flat_map(|&y| g.neighbors(y).iter().map(move |x| (x, y)))
            .find(|&(x, y)| !r_i.contains(pair(x, y)))
            .map(|(x, _)| x)
            .expect("an unresolved part has an unresolved incident edge");
        assert!(!block.contains(&x), "unresolved parts are independent");
        for &y in block {
            assert!(
                r_next.contains(pair(x, y)),
                "dominating vertex fails: pair ({}, {}) not resolved at step {}",
                x + 1,
                y + 1,
                i + 1
            );
        }
    }
    // Quotient adjacency; edges inside parts would break properness.
    let np = parts.parts.len();
    let mut adjacency: Vec<BitSet> = (0..np).map(|_| BitSet::new(np)).collect();
    for (u, v) in g.edges() {
        let (pu, pv) = (parts.of_vertex[u], parts.of_vertex[v]);
        assert_ne!(pu, pv, "edge inside a maximally unresolved part");
        adjacency[pu].insert(pv);
        adjacency[pv].insert(pu);
    }
    let part_color = greedy_on_parts(&parts, &adjacency, k - 1, "degeneracy of the part quotient");
    let mut colors = vec![0; n];
    for v in 0..n {
        colors[v] = part_color[parts.of_vertex[v]];
    }
    let colouring = Colouring {
        colors,
        bound: k as u128,
    };
    debug_assert_eq!(colouring.verify(g), Ok(()));
    Ok(colouring)
}

/// The three-way edge partition along maximally clique-free parts.
#[derive(Clone, Debug)]
pub struct EdgePartition {
    /// Edges inside parts.
    pub e_i: Vec<Pair>,
    /// Resolved edges between distinct parts.
    pub e_r: Vec<Pair>,
    /// Unresolved edges between distinct parts.
    pub e_u: Vec<Pair>,
    /// Maximally `K_t`-free parts, canonical order.
    pub parts: Vec<Vec<usize>>,
    /// Step index of each part.
    pub part_index: Vec<usize>,
    /// Part id of each vertex.
    pub part_of: Vec<usize>,
    /// The derived resolved-pair set over all vertex pairs.
    pub resolved: PairSet,
}

/// Splits `E(g)` into `E_I` (inside maximally `K_t`-free parts), `E_R`
/// (resolved across parts) and `E_U` (unresolved across parts), where a pair
/// counts as resolved if it lies in `R_(i+1)` for `i` the smaller of its
/// endpoints' part indices. Requires a minimal sequence and `omega(g) = t`.
pub fn edge_partition(g: &Graph, s: &MergeSequence, t: usize) -> Result<EdgePartition, ColoringError> {
    s.validate(g)?;
    let actual = g.clique_number();
    if actual != t || t < 2 {
        return Err(ColoringError::WrongCliqueNumber {
            expected: t,
            actual,
        });
    }
    if s.minimize(g)? != *s {
        return Err(ColoringError::NotMinimal);
    }
    let n = g.n();
    let m = s.len();
    // Last step at which each vertex's block is K_t-free. Freeness is monotone
    // under merging, so a per-block flag is recomputed only on change.
    let mut vertex_index = vec![1usize; n];
    let mut has_kt: Vec<bool> = s
        .partition(1)
        .blocks()
        .iter()
        .map(|_| false)
        .collect();
    for i in 2..=m {
        let prev = s.partition(i - 1);
        let cur = s.partition(i);
        let cidx = cur.block_index();
        let mut new_flags = vec![false; cur.num_blocks()];
        let mut changed = vec![false; cur.num_blocks()];
        for (pb, block) in prev.blocks().iter().enumerate() {
            let target = cidx[block[0]];
            if cur.block(target).len() != block.len() {
                changed[target] = true;
            }
            new_flags[target] = new_flags[target] || has_kt[pb];
        }
        for (b, flag) in new_flags.iter_mut().enumerate() {
            if changed[b] && !*flag {
                let members = BitSet::from_iter(n, cur.block(b).iter().copied());
                *flag = g.has_clique_of_size(&members, t);
            }
        }
        for (b, block) in cur.blocks().iter().enumerate() {
            if !new_flags[b] {
                for &v in block {
                    vertex_index[v] = i;
                }
            }
        }
        has_kt = new_flags;
    }
    assert!(
        vertex_index.iter().all(|&i| i < m),
        "the final one-block partition contains a K_t"
    );
    let parts = collect_parts(n, &vertex_index, |i, v| {
        let part = s.partition(i);
        let idx = part.block_index();
        part.block(idx[v]).to_vec()
    });
    let resolved_sets = s.resolved_sets();
    let mut resolved = PairSet::new(n);
    for u in 0..n {
        for v in u + 1..n {
            let i = vertex_index[u].min(vertex_index[v]);
            if resolved_sets[i].contains((u, v)) {
                resolved.insert((u, v));
            }
        }
    }
    let mut e_i = Vec::new();
    let mut e_r = Vec::new();
    let mut e_u = Vec::new();
    for (u, v) in g.edges() {
        if parts.of_vertex[u] == parts.of_vertex[v] {
            e_i.push((u, v));
        } else if resolved.contains((u, v)) {
            e_r.push((u, v));
        } else {
            e_u.push((u, v));
        }
    }
    // The sequence remains valid and structurally bounded for the resolved
    // edge graph; anything else contradicts minimality.
    let g_r = Graph::from_edges(n, &e_r).expect("edge subsets form graphs");
    assert_eq!(
        s.validate(&g_r),
        Ok(()),
        "sequence must stay valid for the resolved edge graph"
    );
    assert_eq!(
        s.is_structurally_bounded(&g_r),
        Ok(StructuralResult::Ok),
        "sequence must be structurally bounded for the resolved edge graph"
    );
    Ok(EdgePartition {
        e_i,
        e_r,
        e_u,
        parts: parts.parts,
        part_index: parts.index,
        part_of: parts.of_vertex,
        resolved,
    })
}

/// Proper colouring with at most `(t+1)! * k^(2t-2)` colours, recursing on the
/// clique number: unresolved cross edges are coloured greedily part by part,
/// resolved cross edges via the structural colouring, and inside-part edges by
/// recursion on each part's induced subgraph. The final colour is the triple,
/// reindexed by first occurrence.
pub fn color_bounded_mw(g: &Graph, s: &MergeSequence) -> Result<Colouring, ColoringError> {
    s.validate(g)?;
    let t = g.clique_number();
    let k = s.width(2).max(1);
    let bound = chi_bound(t, k);
    if t <= 1 {
        return Ok(Colouring {
            colors: vec![1; g.n()],
            bound,
        });
    }
    let n = g.n();
    let s_min = s.minimize(g)?;
    let ep = edge_partition(g, &s_min, t)?;
    let np = ep.parts.len();

    // Unresolved cross edges: each part sees at most k*t same-or-later parts.
    let mut u_adjacency: Vec<BitSet> = (0..np).map(|_| BitSet::new(np)).collect();
    for &(u, v) in &ep.e_u {
        let (pu, pv) = (ep.part_of[u], ep.part_of[v]);
        assert_ne!(pu, pv, "unresolved edge inside a part");
        u_adjacency[pu].insert(pv);
        u_adjacency[pv].insert(pu);
    }
    let indexed = IndexedParts {
        parts: ep.parts.clone(),
        index: ep.part_index.clone(),
        of_vertex: ep.part_of.clone(),
    };
    for (p, adjacent) in u_adjacency.iter().enumerate() {
        let later = adjacent
            .iter()
            .filter(|&q| ep.part_index[q] >= ep.part_index[p])
            .count();
        assert!(
            later <= k * t,
            "part is U-adjacent to {later} same-or-later parts, above k*t = {}",
            k * t
        );
    }
    let u_part_color = greedy_on_parts(&indexed, &u_adjacency, k * t, "U-quotient degeneracy");
    let mut c_u = vec![0usize; n];
    for v in 0..n {
        c_u[v] = u_part_color[ep.part_of[v]];
    }
    let used_u = distinct(&c_u);
    assert!(used_u <= k * t + 1);

    // Resolved cross edges: structural colouring of (V, E_R).
    let g_r = Graph::from_edges(n, &ep.e_r).expect("edge subsets form graphs");
    let col_r = color_structural(&g_r, &s_min)?;
    let c_r = col_r.colors.clone();
    let used_r = distinct(&c_r);
    assert!(used_r as u128 <= k as u128);

    // Inside edges: recurse on each part; all parts share one palette.
    let mut c_i = vec![1usize; n];
    let sub_bound_limit = chi_bound(t - 1, k);
    for block in &ep.parts {
        if block.len() == 1 {
            continue;
        }
        let keep = BitSet::from_iter(n, block.iter().copied());
        let (sub_g, ids) = g.induced(&keep);
        assert!(sub_g.clique_number() < t, "parts are K_t-free");
        let (sub_s, _) = s_min.restrict(g, &keep)?;
        let sub = color_bounded_mw(&sub_g, &sub_s)?;
        assert!(sub.bound <= sub_bound_limit);
        for (j, &orig) in ids.iter().enumerate() {
            c_i[orig] = sub.colors[j];
        }
    }
    let used_i = distinct(&c_i);

    // Combine: triple colours reindexed by first occurrence in vertex order.
    let mut seen: std::collections::HashMap<(usize, usize, usize), usize> = Default::default();
    let mut colors = vec![0usize; n];
    for v in 0..n {
        let key = (c_i[v], c_r[v], c_u[v]);
        let next = seen.len() + 1;
        let c = *seen.entry(key).or_insert(next);
        colors[v] = c;
    }
    let used = seen.len();
    assert!(
        used <= used_i * used_r * used_u,
        "triple count exceeds the product bound"
    );
    assert!(
        (used as u128) <= bound,
        "{used} colours exceed the certified bound {bound}"
    );
    let colouring = Colouring { colors, bound };
    debug_assert_eq!(colouring.verify(g), Ok(()));
    Ok(colouring)
}

fn distinct(colors: &[usize]) -> usize {
    let mut v: Vec<usize> = colors.to_vec();
    v.sort_unstable();
    v.dedup();
    v.len()
}
