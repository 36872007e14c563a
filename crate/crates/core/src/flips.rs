//! k-flips, exhaustive hideout verification, and hideout certificates built
//! from trace witnesses, which lower-bound the radius-2 flip-width.

use crate::bitset::BitSet;
use crate::extraction::{ids_1indexed, parse_ids_1indexed, NcWitness};
use crate::gf2::GF2Matrix;
use crate::graph::Graph;
use crate::mergeseq::Partition;
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum FlipError {
    #[error("flip partition covers {flip_n} vertices, graph has {graph_n}")]
    PartitionMismatch { flip_n: usize, graph_n: usize },
    #[error("flip table is {rows}x{cols}, expected {blocks}x{blocks}")]
    TableShape { rows: usize, cols: usize, blocks: usize },
    #[error("flip table is not symmetric at ({0}, {1})")]
    TableAsymmetric(usize, usize),
    #[error("|U| = {size} <= d = {d}: the hideout condition would be vacuous")]
    VacuousHideout { size: usize, d: usize },
    #[error("enumeration guard exceeded: {flips} flips > {guard}")]
    GuardExceeded { flips: u128, guard: u128 },
    #[error("witness alpha is {got}, expected 2^(2k+1) = {expected}")]
    AlphaMismatch { got: usize, expected: usize },
    #[error("|X| = {size} <= k = {k}: too small to certify anything")]
    WitnessTooSmall { size: usize, k: usize },
    #[error("witness does not hold on this graph: {0}")]
    InvalidWitness(String),
    #[error("vertex {0} out of range")]
    OutOfRange(usize),
}

/// A partition of the vertices with a symmetric toggle table over its blocks
/// (diagonal included).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KFlip {
    pub partition: Partition,
    table: Vec<Vec<bool>>,
}

impl KFlip {
    #[allow(clippy::needless_range_loop)]
    pub fn new(partition: Partition, table: Vec<Vec<bool>>) -> Result<KFlip, FlipError> {
        let b = partition.num_blocks();
        if table.len() != b || table.iter().any(|row| row.len() != b) {
            return Err(FlipError::TableShape {
                rows: table.len(),
                cols: table.first().map_or(0, |r| r.len()),
                blocks: b,
            });
        }
        for i in 0..b {
            for j in i + 1..b {
                if table[i][j] != table[j][i] {
                    return Err(FlipError::TableAsymmetric(i, j));
                }
            }
        }
        Ok(KFlip { partition, table })
    }

    /// The flip that changes nothing.
    pub fn identity(n: usize) -> KFlip {
        KFlip {
            partition: Partition::whole(n),
            table: vec![vec![false]],
        }
    }

    pub fn flips(&self, block_a: usize, block_b: usize) -> bool {
        self.table[block_a][block_b]
    }

    pub fn num_blocks(&self) -> usize {
        self.partition.num_blocks()
    }

    /// The block-pattern matrix `F[u][v] = table[part(u)][part(v)]`, diagonal
    /// included. Its rank is at most the number of blocks, and it matches the
    /// adjacency difference of a flip on every off-diagonal entry.
    pub fn pattern_matrix(&self) -> GF2Matrix {
        let n = self.partition.n();
        let idx = self.partition.block_index();
        let mut m = GF2Matrix::zero(n, n);
        for u in 0..n {
            for v in 0..n {
                m.set(u, v, self.table[idx[u]][idx[v]]);
            }
        }
        m
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for block in self.partition.blocks() {
            out.push_str(&format!("b {}\n", ids_1indexed(block)));
        }
        for i in 0..self.num_blocks() {
            for j in i..self.num_blocks() {
                if self.table[i][j] {
                    out.push_str(&format!("f {} {}\n", i + 1, j + 1));
                }
            }
        }
        out
    }

    /// Parses the `.flip` format: `b <v..>` block lines (one-indexed vertex
    /// ids), then `f <i> <j>` lines flipping the pair of the i-th and j-th
    /// listed blocks.
    pub fn parse(n: usize, text: &str) -> Result<KFlip, String> {
        let mut blocks: Vec<Vec<usize>> = Vec::new();
        let mut flips: Vec<(usize, usize)> = Vec::new();
        for line in text.lines() {
            let line = line.trim();
            if line.is_empty() || line.starts_with('c') {
                continue;
            }
            if let Some(rest) = line.strip_prefix("b ") {
                blocks.push(parse_ids_1indexed(rest)?);
            } else if let Some(rest) = line.strip_prefix("f ") {
                let fields: Vec<&str> = rest.split_ascii_whitespace().collect();
                if fields.len() != 2 {
                    return Err(format!("bad flip line {line:?}"));
                }
                let i: usize = fields[0].parse().map_err(|_| "bad block index".to_string())?;
                let j: usize = fields[1].parse().map_err(|_| "bad block index".to_string())?;
                if i == 0 || j == 0 {
                    return Err(format!("block indices are one-based in {line:?}"));
                }
                flips.push((i - 1, j - 1));
            } else {
                return Err(format!("unexpected line {line:?}"));
            }
        }
        let b = blocks.len();
        if flips.iter().any(|&(i, j)| i >= b || j >= b) {
            return Err("flip line references a missing block".into());
        }
        let partition = Partition::from_blocks(n, blocks).map_err(|e| e.to_string())?;
        // Block indices refer to the canonical order.
        let mut table = vec![vec![false; b]; b];
        for (i, j) in flips {
            table[i][j] = true;
            table[j][i] = true;
        }
        KFlip::new(partition, table).map_err(|e| e.to_string())
    }
}

/// Applies the flip: adjacency of every pair `u != v` toggles exactly when the
/// table is set for their blocks.
pub fn apply_flip(g: &Graph, flip: &KFlip) -> Result<Graph, FlipError> {
    let n = g.n();
    if flip.partition.n() != n {
        return Err(FlipError::PartitionMismatch {
            flip_n: flip.partition.n(),
            graph_n: n,
        });
    }
    let idx = flip.partition.block_index();
    let mut edges = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            let toggled = flip.flips(idx[u], idx[v]);
            if g.has_edge(u, v) != toggled {
                edges.push((u, v));
            }
        }
    }
    Ok(Graph::from_edges(n, &edges).expect("toggling preserves simplicity"))
}

/// Number of partitions of an `n`-set into at most `k` non-empty blocks.
fn partitions_up_to(n: usize, k: usize) -> u128 {
    // Stirling numbers of the second kind, saturating.
    let mut row: Vec<u128> = vec![0; k + 1];
    row[0] = 1;
    for _ in 1..=n {
        let mut next = vec![0u128; k + 1];
        for b in 1..=k {
            next[b] = row[b]
                .saturating_mul(b as u128)
                .saturating_add(row[b - 1]);
        }
        row = next;
        row[0] = 0;
    }
    row.iter().fold(0u128, |acc, &v| acc.saturating_add(v))
}

/// Cap on the number of flips `hideout_check` enumerates.
pub const FLIP_ENUM_GUARD: u128 = 4_000_000;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum HideoutCheck {
    Verified,
    /// The canonically first flip under which more than `d` vertices of `U`
    /// see at most `d` distance-`r` neighbours inside `U`.
    Violated(Box<KFlip>),
}

/// Exhaustively checks the hideout condition: under every flip with at most
/// `k` blocks, at most `d` vertices of `U` have at most `d` vertices of `U`
/// within distance `r`. Partitions are enumerated as restricted growth
/// strings, tables in bit order, so the first violator is canonical.
#[allow(clippy::needless_range_loop)]
pub fn hideout_check(
    g: &Graph,
    u: &[usize],
    r: usize,
    k: usize,
    d: usize,
) -> Result<HideoutCheck, FlipError> {
    let n = g.n();
    for &v in u {
        if v >= n {
            return Err(FlipError::OutOfRange(v));
        }
    }
    if u.len() <= d {
        return Err(FlipError::VacuousHideout { size: u.len(), d });
    }
    let total: u128 = {
        let parts = partitions_up_to(n, k);
        let tables = 1u128 << (k * (k + 1) / 2).min(120);
        parts.saturating_mul(tables)
    };
    if total > FLIP_ENUM_GUARD {
        return Err(FlipError::GuardExceeded {
            flips: total,
            guard: FLIP_ENUM_GUARD,
        });
    }
    let u_set = BitSet::from_iter(n, u.iter().copied());
    let mut rgs = vec![0usize; n];
    loop {
        // Current partition from the restricted growth string.
        let blocks_count = rgs.iter().copied().max().unwrap_or(0) + 1;
        let mut blocks: Vec<Vec<usize>> = vec![Vec::new(); blocks_count];
        for (v, &b) in rgs.iter().enumerate() {
            blocks[b].push(v);
        }
        let partition = Partition::from_blocks(n, blocks).unwrap();
        let pair_count = blocks_count * (blocks_count + 1) / 2;
        for combo in 0u64..(1u64 << pair_count) {
            let mut table = vec![vec![false; blocks_count]; blocks_count];
            let mut bit = 0;
            for i in 0..blocks_count {
                for j in i..blocks_count {
                    if combo >> bit & 1 == 1 {
                        table[i][j] = true;
                        table[j][i] = true;
                    }
                    bit += 1;
                }
            }
            let flip = KFlip::new(partition.clone(), table).unwrap();
            let flipped = apply_flip(g, &flip)?;
            let mut few = 0;
            for &v in u {
                let ball = flipped.ball(v, r);
                if ball.intersection(&u_set).len() <= d {
                    few += 1;
                }
            }
            if few > d {
                return Ok(HideoutCheck::Violated(Box::new(flip)));
            }
        }
        // Next restricted growth string with at most k values.
        let mut i = n;
        loop {
            if i == 0 {
                return Ok(HideoutCheck::Verified);
            }
            i -= 1;
            if i == 0 {
                return Ok(HideoutCheck::Verified);
            }
            let prefix_max = rgs[..i].iter().copied().max().unwrap_or(0);
            if rgs[i] <= prefix_max && rgs[i] + 1 < k {
                rgs[i] += 1;
                for v in rgs[i + 1..].iter_mut() {
                    *v = 0;
                }
                break;
            }
        }
    }
}

/// How a hideout certificate was established.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Verification {
    AssertedByTheorem,
    BruteForce,
}

/// A set `U` asserted to be an `(r, k, d)`-hideout; it certifies that the
/// radius-`r` flip-width exceeds `k`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HideoutCertificate {
    pub u: Vec<usize>,
    pub r: usize,
    pub k: usize,
    pub d: usize,
    pub verified: Verification,
}

impl HideoutCertificate {
    /// The flip-width lower bound this certificate yields.
    pub fn fw_lower_bound(&self) -> usize {
        self.k
    }

    pub fn to_text(&self) -> String {
        format!(
            "HIDEOUT r={} k={} d={} verified={}\nU {}\nfw-lower-bound {}\n",
            self.r,
            self.k,
            self.d,
            match self.verified {
                Verification::BruteForce => 1,
                Verification::AssertedByTheorem => 0,
            },
            ids_1indexed(&self.u),
            self.k
        )
    }

    pub fn parse(text: &str) -> Result<HideoutCertificate, String> {
        let mut header: Option<(usize, usize, usize, Verification)> = None;
        let mut u = None;
        let mut fw = None;
        for line in text.lines() {
            let line = line.trim();
            if line.is_empty() || line.starts_with('c') {
                continue;
            }
            if let Some(rest) = line.strip_prefix("HIDEOUT ") {
                let mut r = None;
                let mut k = None;
                let mut d = None;
                let mut verified = None;
                for field in rest.split_ascii_whitespace() {
                    let (key, value) = field
                        .split_once('=')
                        .ok_or_else(|| format!("bad field {field:?}"))?;
                    let value: usize = value.parse().map_err(|_| format!("bad value {field:?}"))?;
                    match key {
                        "r" => r = Some(value),
                        "k" => k = Some(value),
                        "d" => d = Some(value),
                        "verified" => {
                            verified = Some(if value == 1 {
                                Verification::BruteForce
                            } else {
                                Verification::AssertedByTheorem
                            })
                        }
                        other => return Err(format!("unknown field {other:?}")),
                    }
                }
                header = Some((
                    r.ok_or("missing r")?,
                    k.ok_or("missing k")?,
                    d.ok_or("missing d")?,
                    verified.ok_or("missing verified")?,
                ));
            } else if let Some(rest) = line.strip_prefix("U ") {
                u = Some(parse_ids_1indexed(rest)?);
            } else if let Some(rest) = line.strip_prefix("fw-lower-bound ") {
                fw = Some(rest.trim().parse::<usize>().map_err(|e| e.to_string())?);
            } else {
                return Err(format!("unexpected line {line:?}"));
            }
        }
        let (r, k, d, verified) = header.ok_or("missing HIDEOUT line")?;
        if fw != Some(k) {
            return Err("fw-lower-bound must equal k".into());
        }
        Ok(HideoutCertificate {
            u: u.ok_or("missing U line")?,
            r,
            k,
            d,
            verified,
        })
    }
}

/// Emits the `(2, k, k)`-hideout certificate carried by a trace witness with
/// `alpha = 2^(2k+1)`: under any k-flip, two surviving low-degree vertices of
/// `X` would share a block, forcing a rank jump their traces cannot absorb.
/// Flagged asserted-by-theorem; run `hideout_check` to upgrade.
pub fn hideout_from_witness(
    g: &Graph,
    k: usize,
    witness: &NcWitness,
) -> Result<HideoutCertificate, FlipError> {
    let expected = 1usize << (2 * k + 1).min(62);
    if witness.alpha != expected {
        return Err(FlipError::AlphaMismatch {
            got: witness.alpha,
            expected,
        });
    }
    if witness.x.len() <= k {
        return Err(FlipError::WitnessTooSmall {
            size: witness.x.len(),
            k,
        });
    }
    witness
        .verify(g)
        .map_err(|e| FlipError::InvalidWitness(e.to_string()))?;
    Ok(HideoutCertificate {
        u: witness.x.clone(),
        r: 2,
        k,
        d: k,
        verified: Verification::AssertedByTheorem,
    })
}
