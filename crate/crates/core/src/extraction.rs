//! Certificate extractors: complete/anti-complete pair certificates from
//! merge sequences, neighbourhood-complexity counts, and trace witnesses that
//! translate into merge-width lower bounds.
//!
//! All size thresholds are compared as exact rationals via cross
//! multiplication; no floating point enters any bound.

use crate::bitset::BitSet;
use crate::graph::{pair, Graph};
use crate::mergeseq::{MergeSequence, Partition, Violation};
use crate::ratio::Ratio;
use crate::rng::SplitMix64;
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ExtractionError {
    #[error("invalid sequence: {0}")]
    InvalidSequence(#[from] Violation),
    #[error("need at least {needed} vertices, have {have}")]
    TooSmall { needed: usize, have: usize },
    #[error("block {block_index} has {size} vertices, above the bound {bound}")]
    BlockTooLarge {
        block_index: usize,
        size: usize,
        bound: Ratio,
    },
    #[error("left vertex {vertex} touches {touched} blocks, expected fewer than {k}")]
    TouchesTooManyBlocks {
        vertex: usize,
        touched: usize,
        k: usize,
    },
    #[error("k must be positive")]
    ZeroK,
    #[error("X and Y are not disjoint (vertex {0})")]
    NotDisjoint(usize),
    #[error("|Y| = {y} does not exceed alpha * |X| = {alpha} * {x}")]
    TooFewTraces { y: usize, alpha: usize, x: usize },
    #[error("X-vertices {x1} and {x2} differ on only {size} vertices of Y (need more than {alpha})")]
    DeltaTooSmall {
        x1: usize,
        x2: usize,
        size: usize,
        alpha: usize,
    },
    #[error("vertices {0} and {1} of Y share the same trace on X")]
    DuplicateTrace(usize, usize),
    #[error("vertex {0} out of range")]
    OutOfRange(usize),
    #[error("enumeration guard exceeded: C({n}, {p}) > {guard}")]
    EnumerationGuard { n: usize, p: usize, guard: u64 },
    #[error("p = {p} exceeds n = {n}")]
    BadP { p: usize, n: usize },
}

// ---------------------------------------------------------------------------
// Anticomplete pairs in bipartite graphs
// ---------------------------------------------------------------------------

/// A bipartite graph on `left_n x right_n` positions.
#[derive(Clone, Debug)]
pub struct Bipartite {
    left_n: usize,
    right_n: usize,
    adj: Vec<BitSet>,
}

impl Bipartite {
    pub fn new(left_n: usize, right_n: usize) -> Self {
        Bipartite {
            left_n,
            right_n,
            adj: (0..left_n).map(|_| BitSet::new(right_n)).collect(),
        }
    }

    pub fn add_edge(&mut self, l: usize, r: usize) {
        self.adj[l].insert(r);
    }

    pub fn has_edge(&self, l: usize, r: usize) -> bool {
        self.adj[l].contains(r)
    }

    pub fn left_n(&self) -> usize {
        self.left_n
    }

    pub fn right_n(&self) -> usize {
        self.right_n
    }
}

/// Finds anti-complete `A` on the left and `B` on the right with
/// `|A| >= left/k` and `|B| >= right/(2k)`, given that every right block has
/// at most `right/(2k)` vertices and every left vertex touches fewer than `k`
/// blocks. Blocks are accumulated in canonical order until their union first
/// reaches `right/(2k)`; if the non-neighbours of that union are too few, the
/// instance shrinks and the parameter drops by one.
pub fn anticomplete_split(
    bip: &Bipartite,
    parts: &Partition,
    k: usize,
) -> Result<(Vec<usize>, Vec<usize>), ExtractionError> {
    if k == 0 {
        return Err(ExtractionError::ZeroK);
    }
    assert_eq!(parts.n(), bip.right_n(), "partition universe mismatch");
    let n = bip.right_n();
    let bound = Ratio::new(n as u64, 2 * k as u64);
    for (bi, block) in parts.blocks().iter().enumerate() {
        if Ratio::from_int(block.len() as u64) > bound {
            return Err(ExtractionError::BlockTooLarge {
                block_index: bi,
                size: block.len(),
                bound,
            });
        }
    }
    for l in 0..bip.left_n() {
        let touched = parts
            .blocks()
            .iter()
            .filter(|block| block.iter().any(|&r| bip.has_edge(l, r)))
            .count();
        if touched >= k {
            return Err(ExtractionError::TouchesTooManyBlocks {
                vertex: l,
                touched,
                k,
            });
        }
    }
    let left: Vec<usize> = (0..bip.left_n()).collect();
    let blocks: Vec<Vec<usize>> = parts.blocks().to_vec();
    Ok(split_recurse(bip, left, blocks, k))
}

fn split_recurse(
    bip: &Bipartite,
    left: Vec<usize>,
    blocks: Vec<Vec<usize>>,
    k: usize,
) -> (Vec<usize>, Vec<usize>) {
    let m = left.len();
    let n: usize = blocks.iter().map(|b| b.len()).sum();
    if k == 1 {
        // No left vertex touches any remaining block.
        let right: Vec<usize> = blocks.into_iter().flatten().collect();
        debug_assert!(left
            .iter()
            .all(|&l| right.iter().all(|&r| !bip.has_edge(l, r))));
        let mut right = right;
        right.sort_unstable();
        return (left, right);
    }
    // Accumulate blocks until the union first reaches n/(2k).
    let mut b_union: Vec<usize> = Vec::new();
    let mut used = 0;
    for block in &blocks {
        if (b_union.len() * 2 * k) as u64 >= n as u64 {
            break;
        }
        b_union.extend(block.iter().copied());
        used += 1;
    }
    debug_assert!((b_union.len() * 2 * k) as u64 >= n as u64);
    debug_assert!((b_union.len() * k) < n.max(1) || n == 0);
    let in_b = {
        let mut s = BitSet::new(bip.right_n());
        for &r in &b_union {
            s.insert(r);
        }
        s
    };
    let a: Vec<usize> = left
        .iter()
        .copied()
        .filter(|&l| !bip.adj[l].intersects(&in_b))
        .collect();
    if a.len() * k >= m {
        let mut b = b_union;
        b.sort_unstable();
        return (a, b);
    }
    let left_next: Vec<usize> = left
        .iter()
        .copied()
        .filter(|&l| bip.adj[l].intersects(&in_b))
        .collect();
    let blocks_next: Vec<Vec<usize>> = blocks[used..].to_vec();
    let m_next = left_next.len();
    let n_next: usize = blocks_next.iter().map(|b| b.len()).sum();
    // The shrunken instance keeps the size ratios: m'/(k-1) >= m/k, same for n.
    debug_assert!(m_next * k >= m * (k - 1));
    debug_assert!(n_next * k >= n * (k - 1));
    split_recurse(bip, left_next, blocks_next, k - 1)
}

// ---------------------------------------------------------------------------
// Complete / anti-complete pair certificates
// ---------------------------------------------------------------------------

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum EhKind {
    Complete,
    Anticomplete,
}

impl std::fmt::Display for EhKind {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            EhKind::Complete => write!(f, "complete"),
            EhKind::Anticomplete => write!(f, "anticomplete"),
        }
    }
}

/// Disjoint vertex sets that are fully adjacent or fully non-adjacent, each of
/// size at least `floor = n / (2(k+1)(k+2))`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EhCertificate {
    pub a: Vec<usize>,
    pub b: Vec<usize>,
    pub kind: EhKind,
    pub floor: Ratio,
}

impl EhCertificate {
    /// Canonical text block (vertices one-indexed).
    pub fn to_text(&self) -> String {
        format!(
            "EH {}\nA {}\nB {}\nfloor {}\n",
            self.kind,
            ids_1indexed(&self.a),
            ids_1indexed(&self.b),
            self.floor
        )
    }

    pub fn parse(text: &str) -> Result<EhCertificate, String> {
        let mut kind = None;
        let mut a = None;
        let mut b = None;
        let mut floor = None;
        for line in text.lines() {
            let line = line.trim();
            if line.is_empty() || line.starts_with('c') {
                continue;
            }
            if let Some(rest) = line.strip_prefix("EH ") {
                kind = Some(match rest.trim() {
                    "complete" => EhKind::Complete,
                    "anticomplete" => EhKind::Anticomplete,
                    other => return Err(format!("unknown kind {other:?}")),
                });
            } else if let Some(rest) = line.strip_prefix("A ") {
                a = Some(parse_ids_1indexed(rest)?);
            } else if let Some(rest) = line.strip_prefix("B ") {
                b = Some(parse_ids_1indexed(rest)?);
            } else if let Some(rest) = line.strip_prefix("floor ") {
                floor = Some(rest.trim().parse::<Ratio>()?);
            } else {
                return Err(format!("unexpected line {line:?}"));
            }
        }
        Ok(EhCertificate {
            a: a.ok_or("missing A line")?,
            b: b.ok_or("missing B line")?,
            kind: kind.ok_or("missing EH line")?,
            floor: floor.ok_or("missing floor line")?,
        })
    }

    /// Exhaustive re-verification against the graph.
    pub fn verify(&self, g: &Graph) -> Result<(), String> {
        let in_a = BitSet::from_iter(g.n(), self.a.iter().copied());
        for &v in &self.b {
            if in_a.contains(v) {
                return Err(format!("sets intersect at {}", v + 1));
            }
        }
        for &x in &self.a {
            for &y in &self.b {
                let adjacent = g.has_edge(x, y);
                let want = self.kind == EhKind::Complete;
                if adjacent != want {
                    return Err(format!(
                        "pair {} {} breaks {} requirement",
                        x + 1,
                        y + 1,
                        self.kind
                    ));
                }
            }
        }
        if !Ratio::int_ge(self.a.len() as u64, self.floor) {
            return Err(format!("|A| = {} below floor {}", self.a.len(), self.floor));
        }
        if !Ratio::int_ge(self.b.len() as u64, self.floor) {
            return Err(format!("|B| = {} below floor {}", self.b.len(), self.floor));
        }
        Ok(())
    }
}

/// The certificate along with how it was found.
#[derive(Clone, Debug)]
pub struct EhOutcome {
    pub certificate: EhCertificate,
    /// Step of the sequence whose resolved set the pair avoids; `None` for the
    /// degenerate small-graph fallback.
    pub witness_step: Option<usize>,
    /// Radius-1 width of the sequence used.
    pub k: usize,
}

/// Extracts a complete or anti-complete pair of size `n / (2(k+1)(k+2))` from
/// any valid sequence, where `k` is its radius-1 width. Picks the last step
/// whose previous partition has all blocks of size at most `n/(2k+4)`, takes
/// the lowest `ceil(n/(2k+4))` vertices of an oversized block, and splits the
/// rest along the resolved-pair graph; pairs crossing the returned sets are
/// all unresolved, so each right vertex sees the left side homogeneously.
pub fn eh_pair(g: &Graph, s: &MergeSequence) -> Result<EhOutcome, ExtractionError> {
    s.validate(g)?;
    let n = g.n();
    if n < 2 {
        return Err(ExtractionError::TooSmall { needed: 2, have: n });
    }
    let k = s.width(1);
    debug_assert!(k >= 1);
    let floor = Ratio::new(n as u64, 2 * (k as u64 + 1) * (k as u64 + 2));
    let denom = 2 * k + 4;
    if n < denom {
        // eps*n < 1: a single adjacency already meets the floor.
        let kind = if g.has_edge(0, 1) {
            EhKind::Complete
        } else {
            EhKind::Anticomplete
        };
        let certificate = EhCertificate {
            a: vec![0],
            b: vec![1],
            kind,
            floor,
        };
        debug_assert_eq!(certificate.verify(g), Ok(()));
        return Ok(EhOutcome {
            certificate,
            witness_step: None,
            k,
        });
    }
    // Maximal step i such that every block of P_(i-1) has size <= eps*n.
    let below = |size: usize| (size * denom) as u64 <= n as u64;
    let mut step = None;
    for i in 2..=s.len() {
        if s.partition(i - 1).blocks().iter().all(|b| below(b.len())) {
            step = Some(i);
        }
    }
    let i = step.expect("singleton blocks satisfy the size bound when n >= 2k+4");
    // A block of P_i larger than eps*n (the last partition always has one).
    let part_i = s.partition(i);
    let p = part_i
        .blocks()
        .iter()
        .find(|b| !below(b.len()))
        .expect("step maximality yields an oversized block");
    let u_size = n.div_ceil(denom);
    let u: Vec<usize> = p[..u_size].to_vec();
    let in_u = BitSet::from_iter(n, u.iter().copied());
    let rest: Vec<usize> = (0..n).filter(|v| !in_u.contains(*v)).collect();
    let resolved = &s.resolved_sets()[i - 1];
    // Bipartite resolved-pair graph between U and the rest.
    let mut bip = Bipartite::new(u.len(), rest.len());
    for (li, &x) in u.iter().enumerate() {
        for (ri, &y) in rest.iter().enumerate() {
            if resolved.contains(pair(x, y)) {
                bip.add_edge(li, ri);
            }
        }
    }
    // Previous partition restricted to the right side.
    let rest_set = BitSet::from_iter(n, rest.iter().copied());
    let parts = s.partition(i - 1).restrict(&rest_set);
    let (a_pos, b_pos) = anticomplete_split(&bip, &parts, k + 1)?;
    let a: Vec<usize> = a_pos.iter().map(|&l| u[l]).collect();
    let b: Vec<usize> = b_pos.iter().map(|&r| rest[r]).collect();
    // All pairs between the sets are unresolved at step i.
    for &x in &a {
        for &y in &b {
            assert!(
                !resolved.contains(pair(x, y)),
                "anticomplete split returned a resolved pair"
            );
        }
    }
    // Each right vertex is homogeneous towards A; keep the majority side.
    let mut complete_side = Vec::new();
    let mut anticomplete_side = Vec::new();
    for &y in &b {
        let adjacent = g.has_edge(a[0], y);
        for &x in &a {
            assert_eq!(
                g.has_edge(x, y),
                adjacent,
                "unresolved pairs between two blocks must be homogeneous"
            );
        }
        if adjacent {
            complete_side.push(y);
        } else {
            anticomplete_side.push(y);
        }
    }
    let (b_final, kind) = if complete_side.len() >= anticomplete_side.len() {
        (complete_side, EhKind::Complete)
    } else {
        (anticomplete_side, EhKind::Anticomplete)
    };
    assert!(
        Ratio::int_ge(a.len() as u64, floor) && Ratio::int_ge(b_final.len() as u64, floor),
        "extracted pair misses the size floor"
    );
    let certificate = EhCertificate {
        a,
        b: b_final,
        kind,
        floor,
    };
    debug_assert_eq!(certificate.verify(g), Ok(()));
    Ok(EhOutcome {
        certificate,
        witness_step: Some(i),
        k,
    })
}

// ---------------------------------------------------------------------------
// Neighbourhood complexity
// ---------------------------------------------------------------------------

/// Number of distinct traces `N(v) ∩ X` over vertices `v` outside `X`.
pub fn nc_profiles(g: &Graph, x: &BitSet) -> usize {
    let mut traces = std::collections::HashSet::new();
    for v in 0..g.n() {
        if x.contains(v) {
            continue;
        }
        traces.insert(g.neighbors(v).intersection(x));
    }
    traces.len()
}

/// Cap on the number of subsets `nc_exact` will enumerate.
pub const NC_ENUM_GUARD: u64 = 2_000_000;

fn binomial(n: usize, p: usize) -> u64 {
    if p > n {
        return 0;
    }
    let mut acc: u128 = 1;
    for i in 0..p {
        acc = acc * (n - i) as u128 / (i + 1) as u128;
        if acc > u64::MAX as u128 {
            return u64::MAX;
        }
    }
    acc as u64
}

/// Exact neighbourhood complexity at size `p`: the maximum of `nc_profiles`
/// over every `p`-subset, with the first maximiser as witness.
pub fn nc_exact(g: &Graph, p: usize) -> Result<(usize, Vec<usize>), ExtractionError> {
    let n = g.n();
    if p > n {
        return Err(ExtractionError::BadP { p, n });
    }
    let count = binomial(n, p);
    if count > NC_ENUM_GUARD {
        return Err(ExtractionError::EnumerationGuard {
            n,
            p,
            guard: NC_ENUM_GUARD,
        });
    }
    let mut best = 0;
    let mut witness: Vec<usize> = (0..p).collect();
    let mut indices: Vec<usize> = (0..p).collect();
    loop {
        let x = BitSet::from_iter(n, indices.iter().copied());
        let value = nc_profiles(g, &x);
        if value > best {
            best = value;
            witness = indices.clone();
        }
        // Next lexicographic combination.
        let mut i = p;
        loop {
            if i == 0 {
                return Ok((best, witness));
            }
            i -= 1;
            if indices[i] != i + n - p {
                break;
            }
        }
        indices[i] += 1;
        for j in i + 1..p {
            indices[j] = indices[j - 1] + 1;
        }
    }
}

/// Certified lower bound on the neighbourhood complexity: the best of
/// `trials` seeded random `p`-subsets, with the achieving subset.
pub fn nc_sample(
    g: &Graph,
    p: usize,
    trials: usize,
    seed: u64,
) -> Result<(usize, Vec<usize>), ExtractionError> {
    let n = g.n();
    if p > n {
        return Err(ExtractionError::BadP { p, n });
    }
    let mut rng = SplitMix64::new(seed);
    let mut best = 0;
    let mut witness = Vec::new();
    for _ in 0..trials.max(1) {
        let sample = rng.sample_distinct(n, p);
        let x = BitSet::from_iter(n, sample.iter().copied());
        let value = nc_profiles(g, &x);
        if value > best || witness.is_empty() {
            best = value;
            witness = sample;
        }
    }
    Ok((best, witness))
}

// ---------------------------------------------------------------------------
// Trace witnesses
// ---------------------------------------------------------------------------

/// Disjoint sets `X`, `Y` where `Y` realises pairwise distinct traces on `X`
/// and any two `X`-vertices differ on more than `alpha` vertices of `Y`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NcWitness {
    pub x: Vec<usize>,
    pub y: Vec<usize>,
    pub alpha: usize,
}

impl NcWitness {
    /// Validates both conditions and builds the witness.
    pub fn new(
        g: &Graph,
        x: Vec<usize>,
        y: Vec<usize>,
        alpha: usize,
    ) -> Result<NcWitness, ExtractionError> {
        let w = NcWitness { x, y, alpha };
        w.verify(g)?;
        Ok(w)
    }

    pub fn verify(&self, g: &Graph) -> Result<(), ExtractionError> {
        let n = g.n();
        for &v in self.x.iter().chain(&self.y) {
            if v >= n {
                return Err(ExtractionError::OutOfRange(v));
            }
        }
        let in_x = BitSet::from_iter(n, self.x.iter().copied());
        if let Some(&v) = self.y.iter().find(|&&v| in_x.contains(v)) {
            return Err(ExtractionError::NotDisjoint(v));
        }
        // Condition 1: pairwise distinct traces on X.
        for (i, &y1) in self.y.iter().enumerate() {
            for &y2 in &self.y[i + 1..] {
                let t1 = g.neighbors(y1).intersection(&in_x);
                let t2 = g.neighbors(y2).intersection(&in_x);
                if t1 == t2 {
                    return Err(ExtractionError::DuplicateTrace(y1, y2));
                }
            }
        }
        // Condition 2: |Y ∩ Δ(x, x')| > alpha for all pairs.
        let in_y = BitSet::from_iter(n, self.y.iter().copied());
        for (i, &x1) in self.x.iter().enumerate() {
            for &x2 in &self.x[i + 1..] {
                let d = g.neighbourhood_delta(x1, x2).intersection(&in_y);
                if d.len() <= self.alpha {
                    return Err(ExtractionError::DeltaTooSmall {
                        x1,
                        x2,
                        size: d.len(),
                        alpha: self.alpha,
                    });
                }
            }
        }
        Ok(())
    }

    pub fn to_text(&self) -> String {
        format!(
            "NC-WITNESS alpha={}\nX {}\nY {}\n",
            self.alpha,
            ids_1indexed(&self.x),
            ids_1indexed(&self.y)
        )
    }

    pub fn parse(text: &str) -> Result<NcWitness, String> {
        let mut alpha = None;
        let mut x = None;
        let mut y = None;
        for line in text.lines() {
            let line = line.trim();
            if line.is_empty() || line.starts_with('c') {
                continue;
            }
            if let Some(rest) = line.strip_prefix("NC-WITNESS alpha=") {
                alpha = Some(rest.trim().parse::<usize>().map_err(|e| e.to_string())?);
            } else if let Some(rest) = line.strip_prefix("X ") {
                x = Some(parse_ids_1indexed(rest)?);
            } else if let Some(rest) = line.strip_prefix("Y ") {
                y = Some(parse_ids_1indexed(rest)?);
            } else {
                return Err(format!("unexpected line {line:?}"));
            }
        }
        Ok(NcWitness {
            x: x.ok_or("missing X line")?,
            y: y.ok_or("missing Y line")?,
            alpha: alpha.ok_or("missing NC-WITNESS line")?,
        })
    }
}

/// Shrinks `(X0, Y0)` into a witness: while two `X`-vertices differ on at most
/// `alpha` vertices of `Y` (scanned in canonical pair order), the first of the
/// pair leaves `X` and their difference leaves `Y`. Keeps `|Y| > alpha |X|`.
pub fn nc_witness_minimize(
    g: &Graph,
    x0: &[usize],
    y0: &[usize],
    alpha: usize,
) -> Result<NcWitness, ExtractionError> {
    let n = g.n();
    for &v in x0.iter().chain(y0) {
        if v >= n {
            return Err(ExtractionError::OutOfRange(v));
        }
    }
    let in_x0 = BitSet::from_iter(n, x0.iter().copied());
    if let Some(&v) = y0.iter().find(|&&v| in_x0.contains(v)) {
        return Err(ExtractionError::NotDisjoint(v));
    }
    if y0.len() <= alpha * x0.len() {
        return Err(ExtractionError::TooFewTraces {
            y: y0.len(),
            alpha,
            x: x0.len(),
        });
    }
    // Precondition: distinct traces on X0.
    {
        let mut seen: std::collections::HashMap<Vec<usize>, usize> = Default::default();
        for &y in y0 {
            let t = g.neighbors(y).intersection(&in_x0).to_vec();
            if let Some(&prev) = seen.get(&t) {
                return Err(ExtractionError::DuplicateTrace(prev, y));
            }
            seen.insert(t, y);
        }
    }
    let mut x: Vec<usize> = {
        let mut v = x0.to_vec();
        v.sort_unstable();
        v
    };
    let mut y: BitSet = BitSet::from_iter(n, y0.iter().copied());
    'outer: loop {
        for i in 0..x.len() {
            for j in i + 1..x.len() {
                let d = g.neighbourhood_delta(x[i], x[j]).intersection(&y);
                if d.len() <= alpha {
                    y.difference_with(&g.neighbourhood_delta(x[i], x[j]));
                    x.remove(i);
                    continue 'outer;
                }
            }
        }
        break;
    }
    let witness = NcWitness {
        x,
        y: y.to_vec(),
        alpha,
    };
    witness.verify(g)?;
    assert!(
        witness.y.len() > alpha * witness.x.len(),
        "each shrink step keeps |Y| > alpha |X|"
    );
    Ok(witness)
}

/// Outcome of the contrapositive width bound.
#[derive(Clone, Debug)]
pub enum Mw2Outcome {
    /// `mw_2(g) > k`, certified by the carried witness.
    Refuted { k: usize, witness: NcWitness },
    Inconclusive { reason: String },
}

/// Tries to certify `mw_2(g) > k` from trace-rich sets: minimises `(X0, Y0)`
/// at `alpha = k * 2^(k+2)`; a surviving non-empty witness is the certificate.
pub fn mw2_lower_bound_from_nc(g: &Graph, k: usize, x0: &[usize], y0: &[usize]) -> Mw2Outcome {
    if k == 0 {
        return Mw2Outcome::Inconclusive {
            reason: "k must be positive".into(),
        };
    }
    let Some(alpha) = (k as u64).checked_mul(1u64 << (k + 2).min(62)) else {
        return Mw2Outcome::Inconclusive {
            reason: "alpha overflow".into(),
        };
    };
    let alpha = alpha as usize;
    match nc_witness_minimize(g, x0, y0, alpha) {
        Ok(witness) if !witness.x.is_empty() => Mw2Outcome::Refuted { k, witness },
        Ok(_) => Mw2Outcome::Inconclusive {
            reason: "witness collapsed to an empty X".into(),
        },
        Err(e) => Mw2Outcome::Inconclusive {
            reason: e.to_string(),
        },
    }
}

// ---------------------------------------------------------------------------
// Shared id-list formatting
// ---------------------------------------------------------------------------

pub(crate) fn ids_1indexed(ids: &[usize]) -> String {
    ids.iter()
        .map(|v| (v + 1).to_string())
        .collect::<Vec<_>>()
        .join(" ")
}

pub(crate) fn parse_ids_1indexed(text: &str) -> Result<Vec<usize>, String> {
    let mut out = Vec::new();
    for f in text.split_ascii_whitespace() {
        let v: usize = f.parse().map_err(|_| format!("bad vertex id {f:?}"))?;
        if v == 0 {
            return Err("vertex ids are one-indexed".into());
        }
        out.push(v - 1);
    }
    Ok(out)
}

/// Graph realising all `2^q` traces: columns `0..q`, trace vertices
/// `q..q+2^q`, vertex `q + j` adjacent to column `i` iff bit `i` of `j`.
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

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{generate, Family};

    #[test]
    fn split_base_case_k1() {
        let bip = Bipartite::new(3, 4);
        let parts = Partition::from_blocks(4, vec![vec![0, 1], vec![2, 3]]).unwrap();
        let (a, b) = anticomplete_split(&bip, &parts, 1).unwrap();
        assert_eq!(a, vec![0, 1, 2]);
        assert_eq!(b, vec![0, 1, 2, 3]);
    }

    #[test]
    fn split_depth_zero_example() {
        // Four left vertices, four blocks of two; u1, u2 touch block 1 only,
        // u3, u4 touch block 2 only, k = 2: B = block 1, A = {u3, u4}.
        let mut bip = Bipartite::new(4, 8);
        for l in [0, 1] {
            bip.add_edge(l, 0);
        }
        for l in [2, 3] {
            bip.add_edge(l, 2);
            bip.add_edge(l, 3);
        }
        let parts = Partition::from_blocks(
            8,
            vec![vec![0, 1], vec![2, 3], vec![4, 5], vec![6, 7]],
        )
        .unwrap();
        let (a, b) = anticomplete_split(&bip, &parts, 2).unwrap();
        assert_eq!(b, vec![0, 1]);
        assert_eq!(a, vec![2, 3]);
    }

    #[test]
    fn split_recursion_example() {
        // All four left vertices touch block 1 only: the first A is empty and
        // the recursion at k = 1 returns everything that remains.
        let mut bip = Bipartite::new(4, 8);
        for l in 0..4 {
            bip.add_edge(l, 0);
        }
        let parts = Partition::from_blocks(
            8,
            vec![vec![0, 1], vec![2, 3], vec![4, 5], vec![6, 7]],
        )
        .unwrap();
        let (a, b) = anticomplete_split(&bip, &parts, 2).unwrap();
        assert_eq!(a, vec![0, 1, 2, 3]);
        assert_eq!(b, vec![2, 3, 4, 5, 6, 7]);
        for &l in &a {
            for &r in &b {
                assert!(!bip.has_edge(l, r));
            }
        }
    }

    #[test]
    fn split_precondition_errors() {
        let bip = Bipartite::new(1, 4);
        let parts = Partition::from_blocks(4, vec![vec![0, 1, 2], vec![3]]).unwrap();
        assert!(matches!(
            anticomplete_split(&bip, &parts, 2),
            Err(ExtractionError::BlockTooLarge { block_index: 0, size: 3, .. })
        ));

        let mut bip = Bipartite::new(1, 8);
        bip.add_edge(0, 0);
        bip.add_edge(0, 2);
        let parts = Partition::from_blocks(
            8,
            vec![vec![0, 1], vec![2, 3], vec![4, 5], vec![6, 7]],
        )
        .unwrap();
        assert!(matches!(
            anticomplete_split(&bip, &parts, 2),
            Err(ExtractionError::TouchesTooManyBlocks { vertex: 0, touched: 2, k: 2 })
        ));
    }

    #[test]
    fn eh_on_clique_and_empty() {
        for n in [12usize, 20, 30] {
            let k_n = generate(&Family::Complete(n)).unwrap();
            let s = MergeSequence::trivial(&k_n);
            let out = eh_pair(&k_n, &s).unwrap();
            assert_eq!(out.k, 1);
            assert_eq!(out.certificate.kind, EhKind::Complete);
            assert_eq!(out.certificate.floor, Ratio::new(n as u64, 12));
            assert_eq!(out.certificate.verify(&k_n), Ok(()));

            let e_n = Graph::empty(n);
            let s = MergeSequence::trivial(&e_n);
            let out = eh_pair(&e_n, &s).unwrap();
            assert_eq!(out.certificate.kind, EhKind::Anticomplete);
            assert_eq!(out.certificate.verify(&e_n), Ok(()));
        }
    }

    #[test]
    fn eh_degenerate_fallback_c5() {
        let c5 = generate(&Family::Cycle(5)).unwrap();
        let s = MergeSequence::trivial(&c5).minimize(&c5).unwrap();
        let out = eh_pair(&c5, &s).unwrap();
        assert_eq!(out.witness_step, None);
        assert_eq!(out.certificate.verify(&c5), Ok(()));
    }

    #[test]
    fn eh_verified_on_random_graphs() {
        for seed in 0..12 {
            let n = 10 + (seed as usize % 20);
            let g = generate(&Family::Random { n, p: 0.4, seed }).unwrap();
            let s = MergeSequence::trivial(&g).minimize(&g).unwrap();
            let out = eh_pair(&g, &s).unwrap();
            assert_eq!(out.certificate.verify(&g), Ok(()), "seed {seed}");
        }
    }

    #[test]
    fn eh_certificate_roundtrip() {
        let g = generate(&Family::Complete(12)).unwrap();
        let out = eh_pair(&g, &MergeSequence::trivial(&g)).unwrap();
        let text = out.certificate.to_text();
        let parsed = EhCertificate::parse(&text).unwrap();
        assert_eq!(parsed, out.certificate);
        assert_eq!(parsed.to_text(), text);
    }

    #[test]
    fn nc_profiles_boundaries() {
        let g = Graph::empty(4);
        assert_eq!(nc_profiles(&g, &BitSet::new(4)), 1);
        assert_eq!(nc_profiles(&g, &BitSet::full(4)), 0);
        // Star with centre 0: X = three leaves.
        let star = generate(&Family::Biclique(1, 5)).unwrap();
        let x = BitSet::from_iter(6, [1, 2, 3]);
        assert_eq!(nc_profiles(&star, &x), 2);
        // One side of K_{3,3}: every outside vertex traces the full side.
        let k33 = generate(&Family::Biclique(3, 3)).unwrap();
        let side = BitSet::from_iter(6, [0, 1, 2]);
        assert_eq!(nc_profiles(&k33, &side), 1);
    }

    /// Recursive independent enumerator for cross-checking `nc_exact`.
    fn nc_exact_oracle(g: &Graph, p: usize) -> usize {
        fn rec(g: &Graph, start: usize, left: usize, acc: &mut Vec<usize>, best: &mut usize) {
            if left == 0 {
                let x = BitSet::from_iter(g.n(), acc.iter().copied());
                *best = (*best).max(nc_profiles(g, &x));
                return;
            }
            for v in start..g.n() {
                acc.push(v);
                rec(g, v + 1, left - 1, acc, best);
                acc.pop();
            }
        }
        let mut best = 0;
        rec(g, 0, p, &mut Vec::new(), &mut best);
        best
    }

    #[test]
    fn nc_exact_examples() {
        let k7 = generate(&Family::Complete(7)).unwrap();
        assert_eq!(nc_exact(&k7, 3).unwrap().0, 1);
        let star = generate(&Family::Biclique(1, 5)).unwrap();
        assert_eq!(nc_exact(&star, 3).unwrap().0, 2);
        let c5 = generate(&Family::Cycle(5)).unwrap();
        assert_eq!(nc_exact(&c5, 2).unwrap().0, 3);
        assert!(nc_exact(&c5, 6).is_err());
        // C(30, 8) exceeds the enumeration guard.
        let big = generate(&Family::Random { n: 30, p: 0.5, seed: 0 }).unwrap();
        assert!(matches!(
            nc_exact(&big, 8),
            Err(ExtractionError::EnumerationGuard { .. })
        ));
    }

    #[test]
    fn nc_exact_matches_recursive_oracle() {
        for seed in 0..6 {
            let n = 6 + seed as usize % 3;
            let g = generate(&Family::Random { n, p: 0.5, seed }).unwrap();
            for p in 1..=n.min(4) {
                assert_eq!(nc_exact(&g, p).unwrap().0, nc_exact_oracle(&g, p));
            }
        }
    }

    #[test]
    fn nc_exact_general_bounds() {
        let g = generate(&Family::Random { n: 9, p: 0.5, seed: 4 }).unwrap();
        for p in 1..=5 {
            let (v, witness) = nc_exact(&g, p).unwrap();
            assert!(v <= 1 << p);
            assert!(v <= 9 - p);
            assert_eq!(witness.len(), p);
        }
    }

    #[test]
    fn nc_sample_is_lower_bound() {
        let k9 = generate(&Family::Complete(9)).unwrap();
        assert_eq!(nc_sample(&k9, 4, 1, 7).unwrap().0, 1);
        let shift6 = generate(&Family::Shift(6)).unwrap();
        let exact = nc_exact(&shift6, 5).unwrap().0;
        let (sampled, witness) = nc_sample(&shift6, 5, 300, 1).unwrap();
        assert!(sampled <= exact);
        assert_eq!(witness.len(), 5);
        // The witness really achieves the reported value.
        let x = BitSet::from_iter(shift6.n(), witness.iter().copied());
        assert_eq!(nc_profiles(&shift6, &x), sampled);
    }

    #[test]
    fn witness_minimize_fixed_point() {
        let (g, x, y) = all_traces_graph(6);
        let w = nc_witness_minimize(&g, &x, &y, 8).unwrap();
        assert_eq!(w.x, x);
        assert_eq!(w.y, y);
        assert_eq!(w.verify(&g), Ok(()));
        // Text block round-trips to an equal value.
        let text = w.to_text();
        let parsed = NcWitness::parse(&text).unwrap();
        assert_eq!(parsed, w);
        assert_eq!(parsed.to_text(), text);
    }

    #[test]
    fn witness_minimize_collapses_twins() {
        // 0 and 1 are twins (delta empty), distinguishable traces come from
        // vertex 2 and the joint {0,1} coordinate: one twin is dropped, Y kept.
        let edges = [(2, 4), (0, 5), (1, 5), (0, 6), (1, 6), (2, 6)];
        let g = Graph::from_edges(7, &edges).unwrap();
        let x = vec![0, 1, 2];
        let y = vec![3, 4, 5, 6];
        let w = nc_witness_minimize(&g, &x, &y, 1).unwrap();
        assert_eq!(w.x, vec![1, 2]);
        assert_eq!(w.y, y);
        assert_eq!(w.verify(&g), Ok(()));
    }

    #[test]
    fn witness_minimize_drops_near_twins() {
        // all-traces on 3 columns plus a near-twin of column 2 differing on a
        // single trace vertex: at alpha = 1 that pair fires once.
        let (base, _, y0) = all_traces_graph(3);
        let n = base.n() + 1;
        let near_twin = n - 1;
        let mut edges = base.edges();
        let flip = 3; // trace vertex of the all-zero profile
        for &v in &y0 {
            let adjacent = base.has_edge(2, v) != (v == flip);
            if adjacent {
                edges.push((near_twin, v));
            }
        }
        let g = Graph::from_edges(n, &edges).unwrap();
        let x0 = vec![0, 1, 2, near_twin];
        let w = nc_witness_minimize(&g, &x0, &y0, 1).unwrap();
        assert_eq!(w.x, vec![0, 1, near_twin]);
        let expected_y: Vec<usize> = y0.iter().copied().filter(|&v| v != flip).collect();
        assert_eq!(w.y, expected_y);
        assert_eq!(w.verify(&g), Ok(()));
    }

    #[test]
    fn mw2_bound_examples() {
        // Cliques have a single trace; no valid input exists.
        let k9 = generate(&Family::Complete(9)).unwrap();
        let out = mw2_lower_bound_from_nc(&k9, 1, &[0, 1], &[2, 3, 4, 5, 6, 7, 8]);
        assert!(matches!(out, Mw2Outcome::Inconclusive { .. }));

        // The all-traces instance at q = 6 refutes mw_2 <= 1.
        let (g, x, y) = all_traces_graph(6);
        let out = mw2_lower_bound_from_nc(&g, 1, &x, &y);
        match out {
            Mw2Outcome::Refuted { k, witness } => {
                assert_eq!(k, 1);
                assert!(witness.x.len() > 1);
                assert_eq!(witness.verify(&g), Ok(()));
            }
            Mw2Outcome::Inconclusive { reason } => panic!("expected refutation, got {reason}"),
        }
    }
}
