//! Python bindings: `Graph` and `MergeSequence` as classes, the certificate
//! extractors as module functions returning plain Python values.

use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;

use mwkit::bitset::BitSet;
use mwkit::coloring;
use mwkit::extraction;
use mwkit::flips;
use mwkit::graph::{self, Family};
use mwkit::mergeseq::{self, StructuralResult, SyncResult};
use mwkit::solver;

fn value_err(e: impl std::fmt::Display) -> PyErr {
    PyValueError::new_err(e.to_string())
}

type RawSteps = Vec<(Vec<Vec<usize>>, Vec<(usize, usize)>)>;
type EhTuple = (Vec<usize>, Vec<usize>, String, u64, u64, String);

fn to_bitset(n: usize, ids: &[usize]) -> PyResult<BitSet> {
    for &v in ids {
        if v >= n {
            return Err(value_err(format!("vertex {v} out of range 0..{n}")));
        }
    }
    Ok(BitSet::from_iter(n, ids.iter().copied()))
}

/// A simple undirected graph over vertices `0..n-1`.
#[pyclass(name = "Graph", skip_from_py_object)]
#[derive(Clone)]
struct PyGraph {
    inner: graph::Graph,
}

#[pymethods]
impl PyGraph {
    #[new]
    fn new(n: usize, edges: Vec<(usize, usize)>) -> PyResult<Self> {
        Ok(PyGraph {
            inner: graph::Graph::from_edges(n, &edges).map_err(value_err)?,
        })
    }

    /// Parse the `p edge` text format.
    #[staticmethod]
    fn parse(text: &str) -> PyResult<Self> {
        Ok(PyGraph {
            inner: graph::parse_graph(text).map_err(value_err)?,
        })
    }

    /// Deterministic family generator, e.g. `generate("shift", [5])` or
    /// `generate("random", [12, 0.5], seed=7)`.
    #[staticmethod]
    #[pyo3(signature = (family, params, seed=None))]
    fn generate(family: &str, params: Vec<f64>, seed: Option<u64>) -> PyResult<Self> {
        let fam = Family::parse(family, &params, seed).map_err(value_err)?;
        Ok(PyGraph {
            inner: graph::generate(&fam).map_err(value_err)?,
        })
    }

    #[getter]
    fn n(&self) -> usize {
        self.inner.n()
    }

    fn edge_count(&self) -> usize {
        self.inner.edge_count()
    }

    fn edges(&self) -> Vec<(usize, usize)> {
        self.inner.edges()
    }

    fn has_edge(&self, u: usize, v: usize) -> PyResult<bool> {
        if u >= self.inner.n() || v >= self.inner.n() {
            return Err(value_err("vertex out of range"));
        }
        Ok(self.inner.has_edge(u, v))
    }

    fn degree(&self, v: usize) -> PyResult<usize> {
        if v >= self.inner.n() {
            return Err(value_err("vertex out of range"));
        }
        Ok(self.inner.degree(v))
    }

    fn neighbors(&self, v: usize) -> PyResult<Vec<usize>> {
        if v >= self.inner.n() {
            return Err(value_err("vertex out of range"));
        }
        Ok(self.inner.neighbors(v).to_vec())
    }

    /// Exact clique number.
    fn clique_number(&self) -> usize {
        self.inner.clique_number()
    }

    /// Radius-`r` ball around `x`, including `x`.
    fn ball(&self, x: usize, r: usize) -> PyResult<Vec<usize>> {
        if x >= self.inner.n() {
            return Err(value_err("vertex out of range"));
        }
        Ok(self.inner.ball(x, r).to_vec())
    }

    /// Symmetric difference of open neighbourhoods.
    fn neighbourhood_delta(&self, x: usize, y: usize) -> PyResult<Vec<usize>> {
        if x >= self.inner.n() || y >= self.inner.n() {
            return Err(value_err("vertex out of range"));
        }
        Ok(self.inner.neighbourhood_delta(x, y).to_vec())
    }

    /// Pair minimising the near-twin difference, with its size.
    fn min_symmetric_difference(&self) -> PyResult<((usize, usize), usize)> {
        self.inner.min_symmetric_difference().map_err(value_err)
    }

    fn complement(&self) -> PyGraph {
        PyGraph {
            inner: self.inner.complement(),
        }
    }

    /// Induced subgraph plus the new-to-old vertex map.
    fn induced(&self, keep: Vec<usize>) -> PyResult<(PyGraph, Vec<usize>)> {
        let keep = to_bitset(self.inner.n(), &keep)?;
        let (g, ids) = self.inner.induced(&keep);
        Ok((PyGraph { inner: g }, ids))
    }

    fn to_text(&self) -> String {
        self.inner.to_text()
    }

    fn __repr__(&self) -> String {
        format!("Graph(n={}, m={})", self.inner.n(), self.inner.edge_count())
    }

    fn __eq__(&self, other: &PyGraph) -> bool {
        self.inner == other.inner
    }
}

/// A chain of coarsening partitions with per-step resolved pairs.
#[pyclass(name = "MergeSequence", skip_from_py_object)]
#[derive(Clone)]
struct PyMergeSequence {
    inner: mergeseq::MergeSequence,
}

#[pymethods]
impl PyMergeSequence {
    /// Build from raw steps: a list of (blocks, resolved_pairs).
    #[new]
    fn new(n: usize, steps: RawSteps) -> PyResult<Self> {
        let mut converted = Vec::with_capacity(steps.len());
        for (blocks, delta) in steps {
            let partition = mergeseq::Partition::from_blocks(n, blocks).map_err(value_err)?;
            converted.push((partition, delta));
        }
        Ok(PyMergeSequence {
            inner: mergeseq::MergeSequence::new(n, converted).map_err(value_err)?,
        })
    }

    /// Parse the `.mseq` text format.
    #[staticmethod]
    fn parse(text: &str) -> PyResult<Self> {
        Ok(PyMergeSequence {
            inner: mergeseq::parse_mseq(text).map_err(value_err)?,
        })
    }

    /// The two-step witness for any graph.
    #[staticmethod]
    fn trivial(g: &PyGraph) -> PyResult<Self> {
        if g.inner.n() == 0 {
            return Err(value_err("graph has no vertices"));
        }
        Ok(PyMergeSequence {
            inner: mergeseq::MergeSequence::trivial(&g.inner),
        })
    }

    #[getter]
    fn n(&self) -> usize {
        self.inner.n()
    }

    /// Number of steps.
    fn __len__(&self) -> usize {
        self.inner.len()
    }

    /// Blocks of the partition at `step` (one-based).
    fn blocks(&self, step: usize) -> PyResult<Vec<Vec<usize>>> {
        if step == 0 || step > self.inner.len() {
            return Err(value_err("step out of range"));
        }
        Ok(self.inner.partition(step).blocks().to_vec())
    }

    /// Pairs newly resolved at `step` (one-based).
    fn delta(&self, step: usize) -> PyResult<Vec<(usize, usize)>> {
        if step == 0 || step > self.inner.len() {
            return Err(value_err("step out of range"));
        }
        Ok(self.inner.steps()[step - 1].delta.clone())
    }

    /// None when valid, otherwise the first violation as text.
    fn validate(&self, g: &PyGraph) -> Option<String> {
        self.inner.validate(&g.inner).err().map(|v| v.to_string())
    }

    /// Radius-`r` width.
    fn width(&self, r: usize) -> usize {
        self.inner.width(r)
    }

    fn minimize(&self, g: &PyGraph) -> PyResult<PyMergeSequence> {
        Ok(PyMergeSequence {
            inner: self.inner.minimize(&g.inner).map_err(value_err)?,
        })
    }

    /// None when synchronised, otherwise the first counterexample as text.
    fn check_sync(&self, g: &PyGraph) -> PyResult<Option<String>> {
        match self.inner.check_sync(&g.inner).map_err(value_err)? {
            SyncResult::Ok => Ok(None),
            counterexample => Ok(Some(counterexample.to_string())),
        }
    }

    /// Restriction to an induced subgraph, with the new-to-old vertex map.
    fn restrict(&self, g: &PyGraph, keep: Vec<usize>) -> PyResult<(PyMergeSequence, Vec<usize>)> {
        let keep = to_bitset(g.inner.n(), &keep)?;
        if keep.is_empty() {
            return Err(value_err("empty restriction set"));
        }
        let (s, ids) = self.inner.restrict(&g.inner, &keep).map_err(value_err)?;
        Ok((PyMergeSequence { inner: s }, ids))
    }

    /// None when structurally bounded, otherwise the counterexample as text.
    fn is_structurally_bounded(&self, g: &PyGraph) -> PyResult<Option<String>> {
        match self.inner.is_structurally_bounded(&g.inner).map_err(value_err)? {
            StructuralResult::Ok => Ok(None),
            counterexample => Ok(Some(counterexample.to_string())),
        }
    }

    /// Binary-merge normal form.
    fn normalize_binary(&self) -> PyResult<PyMergeSequence> {
        Ok(PyMergeSequence {
            inner: solver::normalize_binary(&self.inner).map_err(value_err)?,
        })
    }

    fn to_text(&self) -> String {
        self.inner.to_text()
    }

    fn __repr__(&self) -> String {
        format!("MergeSequence(n={}, steps={})", self.inner.n(), self.inner.len())
    }

    fn __eq__(&self, other: &PyMergeSequence) -> bool {
        self.inner == other.inner
    }
}

/// Exact radius-`r` merge-width. Returns (value, optimal, witness).
#[pyfunction]
#[pyo3(signature = (g, radius, budget=None))]
fn exact_merge_width(
    g: &PyGraph,
    radius: usize,
    budget: Option<u64>,
) -> PyResult<(usize, bool, PyMergeSequence)> {
    let res = solver::exact_merge_width(&g.inner, radius, budget).map_err(value_err)?;
    Ok((res.value, res.optimal, PyMergeSequence { inner: res.witness }))
}

/// Complete/anti-complete pair certificate:
/// (a, b, kind, floor_num, floor_den, text).
#[pyfunction]
fn eh_pair(
    g: &PyGraph,
    s: &PyMergeSequence,
) -> PyResult<EhTuple> {
    let out = extraction::eh_pair(&g.inner, &s.inner).map_err(value_err)?;
    let cert = out.certificate;
    Ok((
        cert.a.clone(),
        cert.b.clone(),
        cert.kind.to_string(),
        cert.floor.num(),
        cert.floor.den(),
        cert.to_text(),
    ))
}

/// Number of distinct traces `N(v) ∩ X` over outside vertices.
#[pyfunction]
fn nc_profiles(g: &PyGraph, x: Vec<usize>) -> PyResult<usize> {
    let x = to_bitset(g.inner.n(), &x)?;
    Ok(extraction::nc_profiles(&g.inner, &x))
}

/// Exact neighbourhood complexity at size `p`: (value, witness X).
#[pyfunction]
fn nc_exact(g: &PyGraph, p: usize) -> PyResult<(usize, Vec<usize>)> {
    extraction::nc_exact(&g.inner, p).map_err(value_err)
}

/// Sampled lower bound on the neighbourhood complexity: (value, witness X).
#[pyfunction]
#[pyo3(signature = (g, p, trials, seed=0))]
fn nc_sample(g: &PyGraph, p: usize, trials: usize, seed: u64) -> PyResult<(usize, Vec<usize>)> {
    extraction::nc_sample(&g.inner, p, trials, seed).map_err(value_err)
}

/// Minimise a trace witness; returns (x, y).
#[pyfunction]
fn nc_witness_minimize(
    g: &PyGraph,
    x: Vec<usize>,
    y: Vec<usize>,
    alpha: usize,
) -> PyResult<(Vec<usize>, Vec<usize>)> {
    let w = extraction::nc_witness_minimize(&g.inner, &x, &y, alpha).map_err(value_err)?;
    Ok((w.x, w.y))
}

/// Try to certify `mw_2(g) > k`; returns the surviving (x, y) or None.
#[pyfunction]
fn mw2_lower_bound(
    g: &PyGraph,
    k: usize,
    x: Vec<usize>,
    y: Vec<usize>,
) -> Option<(Vec<usize>, Vec<usize>)> {
    match extraction::mw2_lower_bound_from_nc(&g.inner, k, &x, &y) {
        extraction::Mw2Outcome::Refuted { witness, .. } => Some((witness.x, witness.y)),
        extraction::Mw2Outcome::Inconclusive { .. } => None,
    }
}

/// Proper colouring along a structurally bounded sequence: (colors, bound).
#[pyfunction]
fn color_structural(g: &PyGraph, s: &PyMergeSequence) -> PyResult<(Vec<usize>, u128)> {
    let col = coloring::color_structural(&g.inner, &s.inner).map_err(value_err)?;
    Ok((col.colors, col.bound))
}

/// Proper colouring bounded by `(t+1)! k^(2t-2)`: (colors, bound).
#[pyfunction]
fn color_bounded_mw(g: &PyGraph, s: &PyMergeSequence) -> PyResult<(Vec<usize>, u128)> {
    let col = coloring::color_bounded_mw(&g.inner, &s.inner).map_err(value_err)?;
    Ok((col.colors, col.bound))
}

/// Apply a flip given blocks and a symmetric block-pair table.
#[pyfunction]
fn apply_flip(g: &PyGraph, blocks: Vec<Vec<usize>>, table: Vec<Vec<bool>>) -> PyResult<PyGraph> {
    let partition = mergeseq::Partition::from_blocks(g.inner.n(), blocks).map_err(value_err)?;
    let flip = flips::KFlip::new(partition, table).map_err(value_err)?;
    Ok(PyGraph {
        inner: flips::apply_flip(&g.inner, &flip).map_err(value_err)?,
    })
}

/// Exhaustive hideout check: None when verified, else the violating flip text.
#[pyfunction]
fn hideout_check(
    g: &PyGraph,
    u: Vec<usize>,
    r: usize,
    k: usize,
    d: usize,
) -> PyResult<Option<String>> {
    match flips::hideout_check(&g.inner, &u, r, k, d).map_err(value_err)? {
        flips::HideoutCheck::Verified => Ok(None),
        flips::HideoutCheck::Violated(flip) => Ok(Some(flip.to_text())),
    }
}

/// Hideout certificate from trace sets at `alpha = 2^(2k+1)`:
/// (u, r, k, d, brute_force_verified, text).
#[pyfunction]
#[pyo3(signature = (g, k, x, y, verify=false))]
fn hideout_certificate(
    g: &PyGraph,
    k: usize,
    x: Vec<usize>,
    y: Vec<usize>,
    verify: bool,
) -> PyResult<(Vec<usize>, usize, usize, usize, bool, String)> {
    if k == 0 {
        return Err(value_err("k must be positive"));
    }
    let alpha = 1usize << (2 * k + 1).min(62);
    let w = extraction::nc_witness_minimize(&g.inner, &x, &y, alpha).map_err(value_err)?;
    let mut cert = flips::hideout_from_witness(&g.inner, k, &w).map_err(value_err)?;
    if verify {
        match flips::hideout_check(&g.inner, &cert.u, cert.r, cert.k, cert.d).map_err(value_err)? {
            flips::HideoutCheck::Verified => cert.verified = flips::Verification::BruteForce,
            flips::HideoutCheck::Violated(flip) => {
                return Err(value_err(format!("violated by flip:\n{}", flip.to_text())))
            }
        }
    }
    let brute = cert.verified == flips::Verification::BruteForce;
    Ok((cert.u.clone(), cert.r, cert.k, cert.d, brute, cert.to_text()))
}

/// GF(2) rank of a 0/1 matrix given as rows.
#[pyfunction]
fn gf2_rank(rows: Vec<Vec<u8>>) -> usize {
    let refs: Vec<&[u8]> = rows.iter().map(|r| r.as_slice()).collect();
    mwkit::gf2::GF2Matrix::from_rows(&refs).rank()
}

#[pymodule]
fn mwkit_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyGraph>()?;
    m.add_class::<PyMergeSequence>()?;
    m.add_function(wrap_pyfunction!(exact_merge_width, m)?)?;
    m.add_function(wrap_pyfunction!(eh_pair, m)?)?;
    m.add_function(wrap_pyfunction!(nc_profiles, m)?)?;
    m.add_function(wrap_pyfunction!(nc_exact, m)?)?;
    m.add_function(wrap_pyfunction!(nc_sample, m)?)?;
    m.add_function(wrap_pyfunction!(nc_witness_minimize, m)?)?;
    m.add_function(wrap_pyfunction!(mw2_lower_bound, m)?)?;
    m.add_function(wrap_pyfunction!(color_structural, m)?)?;
    m.add_function(wrap_pyfunction!(color_bounded_mw, m)?)?;
    m.add_function(wrap_pyfunction!(apply_flip, m)?)?;
    m.add_function(wrap_pyfunction!(hideout_check, m)?)?;
    m.add_function(wrap_pyfunction!(hideout_certificate, m)?)?;
    m.add_function(wrap_pyfunction!(gf2_rank, m)?)?;
    Ok(())
}
