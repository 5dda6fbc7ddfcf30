//! Python bindings for the steiner-orient toolkit: the instance type plus
//! the solve, verify, normalize, enumerate, and generate entry points.
//!
//! Orientations cross the boundary as lists of 0/1 edge flags in input edge
//! order (0 keeps the listed direction, 1 reverses it), matching the text
//! format's bit strings.

use pyo3::exceptions::{PyRuntimeError, PyValueError};
use pyo3::prelude::*;

use steiner_orient::connectivity::{verify as verify_rs, SteinerInstance, Verdict};
use steiner_orient::graph::{build_multigraph, canonical_code, Dir, Orientation, VertexId};
use steiner_orient::hardness::{gen_mnae_to_k2, lift_k as lift_k_rs, NaeFormula};
use steiner_orient::io;
use steiner_orient::minor::{
    catalog_decide as catalog_decide_rs, enumerate_minimal as enumerate_minimal_rs,
    fixed_topo_minor, Catalog, CatalogEntry, CatalogVerdict,
};
use steiner_orient::reductions::{
    reduce_degree_k as reduce_degree_k_rs, three_regularize as three_regularize_rs,
};
use steiner_orient::solver::{
    brute_force_solve, cap_parallel as cap_parallel_rs, solve as solve_rs, solve_r, RInstance,
    SolveResult,
};

const DEFAULT_BUDGET: u64 = 10_000_000;

fn value_err(e: impl std::fmt::Display) -> PyErr {
    PyValueError::new_err(e.to_string())
}

fn dirs_to_orientation(inst: &SteinerInstance, dirs: &[u32]) -> PyResult<Orientation> {
    if dirs.len() != inst.graph().edge_count() {
        return Err(PyValueError::new_err(format!(
            "orientation has {} flags but the instance has {} edges",
            dirs.len(),
            inst.graph().edge_count()
        )));
    }
    let mapped = dirs
        .iter()
        .map(|&b| match b {
            0 => Ok(Dir::AsListed),
            1 => Ok(Dir::Reversed),
            other => Err(PyValueError::new_err(format!(
                "orientation flags must be 0 or 1, got {other}"
            ))),
        })
        .collect::<PyResult<Vec<Dir>>>()?;
    Ok(Orientation::new(mapped))
}

fn orientation_to_dirs(o: &Orientation) -> Vec<u32> {
    o.dirs()
        .iter()
        .map(|&d| if d == Dir::Reversed { 1 } else { 0 })
        .collect()
}

fn witness(result: SolveResult, operation: &str) -> PyResult<Option<Vec<u32>>> {
    match result {
        SolveResult::Yes(o) => Ok(Some(orientation_to_dirs(&o))),
        SolveResult::No => Ok(None),
        SolveResult::Unknown(nodes) => Err(PyRuntimeError::new_err(format!(
            "{operation} exhausted its budget after {nodes} search nodes"
        ))),
    }
}

/// A rooted instance: an undirected multigraph, a root, terminals, and the
/// required number of arc-disjoint root-to-terminal paths.
#[pyclass(frozen)]
struct Instance {
    inner: SteinerInstance,
}

#[pymethods]
impl Instance {
    #[new]
    fn new(
        vertex_count: usize,
        edges: Vec<(usize, usize)>,
        root: usize,
        terminals: Vec<usize>,
        k: usize,
    ) -> PyResult<Self> {
        let graph = build_multigraph(vertex_count, &edges).map_err(value_err)?;
        let inner = SteinerInstance::new(graph, root, terminals, k).map_err(value_err)?;
        Ok(Instance { inner })
    }

    /// Parses either the line-oriented or the structured text format.
    #[staticmethod]
    fn parse(text: &str) -> PyResult<Self> {
        let structured = text
            .lines()
            .map(|l| l.split('#').next().unwrap_or(""))
            .find_map(|l| l.split_whitespace().next())
            == Some("type");
        let parsed = if structured {
            io::parse_structured_instance(text)
        } else {
            io::parse_instance(text)
        };
        Ok(Instance {
            inner: parsed.map_err(value_err)?,
        })
    }

    /// The line-oriented text form.
    fn serialize(&self) -> String {
        io::serialize_instance(&self.inner)
    }

    /// The structured key-value text form.
    fn structured(&self) -> String {
        io::structured_instance(&self.inner)
    }

    #[getter]
    fn vertex_count(&self) -> usize {
        self.inner.graph().vertex_count()
    }

    #[getter]
    fn edge_count(&self) -> usize {
        self.inner.graph().edge_count()
    }

    #[getter]
    fn edges(&self) -> Vec<(usize, usize)> {
        self.inner.graph().edges().to_vec()
    }

    #[getter]
    fn root(&self) -> usize {
        self.inner.root()
    }

    #[getter]
    fn terminals(&self) -> Vec<usize> {
        self.inner.terminals().to_vec()
    }

    #[getter]
    fn k(&self) -> usize {
        self.inner.k()
    }

    fn __repr__(&self) -> String {
        format!(
            "Instance(vertex_count={}, edge_count={}, root={}, terminals={:?}, k={})",
            self.inner.graph().vertex_count(),
            self.inner.graph().edge_count(),
            self.inner.root(),
            self.inner.terminals(),
            self.inner.k()
        )
    }
}

/// Decides feasibility; returns the witness orientation flags on yes, None
/// on no, and raises RuntimeError when the node budget runs out.
#[pyfunction]
#[pyo3(signature = (inst, budget = DEFAULT_BUDGET))]
fn solve(inst: &Instance, budget: u64) -> PyResult<Option<Vec<u32>>> {
    witness(solve_rs(&inst.inner, budget), "solve")
}

/// Decides feasibility by trying every orientation; independent of `solve`.
#[pyfunction]
fn oracle(inst: &Instance) -> PyResult<Option<Vec<u32>>> {
    witness(brute_force_solve(&inst.inner).map_err(value_err)?, "oracle")
}

/// True iff the orientation routes k arc-disjoint paths to every terminal.
#[pyfunction]
fn verify(inst: &Instance, dirs: Vec<u32>) -> PyResult<bool> {
    let o = dirs_to_orientation(&inst.inner, &dirs)?;
    Ok(verify_rs(&inst.inner, &o) == Verdict::Ok)
}

/// The largest requirement the instance can satisfy (0 when even one
/// arc-disjoint path per terminal is impossible).
#[pyfunction]
#[pyo3(signature = (inst, budget = DEFAULT_BUDGET))]
fn maximize_k(inst: &Instance, budget: u64) -> PyResult<usize> {
    let g = inst.inner.graph().clone();
    let root = inst.inner.root();
    let terminals = inst.inner.terminals().to_vec();
    let mut best = 0;
    loop {
        let candidate = SteinerInstance::new(g.clone(), root, terminals.clone(), best + 1)
            .map_err(value_err)?;
        match solve_rs(&candidate, budget) {
            SolveResult::Yes(_) => best += 1,
            SolveResult::No => return Ok(best),
            SolveResult::Unknown(nodes) => {
                return Err(PyRuntimeError::new_err(format!(
                    "maximize_k exhausted its budget after {nodes} search nodes at k = {}",
                    best + 1
                )))
            }
        }
    }
}

/// Caps parallel edge bundles at 2k copies; feasibility is unchanged.
#[pyfunction]
fn cap_parallel(inst: &Instance) -> Instance {
    Instance {
        inner: cap_parallel_rs(&inst.inner).0,
    }
}

/// Gives the root and terminals degree exactly k; feasibility is unchanged.
#[pyfunction]
fn reduce_degree_k(inst: &Instance) -> Instance {
    Instance {
        inner: reduce_degree_k_rs(&inst.inner).instance,
    }
}

/// Expands internal vertices to degree 3; expects members of degree k, as
/// produced by `reduce_degree_k`.
#[pyfunction]
fn three_regularize(inst: &Instance) -> PyResult<Instance> {
    Ok(Instance {
        inner: three_regularize_rs(&inst.inner)
            .map_err(value_err)?
            .instance,
    })
}

/// All minimal feasible instances on up to `max_vertices` vertices, plus a
/// completeness flag that is False when the budget cut the sweep short.
#[pyfunction]
#[pyo3(signature = (k, t, max_vertices, budget = DEFAULT_BUDGET))]
fn enumerate_minimal(
    k: usize,
    t: usize,
    max_vertices: usize,
    budget: u64,
) -> (Vec<Instance>, bool) {
    let catalog = enumerate_minimal_rs(k, t, max_vertices, budget);
    let entries = catalog
        .entries
        .into_iter()
        .map(|e| Instance { inner: e.instance })
        .collect();
    (entries, catalog.complete)
}

/// True iff the pattern embeds in the host as a topological minor fixing
/// the root and terminals, which must carry the same ids in both instances.
#[pyfunction]
#[pyo3(signature = (pattern, host, budget = DEFAULT_BUDGET))]
fn minor_embeds(pattern: &Instance, host: &Instance, budget: u64) -> PyResult<bool> {
    if pattern.inner.root() != host.inner.root()
        || pattern.inner.terminals() != host.inner.terminals()
    {
        return Err(PyValueError::new_err(
            "pattern and host must agree on root and terminal ids",
        ));
    }
    let mut w: Vec<VertexId> = vec![host.inner.root()];
    w.extend(host.inner.terminals().iter().copied());
    match fixed_topo_minor(host.inner.graph(), pattern.inner.graph(), &w, budget) {
        Ok(embedding) => Ok(embedding.is_some()),
        Err(e) => Err(PyRuntimeError::new_err(e.to_string())),
    }
}

/// Decides a 3-regular instance against a catalog of minimal instances;
/// returns "yes", "no", or "unknown" (inconclusive without completeness).
#[pyfunction]
#[pyo3(signature = (inst, entries, complete, budget = DEFAULT_BUDGET))]
fn catalog_decide(
    inst: &Instance,
    entries: Vec<PyRef<Instance>>,
    complete: bool,
    budget: u64,
) -> PyResult<String> {
    let catalog = Catalog {
        entries: entries
            .iter()
            .map(|e| {
                let mut members = vec![e.inner.root()];
                members.extend(e.inner.terminals().iter().copied());
                CatalogEntry {
                    code: canonical_code(e.inner.graph(), &members),
                    instance: e.inner.clone(),
                }
            })
            .collect(),
        complete,
    };
    match catalog_decide_rs(&inst.inner, &catalog, complete, budget) {
        Ok(CatalogVerdict::Yes { .. }) => Ok("yes".to_string()),
        Ok(CatalogVerdict::No) => Ok("no".to_string()),
        Ok(CatalogVerdict::NoWithinCatalog) => Ok("unknown".to_string()),
        Err(e) => Err(value_err(e)),
    }
}

/// Builds the k = 2 instance of a monotone not-all-equal formula; the
/// instance is feasible iff the formula is satisfiable.
#[pyfunction]
fn generate_mnae_k2(
    variable_count: usize,
    clauses: Vec<(usize, usize, usize)>,
) -> PyResult<Instance> {
    let clauses: Vec<[usize; 3]> = clauses.into_iter().map(|(a, b, c)| [a, b, c]).collect();
    let f = NaeFormula::new(variable_count, clauses).map_err(value_err)?;
    Ok(Instance {
        inner: gen_mnae_to_k2(&f),
    })
}

/// Raises a k = 2 instance with tight terminal boundaries to a larger k,
/// preserving feasibility.
#[pyfunction]
fn lift_k(inst: &Instance, k_target: usize) -> PyResult<Instance> {
    Ok(Instance {
        inner: lift_k_rs(&inst.inner, k_target).map_err(value_err)?,
    })
}

/// Orients a multigraph to meet per-ordered-pair connectivity demands;
/// returns witness flags on yes, None on no.
#[pyfunction]
#[pyo3(signature = (vertex_count, edges, demands, budget = DEFAULT_BUDGET))]
fn solve_demands(
    vertex_count: usize,
    edges: Vec<(usize, usize)>,
    demands: Vec<(usize, usize, usize)>,
    budget: u64,
) -> PyResult<Option<Vec<u32>>> {
    let graph = build_multigraph(vertex_count, &edges).map_err(value_err)?;
    let mut map = std::collections::BTreeMap::new();
    for (u, v, req) in demands {
        if map.insert((u, v), req).is_some() {
            return Err(PyValueError::new_err(format!(
                "demand for pair ({u}, {v}) given twice"
            )));
        }
    }
    let ri = RInstance::new(graph, map).map_err(value_err)?;
    witness(solve_r(&ri, budget), "solve_demands")
}

#[pymodule]
fn steiner_orient_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<Instance>()?;
    m.add_function(wrap_pyfunction!(solve, m)?)?;
    m.add_function(wrap_pyfunction!(oracle, m)?)?;
    m.add_function(wrap_pyfunction!(verify, m)?)?;
    m.add_function(wrap_pyfunction!(maximize_k, m)?)?;
    m.add_function(wrap_pyfunction!(cap_parallel, m)?)?;
    m.add_function(wrap_pyfunction!(reduce_degree_k, m)?)?;
    m.add_function(wrap_pyfunction!(three_regularize, m)?)?;
    m.add_function(wrap_pyfunction!(enumerate_minimal, m)?)?;
    m.add_function(wrap_pyfunction!(minor_embeds, m)?)?;
    m.add_function(wrap_pyfunction!(catalog_decide, m)?)?;
    m.add_function(wrap_pyfunction!(generate_mnae_k2, m)?)?;
    m.add_function(wrap_pyfunction!(lift_k, m)?)?;
    m.add_function(wrap_pyfunction!(solve_demands, m)?)?;
    Ok(())
}
