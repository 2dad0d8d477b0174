//! Python bindings: the graph model, the exact solvers and the gadget
//! builders, with certificates crossing the boundary as plain lists so the
//! Python side can re-verify everything independently.

use pyo3::exceptions::{PyRuntimeError, PyValueError};
use pyo3::prelude::*;
use regnum::budget::Budget;
use regnum::coloring;
use regnum::families;
use regnum::graph::Graph as CoreGraph;
use regnum::partition::{self, SolveError};
use regnum::reduce;
use regnum::sat;

fn value_err(e: impl std::fmt::Display) -> PyErr {
    PyValueError::new_err(e.to_string())
}

fn solve_err(e: SolveError) -> PyErr {
    match e {
        SolveError::Exhausted { lower, upper, .. } => PyRuntimeError::new_err(format!(
            "budget exhausted: reg >= {} proven, verified upper bound {:?}",
            lower, upper
        )),
        SolveError::Budget(b) => PyRuntimeError::new_err(b.to_string()),
        other => value_err(other),
    }
}

/// Finite undirected loopless simple graph with stable edge indices.
#[pyclass(name = "Graph", skip_from_py_object)]
#[derive(Clone)]
struct PyGraph {
    inner: CoreGraph,
}

#[pymethods]
impl PyGraph {
    #[new]
    fn new(vertex_count: usize, edges: Vec<(usize, usize)>) -> PyResult<Self> {
        Ok(PyGraph {
            inner: CoreGraph::new(vertex_count, edges).map_err(value_err)?,
        })
    }

    #[staticmethod]
    fn from_edge_list(text: &str) -> PyResult<Self> {
        Ok(PyGraph {
            inner: CoreGraph::from_edge_list_text(text).map_err(value_err)?,
        })
    }

    fn vertex_count(&self) -> usize {
        self.inner.vertex_count()
    }

    fn edge_count(&self) -> usize {
        self.inner.edge_count()
    }

    fn edges(&self) -> Vec<(usize, usize)> {
        self.inner.edges().to_vec()
    }

    fn degree(&self, v: usize) -> PyResult<usize> {
        if v >= self.inner.vertex_count() {
            return Err(value_err(format!("vertex {} out of range", v)));
        }
        Ok(self.inner.degree(v))
    }

    fn degrees(&self) -> Vec<usize> {
        self.inner.degree_profile().degrees().to_vec()
    }

    fn degree_set(&self) -> Vec<usize> {
        self.inner.degree_profile().degree_set()
    }

    fn max_degree(&self) -> usize {
        self.inner.max_degree()
    }

    fn is_bipartite(&self) -> bool {
        self.inner.is_bipartite().is_bipartite()
    }

    fn connected_components(&self) -> Vec<Vec<usize>> {
        self.inner.connected_components()
    }

    fn disjoint_union(&self, other: &PyGraph) -> PyGraph {
        PyGraph {
            inner: self.inner.disjoint_union(&other.inner),
        }
    }

    fn to_edge_list(&self) -> String {
        self.inner.to_edge_list_text()
    }

    fn to_dot(&self) -> String {
        self.inner.to_dot(None, None)
    }

    fn __repr__(&self) -> String {
        format!(
            "Graph(vertices={}, edges={})",
            self.inner.vertex_count(),
            self.inner.edge_count()
        )
    }
}

/// Monotone NAE formula with clauses of size 2 or 3.
#[pyclass(name = "Formula", skip_from_py_object)]
#[derive(Clone)]
struct PyFormula {
    inner: sat::MonotoneFormula,
}

#[pymethods]
impl PyFormula {
    #[new]
    fn new(variable_count: usize, clauses: Vec<Vec<usize>>) -> PyResult<Self> {
        Ok(PyFormula {
            inner: sat::MonotoneFormula::new(variable_count, clauses).map_err(value_err)?,
        })
    }

    #[staticmethod]
    fn from_dimacs(text: &str) -> PyResult<Self> {
        Ok(PyFormula {
            inner: sat::MonotoneFormula::from_dimacs(text).map_err(value_err)?,
        })
    }

    fn variable_count(&self) -> usize {
        self.inner.variable_count()
    }

    fn clauses(&self) -> Vec<Vec<usize>> {
        self.inner.clauses().to_vec()
    }

    fn nae_eval(&self, assignment: Vec<bool>) -> PyResult<bool> {
        if assignment.len() != self.inner.variable_count() {
            return Err(value_err("assignment must be total"));
        }
        Ok(self.inner.nae_eval(&assignment))
    }

    fn occurrence_counts(&self) -> Vec<usize> {
        self.inner.occurrence_counts()
    }

    fn is_cubic23(&self) -> bool {
        sat::check_cubic23(&self.inner).is_ok()
    }

    fn to_dimacs(&self) -> String {
        self.inner.to_dimacs()
    }

    fn __repr__(&self) -> String {
        format!(
            "Formula(variables={}, clauses={})",
            self.inner.variable_count(),
            self.inner.clauses().len()
        )
    }
}

/// (value, parts, regularities, nodes, method) from an exact solve.
type SolveTuple = (usize, Vec<Vec<usize>>, Vec<usize>, u64, String);

fn report_tuple(report: partition::SolveReport) -> SolveTuple {
    let method = match report.method {
        partition::Method::Oracle => "oracle",
        partition::Method::BranchAndBound => "branch-and-bound",
        partition::Method::FastPath => "fast-path",
    };
    (
        report.value,
        report.certificate.parts,
        report.certificate.regularities,
        report.stats.nodes,
        method.to_string(),
    )
}

#[pyfunction]
#[pyo3(signature = (graph, budget=5_000_000))]
fn reg_exact(graph: &PyGraph, budget: u64) -> PyResult<SolveTuple> {
    partition::reg_exact(&graph.inner, Budget::new(budget))
        .map(report_tuple)
        .map_err(solve_err)
}

#[pyfunction]
fn reg_bruteforce(graph: &PyGraph) -> PyResult<SolveTuple> {
    partition::reg_bruteforce(&graph.inner)
        .map(report_tuple)
        .map_err(solve_err)
}

/// None when no partition into at most t parts exists.
#[pyfunction]
#[pyo3(signature = (graph, t, budget=5_000_000))]
fn reg_at_most(graph: &PyGraph, t: usize, budget: u64) -> PyResult<Option<Vec<Vec<usize>>>> {
    if t == 0 {
        return Err(value_err("part bound must be positive"));
    }
    match partition::reg_at_most(&graph.inner, t, Budget::new(budget)).map_err(solve_err)? {
        (partition::Decision::Yes(cert), _) => Ok(Some(cert.parts)),
        (partition::Decision::No, _) => Ok(None),
    }
}

#[pyfunction]
fn verify_partition(graph: &PyGraph, parts: Vec<Vec<usize>>) -> PyResult<Vec<usize>> {
    partition::verify_partition(&graph.inner, &parts).map_err(value_err)
}

#[pyfunction]
#[pyo3(signature = (graph, budget=5_000_000))]
fn decide_reg2_bivalent(graph: &PyGraph, budget: u64) -> PyResult<Option<Vec<Vec<usize>>>> {
    let (cert, _) =
        partition::decide_reg2_bivalent(&graph.inner, Budget::new(budget)).map_err(solve_err)?;
    Ok(cert.map(|c| c.parts))
}

#[pyfunction]
#[pyo3(signature = (graph, budget=5_000_000))]
fn chi_prime(graph: &PyGraph, budget: u64) -> PyResult<(usize, Vec<usize>)> {
    let (chi, witness, _) =
        coloring::chi_prime_exact(&graph.inner, Budget::new(budget)).map_err(value_err)?;
    Ok((chi, witness.colors().to_vec()))
}

#[pyfunction]
fn vizing_coloring(graph: &PyGraph) -> Vec<usize> {
    coloring::color_delta_plus_one(&graph.inner)
        .colors()
        .to_vec()
}

#[pyfunction]
#[pyo3(signature = (graph, budget=5_000_000))]
fn sigma_cubic(graph: &PyGraph, budget: u64) -> PyResult<(usize, Vec<usize>, Vec<usize>)> {
    let (report, _) =
        coloring::sigma_cubic(&graph.inner, Budget::new(budget)).map_err(value_err)?;
    Ok((
        report.sigma,
        report.coloring.colors().to_vec(),
        report.fourth_class,
    ))
}

#[pyfunction]
#[pyo3(signature = (graph, k, budget=5_000_000))]
fn vertex_colorable(graph: &PyGraph, k: usize, budget: u64) -> PyResult<Option<Vec<u8>>> {
    graph
        .inner
        .is_k_colorable(k, Budget::new(budget))
        .map_err(value_err)
}

#[pyfunction]
fn nae_solve(formula: &PyFormula) -> Option<Vec<bool>> {
    if formula.inner.variable_count() <= sat::BRUTE_FORCE_MAX_VARS {
        sat::nae_solve_bruteforce(&formula.inner).expect("cap checked")
    } else {
        sat::nae_satisfiable_exact(&formula.inner)
    }
}

#[pyfunction]
fn normalize_to_cubic23(formula: &PyFormula) -> PyResult<(PyFormula, String)> {
    let (out, trace) = sat::normalize_to_cubic23(&formula.inner).map_err(value_err)?;
    let trace_json = serde_json::to_string(&trace).map_err(value_err)?;
    Ok((PyFormula { inner: out }, trace_json))
}

#[pyfunction]
fn gadget_formula(formula: &PyFormula) -> PyResult<(PyGraph, String)> {
    let gadget = reduce::gadget_formula(&formula.inner).map_err(value_err)?;
    let provenance = gadget.provenance_json().to_string();
    Ok((
        PyGraph {
            inner: gadget.graph,
        },
        provenance,
    ))
}

#[pyfunction]
fn gadget_three_partition(k: u64, values: Vec<u64>) -> PyResult<(PyGraph, String)> {
    let inst = reduce::ThreePartitionInstance { k, values };
    let gadget = reduce::gadget_three_partition(&inst).map_err(value_err)?;
    let provenance = gadget.provenance_json().to_string();
    Ok((
        PyGraph {
            inner: gadget.graph,
        },
        provenance,
    ))
}

#[pyfunction]
fn solve_3p(k: u64, values: Vec<u64>) -> PyResult<Option<Vec<(usize, usize, usize)>>> {
    let inst = reduce::ThreePartitionInstance { k, values };
    let groups = reduce::solve_3p_bruteforce(&inst).map_err(value_err)?;
    Ok(groups.map(|gs| gs.into_iter().map(|[a, b, c]| (a, b, c)).collect()))
}

#[pyfunction]
fn blob_decide_3p(k: u64, values: Vec<u64>) -> PyResult<bool> {
    let inst = reduce::ThreePartitionInstance { k, values };
    reduce::blob_decide_3p(&inst).map_err(value_err)
}

#[pyfunction]
fn cubic_pendant_transform(graph: &PyGraph, u: usize, v: usize) -> PyResult<PyGraph> {
    let gadget = reduce::cubic_pendant_transform(&graph.inner, u, v).map_err(value_err)?;
    Ok(PyGraph {
        inner: gadget.graph,
    })
}

#[pyfunction]
#[pyo3(signature = (formula, assignment, budget=5_000_000))]
fn partition_from_assignment(
    formula: &PyFormula,
    assignment: Vec<bool>,
    budget: u64,
) -> PyResult<Vec<Vec<usize>>> {
    let gadget = reduce::gadget_formula(&formula.inner).map_err(value_err)?;
    let cert = reduce::partition_from_assignment(
        &formula.inner,
        &assignment,
        &gadget,
        Budget::new(budget),
    )
    .map_err(value_err)?;
    Ok(cert.parts)
}

/// Reads the NAE model back out of a two-part 3-regular certificate for the
/// formula's gadget graph.
#[pyfunction]
fn assignment_from_partition(formula: &PyFormula, parts: Vec<Vec<usize>>) -> PyResult<Vec<bool>> {
    let gadget = reduce::gadget_formula(&formula.inner).map_err(value_err)?;
    let regularities = partition::verify_partition(&gadget.graph, &parts).map_err(value_err)?;
    let cert = partition::RegularPartition {
        parts,
        regularities,
    };
    reduce::assignment_from_partition(&formula.inner, &gadget, &cert).map_err(value_err)
}

/// Certificate for a numeric grouping: one 2k-regular part per group of the
/// instance's hub gadget. Groups are index triples.
#[pyfunction]
fn partition_from_3p_solution(
    k: u64,
    values: Vec<u64>,
    grouping: Vec<(usize, usize, usize)>,
) -> PyResult<Vec<Vec<usize>>> {
    let inst = reduce::ThreePartitionInstance { k, values };
    let gadget = reduce::gadget_three_partition(&inst).map_err(value_err)?;
    let groups: Vec<[usize; 3]> = grouping.into_iter().map(|(a, b, c)| [a, b, c]).collect();
    let cert = reduce::partition_from_3p_solution(&inst, &groups, &gadget).map_err(value_err)?;
    Ok(cert.parts)
}

#[pyfunction]
fn zebra(n: usize) -> PyResult<PyGraph> {
    Ok(PyGraph {
        inner: families::zebra(n).map_err(value_err)?,
    })
}

#[pyfunction]
fn petersen() -> PyGraph {
    PyGraph {
        inner: families::petersen(),
    }
}

#[pyfunction]
fn star(r: usize) -> PyResult<PyGraph> {
    Ok(PyGraph {
        inner: families::star(r).map_err(value_err)?,
    })
}

#[pyfunction]
fn complete(n: usize) -> PyResult<PyGraph> {
    Ok(PyGraph {
        inner: families::complete(n).map_err(value_err)?,
    })
}

#[pyfunction]
fn complete_bipartite(a: usize, b: usize) -> PyResult<PyGraph> {
    Ok(PyGraph {
        inner: families::complete_bipartite(a, b).map_err(value_err)?,
    })
}

#[pyfunction]
fn cycle(n: usize) -> PyResult<PyGraph> {
    Ok(PyGraph {
        inner: families::cycle(n).map_err(value_err)?,
    })
}

#[pyfunction]
fn path(n: usize) -> PyResult<PyGraph> {
    Ok(PyGraph {
        inner: families::path(n).map_err(value_err)?,
    })
}

#[pyfunction]
#[pyo3(signature = (n, seed=0))]
fn random_tree(n: usize, seed: u64) -> PyResult<PyGraph> {
    Ok(PyGraph {
        inner: families::random_tree(n, seed).map_err(value_err)?,
    })
}

#[pymodule]
fn regnum_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyGraph>()?;
    m.add_class::<PyFormula>()?;
    m.add_function(wrap_pyfunction!(reg_exact, m)?)?;
    m.add_function(wrap_pyfunction!(reg_bruteforce, m)?)?;
    m.add_function(wrap_pyfunction!(reg_at_most, m)?)?;
    m.add_function(wrap_pyfunction!(verify_partition, m)?)?;
    m.add_function(wrap_pyfunction!(decide_reg2_bivalent, m)?)?;
    m.add_function(wrap_pyfunction!(chi_prime, m)?)?;
    m.add_function(wrap_pyfunction!(vizing_coloring, m)?)?;
    m.add_function(wrap_pyfunction!(sigma_cubic, m)?)?;
    m.add_function(wrap_pyfunction!(vertex_colorable, m)?)?;
    m.add_function(wrap_pyfunction!(nae_solve, m)?)?;
    m.add_function(wrap_pyfunction!(normalize_to_cubic23, m)?)?;
    m.add_function(wrap_pyfunction!(gadget_formula, m)?)?;
    m.add_function(wrap_pyfunction!(gadget_three_partition, m)?)?;
    m.add_function(wrap_pyfunction!(solve_3p, m)?)?;
    m.add_function(wrap_pyfunction!(blob_decide_3p, m)?)?;
    m.add_function(wrap_pyfunction!(cubic_pendant_transform, m)?)?;
    m.add_function(wrap_pyfunction!(partition_from_assignment, m)?)?;
    m.add_function(wrap_pyfunction!(assignment_from_partition, m)?)?;
    m.add_function(wrap_pyfunction!(partition_from_3p_solution, m)?)?;
    m.add_function(wrap_pyfunction!(zebra, m)?)?;
    m.add_function(wrap_pyfunction!(petersen, m)?)?;
    m.add_function(wrap_pyfunction!(star, m)?)?;
    m.add_function(wrap_pyfunction!(complete, m)?)?;
    m.add_function(wrap_pyfunction!(complete_bipartite, m)?)?;
    m.add_function(wrap_pyfunction!(cycle, m)?)?;
    m.add_function(wrap_pyfunction!(path, m)?)?;
    m.add_function(wrap_pyfunction!(random_tree, m)?)?;
    Ok(())
}
