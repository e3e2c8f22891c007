//! Python bindings: `import symschub`.

use std::path::PathBuf;

use num_bigint::BigUint;
use pyo3::exceptions::{PyOSError, PyRuntimeError, PyValueError};
use pyo3::prelude::*;
use pyo3::types::PyDict;
use symschub_core::classify::Classification;
use symschub_core::instance::parse_rational;
use symschub_core::system::{generate_from_instance, PolySystem, SystemMeta, DEFAULT_TOL};
use symschub_core::{self as core, BoxBound, EnumerationFilter, Error, InstanceDoc, SchubertProblem, SolutionSet};

fn py_err(e: Error) -> PyErr {
    match e {
        Error::InvalidInput(_) | Error::InvalidProblem(_) => PyValueError::new_err(e.to_string()),
        Error::Chart(_) => PyRuntimeError::new_err(e.to_string()),
        _ => PyOSError::new_err(e.to_string()),
    }
}

fn parse(m: u32, conditions: &[String]) -> PyResult<(BoxBound, Vec<core::Partition>)> {
    let m = BoxBound::new(m).map_err(py_err)?;
    let conds = conditions
        .iter()
        .map(|c| c.parse())
        .collect::<core::Result<Vec<_>>>()
        .map_err(py_err)?;
    Ok((m, conds))
}

fn problem(m: u32, conditions: Vec<String>) -> PyResult<SchubertProblem> {
    let (m, conds) = parse(m, &conditions)?;
    SchubertProblem::new(m, conds).map_err(py_err)
}

/// An integer partition, e.g. `Partition("3,2,1")`.
#[pyclass(name = "Partition", frozen, eq, hash, skip_from_py_object)]
#[derive(Clone, PartialEq, Eq, Hash)]
struct PyPartition(core::Partition);

#[pymethods]
impl PyPartition {
    #[new]
    fn new(s: &str) -> PyResult<Self> {
        s.parse().map(PyPartition).map_err(py_err)
    }

    #[getter]
    fn parts(&self) -> Vec<u32> {
        self.0.parts().to_vec()
    }

    fn weight(&self) -> u32 {
        self.0.weight()
    }

    fn conjugate(&self) -> Self {
        PyPartition(self.0.conjugate())
    }

    fn is_symmetric(&self) -> bool {
        self.0.is_symmetric()
    }

    fn diagonal_length(&self) -> u32 {
        self.0.diagonal_length()
    }

    /// Strict partition `λ_i - i + 1` of a symmetric partition.
    fn to_strict(&self) -> PyResult<Vec<u32>> {
        self.0.to_strict().map(|s| s.parts().to_vec()).map_err(py_err)
    }

    fn __str__(&self) -> String {
        self.0.to_string()
    }

    fn __repr__(&self) -> String {
        format!("Partition(\"{}\")", self.0)
    }
}

/// Littlewood-Richardson coefficient `c^ν_{λμ}`.
#[pyfunction]
fn lr_coefficient(lam: &str, mu: &str, nu: &str) -> PyResult<u64> {
    let p = |s: &str| s.parse::<core::Partition>().map_err(py_err);
    Ok(core::lr_coefficient(&p(lam)?, &p(mu)?, &p(nu)?))
}

/// Number of solutions `d(λ)` of a Schubert problem on Gr(m, 2m).
#[pyfunction]
fn degree(m: u32, conditions: Vec<String>) -> PyResult<BigUint> {
    core::problem_degree(&problem(m, conditions)?).map_err(py_err)
}

/// Degree of the problem on LG(m, 2m).
#[pyfunction]
fn lg_degree(m: u32, conditions: Vec<String>) -> PyResult<BigUint> {
    let (m, conds) = parse(m, &conditions)?;
    core::lg_problem_degree(&conds, m).map_err(py_err)
}

fn classification_dict<'py>(py: Python<'py>, c: &Classification) -> PyResult<Bound<'py, PyDict>> {
    let d = PyDict::new(py);
    d.set_item("m", c.m)?;
    d.set_item("conditions", &c.conditions)?;
    d.set_item("sum_length", c.sum_length)?;
    d.set_item("parity_ok", c.parity_ok)?;
    d.set_item("min_bound_ok", c.min_bound_ok)?;
    d.set_item("fixed_codim_bound", &c.fixed_codim_bound)?;
    d.set_item("congruence_guaranteed", c.congruence_guaranteed)?;
    d.set_item("degree", c.degree.parse::<BigUint>().expect("decimal degree"))?;
    d.set_item("degree_mod4", c.degree_mod4)?;
    d.set_item("real_lower_bound", c.real_lower_bound)?;
    d.set_item("boundary_case", serde_json::to_value(c.boundary_case).expect("enum").as_str())?;
    Ok(d)
}

/// Mod-4 classification of a symmetric problem, as a dict.
#[pyfunction]
fn classify<'py>(py: Python<'py>, m: u32, conditions: Vec<String>) -> PyResult<Bound<'py, PyDict>> {
    let c = core::classify(&problem(m, conditions)?).map_err(py_err)?;
    classification_dict(py, &c)
}

/// `(m, symmetric problems, problems with a lower bound of two)`.
#[pyfunction]
#[pyo3(signature = (m, jobs = 1, min_degree = 2))]
fn table1_row(py: Python<'_>, m: u32, jobs: usize, min_degree: u64) -> PyResult<(u32, usize, usize)> {
    let m = BoxBound::new(m).map_err(py_err)?;
    let filter = EnumerationFilter { min_degree, ..Default::default() };
    let row = py.detach(|| core::table1_row(m, &filter, jobs)).map_err(py_err)?;
    Ok((row.m, row.n_symmetric, row.n_lower_bound))
}

/// All symmetric problems for `m` as classification dicts.
#[pyfunction]
#[pyo3(signature = (m, jobs = 1, min_degree = 2))]
fn enumerate<'py>(py: Python<'py>, m: u32, jobs: usize, min_degree: u64) -> PyResult<Vec<Bound<'py, PyDict>>> {
    let m = BoxBound::new(m).map_err(py_err)?;
    let filter = EnumerationFilter { min_degree, ..Default::default() };
    let records = py.detach(|| core::enumerate_problems(m, &filter, jobs)).map_err(py_err)?;
    records.iter().map(|r| classification_dict(py, &r.classification)).collect()
}

/// Instance JSON with osculating flags at rational points (`"1/2"`, `"-3"`)
/// or random isotropic flags from `seed`.
#[pyfunction]
#[pyo3(signature = (m, conditions, osculate = None, seed = None))]
fn make_instance(m: u32, conditions: Vec<String>, osculate: Option<Vec<String>>, seed: Option<u64>) -> PyResult<String> {
    let p = problem(m, conditions)?;
    let doc = match (osculate, seed) {
        (Some(ts), None) => {
            let ts = ts.iter().map(|t| parse_rational(t)).collect::<core::Result<Vec<_>>>().map_err(py_err)?;
            InstanceDoc::osculating(p.m, p.conditions, &ts).map_err(py_err)?
        }
        (None, Some(s)) => InstanceDoc::random_isotropic(p.m, p.conditions, s),
        _ => return Err(PyValueError::new_err("give exactly one of osculate or seed")),
    };
    doc.to_json().map_err(py_err)
}

/// `(system_text, metadata_json)` for an instance JSON document.
#[pyfunction]
fn export_system(instance_json: &str) -> PyResult<(String, String)> {
    let doc = InstanceDoc::from_json(instance_json).map_err(py_err)?;
    let sys = generate_from_instance(&doc).map_err(py_err)?;
    let meta = serde_json::to_string_pretty(&sys.meta).map_err(|e| py_err(e.into()))?;
    Ok((sys.to_text(), meta))
}

/// Verification report for solver output against an exported system.
#[pyfunction]
#[pyo3(signature = (system_text, metadata_json, solutions_text, tol = DEFAULT_TOL))]
fn check_solutions<'py>(
    py: Python<'py>,
    system_text: &str,
    metadata_json: &str,
    solutions_text: &str,
    tol: f64,
) -> PyResult<Bound<'py, PyDict>> {
    let meta: SystemMeta = serde_json::from_str(metadata_json).map_err(|e| py_err(e.into()))?;
    let sys = PolySystem::parse_text(system_text, meta, "<system>").map_err(py_err)?;
    let sols = SolutionSet::parse(solutions_text, "<solutions>").map_err(py_err)?;
    let r = core::verify_solutions(&sys, &sols, tol).map_err(py_err)?;
    let d = PyDict::new(py);
    d.set_item("n_points", r.n_points)?;
    d.set_item("n_real", r.n_real)?;
    d.set_item("n_conjugate_pairs", r.n_conjugate_pairs)?;
    d.set_item("n_unpaired", r.n_unpaired)?;
    d.set_item("n_lagrangian", r.n_lagrangian)?;
    d.set_item("expected_degree", r.expected_degree.parse::<BigUint>().expect("decimal degree"))?;
    d.set_item("congruence_guaranteed", r.congruence_guaranteed)?;
    d.set_item("mod4_consistent", r.mod4_consistent)?;
    d.set_item("residual_max", r.residual_max)?;
    d.set_item("solver_overcount", r.solver_overcount)?;
    d.set_item("solver_undercount", r.solver_undercount)?;
    Ok(d)
}

/// Writes the system and its sidecar to `path` and `path + ".json"`.
#[pyfunction]
fn write_system(instance_json: &str, path: PathBuf) -> PyResult<(usize, usize)> {
    let doc = InstanceDoc::from_json(instance_json).map_err(py_err)?;
    let sys = generate_from_instance(&doc).map_err(py_err)?;
    core::write_system(&sys, &path).map_err(py_err)?;
    Ok((sys.n_vars(), sys.polynomials.len()))
}

#[pymodule]
fn symschub(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyPartition>()?;
    m.add_function(wrap_pyfunction!(lr_coefficient, m)?)?;
    m.add_function(wrap_pyfunction!(degree, m)?)?;
    m.add_function(wrap_pyfunction!(lg_degree, m)?)?;
    m.add_function(wrap_pyfunction!(classify, m)?)?;
    m.add_function(wrap_pyfunction!(table1_row, m)?)?;
    m.add_function(wrap_pyfunction!(enumerate, m)?)?;
    m.add_function(wrap_pyfunction!(make_instance, m)?)?;
    m.add_function(wrap_pyfunction!(export_system, m)?)?;
    m.add_function(wrap_pyfunction!(check_solutions, m)?)?;
    m.add_function(wrap_pyfunction!(write_system, m)?)?;
    Ok(())
}
