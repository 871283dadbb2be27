//! Python bindings: formulas, sequents, proofs, structures and the two provers.
//!
//! Sequent arguments accept either a `Sequent` or its text form; JSON is the
//! exchange format for proofs, structures and verdicts.

use std::collections::hash_map::DefaultHasher;
use std::collections::BTreeMap;
use std::hash::{Hash, Hasher};

use pyo3::create_exception;
use pyo3::exceptions::{PyRuntimeError, PyValueError};
use pyo3::prelude::*;

use ciore::fo_prover::{self, Budget, FoError, FoVerdict, DEFAULT_MAX_DEPTH, DEFAULT_MAX_NODES};
use ciore::fo_semantics::{self as fos, Assignment};
use ciore::json::{self, JsonError};
use ciore::matrix::{self, EvalError, DEFAULT_ATOM_CAP};
use ciore::prop_prover::{self, ProverError as DecideError, Verdict as PropVerdict};
use ciore::sequent::{check_proof, check_subformula_property};
use ciore::{parse_formula, parse_sequent, Calculus, TruthValue};

create_exception!(pyciore, ParseError, PyValueError, "Malformed formula, sequent or JSON input.");
create_exception!(pyciore, ProofError, PyValueError, "A proof failed to check.");
create_exception!(pyciore, ProverError, PyRuntimeError, "The prover could not run on this input.");

fn parse_err(e: impl std::fmt::Display) -> PyErr {
    ParseError::new_err(e.to_string())
}

fn eval_err(e: EvalError) -> PyErr {
    PyValueError::new_err(e.to_string())
}

fn prover_err(e: DecideError) -> PyErr {
    match e {
        DecideError::Eval(e) => eval_err(e),
        other => ProverError::new_err(other.to_string()),
    }
}

fn fo_err(e: FoError) -> PyErr {
    ProverError::new_err(e.to_string())
}

fn json_err(e: JsonError) -> PyErr {
    parse_err(e)
}

fn sem_err(e: fos::SemanticsError) -> PyErr {
    PyValueError::new_err(e.to_string())
}

fn hash_of(v: &impl Hash) -> u64 {
    let mut h = DefaultHasher::new();
    v.hash(&mut h);
    h.finish()
}

fn calculus(name: &str) -> PyResult<Calculus> {
    match name {
        "GCiore" => Ok(Calculus::GCiore),
        "GCiore'" | "GCiorePrime" => Ok(Calculus::GCiorePrime),
        "GQCiore" => Ok(Calculus::GQCiore),
        other => Err(PyValueError::new_err(format!("unknown calculus `{other}`"))),
    }
}

#[pyclass(name = "Formula", module = "pyciore", frozen, skip_from_py_object)]
#[derive(Clone)]
struct PyFormula(ciore::Formula);

#[pymethods]
impl PyFormula {
    #[new]
    fn new(text: &str) -> PyResult<Self> {
        parse_formula(text).map(PyFormula).map_err(parse_err)
    }

    fn __str__(&self) -> String {
        self.0.to_string()
    }

    fn __repr__(&self) -> String {
        format!("Formula({:?})", self.0.to_string())
    }

    fn __eq__(&self, other: PyRef<'_, PyFormula>) -> bool {
        self.0 == other.0
    }

    fn __hash__(&self) -> u64 {
        hash_of(&self.0)
    }

    fn complexity(&self) -> usize {
        self.0.complexity()
    }

    fn depth(&self) -> usize {
        self.0.depth()
    }

    fn weight(&self) -> PyResult<u64> {
        self.0.weight().map_err(|e| PyValueError::new_err(e.to_string()))
    }

    fn atoms(&self) -> Vec<String> {
        self.0.atoms().into_iter().collect()
    }

    fn free_variables(&self) -> Vec<String> {
        self.0.free_variables().into_iter().collect()
    }

    fn is_propositional(&self) -> bool {
        self.0.is_propositional()
    }

    /// Value under a valuation such as `{"p": "1/2"}`.
    fn eval(&self, valuation: BTreeMap<String, String>) -> PyResult<String> {
        let v = to_valuation(valuation)?;
        matrix::eval(&self.0, &v).map(|t| t.to_string()).map_err(eval_err)
    }
}

#[pyclass(name = "Sequent", module = "pyciore", frozen, skip_from_py_object)]
#[derive(Clone)]
struct PySequent(ciore::Sequent);

#[pymethods]
impl PySequent {
    #[new]
    fn new(text: &str) -> PyResult<Self> {
        read_sequent(text).map(PySequent)
    }

    fn __str__(&self) -> String {
        self.0.to_string()
    }

    fn __repr__(&self) -> String {
        format!("Sequent({:?})", self.0.to_string())
    }

    fn __eq__(&self, other: PyRef<'_, PySequent>) -> bool {
        self.0 == other.0
    }

    fn __hash__(&self) -> u64 {
        hash_of(&self.0)
    }

    #[getter]
    fn ante(&self) -> Vec<PyFormula> {
        self.0.ante.iter().cloned().map(PyFormula).collect()
    }

    #[getter]
    fn succ(&self) -> Vec<PyFormula> {
        self.0.succ.iter().cloned().map(PyFormula).collect()
    }

    fn weight(&self) -> PyResult<u64> {
        self.0.weight().map_err(|e| PyValueError::new_err(e.to_string()))
    }

    fn is_propositional(&self) -> bool {
        self.0.is_propositional()
    }

    fn to_json(&self) -> String {
        json::sequent_to_json(&self.0).to_string()
    }
}

fn read_sequent(text: &str) -> PyResult<ciore::Sequent> {
    if text.contains("|-") {
        parse_sequent(text).map_err(parse_err)
    } else {
        parse_formula(text).map(ciore::Sequent::theorem).map_err(parse_err)
    }
}

fn sequent_arg(obj: &Bound<'_, PyAny>) -> PyResult<ciore::Sequent> {
    if let Ok(s) = obj.cast::<PySequent>() {
        return Ok(s.get().0.clone());
    }
    read_sequent(&obj.extract::<String>()?)
}

fn formula_arg(obj: &Bound<'_, PyAny>) -> PyResult<ciore::Formula> {
    if let Ok(f) = obj.cast::<PyFormula>() {
        return Ok(f.get().0.clone());
    }
    parse_formula(&obj.extract::<String>()?).map_err(parse_err)
}

fn to_valuation(m: BTreeMap<String, String>) -> PyResult<matrix::Valuation> {
    m.into_iter()
        .map(|(k, v)| v.parse::<TruthValue>().map(|t| (k, t)).map_err(PyValueError::new_err))
        .collect()
}

fn from_valuation(v: &matrix::Valuation) -> BTreeMap<String, String> {
    v.iter().map(|(k, t)| (k.clone(), t.to_string())).collect()
}

#[pyclass(name = "Proof", module = "pyciore", frozen, skip_from_py_object)]
#[derive(Clone)]
struct PyProof(ciore::Proof);

#[pymethods]
impl PyProof {
    #[staticmethod]
    fn from_json(text: &str) -> PyResult<Self> {
        json::proof_from_str(text).map(PyProof).map_err(json_err)
    }

    fn to_json(&self) -> String {
        json::proof_to_json(&self.0).to_string()
    }

    fn render(&self) -> String {
        self.0.render()
    }

    fn __str__(&self) -> String {
        self.0.render()
    }

    #[getter]
    fn sequent(&self) -> PySequent {
        PySequent(self.0.sequent.clone())
    }

    #[getter]
    fn rule(&self) -> &'static str {
        self.0.rule.name()
    }

    fn size(&self) -> usize {
        self.0.size()
    }

    fn height(&self) -> usize {
        self.0.height()
    }

    fn uses(&self, rule: &str) -> PyResult<bool> {
        let r = ciore::RuleId::from_name(rule).ok_or_else(|| PyValueError::new_err(format!("unknown rule `{rule}`")))?;
        Ok(self.0.uses(r))
    }

    /// Raises `ProofError` naming the first bad node's path.
    #[pyo3(signature = (calculus = "GCiore'", allow_cut = false))]
    fn check(&self, calculus: &str, allow_cut: bool) -> PyResult<()> {
        check_proof(&self.0, self::calculus(calculus)?, allow_cut).map_err(|e| ProofError::new_err(e.to_string()))
    }

    fn has_subformula_property(&self) -> bool {
        check_subformula_property(&self.0)
    }

    #[pyo3(signature = (atom_cap = DEFAULT_ATOM_CAP))]
    fn eliminate_cut(&self, atom_cap: usize) -> PyResult<PyProof> {
        prop_prover::eliminate_cut(&self.0, atom_cap).map(PyProof).map_err(prover_err)
    }
}

#[pyclass(name = "Structure", module = "pyciore", frozen, skip_from_py_object)]
#[derive(Clone)]
struct PyStructure(fos::Structure);

#[pymethods]
impl PyStructure {
    #[staticmethod]
    fn from_json(text: &str) -> PyResult<Self> {
        let v: serde_json::Value = serde_json::from_str(text).map_err(parse_err)?;
        json::structure_from_json(&v).map(PyStructure).map_err(json_err)
    }

    fn to_json(&self) -> String {
        json::structure_to_json(&self.0).to_string()
    }

    #[getter]
    fn domain(&self) -> Vec<String> {
        self.0.domain().to_vec()
    }

    fn valid(&self, formula: &Bound<'_, PyAny>) -> PyResult<bool> {
        fos::valid_in(&self.0, &formula_arg(formula)?).map_err(sem_err)
    }

    fn sequent_valid(&self, sequent: &Bound<'_, PyAny>) -> PyResult<bool> {
        fos::fo_sequent_valid_in(&self.0, &sequent_arg(sequent)?).map_err(sem_err)
    }

    /// Value of a formula under an assignment of free variables to domain elements.
    #[pyo3(signature = (formula, assignment = BTreeMap::new()))]
    fn value(&self, formula: &Bound<'_, PyAny>, assignment: BTreeMap<String, String>) -> PyResult<String> {
        let s = self.assignment(assignment)?;
        fos::value(&formula_arg(formula)?, &self.0, &s).map(|t| t.to_string()).map_err(sem_err)
    }

    fn falsifying_assignment(&self, sequent: &Bound<'_, PyAny>) -> PyResult<Option<BTreeMap<String, String>>> {
        let found = fos::fo_falsifying_assignment(&self.0, &sequent_arg(sequent)?).map_err(sem_err)?;
        Ok(found.map(|s| self.names(&s)))
    }
}

impl PyStructure {
    fn assignment(&self, m: BTreeMap<String, String>) -> PyResult<Assignment> {
        m.into_iter().map(|(k, e)| self.0.element(&e).map(|i| (k, i)).map_err(sem_err)).collect()
    }

    fn names(&self, s: &Assignment) -> BTreeMap<String, String> {
        s.iter().map(|(k, &i)| (k.clone(), self.0.domain()[i].clone())).collect()
    }
}

/// Outcome of `decide` or `decide_fo`; `status` is "proved", "refuted" or "unknown".
#[pyclass(name = "Verdict", module = "pyciore", frozen, skip_from_py_object)]
struct PyVerdict {
    #[pyo3(get)]
    status: &'static str,
    #[pyo3(get)]
    proof: Option<PyProof>,
    /// Propositional countermodel.
    #[pyo3(get)]
    valuation: Option<BTreeMap<String, String>>,
    /// First-order countermodel.
    #[pyo3(get)]
    structure: Option<PyStructure>,
    #[pyo3(get)]
    assignment: Option<BTreeMap<String, String>>,
    json: String,
}

#[pymethods]
impl PyVerdict {
    fn to_json(&self) -> String {
        self.json.clone()
    }

    fn __bool__(&self) -> bool {
        self.status == "proved"
    }

    fn __repr__(&self) -> String {
        format!("Verdict({:?})", self.status)
    }
}

impl From<PropVerdict> for PyVerdict {
    fn from(v: PropVerdict) -> Self {
        let json = json::verdict_to_json(&v).to_string();
        match v {
            PropVerdict::Proved(p) => PyVerdict { status: "proved", proof: Some(PyProof(p)), valuation: None, structure: None, assignment: None, json },
            PropVerdict::Refuted(val) => {
                PyVerdict { status: "refuted", proof: None, valuation: Some(from_valuation(&val)), structure: None, assignment: None, json }
            }
        }
    }
}

impl From<FoVerdict> for PyVerdict {
    fn from(v: FoVerdict) -> Self {
        let json = json::fo_verdict_to_json(&v).to_string();
        match v {
            FoVerdict::Proved(p) => PyVerdict { status: "proved", proof: Some(PyProof(p)), valuation: None, structure: None, assignment: None, json },
            FoVerdict::Refuted { structure, assignment } => {
                let st = PyStructure(structure);
                let names = st.names(&assignment);
                PyVerdict { status: "refuted", proof: None, valuation: None, structure: Some(st), assignment: Some(names), json }
            }
            FoVerdict::Unknown(_) => PyVerdict { status: "unknown", proof: None, valuation: None, structure: None, assignment: None, json },
        }
    }
}

/// Cut-free proof or countermodel for a propositional sequent.
#[pyfunction]
#[pyo3(signature = (sequent, atom_cap = DEFAULT_ATOM_CAP))]
fn decide(py: Python<'_>, sequent: &Bound<'_, PyAny>, atom_cap: usize) -> PyResult<PyVerdict> {
    let s = sequent_arg(sequent)?;
    py.detach(|| prop_prover::decide(&s, atom_cap)).map(PyVerdict::from).map_err(prover_err)
}

#[pyfunction]
#[pyo3(signature = (sequent, atom_cap = DEFAULT_ATOM_CAP))]
fn matrix_valid(sequent: &Bound<'_, PyAny>, atom_cap: usize) -> PyResult<bool> {
    matrix::matrix_valid(&sequent_arg(sequent)?, atom_cap).map_err(eval_err)
}

#[pyfunction]
#[pyo3(signature = (sequent, atom_cap = DEFAULT_ATOM_CAP))]
fn find_countermodel(sequent: &Bound<'_, PyAny>, atom_cap: usize) -> PyResult<Option<BTreeMap<String, String>>> {
    let found = matrix::find_countermodel(&sequent_arg(sequent)?, atom_cap).map_err(eval_err)?;
    Ok(found.as_ref().map(from_valuation))
}

#[pyfunction]
#[pyo3(signature = (sequent, max_nodes = DEFAULT_MAX_NODES, max_depth = DEFAULT_MAX_DEPTH))]
fn decide_fo(py: Python<'_>, sequent: &Bound<'_, PyAny>, max_nodes: usize, max_depth: usize) -> PyResult<PyVerdict> {
    let s = sequent_arg(sequent)?;
    let budget = Budget { max_nodes, max_depth };
    py.detach(|| fo_prover::decide_fo(&s, budget)).map(PyVerdict::from).map_err(fo_err)
}

/// Text dump of the reduction tree.
#[pyfunction]
#[pyo3(signature = (sequent, max_nodes = DEFAULT_MAX_NODES, max_depth = DEFAULT_MAX_DEPTH))]
fn reduction_tree(sequent: &Bound<'_, PyAny>, max_nodes: usize, max_depth: usize) -> PyResult<String> {
    let tree = fo_prover::build_reduction_tree(&sequent_arg(sequent)?, Budget { max_nodes, max_depth }).map_err(fo_err)?;
    Ok(tree.dump())
}

#[pymodule]
fn pyciore(m: &Bound<'_, PyModule>) -> PyResult<()> {
    let py = m.py();
    m.add_class::<PyFormula>()?;
    m.add_class::<PySequent>()?;
    m.add_class::<PyProof>()?;
    m.add_class::<PyStructure>()?;
    m.add_class::<PyVerdict>()?;
    m.add_function(wrap_pyfunction!(decide, m)?)?;
    m.add_function(wrap_pyfunction!(matrix_valid, m)?)?;
    m.add_function(wrap_pyfunction!(find_countermodel, m)?)?;
    m.add_function(wrap_pyfunction!(decide_fo, m)?)?;
    m.add_function(wrap_pyfunction!(reduction_tree, m)?)?;
    m.add("ParseError", py.get_type::<ParseError>())?;
    m.add("ProofError", py.get_type::<ProofError>())?;
    m.add("ProverError", py.get_type::<ProverError>())?;
    Ok(())
}
