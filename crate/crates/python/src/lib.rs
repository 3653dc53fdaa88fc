//! Python module `rsdkit`. Reports come back as plain dicts and lists.

use pyo3::create_exception;
use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;
use pyo3::types::{PyDict, PyList};
use serde_json::Value;

use ::rsdkit as core;
use core::constructions::{self, ConstructionRecipe, LemmaId, SearchBounds};
use core::enumeration::{self, EnumParams, Predicate};

create_exception!(rsdkit, RsdkitError, PyValueError);

fn err(e: core::Error) -> PyErr {
    RsdkitError::new_err(e.to_string())
}

fn to_py<'py>(py: Python<'py>, v: &Value) -> PyResult<Bound<'py, PyAny>> {
    Ok(match v {
        Value::Null => py.None().into_bound(py),
        Value::Bool(b) => b.into_pyobject(py)?.to_owned().into_any(),
        Value::Number(n) => match (n.as_i64(), n.as_u64()) {
            (Some(i), _) => i.into_pyobject(py)?.into_any(),
            (None, Some(u)) => u.into_pyobject(py)?.into_any(),
            _ => n.as_f64().unwrap_or(f64::NAN).into_pyobject(py)?.into_any(),
        },
        Value::String(s) => s.into_pyobject(py)?.into_any(),
        Value::Array(items) => {
            let list = PyList::empty(py);
            for item in items {
                list.append(to_py(py, item)?)?;
            }
            list.into_any()
        }
        Value::Object(map) => {
            let dict = PyDict::new(py);
            for (k, item) in map {
                dict.set_item(k, to_py(py, item)?)?;
            }
            dict.into_any()
        }
    })
}

fn report<'py, T: serde::Serialize>(py: Python<'py>, v: &T) -> PyResult<Bound<'py, PyAny>> {
    to_py(
        py,
        &serde_json::to_value(v).map_err(|e| RsdkitError::new_err(e.to_string()))?,
    )
}

/// A finite set of integers.
#[pyclass(
    name = "IntSet",
    module = "rsdkit",
    frozen,
    eq,
    ord,
    hash,
    skip_from_py_object
)]
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
struct PyIntSet(core::IntSet);

#[pymethods]
impl PyIntSet {
    /// Rejects duplicates.
    #[new]
    fn new(elements: Vec<i64>) -> PyResult<Self> {
        core::IntSet::new(&elements).map(PyIntSet).map_err(err)
    }

    /// Parses `"0,2,3"` or `"{0,2,3}"`.
    #[staticmethod]
    fn parse(literal: &str) -> PyResult<Self> {
        core::parse_set(literal).map(PyIntSet).map_err(err)
    }

    fn elements(&self) -> Vec<i64> {
        self.0.to_vec()
    }

    fn __len__(&self) -> usize {
        self.0.len()
    }

    fn __contains__(&self, value: i64) -> bool {
        self.0.contains(value)
    }

    fn __repr__(&self) -> String {
        format!("IntSet({{{}}})", self.0.to_literal())
    }

    fn __str__(&self) -> String {
        self.0.to_literal()
    }

    fn sumset(&self) -> PyResult<Self> {
        self.0.sumset().map(PyIntSet).map_err(err)
    }

    fn restricted_sumset(&self) -> PyResult<Self> {
        self.0.restricted_sumset().map(PyIntSet).map_err(err)
    }

    fn difference_set(&self) -> PyResult<Self> {
        self.0.difference_set().map(PyIntSet).map_err(err)
    }

    /// `shift + scale·A`.
    fn affine_map(&self, shift: i64, scale: i64) -> PyResult<Self> {
        self.0.affine_map(shift, scale).map(PyIntSet).map_err(err)
    }

    fn analyze<'py>(&self, py: Python<'py>) -> PyResult<Bound<'py, PyAny>> {
        report(py, &core::analyze(&self.0).map_err(err)?)
    }

    /// `(representative, shift, scale, reflected)`.
    fn canonicalize(&self) -> PyResult<(PyIntSet, i64, u64, bool)> {
        let c = core::canonicalize(&self.0).map_err(err)?;
        Ok((PyIntSet(c.representative), c.shift, c.scale, c.reflected))
    }

    fn is_affinely_equivalent(&self, other: &PyIntSet) -> PyResult<bool> {
        core::are_affinely_equivalent(&self.0, &other.0).map_err(err)
    }
}

fn set_arg(obj: &Bound<'_, PyAny>) -> PyResult<core::IntSet> {
    if let Ok(s) = obj.cast::<PyIntSet>() {
        return Ok(s.get().0.clone());
    }
    if let Ok(text) = obj.extract::<String>() {
        return core::parse_set(&text).map_err(err);
    }
    let elements: Vec<i64> = obj.extract()?;
    core::IntSet::new(&elements).map_err(err)
}

/// Analysis report for an `IntSet`, a literal or a list of ints.
#[pyfunction]
fn analyze<'py>(py: Python<'py>, set: &Bound<'py, PyAny>) -> PyResult<Bound<'py, PyAny>> {
    report(py, &core::analyze(&set_arg(set)?).map_err(err)?)
}

#[pyfunction]
#[pyo3(signature = (k, start=0, step=1))]
fn arithmetic_progression(k: u32, start: i64, step: i64) -> PyResult<PyIntSet> {
    constructions::arithmetic_progression(k, start, step)
        .map(PyIntSet)
        .map_err(err)
}

#[pyfunction]
fn extend(set: &Bound<'_, PyAny>, b: i64) -> PyResult<PyIntSet> {
    constructions::extend(&set_arg(set)?, b)
        .map(PyIntSet)
        .map_err(err)
}

#[pyfunction]
fn base_power(set: &Bound<'_, PyAny>, m: i64, n: u32) -> PyResult<PyIntSet> {
    let params = constructions::BasePowerParams::new(set_arg(set)?, m, n).map_err(err)?;
    constructions::base_power(&params)
        .map(PyIntSet)
        .map_err(err)
}

/// `(set, recipe_json)` with `Δ(set) = −x`.
#[pyfunction]
#[pyo3(signature = (x, max_diameter=None, max_k=None, budget=None, threads=0))]
fn delta_set(
    py: Python<'_>,
    x: i64,
    max_diameter: Option<u32>,
    max_k: Option<u32>,
    budget: Option<u64>,
    threads: u32,
) -> PyResult<(PyIntSet, String)> {
    let d = SearchBounds::default();
    let bounds = SearchBounds {
        max_diameter: max_diameter.unwrap_or(d.max_diameter),
        max_k: max_k.unwrap_or(d.max_k),
        budget: budget.unwrap_or(d.budget),
        threads,
    };
    let (set, recipe) = py
        .detach(|| constructions::delta_set_with_bounds(x, &bounds))
        .map_err(err)?;
    Ok((PyIntSet(set), recipe.to_json()))
}

#[pyfunction]
fn replay_recipe(recipe_json: &str) -> PyResult<PyIntSet> {
    let recipe = ConstructionRecipe::from_json(recipe_json).map_err(err)?;
    recipe.replay().map(PyIntSet).map_err(err)
}

#[pyfunction]
#[pyo3(signature = (seed, m, n, count=3))]
fn theorem1_witness<'py>(
    py: Python<'py>,
    seed: &Bound<'py, PyAny>,
    m: i64,
    n: u32,
    count: usize,
) -> PyResult<Bound<'py, PyAny>> {
    let seed = set_arg(seed)?;
    let r = py
        .detach(|| constructions::theorem1_witness(&seed, m, n, count))
        .map_err(err)?;
    report(py, &r)
}

/// Enumeration report; `predicate` is `sd`, `rsd`, `all` or `delta=<x>`.
#[pyfunction]
#[pyo3(signature = (k, n, predicate="rsd", list_witnesses=false, threads=0, shards=64, budget=None))]
#[allow(clippy::too_many_arguments)]
fn count_classes<'py>(
    py: Python<'py>,
    k: u32,
    n: u32,
    predicate: &str,
    list_witnesses: bool,
    threads: u32,
    shards: u32,
    budget: Option<u64>,
) -> PyResult<Bound<'py, PyAny>> {
    let predicate: Predicate = predicate.parse().map_err(RsdkitError::new_err)?;
    let mut params = EnumParams::new(k, n, predicate);
    params.list_witnesses = list_witnesses;
    params.thread_count = threads;
    params.shard_count = shards;
    let budget = budget.unwrap_or(enumeration::DEFAULT_BUDGET);
    let r = py
        .detach(|| enumeration::count_classes_with_budget(&params, budget))
        .map_err(err)?;
    report(py, &r)
}

/// Smallest-diameter set with `Δ = −x`, or `None` if the bounds are exhausted.
#[pyfunction]
#[pyo3(signature = (x, max_diameter=enumeration::DEFAULT_SEARCH_MAX_DIAMETER, max_k=enumeration::DEFAULT_SEARCH_MAX_K, budget=enumeration::DEFAULT_SEARCH_BUDGET, threads=0))]
fn search_delta(
    py: Python<'_>,
    x: i64,
    max_diameter: u32,
    max_k: u32,
    budget: u64,
    threads: u32,
) -> PyResult<Option<PyIntSet>> {
    py.detach(|| enumeration::search_delta_with_budget(x, max_diameter, max_k, budget, threads))
        .map(|o| o.map(PyIntSet))
        .map_err(err)
}

/// `lemma` is `lemma1`, `lemma3`, `ap_identity` or `theorem2`.
#[pyfunction]
fn verify_lemma<'py>(
    py: Python<'py>,
    lemma: &str,
    trials: u64,
    seed: u64,
) -> PyResult<Bound<'py, PyAny>> {
    let lemma: LemmaId = lemma.parse().map_err(RsdkitError::new_err)?;
    let r = py
        .detach(|| constructions::verify_lemma(lemma, trials, seed))
        .map_err(err)?;
    report(py, &r)
}

#[pymodule]
#[pyo3(name = "rsdkit")]
fn rsdkit_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add("RsdkitError", m.py().get_type::<RsdkitError>())?;
    m.add_class::<PyIntSet>()?;
    m.add_function(wrap_pyfunction!(analyze, m)?)?;
    m.add_function(wrap_pyfunction!(arithmetic_progression, m)?)?;
    m.add_function(wrap_pyfunction!(extend, m)?)?;
    m.add_function(wrap_pyfunction!(base_power, m)?)?;
    m.add_function(wrap_pyfunction!(delta_set, m)?)?;
    m.add_function(wrap_pyfunction!(replay_recipe, m)?)?;
    m.add_function(wrap_pyfunction!(theorem1_witness, m)?)?;
    m.add_function(wrap_pyfunction!(count_classes, m)?)?;
    m.add_function(wrap_pyfunction!(search_delta, m)?)?;
    m.add_function(wrap_pyfunction!(verify_lemma, m)?)?;
    Ok(())
}
