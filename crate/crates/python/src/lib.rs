//! Python bindings: `import boundary_slopes_py`.
//!
//! Rationals cross the boundary as `fractions.Fraction`.

use boundary_slopes::cli::{build_report, check_theorem};
use boundary_slopes::knots::{self, ParsedKnot};
use boundary_slopes::{candidate_surfaces, CandidateSurface, Fraction, MontesinosKnot};
use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;

fn value_error(e: impl std::fmt::Display) -> PyErr {
    PyValueError::new_err(e.to_string())
}

fn to_py_fraction<'py>(py: Python<'py>, x: Fraction) -> PyResult<Bound<'py, PyAny>> {
    py.import("fractions")?
        .getattr("Fraction")?
        .call1((x.num(), x.den()))
}

fn to_py_fractions<'py>(py: Python<'py>, xs: &[Fraction]) -> PyResult<Vec<Bound<'py, PyAny>>> {
    xs.iter().map(|&x| to_py_fraction(py, x)).collect()
}

/// A Montesinos knot, parsed from `K(p/q,...)`, `p/q,...` or `P(q,...)`.
#[pyclass(name = "Knot", frozen)]
struct PyKnot {
    parsed: ParsedKnot,
}

impl PyKnot {
    fn knot(&self) -> &MontesinosKnot {
        &self.parsed.knot
    }
}

#[pymethods]
impl PyKnot {
    #[new]
    fn new(text: &str) -> PyResult<Self> {
        Ok(PyKnot {
            parsed: knots::parse(text).map_err(value_error)?,
        })
    }

    #[getter]
    fn tangles<'py>(&self, py: Python<'py>) -> PyResult<Vec<Bound<'py, PyAny>>> {
        to_py_fractions(py, self.knot().tangles())
    }

    #[getter]
    fn pretzel(&self) -> Option<Vec<i64>> {
        self.parsed.pretzel.clone()
    }

    fn canonical(&self) -> String {
        self.knot().canonical_form().to_string()
    }

    fn same_knot(&self, other: &PyKnot) -> bool {
        self.knot().canonical_form() == other.knot().canonical_form()
    }

    fn mirror(&self) -> PyKnot {
        PyKnot {
            parsed: ParsedKnot {
                knot: self.knot().mirror(),
                pretzel: self
                    .parsed
                    .pretzel
                    .as_ref()
                    .map(|q| q.iter().map(|x| -x).collect()),
            },
        }
    }

    fn is_torus(&self) -> Option<bool> {
        knots::is_torus(self.knot())
    }

    fn is_hyperbolic(&self) -> Option<bool> {
        knots::is_hyperbolic(self.knot())
    }

    fn is_one_one(&self) -> Option<bool> {
        knots::is_one_one(self.knot())
    }

    /// Twist of the Seifert system, or `None` without exactly one even
    /// denominator.
    fn seifert_twist<'py>(&self, py: Python<'py>) -> PyResult<Option<Bound<'py, PyAny>>> {
        let set = candidate_surfaces(self.knot()).map_err(value_error)?;
        set.seifert_twist.map(|t| to_py_fraction(py, t)).transpose()
    }

    /// Candidate surfaces sorted by slope.
    #[pyo3(signature = (include_unknown = true))]
    fn surfaces(&self, py: Python<'_>, include_unknown: bool) -> PyResult<Vec<PySurface>> {
        let set = py
            .detach(|| candidate_surfaces(self.knot()))
            .map_err(value_error)?;
        Ok(set
            .surfaces
            .into_iter()
            .filter(|s| {
                include_unknown
                    || s.seifert
                    || s.incompressibility == boundary_slopes::Incompressibility::Guaranteed
            })
            .map(|inner| PySurface { inner })
            .collect())
    }

    fn __str__(&self) -> String {
        self.knot().to_string()
    }

    fn __repr__(&self) -> String {
        format!("Knot('{}')", self.knot())
    }
}

/// Invariants of one candidate surface.
#[pyclass(name = "CandidateSurface", frozen)]
struct PySurface {
    inner: CandidateSurface,
}

#[pymethods]
impl PySurface {
    #[getter]
    fn slope<'py>(&self, py: Python<'py>) -> PyResult<Bound<'py, PyAny>> {
        to_py_fraction(py, self.inner.slope)
    }

    #[getter]
    fn twist<'py>(&self, py: Python<'py>) -> PyResult<Bound<'py, PyAny>> {
        to_py_fraction(py, self.inner.twist)
    }

    #[getter]
    fn common_u<'py>(&self, py: Python<'py>) -> PyResult<Bound<'py, PyAny>> {
        to_py_fraction(py, self.inner.system.common_u)
    }

    #[getter]
    fn euler(&self) -> Option<i64> {
        self.inner.euler
    }

    #[getter]
    fn r_cycle(&self) -> Option<Vec<i64>> {
        self.inner.r_cycle.clone()
    }

    #[getter]
    fn incompressibility(&self) -> String {
        self.inner.incompressibility.to_string()
    }

    #[getter]
    fn seifert(&self) -> bool {
        self.inner.seifert
    }

    #[getter]
    fn sheets(&self) -> i64 {
        self.inner.sheets
    }

    #[getter]
    fn system_kind(&self) -> String {
        self.inner.kind.to_string()
    }

    /// Edgepaths listed end point first.
    #[getter]
    fn paths(&self) -> Vec<String> {
        self.inner
            .system
            .paths
            .iter()
            .map(|p| p.to_string())
            .collect()
    }

    fn __repr__(&self) -> String {
        let euler = self.inner.euler.map_or("-".to_string(), |e| e.to_string());
        format!(
            "CandidateSurface(slope={}, euler={euler}, incompressibility={})",
            self.inner.slope, self.inner.incompressibility
        )
    }
}

/// Distinct boundary slopes of a knot, ascending.
#[pyfunction]
#[pyo3(name = "boundary_slopes", signature = (knot, include_unknown = false))]
fn distinct_slopes<'py>(
    py: Python<'py>,
    knot: &str,
    include_unknown: bool,
) -> PyResult<Vec<Bound<'py, PyAny>>> {
    let k = PyKnot::new(knot)?;
    let mut slopes: Vec<Fraction> = k
        .surfaces(py, include_unknown)?
        .iter()
        .map(|s| s.inner.slope)
        .collect();
    slopes.dedup();
    to_py_fractions(py, &slopes)
}

/// `(n, passed)` for odd `n` from 3 to `n_max`.
#[pyfunction]
fn verify_theorem(py: Python<'_>, n_max: i64) -> PyResult<Vec<(i64, bool)>> {
    if n_max < 3 {
        return Err(PyValueError::new_err("n_max must be at least 3"));
    }
    py.detach(|| {
        (3..=n_max)
            .step_by(2)
            .map(|n| check_theorem(n).map(|c| (n, c.found)))
            .collect::<boundary_slopes::Result<Vec<_>>>()
    })
    .map_err(value_error)
}

#[pyfunction]
fn pretzel_torus_check(q: Vec<i64>) -> bool {
    knots::pretzel_torus_check(&q)
}

/// The `slopes --format json` report.
#[pyfunction]
#[pyo3(signature = (knot, include_unknown = false))]
fn report_json(py: Python<'_>, knot: &str, include_unknown: bool) -> PyResult<String> {
    let parsed = knots::parse(knot).map_err(value_error)?;
    let report = py
        .detach(|| build_report(&parsed, include_unknown))
        .map_err(value_error)?;
    serde_json::to_string_pretty(&report).map_err(value_error)
}

#[pymodule]
fn boundary_slopes_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyKnot>()?;
    m.add_class::<PySurface>()?;
    m.add_function(wrap_pyfunction!(distinct_slopes, m)?)?;
    m.add_function(wrap_pyfunction!(verify_theorem, m)?)?;
    m.add_function(wrap_pyfunction!(pretzel_torus_check, m)?)?;
    m.add_function(wrap_pyfunction!(report_json, m)?)?;
    Ok(())
}
