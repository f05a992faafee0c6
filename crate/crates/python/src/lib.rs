//! Python module `chirolab`.
//!
//! Rationals cross the boundary as strings (`"1/3"`, `"0.25"`, or anything
//! whose `str()` is such a literal, e.g. `int` and `fractions.Fraction`).
//! Structured results come back as plain dicts and lists.

#![allow(clippy::useless_conversion)]

use chirolab_core::chirotope::{self, Triple};
use chirolab_core::classification::{self, Label};
use chirolab_core::configuration::{self, AffinePosition, ParamPoint};
use chirolab_core::exact::{self, format_rational, parse_rational, Rational, Sign};
use chirolab_core::render::{render_svg as render, RenderOptions};
use chirolab_core::topology::{self, Adjacency, GridSpec};
use pyo3::exceptions::{PyRuntimeError, PyValueError};
use pyo3::prelude::*;
use pyo3::types::{PyDict, PyList};

fn rational(obj: &Bound<'_, PyAny>) -> PyResult<Rational> {
    let text = obj.str()?.to_string();
    parse_rational(&text).map_err(|e| PyValueError::new_err(e.to_string()))
}

fn point(s: &Bound<'_, PyAny>, t: &Bound<'_, PyAny>, u: &Bound<'_, PyAny>) -> PyResult<ParamPoint> {
    Ok(ParamPoint::new(rational(s)?, rational(t)?, rational(u)?))
}

fn sign(v: i8) -> PyResult<Sign> {
    Sign::from_i8(v).ok_or_else(|| PyValueError::new_err(format!("{v} is not -1, 0 or 1")))
}

fn label(name: &str) -> PyResult<Label> {
    name.parse().map_err(PyValueError::new_err)
}

fn runtime<E: std::fmt::Display>(e: E) -> PyErr {
    PyRuntimeError::new_err(e.to_string())
}

fn to_py(py: Python<'_>, v: &serde_json::Value) -> PyResult<PyObject> {
    use serde_json::Value;
    Ok(match v {
        Value::Null => py.None(),
        Value::Bool(b) => b.into_py(py),
        Value::Number(n) => match (n.as_i64(), n.as_f64()) {
            (Some(i), _) => i.into_py(py),
            (None, Some(f)) => f.into_py(py),
            _ => py.None(),
        },
        Value::String(s) => s.into_py(py),
        Value::Array(items) => {
            let list = PyList::empty_bound(py);
            for item in items {
                list.append(to_py(py, item)?)?;
            }
            list.into_py(py)
        }
        Value::Object(map) => {
            let dict = PyDict::new_bound(py);
            for (k, item) in map {
                dict.set_item(k, to_py(py, item)?)?;
            }
            dict.into_py(py)
        }
    })
}

/// Sign map on the 286 increasing triples of {1, ..., 13}.
#[pyclass(name = "Chirotope", module = "chirolab", eq, frozen)]
#[derive(Clone, PartialEq)]
pub struct PyChirotope(chirotope::Chirotope);

#[pymethods]
impl PyChirotope {
    /// Alternating value at an arbitrary label triple.
    fn eval(&self, i: u8, j: u8, k: u8) -> PyResult<i8> {
        self.0.eval(i, j, k).map(Sign::as_i8).map_err(|e| PyValueError::new_err(e.to_string()))
    }

    fn flip(&self, i: u8, j: u8, k: u8, value: i8) -> PyResult<Self> {
        let t = Triple::new(i, j, k).map_err(|e| PyValueError::new_err(e.to_string()))?;
        Ok(PyChirotope(self.0.flip(t, sign(value)?)))
    }

    fn zero_set(&self) -> Vec<(u8, u8, u8)> {
        self.0
            .zero_set()
            .iter()
            .map(|t| {
                let [i, j, k] = t.labels();
                (i, j, k)
            })
            .collect()
    }

    fn values(&self) -> Vec<i8> {
        self.0.values().iter().map(|s| s.as_i8()).collect()
    }

    fn axiom3_violations(&self, py: Python<'_>) -> Vec<[u8; 6]> {
        py.allow_threads(|| self.0.axiom3_violations())
    }

    fn satisfies_axioms(&self, py: Python<'_>) -> bool {
        py.allow_threads(|| self.0.check_axioms().passes())
    }

    fn equal_up_to_sign(&self, other: &PyChirotope) -> bool {
        self.0.equal_up_to_sign(&other.0)
    }

    fn to_csv(&self) -> String {
        self.0.to_csv()
    }

    #[staticmethod]
    fn from_csv(text: &str) -> PyResult<Self> {
        chirotope::Chirotope::from_csv(text)
            .map(PyChirotope)
            .map_err(|e| PyValueError::new_err(e.to_string()))
    }

    fn __neg__(&self) -> Self {
        PyChirotope(-&self.0)
    }

    fn __len__(&self) -> usize {
        chirotope::NUM_TRIPLES
    }

    fn __repr__(&self) -> String {
        format!("Chirotope(<{} zero triples>)", self.0.zero_set().len())
    }
}

/// `χ^ε` for `ε` in {-1, 0, 1}.
#[pyfunction]
fn family(epsilon: i8) -> PyResult<PyChirotope> {
    Ok(PyChirotope(chirotope::family(sign(epsilon)?)))
}

/// Chirotope of `X(s, t, u)`.
#[pyfunction]
fn chirotope_of(s: &Bound<'_, PyAny>, t: &Bound<'_, PyAny>, u: &Bound<'_, PyAny>) -> PyResult<PyChirotope> {
    let p = point(s, t, u)?;
    chirotope::chirotope_of(&configuration::closed_form(&p))
        .map(PyChirotope)
        .map_err(runtime)
}

/// Columns of `X(s, t, u)` as `"p/q"` strings.
#[pyfunction]
fn closed_form(s: &Bound<'_, PyAny>, t: &Bound<'_, PyAny>, u: &Bound<'_, PyAny>) -> PyResult<Vec<[String; 3]>> {
    let c = configuration::closed_form(&point(s, t, u)?);
    Ok(c.columns().iter().map(|v| v.coords().map(format_rational)).collect())
}

/// Affine image: `(label, "finite" | "infinity", x_or_dx, y_or_dy)`.
#[pyfunction]
fn affine_image(
    s: &Bound<'_, PyAny>,
    t: &Bound<'_, PyAny>,
    u: &Bound<'_, PyAny>,
) -> PyResult<Vec<(u8, &'static str, String, String)>> {
    let c = configuration::closed_form(&point(s, t, u)?);
    Ok(configuration::affine_image(&c)
        .into_iter()
        .map(|p| match p.position {
            AffinePosition::Finite { x, y } => (p.label, "finite", format_rational(&x), format_rational(&y)),
            AffinePosition::AtInfinity { dx, dy } => {
                (p.label, "infinity", format_rational(&dx), format_rational(&dy))
            }
        })
        .collect())
}

/// `"minus"`, `"zero"`, `"plus"` or `"other"`.
#[pyfunction]
#[pyo3(signature = (s, t, u, fast = false))]
fn classify(s: &Bound<'_, PyAny>, t: &Bound<'_, PyAny>, u: &Bound<'_, PyAny>, fast: bool) -> PyResult<&'static str> {
    let p = point(s, t, u)?;
    let l = if fast {
        classification::classify_fast(&p)
    } else {
        classification::classify(&p).map_err(runtime)?
    };
    Ok(l.as_str())
}

#[pyfunction]
fn inequality_profile(py: Python<'_>, s: &Bound<'_, PyAny>, t: &Bound<'_, PyAny>, u: &Bound<'_, PyAny>) -> PyResult<PyObject> {
    to_py(py, &classification::inequality_profile(&point(s, t, u)?).to_json())
}

/// `{"sheet_s": bool, "sheet_t": bool, "minus": piece|None, "plus": piece|None}`.
#[pyfunction]
fn regions(py: Python<'_>, s: &Bound<'_, PyAny>, t: &Bound<'_, PyAny>, u: &Bound<'_, PyAny>) -> PyResult<PyObject> {
    let p = point(s, t, u)?;
    let z = classification::region_zero(&p);
    let piece = |x: Option<classification::Piece>| x.map(|p| format!("{p:?}"));
    to_py(
        py,
        &serde_json::json!({
            "sheet_s": z.sheet_s,
            "sheet_t": z.sheet_t,
            "minus": piece(classification::region_minus(&p)),
            "plus": piece(classification::region_plus(&p)),
        }),
    )
}

#[pyfunction]
fn agreement(py: Python<'_>, s: &Bound<'_, PyAny>, t: &Bound<'_, PyAny>, u: &Bound<'_, PyAny>) -> PyResult<PyObject> {
    let report = configuration::agreement_check(&point(s, t, u)?).map_err(runtime)?;
    to_py(py, &report.to_json())
}

/// Whether all ten determinant formulas and the three factor identities hold.
#[pyfunction]
fn verify_identities() -> (bool, bool) {
    (
        classification::symbolic_determinant_table().iter().all(|r| r.holds()),
        exact::poly_identities().iter().all(|i| i.holds()),
    )
}

#[pyfunction]
#[pyo3(signature = (target, resolution = 32, adjacency = "face-edge"))]
fn components(py: Python<'_>, target: &str, resolution: u32, adjacency: &str) -> PyResult<PyObject> {
    let target = label(target)?;
    let adjacency = match adjacency {
        "face" => Adjacency::Face,
        "face-edge" => Adjacency::FaceEdge,
        "full" => Adjacency::Full,
        other => return Err(PyValueError::new_err(format!("unknown adjacency `{other}`"))),
    };
    let spec = GridSpec::new(resolution).map_err(|e| PyValueError::new_err(e.to_string()))?;
    let grid = py.allow_threads(|| topology::classify_grid(spec)).map_err(runtime)?;
    to_py(py, &topology::components_json(&grid.graph(target, adjacency)))
}

#[pyfunction]
#[pyo3(signature = (target, resolution = 32))]
fn separation(py: Python<'_>, target: &str, resolution: u32) -> PyResult<PyObject> {
    let target = label(target)?;
    let cert = py
        .allow_threads(|| topology::separation_witness(target, resolution))
        .map_err(|e| PyValueError::new_err(e.to_string()))?;
    to_py(py, &cert.to_json())
}

#[pyfunction]
#[pyo3(signature = (m = 16))]
fn zero_sheets(py: Python<'_>, m: u32) -> PyResult<PyObject> {
    let z = py
        .allow_threads(|| topology::zero_sheet_samples(m))
        .map_err(|e| PyValueError::new_err(e.to_string()))?;
    to_py(py, &z.to_json())
}

#[pyfunction]
fn render_svg(s: &Bound<'_, PyAny>, t: &Bound<'_, PyAny>, u: &Bound<'_, PyAny>) -> PyResult<String> {
    let c = configuration::closed_form(&point(s, t, u)?);
    render(&c, &RenderOptions::default()).map_err(runtime)
}

#[pyfunction]
fn alt_base(u_prime: &Bound<'_, PyAny>) -> PyResult<PyChirotope> {
    classification::alt_base_chirotope(&rational(u_prime)?)
        .map(PyChirotope)
        .map_err(|e| PyValueError::new_err(e.to_string()))
}

#[pymodule]
fn chirolab(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyChirotope>()?;
    m.add_function(wrap_pyfunction!(family, m)?)?;
    m.add_function(wrap_pyfunction!(chirotope_of, m)?)?;
    m.add_function(wrap_pyfunction!(closed_form, m)?)?;
    m.add_function(wrap_pyfunction!(affine_image, m)?)?;
    m.add_function(wrap_pyfunction!(classify, m)?)?;
    m.add_function(wrap_pyfunction!(inequality_profile, m)?)?;
    m.add_function(wrap_pyfunction!(regions, m)?)?;
    m.add_function(wrap_pyfunction!(agreement, m)?)?;
    m.add_function(wrap_pyfunction!(verify_identities, m)?)?;
    m.add_function(wrap_pyfunction!(components, m)?)?;
    m.add_function(wrap_pyfunction!(separation, m)?)?;
    m.add_function(wrap_pyfunction!(zero_sheets, m)?)?;
    m.add_function(wrap_pyfunction!(render_svg, m)?)?;
    m.add_function(wrap_pyfunction!(alt_base, m)?)?;
    Ok(())
}
