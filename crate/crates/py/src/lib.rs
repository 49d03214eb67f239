//! Python bindings. Rationals cross the boundary as `fractions.Fraction`
//! (results) and anything whose `str()` is `p/q` (arguments).

use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;
use pyo3::types::{PyDict, PyList, PyTuple};

use qgen_core::families::{self, FamilyId, FamilyKind};
use qgen_core::identities::{self, Grid, Suite, Verifier};
use qgen_core::poly::{BiPoly, Var};
use qgen_core::qarith::{self, QContext, Scalar};
use qgen_core::series;

fn value_error(e: impl ToString) -> PyErr {
    PyValueError::new_err(e.to_string())
}

fn to_scalar(obj: &Bound<'_, PyAny>) -> PyResult<Scalar> {
    let text = obj.str()?.to_string();
    qarith::parse_scalar(&text).map_err(value_error)
}

fn to_ctx(obj: &Bound<'_, PyAny>) -> PyResult<QContext> {
    QContext::new(to_scalar(obj)?).map_err(value_error)
}

fn fraction<'py>(py: Python<'py>, s: &Scalar) -> PyResult<Bound<'py, PyAny>> {
    py.import("fractions")?
        .getattr("Fraction")?
        .call1((s.to_string(),))
}

fn fractions<'py>(py: Python<'py>, values: &[Scalar]) -> PyResult<Bound<'py, PyList>> {
    let items = values
        .iter()
        .map(|v| fraction(py, v))
        .collect::<PyResult<Vec<_>>>()?;
    PyList::new(py, items)
}

fn family(kind: &str, order: u32) -> PyResult<FamilyId> {
    let kind: FamilyKind = kind.parse().map_err(value_error)?;
    Ok(FamilyId::new(kind, order))
}

fn var(name: &str) -> PyResult<Var> {
    match name {
        "x" => Ok(Var::X),
        "y" => Ok(Var::Y),
        other => Err(value_error(format!("unknown variable {other:?}"))),
    }
}

/// Polynomial in `x`, `y` with exact rational coefficients.
#[pyclass(name = "BiPoly", module = "qgen", frozen, eq, from_py_object)]
#[derive(Clone, PartialEq)]
struct PyBiPoly(BiPoly);

#[pymethods]
impl PyBiPoly {
    /// Parses `"c*x^i*y^j + ..."`; an empty string is zero.
    #[new]
    #[pyo3(signature = (text = ""))]
    fn new(text: &str) -> PyResult<Self> {
        if text.trim().is_empty() {
            return Ok(Self(BiPoly::default()));
        }
        text.parse().map(Self).map_err(value_error)
    }

    #[staticmethod]
    fn monomial(i: u32, j: u32, c: &Bound<'_, PyAny>) -> PyResult<Self> {
        Ok(Self(BiPoly::monomial(i, j, to_scalar(c)?)))
    }

    /// Builds from the JSON wire format `[{"i":..,"j":..,"c":"p/q"}, ...]`.
    #[staticmethod]
    fn from_json(text: &str) -> PyResult<Self> {
        let records: Vec<qgen_core::MonomialRecord> =
            serde_json::from_str(text).map_err(value_error)?;
        BiPoly::from_wire(&records).map(Self).map_err(value_error)
    }

    fn to_json(&self) -> String {
        serde_json::to_string(&self.0.to_wire()).expect("wire records serialize")
    }

    /// `{(i, j): Fraction}` for the nonzero coefficients.
    fn terms<'py>(&self, py: Python<'py>) -> PyResult<Bound<'py, PyDict>> {
        let out = PyDict::new(py);
        for (i, j, c) in self.0.terms() {
            out.set_item(PyTuple::new(py, [i, j])?, fraction(py, c)?)?;
        }
        Ok(out)
    }

    fn coeff<'py>(&self, py: Python<'py>, i: u32, j: u32) -> PyResult<Bound<'py, PyAny>> {
        fraction(py, &self.0.coeff(i, j))
    }

    fn eval<'py>(
        &self,
        py: Python<'py>,
        x: &Bound<'py, PyAny>,
        y: &Bound<'py, PyAny>,
    ) -> PyResult<Bound<'py, PyAny>> {
        fraction(py, &self.0.eval(&to_scalar(x)?, &to_scalar(y)?))
    }

    /// Sets `var` to the constant `c`.
    fn specialize(&self, var_name: &str, c: &Bound<'_, PyAny>) -> PyResult<Self> {
        Ok(Self(self.0.specialize(var(var_name)?, &to_scalar(c)?)))
    }

    /// Replaces `var` by `c * var`.
    fn substitute_scaled(&self, var_name: &str, c: &Bound<'_, PyAny>) -> PyResult<Self> {
        Ok(Self(
            self.0.substitute_scaled(var(var_name)?, &to_scalar(c)?),
        ))
    }

    fn q_derivative(&self, var_name: &str, q: &Bound<'_, PyAny>) -> PyResult<Self> {
        let ctx = to_ctx(q)?;
        Ok(Self(match var(var_name)? {
            Var::X => self.0.q_derivative_x(&ctx),
            Var::Y => self.0.q_derivative_y(&ctx),
        }))
    }

    fn __add__(&self, other: &Self) -> Self {
        Self(&self.0 + &other.0)
    }

    fn __sub__(&self, other: &Self) -> Self {
        Self(&self.0 - &other.0)
    }

    fn __mul__(&self, other: &Self) -> Self {
        Self(&self.0 * &other.0)
    }

    fn __neg__(&self) -> Self {
        Self(-&self.0)
    }

    fn __pow__(&self, e: u32, _modulo: Option<&Bound<'_, PyAny>>) -> Self {
        Self(self.0.pow(e))
    }

    fn __str__(&self) -> String {
        self.0.to_string()
    }

    fn __repr__(&self) -> String {
        format!("BiPoly({:?})", self.0.to_string())
    }
}

/// Numbers and polynomials of one family at one `q`, for `n = 0..=max_n`.
#[pyclass(name = "FamilyTable", module = "qgen", frozen)]
struct PyFamilyTable(families::FamilyTable);

#[pymethods]
impl PyFamilyTable {
    #[new]
    #[pyo3(signature = (family_name, order, q, max_n, with_polys = true))]
    fn new(
        family_name: &str,
        order: u32,
        q: &Bound<'_, PyAny>,
        max_n: usize,
        with_polys: bool,
    ) -> PyResult<Self> {
        let id = family(family_name, order)?;
        let ctx = to_ctx(q)?;
        Ok(Self(if with_polys {
            families::FamilyTable::with_polys(id, &ctx, max_n)
        } else {
            families::FamilyTable::numbers_only(id, &ctx, max_n)
        }))
    }

    /// Reads the JSON produced by `to_json`.
    #[staticmethod]
    fn from_json(text: &str) -> PyResult<Self> {
        let record: families::TableRecord = serde_json::from_str(text).map_err(value_error)?;
        families::FamilyTable::from_record(&record)
            .map(Self)
            .map_err(value_error)
    }

    fn to_json(&self) -> String {
        serde_json::to_string(&self.0.to_record()).expect("records serialize")
    }

    #[getter]
    fn max_n(&self) -> usize {
        self.0.max_n()
    }

    fn numbers<'py>(&self, py: Python<'py>) -> PyResult<Bound<'py, PyList>> {
        let values: Vec<Scalar> = (0..=self.0.max_n())
            .map(|n| self.0.number(n).clone())
            .collect();
        fractions(py, &values)
    }

    fn number<'py>(&self, py: Python<'py>, n: usize) -> PyResult<Bound<'py, PyAny>> {
        self.check(n)?;
        fraction(py, self.0.number(n))
    }

    fn poly(&self, n: usize) -> PyResult<PyBiPoly> {
        self.check(n)?;
        if self.0.polys.is_none() {
            return Err(value_error("table was built without polynomials"));
        }
        Ok(PyBiPoly(self.0.poly(n).clone()))
    }
}

impl PyFamilyTable {
    fn check(&self, n: usize) -> PyResult<()> {
        if n > self.0.max_n() {
            return Err(value_error(format!(
                "n={n} beyond max_n={}",
                self.0.max_n()
            )));
        }
        Ok(())
    }
}

#[pyfunction]
fn q_number<'py>(py: Python<'py>, n: u64, q: &Bound<'py, PyAny>) -> PyResult<Bound<'py, PyAny>> {
    fraction(py, &qarith::q_number(n, &to_ctx(q)?))
}

#[pyfunction]
fn q_factorial<'py>(py: Python<'py>, n: u64, q: &Bound<'py, PyAny>) -> PyResult<Bound<'py, PyAny>> {
    fraction(py, &qarith::q_factorial(n, &to_ctx(q)?))
}

#[pyfunction]
fn q_binomial<'py>(
    py: Python<'py>,
    n: u64,
    k: i64,
    q: &Bound<'py, PyAny>,
) -> PyResult<Bound<'py, PyAny>> {
    fraction(py, &qarith::q_binomial(n, k, &to_ctx(q)?))
}

/// `(a; q)_n`.
#[pyfunction]
fn q_pochhammer<'py>(
    py: Python<'py>,
    a: &Bound<'py, PyAny>,
    q: &Bound<'py, PyAny>,
    n: u64,
) -> PyResult<Bound<'py, PyAny>> {
    fraction(py, &qarith::q_pochhammer(&to_scalar(a)?, &to_ctx(q)?, n))
}

/// `(x + y)_q^n` at numbers `x`, `y`.
#[pyfunction]
fn q_add_pow<'py>(
    py: Python<'py>,
    x: &Bound<'py, PyAny>,
    y: &Bound<'py, PyAny>,
    n: u64,
    q: &Bound<'py, PyAny>,
) -> PyResult<Bound<'py, PyAny>> {
    fraction(
        py,
        &qarith::q_add_pow(&to_scalar(x)?, &to_scalar(y)?, n, &to_ctx(q)?),
    )
}

/// `(x + y)_q^n` as a polynomial.
#[pyfunction]
fn q_add_pow_poly(n: u32, q: &Bound<'_, PyAny>) -> PyResult<PyBiPoly> {
    Ok(PyBiPoly(qgen_core::q_add_pow_poly(n, &to_ctx(q)?)))
}

/// Coefficients of `e_q(t)` through `t^order`.
#[pyfunction]
fn e_q<'py>(py: Python<'py>, q: &Bound<'py, PyAny>, order: usize) -> PyResult<Bound<'py, PyList>> {
    fractions(py, series::build_eq(&to_ctx(q)?, order).coeffs())
}

/// Coefficients of `E_q(t)` through `t^order`.
#[pyfunction]
#[pyo3(name = "E_q")]
fn big_e_q<'py>(
    py: Python<'py>,
    q: &Bound<'py, PyAny>,
    order: usize,
) -> PyResult<Bound<'py, PyList>> {
    fractions(py, series::build_Eq(&to_ctx(q)?, order).coeffs())
}

#[pyfunction]
fn compute_numbers<'py>(
    py: Python<'py>,
    family_name: &str,
    order: u32,
    q: &Bound<'py, PyAny>,
    max_n: usize,
) -> PyResult<Bound<'py, PyList>> {
    let values = families::compute_numbers(family(family_name, order)?, &to_ctx(q)?, max_n);
    fractions(py, &values)
}

/// `path` is `"direct"` (generating function) or `"summation"` (from the
/// numbers).
#[pyfunction]
#[pyo3(signature = (family_name, order, q, max_n, path = "direct"))]
fn compute_polys(
    family_name: &str,
    order: u32,
    q: &Bound<'_, PyAny>,
    max_n: usize,
    path: &str,
) -> PyResult<Vec<PyBiPoly>> {
    let id = family(family_name, order)?;
    let ctx = to_ctx(q)?;
    let polys = match path {
        "direct" => families::compute_polys_direct(id, &ctx, max_n),
        "summation" => families::compute_polys_summation(id, &ctx, max_n),
        other => return Err(value_error(format!("unknown path {other:?}"))),
    };
    Ok(polys.into_iter().map(PyBiPoly).collect())
}

/// Runs identity suites; returns the reports as dicts (rationals as
/// strings), exactly as `qgen verify` writes them.
#[pyfunction]
#[pyo3(signature = (suites = "all", n_max = 10, alphas = None, ms = None, qs = None, workers = 1))]
fn verify<'py>(
    py: Python<'py>,
    suites: &str,
    n_max: usize,
    alphas: Option<Vec<u32>>,
    ms: Option<Vec<u32>>,
    qs: Option<Vec<Bound<'py, PyAny>>>,
    workers: usize,
) -> PyResult<Bound<'py, PyAny>> {
    let selected: Vec<Suite> = identities::parse_suites(suites).map_err(value_error)?;
    let mut grid = Grid {
        n_max,
        ..Grid::default()
    };
    if let Some(a) = alphas {
        grid.alpha_set = a.into_iter().collect();
    }
    if let Some(m) = ms {
        grid.m_set = m.into_iter().collect();
    }
    if let Some(q) = qs {
        grid.q_set = q.iter().map(to_scalar).collect::<PyResult<_>>()?;
    }
    let grid = grid.validated().map_err(value_error)?;
    let text = py.detach(|| {
        let reports = Verifier::new(grid)
            .with_workers(workers)
            .run_suites(&selected);
        serde_json::to_string(&reports).expect("reports serialize")
    });
    py.import("json")?.getattr("loads")?.call1((text,))
}

/// True iff no non-erratum report in `reports` (as returned by `verify`)
/// failed.
#[pyfunction]
fn all_pass(reports: &Bound<'_, PyList>) -> PyResult<bool> {
    for r in reports.iter() {
        let erratum: bool = r.get_item("erratum_candidate")?.extract()?;
        let status: String = r.get_item("status")?.extract()?;
        if !erratum && status == "fail" {
            return Ok(false);
        }
    }
    Ok(true)
}

#[pymodule]
fn qgen(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyBiPoly>()?;
    m.add_class::<PyFamilyTable>()?;
    m.add_function(wrap_pyfunction!(q_number, m)?)?;
    m.add_function(wrap_pyfunction!(q_factorial, m)?)?;
    m.add_function(wrap_pyfunction!(q_binomial, m)?)?;
    m.add_function(wrap_pyfunction!(q_pochhammer, m)?)?;
    m.add_function(wrap_pyfunction!(q_add_pow, m)?)?;
    m.add_function(wrap_pyfunction!(q_add_pow_poly, m)?)?;
    m.add_function(wrap_pyfunction!(e_q, m)?)?;
    m.add_function(wrap_pyfunction!(big_e_q, m)?)?;
    m.add_function(wrap_pyfunction!(compute_numbers, m)?)?;
    m.add_function(wrap_pyfunction!(compute_polys, m)?)?;
    m.add_function(wrap_pyfunction!(verify, m)?)?;
    m.add_function(wrap_pyfunction!(all_pass, m)?)?;
    m.add(
        "SUITES",
        Suite::ALL.iter().map(|s| s.name()).collect::<Vec<_>>(),
    )?;
    Ok(())
}
