use num_bigint::BigUint;
use num_complex::Complex64;
use pyo3::exceptions::{PyTypeError, PyValueError};
use pyo3::prelude::*;
use pyo3::types::PyString;
use serde::Serialize;

use stepanov::bounds::{gv_check, integer_root, theorem1_check, theorem2_report};
use stepanov::complexroots::{complex_roots, enumerate_m_complex, verify_theorem3_instance};
use stepanov::ffield::subgroup_of_order;
use stepanov::independence::{
    lemma1_pipeline, rank_independence, schmidt_consequence_check, wronskian, Lemma1Input,
};
use stepanov::oracle::{coset_intersection, enumerate_m, verify_instance, InstanceSpec};
use stepanov::stepanov::{
    check_admissible, compute_params, construct_certificate, verify_certificate,
};
use stepanov::{CosetSpec, DensePoly, FieldCtx, PolySystem, PsiCertificate};

fn err(e: stepanov::Error) -> PyErr {
    PyValueError::new_err(e.to_string())
}

fn to_py<'py, T: Serialize>(py: Python<'py>, value: &T) -> PyResult<Bound<'py, PyAny>> {
    let text = serde_json::to_string(value).map_err(|e| PyValueError::new_err(e.to_string()))?;
    py.import("json")?.call_method1("loads", (text,))
}

/// A polynomial over `F_p`, coefficients lowest degree first.
#[pyclass(name = "Poly", module = "stepanov", frozen, skip_from_py_object)]
#[derive(Clone)]
struct PyPoly {
    inner: DensePoly,
}

fn field(p: u64) -> PyResult<FieldCtx> {
    FieldCtx::new(p).map_err(err)
}

/// Accepts a `Poly`, a coefficient list, or the text form `"c0,c1,..."`.
fn poly_arg(ctx: FieldCtx, obj: &Bound<'_, PyAny>) -> PyResult<DensePoly> {
    if let Ok(p) = obj.cast::<PyPoly>() {
        let inner = &p.get().inner;
        if inner.ctx().p() != ctx.p() {
            return Err(PyValueError::new_err(format!(
                "polynomial over F_{} used with p = {}",
                inner.ctx().p(),
                ctx.p()
            )));
        }
        return Ok(inner.clone());
    }
    if let Ok(s) = obj.cast::<PyString>() {
        return DensePoly::parse(ctx, s.to_str()?).map_err(err);
    }
    if let Ok(c) = obj.extract::<Vec<i64>>() {
        return Ok(DensePoly::from_i64(ctx, &c));
    }
    Err(PyTypeError::new_err(
        "expected Poly, list of ints, or coefficient text",
    ))
}

fn poly_args(ctx: FieldCtx, objs: &[Bound<'_, PyAny>]) -> PyResult<Vec<DensePoly>> {
    objs.iter().map(|o| poly_arg(ctx, o)).collect()
}

fn cosets(ctx: &FieldCtx, t: u64, reps: &[u64]) -> PyResult<Vec<CosetSpec>> {
    let sg = subgroup_of_order(ctx, t).map_err(err)?;
    reps.iter().map(|&g| sg.coset(g).map_err(err)).collect()
}

fn wrap(inner: DensePoly) -> PyPoly {
    PyPoly { inner }
}

#[pymethods]
impl PyPoly {
    #[new]
    fn new(p: u64, coeffs: &Bound<'_, PyAny>) -> PyResult<Self> {
        Ok(wrap(poly_arg(field(p)?, coeffs)?))
    }

    #[getter]
    fn p(&self) -> u64 {
        self.inner.ctx().p()
    }

    #[getter]
    fn coeffs(&self) -> Vec<u64> {
        self.inner.coeffs().to_vec()
    }

    /// `None` for the zero polynomial.
    #[getter]
    fn degree(&self) -> Option<usize> {
        self.inner.degree()
    }

    fn is_zero(&self) -> bool {
        self.inner.is_zero()
    }

    fn eval(&self, x: u64) -> u64 {
        self.inner.eval(x)
    }

    #[pyo3(signature = (k=1))]
    fn derivative(&self, k: usize) -> Self {
        wrap(self.inner.nth_derivative(k))
    }

    fn divrem(&self, other: &Bound<'_, PyAny>) -> PyResult<(Self, Self)> {
        let d = poly_arg(*self.inner.ctx(), other)?;
        let (q, r) = self.inner.divrem(&d).map_err(err)?;
        Ok((wrap(q), wrap(r)))
    }

    fn gcd(&self, other: &Bound<'_, PyAny>) -> PyResult<Self> {
        let g = poly_arg(*self.inner.ctx(), other)?;
        Ok(wrap(self.inner.gcd(&g).map_err(err)?))
    }

    fn multiplicity_at(&self, x: u64) -> PyResult<usize> {
        self.inner.multiplicity_at(x).map_err(err)
    }

    fn pow(&self, e: u64) -> Self {
        wrap(self.inner.pow(e))
    }

    fn __add__(&self, other: &Bound<'_, PyAny>) -> PyResult<Self> {
        let o = poly_arg(*self.inner.ctx(), other)?;
        Ok(wrap(self.inner.try_add(&o).map_err(err)?))
    }

    fn __sub__(&self, other: &Bound<'_, PyAny>) -> PyResult<Self> {
        let o = poly_arg(*self.inner.ctx(), other)?;
        Ok(wrap(self.inner.try_sub(&o).map_err(err)?))
    }

    fn __mul__(&self, other: &Bound<'_, PyAny>) -> PyResult<Self> {
        let o = poly_arg(*self.inner.ctx(), other)?;
        Ok(wrap(self.inner.try_mul(&o).map_err(err)?))
    }

    fn __eq__(&self, other: &Bound<'_, PyAny>) -> bool {
        poly_arg(*self.inner.ctx(), other).is_ok_and(|o| o == self.inner)
    }

    fn __str__(&self) -> String {
        self.inner.to_string()
    }

    fn __repr__(&self) -> String {
        format!("Poly({}, \"{}\")", self.p(), self.inner.to_text())
    }
}

/// The vanishing polynomial and its kernel vector for one instance.
#[pyclass(name = "Certificate", module = "stepanov", frozen)]
struct PyCertificate {
    inner: PsiCertificate,
    #[pyo3(get)]
    passed: bool,
    #[pyo3(get)]
    multiplicities: Vec<(u64, usize)>,
}

#[pymethods]
impl PyCertificate {
    #[getter]
    fn psi(&self) -> PyPoly {
        wrap(self.inner.psi.clone())
    }

    #[getter]
    fn d(&self) -> u64 {
        self.inner.d
    }

    #[getter]
    fn deg_psi(&self) -> usize {
        self.inner.deg_psi
    }

    /// Nonzero entries as `(a, b, value)`.
    fn lambda_entries(&self) -> Vec<(usize, Vec<u64>, u64)> {
        self.inner.lambda_entries()
    }

    fn __repr__(&self) -> String {
        format!(
            "Certificate(D={}, deg_psi={}, passed={})",
            self.inner.d, self.inner.deg_psi, self.passed
        )
    }
}

#[pyfunction]
fn check_admissible_polys<'py>(
    py: Python<'py>,
    p: u64,
    polys: Vec<Bound<'py, PyAny>>,
) -> PyResult<Bound<'py, PyAny>> {
    let sys = PolySystem::new(field(p)?, poly_args(field(p)?, &polys)?).map_err(err)?;
    to_py(py, &check_admissible(&sys))
}

#[pyfunction]
fn params<'py>(
    py: Python<'py>,
    p: u64,
    t: u64,
    polys: Vec<Bound<'py, PyAny>>,
) -> PyResult<Bound<'py, PyAny>> {
    let ctx = field(p)?;
    let sys = PolySystem::new(ctx, poly_args(ctx, &polys)?).map_err(err)?;
    to_py(py, &compute_params(&sys, t).map_err(err)?)
}

/// `M` and `M'` for polynomials with coset representatives (default 1).
#[pyfunction]
#[pyo3(signature = (p, t, polys, reps=None))]
fn enumerate<'py>(
    py: Python<'py>,
    p: u64,
    t: u64,
    polys: Vec<Bound<'py, PyAny>>,
    reps: Option<Vec<u64>>,
) -> PyResult<Bound<'py, PyAny>> {
    let ctx = field(p)?;
    let sys = PolySystem::new(ctx, poly_args(ctx, &polys)?).map_err(err)?;
    let reps = reps.unwrap_or_else(|| vec![1; polys.len()]);
    let cs = cosets(&ctx, t, &reps)?;
    to_py(py, &enumerate_m(&sys, &cs).map_err(err)?)
}

#[pyfunction]
#[pyo3(signature = (p, t, polys, reps=None))]
fn construct(
    p: u64,
    t: u64,
    polys: Vec<Bound<'_, PyAny>>,
    reps: Option<Vec<u64>>,
) -> PyResult<PyCertificate> {
    let ctx = field(p)?;
    let sys = PolySystem::new(ctx, poly_args(ctx, &polys)?).map_err(err)?;
    let reps = reps.unwrap_or_else(|| vec![1; polys.len()]);
    let cs = cosets(&ctx, t, &reps)?;
    let params = compute_params(&sys, t).map_err(err)?;
    if !params.hypotheses_ok() {
        return Err(PyValueError::new_err(format!(
            "hypotheses fail: {}",
            params.failed_conditions().join(", ")
        )));
    }
    let mut cert = construct_certificate(&sys, &params, &cs).map_err(err)?;
    let en = enumerate_m(&sys, &cs).map_err(err)?;
    let outcome = verify_certificate(&cert, &en.m_prime, &sys).map_err(err)?;
    cert.per_root = outcome.per_root.clone();
    Ok(PyCertificate {
        multiplicities: cert.per_root.iter().map(|(&x, &k)| (x, k)).collect(),
        inner: cert,
        passed: outcome.passed,
    })
}

/// Full instance report: enumeration, certificate, and bound checks.
#[pyfunction]
#[pyo3(signature = (p, t, polys, reps=None))]
fn verify<'py>(
    py: Python<'py>,
    p: u64,
    t: u64,
    polys: Vec<Bound<'py, PyAny>>,
    reps: Option<Vec<u64>>,
) -> PyResult<Bound<'py, PyAny>> {
    let ctx = field(p)?;
    let polys = poly_args(ctx, &polys)?;
    let reps = reps.unwrap_or_else(|| vec![1; polys.len()]);
    let spec = InstanceSpec {
        p,
        t,
        polys,
        cosets: reps,
    };
    to_py(py, &verify_instance(&spec).map_err(err)?)
}

#[pyfunction]
fn intersect(p: u64, t: u64, shifts: Vec<u64>) -> PyResult<Vec<u64>> {
    coset_intersection(&field(p)?, t, &shifts).map_err(err)
}

#[pyfunction]
fn wronskian_of(p: u64, polys: Vec<Bound<'_, PyAny>>) -> PyResult<PyPoly> {
    let ctx = field(p)?;
    Ok(wrap(wronskian(&poly_args(ctx, &polys)?).map_err(err)?))
}

#[pyfunction]
fn independent(p: u64, polys: Vec<Bound<'_, PyAny>>) -> PyResult<bool> {
    let ctx = field(p)?;
    rank_independence(&poly_args(ctx, &polys)?).map_err(err)
}

#[pyfunction]
fn schmidt_check<'py>(
    py: Python<'py>,
    p: u64,
    polys: Vec<Bound<'py, PyAny>>,
) -> PyResult<Bound<'py, PyAny>> {
    let ctx = field(p)?;
    to_py(
        py,
        &schmidt_consequence_check(&poly_args(ctx, &polys)?).map_err(err)?,
    )
}

#[pyfunction]
#[pyo3(signature = (p, t, polys, a, b, last_degree=None))]
fn lemma1<'py>(
    py: Python<'py>,
    p: u64,
    t: u64,
    polys: Vec<Bound<'py, PyAny>>,
    a: u64,
    b: Vec<u64>,
    last_degree: Option<u64>,
) -> PyResult<Bound<'py, PyAny>> {
    let ctx = field(p)?;
    let input = Lemma1Input {
        polys: poly_args(ctx, &polys)?,
        t,
        a,
        b,
        last_degree,
    };
    to_py(py, &lemma1_pipeline(&input).map_err(err)?)
}

#[pyfunction]
fn bound_report<'py>(
    py: Python<'py>,
    m: Vec<u64>,
    p: u64,
    t: u64,
    size: u64,
) -> PyResult<Bound<'py, PyAny>> {
    if m.is_empty() {
        return Err(PyValueError::new_err("need at least one degree"));
    }
    to_py(py, &theorem2_report(&m, p, t, size))
}

#[pyfunction]
fn gv<'py>(py: Python<'py>, t: u64, size: u64, p: u64) -> PyResult<Bound<'py, PyAny>> {
    to_py(py, &gv_check(t, size, p))
}

#[pyfunction]
fn shifts_bound<'py>(
    py: Python<'py>,
    t: u64,
    n: u32,
    size: u64,
    p: u64,
) -> PyResult<Bound<'py, PyAny>> {
    to_py(py, &theorem1_check(t, n, size, p))
}

/// `floor(x^(1/k))`.
#[pyfunction]
fn iroot(x: BigUint, k: u32) -> PyResult<BigUint> {
    if k == 0 {
        return Err(PyValueError::new_err("k must be positive"));
    }
    Ok(integer_root(&x, k))
}

#[pyfunction]
fn roots(coeffs: Vec<Complex64>) -> PyResult<Vec<Complex64>> {
    complex_roots(&coeffs).map_err(err)
}

#[pyfunction]
fn enumerate_complex(
    polys: Vec<Vec<Complex64>>,
    t: u64,
    reps: Vec<Complex64>,
) -> PyResult<Vec<Complex64>> {
    enumerate_m_complex(&polys, t, &reps).map_err(err)
}

#[pyfunction]
fn verify_complex<'py>(
    py: Python<'py>,
    polys: Vec<Vec<Complex64>>,
    t: u64,
    reps: Vec<Complex64>,
) -> PyResult<Bound<'py, PyAny>> {
    to_py(
        py,
        &verify_theorem3_instance(&polys, t, &reps).map_err(err)?,
    )
}

#[pymodule]
#[pyo3(name = "stepanov")]
fn stepanov_module(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyPoly>()?;
    m.add_class::<PyCertificate>()?;
    m.add_function(wrap_pyfunction!(check_admissible_polys, m)?)?;
    m.add_function(wrap_pyfunction!(params, m)?)?;
    m.add_function(wrap_pyfunction!(enumerate, m)?)?;
    m.add_function(wrap_pyfunction!(construct, m)?)?;
    m.add_function(wrap_pyfunction!(verify, m)?)?;
    m.add_function(wrap_pyfunction!(intersect, m)?)?;
    m.add_function(wrap_pyfunction!(wronskian_of, m)?)?;
    m.add_function(wrap_pyfunction!(independent, m)?)?;
    m.add_function(wrap_pyfunction!(schmidt_check, m)?)?;
    m.add_function(wrap_pyfunction!(lemma1, m)?)?;
    m.add_function(wrap_pyfunction!(bound_report, m)?)?;
    m.add_function(wrap_pyfunction!(gv, m)?)?;
    m.add_function(wrap_pyfunction!(shifts_bound, m)?)?;
    m.add_function(wrap_pyfunction!(iroot, m)?)?;
    m.add_function(wrap_pyfunction!(roots, m)?)?;
    m.add_function(wrap_pyfunction!(enumerate_complex, m)?)?;
    m.add_function(wrap_pyfunction!(verify_complex, m)?)?;
    Ok(())
}
