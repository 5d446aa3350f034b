//! Python bindings for the samlab optimization laboratory.
//!
//! Exposes problem constructors, schedule evaluation, the deterministic
//! runner, convergence reports, counterexample certificates, rate fits, and
//! theorem audits. Build the cdylib and import it as `samlab_py`; see
//! python/smoke_test.py at the repository root.

use pyo3::exceptions::{PyRuntimeError, PyValueError};
use pyo3::prelude::*;
use pyo3::types::PyDict;

use samlab::analysis::{self, RateModel, RateReference, TheoremTag};
use samlab::harness;
use samlab::linalg::Matrix;
use samlab::optimizers::{self, IgdNoise, OptimizerSpec, Variant};
use samlab::problems;
use samlab::schedules::{ScheduleRole, ScheduleSpec};

fn value_err(e: impl std::fmt::Display) -> PyErr {
    PyValueError::new_err(e.to_string())
}

fn runtime_err(e: impl std::fmt::Display) -> PyErr {
    PyRuntimeError::new_err(e.to_string())
}

fn parse_family(text: &str) -> PyResult<samlab::schedules::ScheduleFamily> {
    harness::config::parse_schedule("schedule", text).map_err(value_err)
}

fn schedule(text: &str, role: ScheduleRole) -> PyResult<ScheduleSpec> {
    ScheduleSpec::new(parse_family(text)?, role).map_err(value_err)
}

fn matrix_from_rows(rows: Vec<Vec<f64>>) -> PyResult<Matrix> {
    Matrix::from_rows(&rows).map_err(value_err)
}

/// An objective/gradient oracle with verified metadata.
#[pyclass(name = "Problem", frozen)]
struct PyProblem {
    inner: problems::Problem,
}

#[pymethods]
impl PyProblem {
    fn name(&self) -> String {
        self.inner.name().to_string()
    }

    fn dim(&self) -> usize {
        self.inner.dim()
    }

    fn f(&self, x: Vec<f64>) -> PyResult<f64> {
        self.check_dim(&x)?;
        Ok(self.inner.eval_f(&x))
    }

    fn grad(&self, x: Vec<f64>) -> PyResult<Vec<f64>> {
        self.check_dim(&x)?;
        Ok(self.inner.eval_grad(&x))
    }

    fn minimizer(&self) -> Option<Vec<f64>> {
        self.inner.minimizer.clone()
    }

    fn lipschitz_l(&self) -> Option<f64> {
        self.inner.lipschitz_l
    }

    fn f_star(&self) -> Option<f64> {
        self.inner.f_star()
    }

    /// Gradient vs central finite differences plus metadata checks at
    /// seeded sample points; raises on any mismatch.
    fn validate(&self, seed: u64, samples: usize) -> PyResult<()> {
        self.inner.validate(seed, samples).map_err(runtime_err)
    }
}

impl PyProblem {
    fn check_dim(&self, x: &[f64]) -> PyResult<()> {
        if x.len() != self.inner.dim() {
            return Err(value_err(format!(
                "point has length {}, problem dimension is {}",
                x.len(),
                self.inner.dim()
            )));
        }
        Ok(())
    }
}

/// Per-iteration history of one optimizer run.
#[pyclass(name = "Trace", frozen)]
struct PyTrace {
    inner: optimizers::Trace,
}

#[pymethods]
impl PyTrace {
    fn __len__(&self) -> usize {
        self.inner.records.len()
    }

    fn ks(&self) -> Vec<u64> {
        self.inner.records.iter().map(|r| r.k).collect()
    }

    fn fs(&self) -> Vec<f64> {
        self.inner.records.iter().map(|r| r.f).collect()
    }

    fn grad_norms(&self) -> Vec<f64> {
        self.inner.records.iter().map(|r| r.grad_norm).collect()
    }

    fn inexactness(&self) -> Vec<f64> {
        self.inner.records.iter().map(|r| r.inexactness).collect()
    }

    fn final_x(&self) -> Vec<f64> {
        self.inner.final_x.clone()
    }

    fn final_f(&self) -> f64 {
        self.inner.final_record().f
    }

    fn final_grad_norm(&self) -> f64 {
        self.inner.final_record().grad_norm
    }

    fn min_grad_norm(&self) -> f64 {
        self.inner.min_grad_norm()
    }

    fn terminated(&self) -> &'static str {
        self.inner.terminated.as_str()
    }

    fn to_csv(&self) -> String {
        harness::output::trace_csv(&self.inner)
    }
}

#[pyfunction]
fn make_quadratic(a: Vec<Vec<f64>>, b: Vec<f64>) -> PyResult<PyProblem> {
    let spec = problems::QuadraticSpec::new(matrix_from_rows(a)?, b).map_err(value_err)?;
    Ok(PyProblem {
        inner: problems::make_quadratic(&spec),
    })
}

#[pyfunction]
fn make_log_quadratic(a: Vec<Vec<f64>>, b: Vec<f64>) -> PyResult<PyProblem> {
    Ok(PyProblem {
        inner: problems::make_log_quadratic(matrix_from_rows(a)?, b).map_err(value_err)?,
    })
}

#[pyfunction]
fn make_square_1d() -> PyProblem {
    PyProblem {
        inner: problems::make_square_1d(),
    }
}

#[pyfunction]
fn random_quadratic(dim: usize, seed: u64, eig_min: f64, eig_max: f64) -> PyResult<PyProblem> {
    let spec = problems::random_quadratic(dim, seed, eig_min, eig_max).map_err(value_err)?;
    Ok(PyProblem {
        inner: problems::make_quadratic(&spec),
    })
}

#[pyfunction]
fn random_log_quadratic(dim: usize, seed: u64) -> PyResult<PyProblem> {
    Ok(PyProblem {
        inner: problems::random_log_quadratic(dim, seed).map_err(value_err)?,
    })
}

/// k-th value of a schedule given in config syntax, e.g. "harmonic 0.1".
#[pyfunction]
fn eval_schedule(family: &str, k: u64) -> PyResult<f64> {
    let spec = schedule(family, ScheduleRole::Stepsize)?;
    samlab::schedules::eval_schedule(&spec, k).map_err(value_err)
}

/// Runs an optimizer variant from x1 for `horizon` iterations.
/// Schedules use config syntax ("constant 0.1", "harmonic 0.25",
/// "powerlaw 0.1 0.001", "epochlog 0.1", "square-spike 0.1 1", "custom ...").
#[pyfunction]
#[pyo3(signature = (problem, variant, stepsize, x1, horizon, radius=None, error=None,
                    nu=None, theta=None, sigma=None, lam=None, seed=0, thin=None,
                    igd_backstep_rho=None))]
#[allow(clippy::too_many_arguments)]
fn run(
    problem: &PyProblem,
    variant: &str,
    stepsize: &str,
    x1: Vec<f64>,
    horizon: u64,
    radius: Option<&str>,
    error: Option<&str>,
    nu: Option<f64>,
    theta: Option<f64>,
    sigma: Option<f64>,
    lam: Option<f64>,
    seed: u64,
    thin: Option<u64>,
    igd_backstep_rho: Option<f64>,
) -> PyResult<PyTrace> {
    let variant =
        Variant::parse(variant).ok_or_else(|| value_err(format!("unknown variant `{variant}`")))?;
    let mut spec = OptimizerSpec::new(variant, schedule(stepsize, ScheduleRole::Stepsize)?);
    if let Some(r) = radius {
        spec.radius = Some(schedule(r, ScheduleRole::Radius)?);
    }
    if let Some(e) = error {
        spec.error = Some(schedule(e, ScheduleRole::Error)?);
    }
    spec.nu = nu;
    spec.theta = theta;
    spec.sigma = sigma;
    spec.lambda = lam;
    spec.rng_seed = seed;
    if let Some(rho) = igd_backstep_rho {
        spec.igd_noise = IgdNoise::Backstep { rho };
    }
    let thin = thin.unwrap_or_else(|| optimizers::default_thin(problem.inner.dim()));
    let trace =
        optimizers::run_thinned(&problem.inner, &spec, &x1, horizon, thin).map_err(value_err)?;
    Ok(PyTrace { inner: trace })
}

/// Verdicts for the five fundamental convergence properties plus the raw
/// observables, as a dict.
#[pyfunction]
#[pyo3(signature = (trace, problem, tol_grad=1e-6, tol_cauchy=1e-6))]
fn assess_convergence(
    py: Python<'_>,
    trace: &PyTrace,
    problem: &PyProblem,
    tol_grad: f64,
    tol_cauchy: f64,
) -> PyResult<Py<PyDict>> {
    let report = analysis::assess_convergence(&trace.inner, &problem.inner, tol_grad, tol_cauchy)
        .map_err(runtime_err)?;
    let d = PyDict::new(py);
    d.set_item("liminf_grad", report.liminf_grad)?;
    d.set_item("final_grad_window", report.final_grad_window)?;
    d.set_item("f_limit_gap", report.f_limit_gap)?;
    d.set_item("iterate_cauchy", report.iterate_cauchy)?;
    d.set_item("dist_to_minimizer", report.dist_to_minimizer)?;
    d.set_item("verdicts", report.verdicts.to_vec())?;
    Ok(d.into())
}

/// Quadratic-trap certificate for constant-stepsize SAM.
#[pyfunction]
fn certify_example1(
    py: Python<'_>,
    a: Vec<Vec<f64>>,
    b: Vec<f64>,
    t: f64,
    rho: f64,
    x1: Vec<f64>,
    horizon: u64,
) -> PyResult<Py<PyDict>> {
    let cert = analysis::certify_example1(&matrix_from_rows(a)?, &b, t, rho, &x1, horizon)
        .map_err(value_err)?;
    let d = PyDict::new(py);
    d.set_item("passed", cert.passed)?;
    d.set_item("window", cert.window)?;
    d.set_item("trap_radius", cert.trap_radius)?;
    d.set_item("per_step_floor", cert.per_step_floor)?;
    d.set_item("min_distance", cert.min_distance)?;
    d.set_item("max_distance", cert.max_distance)?;
    d.set_item("min_step_margin", cert.min_step_margin)?;
    Ok(d.into())
}

/// Constant-error IGD certificate: convergence to the nonstationary point.
#[pyfunction]
fn certify_example2(
    py: Python<'_>,
    rho: f64,
    x1: f64,
    stepsize: &str,
    horizon: u64,
) -> PyResult<Py<PyDict>> {
    let t = schedule(stepsize, ScheduleRole::Stepsize)?;
    let cert = analysis::certify_example2(rho, x1, &t, horizon).map_err(value_err)?;
    let d = PyDict::new(py);
    d.set_item("passed", cert.passed)?;
    d.set_item("final_gap", cert.final_gap)?;
    d.set_item("telescoped_gap", cert.telescoped_gap)?;
    d.set_item("min_overshoot", cert.min_overshoot)?;
    d.set_item("max_recursion_residual", cert.max_recursion_residual)?;
    d.set_item("limit_gradient", cert.limit_gradient)?;
    Ok(d.into())
}

/// Least-squares rate fit over the trailing window of a trace.
/// reference: "minimizer" | "f-star" | "grad"; model: "linear" | "power".
#[pyfunction]
#[pyo3(signature = (trace, problem, reference, window=0.5, model="linear"))]
fn fit_rate(
    py: Python<'_>,
    trace: &PyTrace,
    problem: &PyProblem,
    reference: &str,
    window: f64,
    model: &str,
) -> PyResult<Py<PyDict>> {
    let reference = RateReference::parse(reference)
        .ok_or_else(|| value_err(format!("unknown reference `{reference}`")))?;
    let model = match model {
        "linear" => RateModel::Linear,
        "power" => RateModel::Power,
        other => return Err(value_err(format!("unknown model `{other}`"))),
    };
    let fit = analysis::fit_rate(&trace.inner, &problem.inner, reference, window, model)
        .map_err(runtime_err)?;
    let d = PyDict::new(py);
    d.set_item("slope", fit.slope)?;
    d.set_item("r_squared", fit.r_squared)?;
    d.set_item("implied_q", fit.implied_q)?;
    d.set_item("points", fit.points)?;
    Ok(d.into())
}

/// Audits a preset's schedules against a theorem tag (T1, C1, T3, T4);
/// returns the hypothesis table as text.
#[pyfunction]
fn audit_preset(preset: &str, theorem: &str) -> PyResult<String> {
    let config = harness::find_preset(preset)
        .ok_or_else(|| value_err(format!("unknown preset `{preset}`")))?;
    let tag = TheoremTag::parse(theorem)
        .ok_or_else(|| value_err(format!("unknown theorem tag `{theorem}`")))?;
    let report = harness::audit(&config, tag).map_err(runtime_err)?;
    Ok(report.text_block())
}

#[pyfunction]
fn preset_names() -> Vec<String> {
    harness::all_presets()
        .iter()
        .map(|p| p.name.to_string())
        .collect()
}

/// Runs a named preset in memory and returns its summary text.
#[pyfunction]
fn run_preset(preset: &str) -> PyResult<String> {
    let config = harness::find_preset(preset)
        .ok_or_else(|| value_err(format!("unknown preset `{preset}`")))?;
    if config.is_sweep() {
        let rows = harness::run_sweep(&config, 4).map_err(runtime_err)?;
        return Ok(harness::summary_csv(&rows));
    }
    let resolved = harness::resolve(&config).map_err(runtime_err)?;
    let outcome = harness::execute(&config).map_err(runtime_err)?;
    Ok(outcome.summary_text(&resolved.problem))
}

#[pymodule]
fn samlab_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyProblem>()?;
    m.add_class::<PyTrace>()?;
    m.add_function(wrap_pyfunction!(make_quadratic, m)?)?;
    m.add_function(wrap_pyfunction!(make_log_quadratic, m)?)?;
    m.add_function(wrap_pyfunction!(make_square_1d, m)?)?;
    m.add_function(wrap_pyfunction!(random_quadratic, m)?)?;
    m.add_function(wrap_pyfunction!(random_log_quadratic, m)?)?;
    m.add_function(wrap_pyfunction!(eval_schedule, m)?)?;
    m.add_function(wrap_pyfunction!(run, m)?)?;
    m.add_function(wrap_pyfunction!(assess_convergence, m)?)?;
    m.add_function(wrap_pyfunction!(certify_example1, m)?)?;
    m.add_function(wrap_pyfunction!(certify_example2, m)?)?;
    m.add_function(wrap_pyfunction!(fit_rate, m)?)?;
    m.add_function(wrap_pyfunction!(audit_preset, m)?)?;
    m.add_function(wrap_pyfunction!(preset_names, m)?)?;
    m.add_function(wrap_pyfunction!(run_preset, m)?)?;
    Ok(())
}
