//! Python bindings: parameters, the transition constant, standing waves,
//! glued profiles, energies, the PDE solver and exit-time sweeps.

use degenac::interfaces::ExitReference;
use degenac::solver::RecordStride;
use degenac::sweep::{run_sweep as sweep_impl, Horizon, SweepSpec};
use degenac::{
    Degeneracy, Field, ModelParams, ProbeSet, ProfileMode, SimConfig, SimTrace, ThetaOptions,
};
use pyo3::create_exception;
use pyo3::exceptions::{PyRuntimeError, PyValueError};
use pyo3::prelude::*;
use pyo3::types::PyDict;

create_exception!(degenac_py, NumericalError, PyRuntimeError);

fn to_py(e: degenac::Error) -> PyErr {
    use degenac::Error as E;
    match e {
        E::InvalidParameter { .. } | E::InvalidJumps(_) | E::NotCompacton { .. } | E::FieldMismatch(_) => {
            PyValueError::new_err(e.to_string())
        }
        _ => NumericalError::new_err(e.to_string()),
    }
}

trait OrPy<T> {
    fn py_err(self) -> PyResult<T>;
}

impl<T> OrPy<T> for degenac::Result<T> {
    fn py_err(self) -> PyResult<T> {
        self.map_err(to_py)
    }
}

fn degeneracy(name: &str) -> PyResult<Degeneracy> {
    match name {
        "double" => Ok(Degeneracy::DoubleDegenerate),
        "single" => Ok(Degeneracy::SingleDegenerate),
        other => Err(PyValueError::new_err(format!(
            "degeneracy must be 'double' or 'single', got '{other}'"
        ))),
    }
}

/// Exponents `m`, `n`, interface width `epsilon` and which wells `D` vanishes at.
#[pyclass(name = "Params", frozen, from_py_object)]
#[derive(Clone)]
struct PyParams {
    inner: ModelParams,
}

#[pymethods]
impl PyParams {
    #[new]
    #[pyo3(signature = (m, n, epsilon, degeneracy = "double"))]
    fn new(m: f64, n: f64, epsilon: f64, degeneracy: &str) -> PyResult<Self> {
        let d = self::degeneracy(degeneracy)?;
        Ok(PyParams {
            inner: ModelParams::new(m, n, epsilon, d).py_err()?,
        })
    }

    #[getter]
    fn m(&self) -> f64 {
        self.inner.m()
    }

    #[getter]
    fn n(&self) -> f64 {
        self.inner.n()
    }

    #[getter]
    fn epsilon(&self) -> f64 {
        self.inner.epsilon()
    }

    #[getter]
    fn degeneracy(&self) -> &'static str {
        self.inner.degeneracy().as_str()
    }

    #[getter]
    fn outside_hypotheses(&self) -> bool {
        self.inner.outside_hypotheses()
    }

    /// `(tag, theta_case)`, e.g. `("ExponentialTails", "E2")`.
    fn regime(&self) -> (String, String) {
        let r = self.inner.regime();
        (format!("{:?}", r.tag), format!("{:?}", r.theta_case))
    }

    fn with_epsilon(&self, epsilon: f64) -> PyResult<Self> {
        Ok(PyParams {
            inner: self.inner.with_epsilon(epsilon).py_err()?,
        })
    }

    fn diffusivity(&self, u: f64) -> f64 {
        self.inner.diffusivity(u)
    }

    fn diffusivity_prime(&self, u: f64) -> f64 {
        self.inner.diffusivity_prime(u)
    }

    fn potential(&self, u: f64) -> f64 {
        self.inner.potential(u)
    }

    fn potential_prime(&self, u: f64) -> f64 {
        self.inner.potential_prime(u)
    }

    fn __repr__(&self) -> String {
        format!(
            "Params(m={}, n={}, epsilon={}, degeneracy='{}')",
            self.inner.m(),
            self.inner.n(),
            self.inner.epsilon(),
            self.inner.degeneracy().as_str()
        )
    }
}

#[pyfunction]
fn gamma_constant(params: &PyParams) -> PyResult<f64> {
    degenac::gamma_constant(&params.inner).py_err()
}

#[pyfunction]
fn gamma_closed_form(params: &PyParams) -> Option<f64> {
    degenac::gamma_closed_form(&params.inner)
}

/// Support endpoints of the standing wave; infinite when it never reaches a well.
#[pyfunction]
fn omega_eps(params: &PyParams) -> PyResult<(f64, f64)> {
    degenac::omega_eps(&params.inner).py_err()
}

/// Samples the standing wave on `xs`: returns `(phi, form, max_residual)`.
#[pyfunction]
fn standing_wave(params: &PyParams, xs: Vec<f64>) -> PyResult<(Vec<f64>, String, f64)> {
    let wave = degenac::standing_wave(&params.inner, &xs).py_err()?;
    let phi = wave.samples().iter().map(|s| s.1).collect();
    Ok((phi, format!("{:?}", wave.form()), degenac::wave_residual(&wave)))
}

/// `theta(epsilon)` for layers `2r` apart; `None` when the regime has no scale.
#[pyfunction]
#[pyo3(signature = (params, r, amplitude = None, truncation = None))]
fn theta(params: &PyParams, r: f64, amplitude: Option<f64>, truncation: Option<usize>) -> PyResult<Option<f64>> {
    let options = ThetaOptions { amplitude, truncation };
    match degenac::theta(&params.inner, r, options) {
        Ok(t) => Ok(Some(t.eval(params.inner.epsilon()))),
        Err(degenac::Error::NoSlowMotionScale) => Ok(None),
        Err(e) => Err(to_py(e)),
    }
}

#[pyfunction]
fn kj_sequence(params: &PyParams, j_max: usize) -> PyResult<(Vec<f64>, f64)> {
    degenac::kj_sequence(&params.inner, j_max).py_err()
}

/// A sampled field on a uniform grid.
#[pyclass(name = "Field", frozen, from_py_object)]
#[derive(Clone)]
struct PyField {
    inner: Field,
}

#[pymethods]
impl PyField {
    #[new]
    fn new(a: f64, b: f64, values: Vec<f64>) -> PyResult<Self> {
        Ok(PyField {
            inner: Field::new(a, b, values).py_err()?,
        })
    }

    #[getter]
    fn a(&self) -> f64 {
        self.inner.a()
    }

    #[getter]
    fn b(&self) -> f64 {
        self.inner.b()
    }

    #[getter]
    fn x(&self) -> Vec<f64> {
        self.inner.xs()
    }

    #[getter]
    fn u(&self) -> Vec<f64> {
        self.inner.values().to_vec()
    }

    fn __len__(&self) -> usize {
        self.inner.values().len()
    }
}

/// Glued profile: returns `(field, stationary, energy, epsilon_bar)`.
#[pyfunction]
#[pyo3(signature = (params, a, b, jumps, first_value = -1.0, cells = None, compacton = false))]
fn build_profile(
    params: &PyParams,
    a: f64,
    b: f64,
    jumps: Vec<f64>,
    first_value: f64,
    cells: Option<usize>,
    compacton: bool,
) -> PyResult<(PyField, bool, f64, f64)> {
    let v = degenac::make_jump_function(a, b, &jumps, first_value).py_err()?;
    let cells = cells.unwrap_or(((b - a) * 20.0 / params.inner.epsilon()).round() as usize);
    let mode = if compacton { ProfileMode::Compacton } else { ProfileMode::Any };
    let p = degenac::build_profile(&params.inner, &v, cells, mode).py_err()?;
    Ok((PyField { inner: p.field }, p.stationary, p.energy, p.epsilon_bar))
}

/// `(total, gradient_part, potential_part)`.
#[pyfunction]
fn energy(params: &PyParams, field: &PyField) -> (f64, f64, f64) {
    let e = degenac::energy(&params.inner, &field.inner);
    (e.total, e.gradient_part, e.potential_part)
}

/// Recorded history of one run.
#[pyclass(name = "Trace", frozen)]
struct PyTrace {
    trace: SimTrace,
    initial: Field,
    probe: ProbeSet,
    stop_reason: String,
}

#[pymethods]
impl PyTrace {
    #[getter]
    fn times(&self) -> Vec<f64> {
        self.trace.times.clone()
    }

    #[getter]
    fn energies(&self) -> Vec<f64> {
        self.trace.energies.clone()
    }

    #[getter]
    fn dissipation(&self) -> Vec<f64> {
        self.trace.dissipation.clone()
    }

    #[getter]
    fn interfaces(&self) -> Vec<Vec<f64>> {
        self.trace.interface_positions.clone()
    }

    #[getter]
    fn final_field(&self) -> PyField {
        PyField {
            inner: self.trace.final_field.clone(),
        }
    }

    #[getter]
    fn steps(&self) -> usize {
        self.trace.steps
    }

    #[getter]
    fn stop_reason(&self) -> &str {
        &self.stop_reason
    }

    #[getter]
    fn max_bound_violation(&self) -> f64 {
        self.trace.max_bound_violation()
    }

    fn energy_identity_residual(&self) -> f64 {
        degenac::energy_identity_residual(&self.trace)
    }

    /// `(time, censored)` for the first record whose interfaces sit more than
    /// `delta1` (Hausdorff) from the initial ones.
    fn exit_time(&self, delta1: f64) -> PyResult<(f64, bool)> {
        let reference = degenac::interface_set(&self.initial, &self.probe).py_err()?;
        let e = degenac::exit_time(&self.trace, ExitReference::Interfaces(&reference), delta1).py_err()?;
        Ok((e.time, e.censored))
    }
}

#[pyfunction]
#[pyo3(signature = (params, field, t_end, record_every = 10, dt_safety = 0.5, max_steps = None))]
fn simulate(
    py: Python<'_>,
    params: &PyParams,
    field: &PyField,
    t_end: f64,
    record_every: usize,
    dt_safety: f64,
    max_steps: Option<usize>,
) -> PyResult<PyTrace> {
    let config = SimConfig {
        t_end,
        dt_safety,
        record_every: RecordStride::Steps(record_every),
        max_steps: max_steps.unwrap_or(usize::MAX),
        ..SimConfig::default()
    };
    let (p, f) = (params.inner, field.inner.clone());
    let outcome = py
        .detach(|| degenac::simulate(&p, &f, &config, None))
        .py_err()?;
    Ok(PyTrace {
        trace: outcome.trace,
        initial: f,
        probe: config.probe,
        stop_reason: format!("{:?}", outcome.stop_reason),
    })
}

/// Exit times over `eps_list` and the exponential/algebraic verdict, as a dict.
#[pyfunction]
#[pyo3(signature = (params, jumps, eps_list, delta1 = 0.1, domain = (-4.0, 4.0), first_value = -1.0,
                    t_max = None, max_steps = 10_000_000, cells_per_eps = 20.0, jobs = 1))]
#[allow(clippy::too_many_arguments)]
fn run_sweep<'py>(
    py: Python<'py>,
    params: &PyParams,
    jumps: Vec<f64>,
    eps_list: Vec<f64>,
    delta1: f64,
    domain: (f64, f64),
    first_value: f64,
    t_max: Option<f64>,
    max_steps: usize,
    cells_per_eps: f64,
    jobs: usize,
) -> PyResult<Bound<'py, PyDict>> {
    let spec = SweepSpec {
        params: params.inner,
        domain,
        jumps,
        first_value,
        delta1,
        eps_list,
        cells_per_eps,
        horizon: t_max.map_or(Horizon::ExpScale(10.0), Horizon::Fixed),
        dt_safety: 0.5,
        record_steps: 10,
        max_steps,
        probe: ProbeSet::zero(),
        jobs,
    };
    let result = py.detach(|| sweep_impl(&spec)).py_err()?;
    let out = PyDict::new(py);
    out.set_item("verdict", format!("{:?}", result.fit.verdict))?;
    out.set_item("epsilon", result.points.iter().map(|p| p.epsilon).collect::<Vec<_>>())?;
    out.set_item("exit_time", result.points.iter().map(|p| p.exit.time).collect::<Vec<_>>())?;
    out.set_item("censored", result.points.iter().map(|p| p.exit.censored).collect::<Vec<_>>())?;
    let fit = |f: Option<degenac::fit::LineFit>| f.map(|f| (f.slope, f.intercept, f.r_squared));
    out.set_item("exp_fit", fit(result.fit.exp_fit))?;
    out.set_item("alg_fit", fit(result.fit.alg_fit))?;
    Ok(out)
}

#[pymodule]
pub fn degenac_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add("NumericalError", m.py().get_type::<NumericalError>())?;
    m.add_class::<PyParams>()?;
    m.add_class::<PyField>()?;
    m.add_class::<PyTrace>()?;
    m.add_function(wrap_pyfunction!(gamma_constant, m)?)?;
    m.add_function(wrap_pyfunction!(gamma_closed_form, m)?)?;
    m.add_function(wrap_pyfunction!(omega_eps, m)?)?;
    m.add_function(wrap_pyfunction!(standing_wave, m)?)?;
    m.add_function(wrap_pyfunction!(theta, m)?)?;
    m.add_function(wrap_pyfunction!(kj_sequence, m)?)?;
    m.add_function(wrap_pyfunction!(build_profile, m)?)?;
    m.add_function(wrap_pyfunction!(energy, m)?)?;
    m.add_function(wrap_pyfunction!(simulate, m)?)?;
    m.add_function(wrap_pyfunction!(run_sweep, m)?)?;
    Ok(())
}
