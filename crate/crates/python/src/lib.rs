//! Python bindings for `qsub-thermo`.
//!
//! Errors map to Python exceptions: singular configurations raise `SingularError`,
//! missing closed forms raise `NotImplementedError`, everything else `ValueError`.

use pyo3::create_exception;
use pyo3::exceptions::{PyNotImplementedError, PyValueError};
use pyo3::prelude::*;

use qsub_thermo::analytic;
use qsub_thermo::diagnostics;
use qsub_thermo::fock::{self, FockConfig};
use qsub_thermo::{Error, Interaction, InteractionKind};

create_exception!(qsub_thermo_py, SingularError, PyValueError);

fn to_py(err: Error) -> PyErr {
    match err {
        Error::Singular { .. } => SingularError::new_err(err.to_string()),
        Error::Unsupported(_) => PyNotImplementedError::new_err(err.to_string()),
        other => PyValueError::new_err(other.to_string()),
    }
}

/// Two oscillators and their coupling.
#[pyclass(frozen, skip_from_py_object, name = "OscillatorSystem", module = "qsub_thermo_py")]
#[derive(Clone, Copy)]
struct PySystem(qsub_thermo::OscillatorSystem);

#[pymethods]
impl PySystem {
    /// `kind` is one of `none`, `rwa`, `linear`, `minimal-a`, `minimal-b`; `g` applies to
    /// the first two couplings, `mass` and `q` to the minimal ones.
    #[new]
    #[pyo3(signature = (omega_a, omega_b=None, kind="rwa", g=0.1, mass=1.0, q=0.2))]
    fn new(omega_a: f64, omega_b: Option<f64>, kind: &str, g: f64, mass: f64, q: f64) -> PyResult<Self> {
        let interaction = match kind.parse::<InteractionKind>().map_err(to_py)? {
            InteractionKind::None => Interaction::None,
            InteractionKind::Rwa => Interaction::Rwa { g },
            InteractionKind::Linear => Interaction::Linear { g },
            InteractionKind::MinimalA => Interaction::MinimalA { mass, q },
            InteractionKind::MinimalB => Interaction::MinimalB { mass, q },
        };
        let omega_b = omega_b.unwrap_or(omega_a);
        qsub_thermo::OscillatorSystem::new(omega_a, omega_b, interaction)
            .map(PySystem)
            .map_err(to_py)
    }

    #[getter]
    fn omega_a(&self) -> f64 {
        self.0.omega_a()
    }

    #[getter]
    fn omega_b(&self) -> f64 {
        self.0.omega_b()
    }

    #[getter]
    fn kind(&self) -> &'static str {
        self.0.kind().as_str()
    }

    fn swapped(&self) -> Self {
        PySystem(self.0.swapped())
    }

    fn __repr__(&self) -> String {
        format!("{:?}", self.0)
    }
}

/// Product of two thermal states at inverse temperatures `beta_a`, `beta_b`.
#[pyclass(frozen, skip_from_py_object, name = "ThermalPreparation", module = "qsub_thermo_py")]
#[derive(Clone, Copy)]
struct PyPreparation(qsub_thermo::ThermalPreparation);

#[pymethods]
impl PyPreparation {
    #[new]
    fn new(beta_a: f64, beta_b: f64) -> PyResult<Self> {
        qsub_thermo::ThermalPreparation::new(beta_a, beta_b)
            .map(PyPreparation)
            .map_err(to_py)
    }

    #[staticmethod]
    fn from_temperatures(temp_a: f64, temp_b: f64) -> PyResult<Self> {
        qsub_thermo::ThermalPreparation::from_temperatures(temp_a, temp_b)
            .map(PyPreparation)
            .map_err(to_py)
    }

    #[getter]
    fn beta_a(&self) -> f64 {
        self.0.beta_a()
    }

    #[getter]
    fn beta_b(&self) -> f64 {
        self.0.beta_b()
    }

    fn swapped(&self) -> Self {
        PyPreparation(self.0.swapped())
    }

    fn __repr__(&self) -> String {
        format!("ThermalPreparation(beta_a={}, beta_b={})", self.0.beta_a(), self.0.beta_b())
    }
}

/// Heat absorbed by each oscillator at one instant.
#[pyclass(frozen, get_all, name = "HeatReport", module = "qsub_thermo_py")]
struct PyHeatReport {
    t: f64,
    dq_a: f64,
    dq_b: f64,
    dq_ab: f64,
    ds0: f64,
    csl_ok: bool,
}

impl From<qsub_thermo::HeatReport> for PyHeatReport {
    fn from(r: qsub_thermo::HeatReport) -> Self {
        PyHeatReport {
            t: r.t,
            dq_a: r.dq_a,
            dq_b: r.dq_b,
            dq_ab: r.dq_ab,
            ds0: r.ds0,
            csl_ok: r.csl_ok,
        }
    }
}

#[pymethods]
impl PyHeatReport {
    fn __repr__(&self) -> String {
        format!(
            "HeatReport(t={}, dq_a={}, dq_b={}, dq_ab={}, ds0={}, csl_ok={})",
            self.t, self.dq_a, self.dq_b, self.dq_ab, self.ds0, self.csl_ok
        )
    }
}

/// Clausius verdict for a single transfer value.
#[pyclass(frozen, get_all, name = "CslVerdict", module = "qsub_thermo_py")]
struct PyCslVerdict {
    t: f64,
    dq_ab: f64,
    compliant: bool,
    margin: f64,
    anomaly: bool,
}

/// Violations of the Clausius direction on a grid, with their classification.
#[pyclass(frozen, get_all, name = "ViolationProfile", module = "qsub_thermo_py")]
struct PyViolationProfile {
    grid: Vec<f64>,
    violations: Vec<f64>,
    classification: &'static str,
    tau_threshold: f64,
    worst_average_margin: f64,
}

/// Frobenius norms of the commutators among `H0`, `V` and `H`.
#[pyclass(frozen, get_all, name = "DecompositionAudit", module = "qsub_thermo_py")]
struct PyAudit {
    norm_h0_v: f64,
    norm_h_v: f64,
    norm_h0_h: f64,
    csl_safe: bool,
}

/// Exact evolution in a truncated Fock space.
#[pyclass(frozen, name = "FockSimulation", module = "qsub_thermo_py")]
struct PyFockSimulation(fock::FockSimulation);

#[pymethods]
impl PyFockSimulation {
    /// `levels` fixes a uniform cutoff; otherwise the smallest one meeting `tail_tol`.
    #[new]
    #[pyo3(signature = (system, preparation, levels=None, tail_tol=fock::DEFAULT_TAIL_TOL))]
    fn new(
        py: Python<'_>,
        system: &PySystem,
        preparation: &PyPreparation,
        levels: Option<usize>,
        tail_tol: f64,
    ) -> PyResult<Self> {
        let (sys, prep) = (system.0, preparation.0);
        let cfg = match levels {
            Some(n) => FockConfig::uniform(n, tail_tol),
            None => FockConfig::auto(&sys, &prep, tail_tol),
        }
        .map_err(to_py)?;
        py.detach(|| fock::FockSimulation::new(&sys, &prep, &cfg))
            .map(PyFockSimulation)
            .map_err(to_py)
    }

    #[getter]
    fn levels(&self) -> (usize, usize) {
        let cfg = self.0.config();
        (cfg.n_a, cfg.n_b)
    }

    fn heat_report(&self, t: f64) -> PyHeatReport {
        self.0.heat_report(t).into()
    }

    /// `(⟨e^{−βΔE}⟩, ⟨−βΔE⟩)` over the two-point measurement statistics.
    fn jarzynski(&self, t: f64) -> (f64, f64) {
        let j = self.0.jarzynski_identity(t);
        (j.value, j.mean_exponent)
    }

    /// `(ΔS_a, Δ_iS_a, Δ_eS_a)`.
    fn entropy_production(&self, t: f64) -> PyResult<(f64, f64, f64)> {
        let e = self.0.entropy_production(t).map_err(to_py)?;
        Ok((e.ds_a, e.ds_i_a, e.ds_e_a))
    }
}

/// Closed-form heat report at time `t`.
#[pyfunction]
fn heat_at(system: &PySystem, preparation: &PyPreparation, t: f64) -> PyResult<PyHeatReport> {
    analytic::heat_at(&system.0, &preparation.0, t)
        .map(Into::into)
        .map_err(to_py)
}

/// Time averages of the closed-form transfer over windows `[0, τ]`.
#[pyfunction]
#[pyo3(signature = (system, preparation, taus, quad_tol=analytic::DEFAULT_QUAD_TOL))]
fn time_averages(
    py: Python<'_>,
    system: &PySystem,
    preparation: &PyPreparation,
    taus: Vec<f64>,
    quad_tol: f64,
) -> PyResult<Vec<f64>> {
    let (sys, prep) = (system.0, preparation.0);
    py.detach(|| analytic::time_averaged_series(&sys, &prep, &taus, quad_tol))
        .map_err(to_py)
}

#[pyfunction]
#[pyo3(signature = (t, dq_ab, preparation, energy_scale=1.0))]
fn csl_check(t: f64, dq_ab: f64, preparation: &PyPreparation, energy_scale: f64) -> PyCslVerdict {
    let v = diagnostics::csl_check(t, dq_ab, &preparation.0, energy_scale);
    PyCslVerdict {
        t: v.t,
        dq_ab: v.dq_ab,
        compliant: v.compliant,
        margin: v.margin,
        anomaly: v.anomaly,
    }
}

#[pyfunction]
#[pyo3(signature = (system, preparation, t_max, samples, tau_threshold=diagnostics::DEFAULT_TAU_THRESHOLD))]
fn scan_violations(
    py: Python<'_>,
    system: &PySystem,
    preparation: &PyPreparation,
    t_max: f64,
    samples: usize,
    tau_threshold: f64,
) -> PyResult<PyViolationProfile> {
    let (sys, prep) = (system.0, preparation.0);
    let p = py
        .detach(|| diagnostics::scan_violations(&sys, &prep, t_max, samples, tau_threshold))
        .map_err(to_py)?;
    Ok(PyViolationProfile {
        grid: p.grid,
        violations: p.violations,
        classification: p.classification.as_str(),
        tau_threshold: p.tau_threshold,
        worst_average_margin: p.worst_average_margin,
    })
}

#[pyfunction]
fn decomposition_audit(system: &PySystem, levels: usize) -> PyResult<PyAudit> {
    let cfg = FockConfig::uniform(levels, fock::DEFAULT_TAIL_TOL).map_err(to_py)?;
    let a = diagnostics::decomposition_audit(&system.0, &cfg).map_err(to_py)?;
    Ok(PyAudit {
        norm_h0_v: a.norm_h0_v,
        norm_h_v: a.norm_h_v,
        norm_h0_h: a.norm_h0_h,
        csl_safe: a.csl_safe,
    })
}

#[pymodule]
fn qsub_thermo_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add("SingularError", m.py().get_type::<SingularError>())?;
    m.add_class::<PySystem>()?;
    m.add_class::<PyPreparation>()?;
    m.add_class::<PyHeatReport>()?;
    m.add_class::<PyCslVerdict>()?;
    m.add_class::<PyViolationProfile>()?;
    m.add_class::<PyAudit>()?;
    m.add_class::<PyFockSimulation>()?;
    m.add_function(wrap_pyfunction!(heat_at, m)?)?;
    m.add_function(wrap_pyfunction!(time_averages, m)?)?;
    m.add_function(wrap_pyfunction!(csl_check, m)?)?;
    m.add_function(wrap_pyfunction!(scan_violations, m)?)?;
    m.add_function(wrap_pyfunction!(decomposition_audit, m)?)?;
    Ok(())
}
