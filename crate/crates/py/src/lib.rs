//! Python bindings. Arrays cross the boundary as lists of floats.

use ::casimir_chain as chain;
use chain::{CardyModel, CardyPoint, ForceForm, HoppingProfile, MetricSpec};
use pyo3::exceptions::{PyRuntimeError, PyValueError};
use pyo3::prelude::*;

fn err(e: chain::Error) -> PyErr {
    match e {
        chain::Error::NoConvergence { .. } | chain::Error::FitFailure(_) | chain::Error::NoCrossover(_) => {
            PyRuntimeError::new_err(e.to_string())
        }
        _ => PyValueError::new_err(e.to_string()),
    }
}

fn form(variant: &str) -> PyResult<ForceForm> {
    match variant {
        "eq19" | "smooth" => Ok(ForceForm::Smooth),
        "eq20" | "weak" => Ok(ForceForm::WeakDeformation),
        other => Err(PyValueError::new_err(format!("unknown variant {other:?}"))),
    }
}

fn model(subleading: bool) -> CardyModel {
    if subleading {
        CardyModel::WithSubleading
    } else {
        CardyModel::Leading
    }
}

/// A hopping profile family `J(x)`.
#[pyclass(name = "Metric", frozen, skip_from_py_object)]
#[derive(Clone)]
struct Metric(MetricSpec);

#[pymethods]
impl Metric {
    #[staticmethod]
    #[pyo3(signature = (j0 = 1.0))]
    fn minkowski(j0: f64) -> PyResult<Self> {
        MetricSpec::minkowski(j0).map(Metric).map_err(err)
    }

    #[staticmethod]
    #[pyo3(signature = (a, j0 = 1.0))]
    fn rindler(a: f64, j0: f64) -> PyResult<Self> {
        MetricSpec::rindler(j0, a).map(Metric).map_err(err)
    }

    #[staticmethod]
    #[pyo3(signature = (amplitude, wavenumber, j0 = 1.0))]
    fn sine(amplitude: f64, wavenumber: f64, j0: f64) -> PyResult<Self> {
        MetricSpec::sine(j0, amplitude, wavenumber).map(Metric).map_err(err)
    }

    #[staticmethod]
    #[pyo3(signature = (h, j0 = 1.0))]
    fn rainbow(h: f64, j0: f64) -> PyResult<Self> {
        MetricSpec::rainbow(j0, h).map(Metric).map_err(err)
    }

    #[staticmethod]
    #[pyo3(signature = (amplitude, wavenumber, j0 = 1.0))]
    fn modulated_sine(amplitude: f64, wavenumber: f64, j0: f64) -> PyResult<Self> {
        MetricSpec::modulated_sine(j0, amplitude, wavenumber).map(Metric).map_err(err)
    }

    #[getter]
    fn kind(&self) -> &'static str {
        self.0.kind().name()
    }

    /// `J(x)` on a chain of `n` sites.
    fn hopping(&self, x: f64, n: usize) -> f64 {
        self.0.hopping(x, n)
    }

    fn profile(&self, n: usize) -> PyResult<Profile> {
        chain::build_profile(&self.0, n).map(Profile).map_err(err)
    }

    fn __repr__(&self) -> String {
        format!("{:?}", self.0)
    }
}

/// Link hoppings `J_1 .. J_{N-1}` of a finite chain.
#[pyclass(name = "Profile", frozen, skip_from_py_object)]
#[derive(Clone)]
struct Profile(HoppingProfile);

#[pymethods]
impl Profile {
    #[new]
    fn new(hoppings: Vec<f64>) -> PyResult<Self> {
        HoppingProfile::from_hoppings(hoppings).map(Profile).map_err(err)
    }

    #[getter]
    fn n_sites(&self) -> usize {
        self.0.n_sites()
    }

    #[getter]
    fn hoppings(&self) -> Vec<f64> {
        self.0.hoppings().to_vec()
    }

    #[getter]
    fn deformed_length(&self) -> f64 {
        self.0.deformed_length()
    }

    /// Single-particle energies in ascending order.
    fn eigenvalues(&self) -> PyResult<Vec<f64>> {
        chain::eigenvalues(&chain::HoppingMatrix::from_profile(&self.0)).map_err(err)
    }

    /// Half-filled ground-state energy.
    fn energy(&self) -> PyResult<f64> {
        chain::ground_state_energy(&self.0).map_err(err)
    }

    /// Ground-state correlation matrix as a list of rows.
    fn correlations(&self) -> PyResult<Vec<Vec<f64>>> {
        let v = chain::Vacuum::solve(&self.0).map_err(err)?;
        let c = &v.correlations;
        Ok((0..c.dim()).map(|m| c.row(m).to_vec()).collect())
    }

    /// Entropies `S(1) .. S(N-1)` of the leftmost blocks.
    fn entropies(&self) -> PyResult<Vec<f64>> {
        let v = chain::Vacuum::solve(&self.0).map_err(err)?;
        let s = chain::entropy_profile(&v.correlations).map_err(err)?;
        Ok((1..self.0.n_sites()).map(|l| s.get(l)).collect())
    }

    /// Energy cost of scaling each link `p = 1 .. N-1` by `gamma`.
    fn potential(&self, gamma: f64) -> PyResult<Vec<f64>> {
        chain::casimir::potential_scan_profile(&self.0, gamma).map(|s| s.values).map_err(err)
    }

    fn __len__(&self) -> usize {
        self.0.n_sites()
    }
}

/// Fitted Cardy constants.
#[pyclass(name = "Fit", frozen, get_all, skip_from_py_object)]
#[derive(Clone)]
struct Fit {
    c0: f64,
    cb: f64,
    cvf: f64,
    subleading: Option<f64>,
    residual_rms: f64,
    n_points: usize,
}

impl From<chain::FitResult> for Fit {
    fn from(f: chain::FitResult) -> Self {
        Fit { c0: f.c0, cb: f.cb, cvf: f.cvf, subleading: f.subleading, residual_rms: f.residual_rms, n_points: f.n_points }
    }
}

#[pymethods]
impl Fit {
    fn __repr__(&self) -> String {
        format!("Fit(c0={:.10}, cb={:.8}, cvf={:.6}, n_points={})", self.c0, self.cb, self.cvf, self.n_points)
    }
}

/// `(F_N, E_N, E_{N-2})` at the right edge of an `n`-site chain.
#[pyfunction]
fn casimir_force(metric: &Metric, n: usize) -> PyResult<(f64, f64, f64)> {
    let r = chain::casimir_force(&metric.0, n).map_err(err)?;
    Ok((r.force, r.energy, r.energy_shorter))
}

/// Predicted edge force with free-fermion constants.
#[pyfunction]
#[pyo3(signature = (metric, n, variant = "eq19"))]
fn force_prediction(metric: &Metric, n: usize, variant: &str) -> PyResult<f64> {
    chain::force_prediction(&metric.0, n, &chain::FitResult::free_fermion(), form(variant)?).map_err(err)
}

/// Cardy fit of `E_N` on a uniform chain over even `sizes`.
#[pyfunction]
#[pyo3(signature = (sizes, energies, subleading = false))]
fn fit_flat(sizes: Vec<usize>, energies: Vec<f64>, subleading: bool) -> PyResult<Fit> {
    if sizes.len() != energies.len() {
        return Err(PyValueError::new_err("sizes and energies differ in length"));
    }
    let data: Vec<(usize, f64)> = sizes.into_iter().zip(energies).collect();
    chain::fit_flat_cardy(&data, model(subleading)).map(Fit::from).map_err(err)
}

/// Cardy fit in deformed variables, solving each size of `metric` first.
#[pyfunction]
#[pyo3(signature = (metric, sizes, subleading = false))]
fn fit_curved(py: Python<'_>, metric: &Metric, sizes: Vec<usize>, subleading: bool) -> PyResult<Fit> {
    let spec = metric.0;
    let points = py
        .detach(|| -> chain::Result<Vec<CardyPoint>> {
            sizes
                .iter()
                .map(|&n| {
                    let p = chain::build_profile(&spec, n)?;
                    Ok(CardyPoint::from_profile(&p, chain::ground_state_energy(&p)?))
                })
                .collect()
        })
        .map_err(err)?;
    chain::fit_curved_cardy(&points, model(subleading)).map(Fit::from).map_err(err)
}

/// Size where the boundary and Casimir terms of the force balance.
#[pyfunction]
#[pyo3(signature = (metric, n_max = 10_000_000))]
fn crossover_size(metric: &Metric, n_max: usize) -> PyResult<f64> {
    chain::crossover_size(&metric.0, &chain::FitResult::free_fermion(), n_max).map_err(err)
}

#[pymodule]
#[pyo3(name = "casimir_chain")]
fn casimir_chain_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<Metric>()?;
    m.add_class::<Profile>()?;
    m.add_class::<Fit>()?;
    m.add_function(wrap_pyfunction!(casimir_force, m)?)?;
    m.add_function(wrap_pyfunction!(force_prediction, m)?)?;
    m.add_function(wrap_pyfunction!(fit_flat, m)?)?;
    m.add_function(wrap_pyfunction!(fit_curved, m)?)?;
    m.add_function(wrap_pyfunction!(crossover_size, m)?)?;
    m.add("FREE_FERMION_C0", chain::fit::FREE_FERMION_C0)?;
    m.add("FREE_FERMION_CB", chain::fit::FREE_FERMION_CB)?;
    Ok(())
}
