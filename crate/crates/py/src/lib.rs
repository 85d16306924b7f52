//! Python bindings for the resolution toolkit: truncated Fock-space states,
//! Hermitian generators, the probe-generator functionals, nonclassicality
//! witnesses, and the Gaussian closed forms and optimizers.

use num_complex::Complex64;
use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;
use pyo3::types::PyDict;

use qmetro::fock::{self, FockSpace};
use qmetro::gaussian::{self, AxisAlignedGaussian};
use qmetro::hermitian::{ComplexMatrix, DensityMatrix, Observable};
use qmetro::pmix::{self, Verdict, WeakGenerator};
use qmetro::{measures, probe_design, suite, CoherentMixture};

fn err<E: std::fmt::Display>(e: E) -> PyErr {
    PyValueError::new_err(e.to_string())
}

fn space(cutoff: usize) -> PyResult<FockSpace> {
    FockSpace::new(cutoff).map_err(err)
}

/// A probe state on a truncated Fock space (or an abstract finite dimension).
#[pyclass(name = "State")]
#[derive(Clone)]
struct PyState {
    rho: DensityMatrix,
    trace_deficit: f64,
    space: Option<FockSpace>,
    space2: Option<FockSpace>,
}

impl PyState {
    fn single(rho: DensityMatrix, deficit: f64, s: FockSpace) -> Self {
        Self {
            rho,
            trace_deficit: deficit,
            space: Some(s),
            space2: None,
        }
    }
}

#[pymethods]
impl PyState {
    /// Coherent state |alpha> with alpha = re + i im.
    #[staticmethod]
    #[pyo3(signature = (re, im=0.0, cutoff=None))]
    fn coherent(re: f64, im: f64, cutoff: Option<usize>) -> PyResult<Self> {
        let alpha = Complex64::new(re, im);
        let s = space(cutoff.unwrap_or_else(|| fock::coherent_cutoff(alpha)))?;
        let (rho, rep) = fock::coherent_state(alpha, s).map_err(err)?;
        Ok(Self::single(rho, rep.trace_deficit, s))
    }

    /// Squeezed vacuum; r > 0 squeezes the Y quadrature.
    #[staticmethod]
    #[pyo3(signature = (r, cutoff=None))]
    fn squeezed(r: f64, cutoff: Option<usize>) -> PyResult<Self> {
        let s = space(cutoff.unwrap_or_else(|| fock::squeezed_cutoff(r)))?;
        let (rho, rep) = fock::squeezed_vacuum(r, s).map_err(err)?;
        Ok(Self::single(rho, rep.trace_deficit, s))
    }

    #[staticmethod]
    #[pyo3(signature = (xi, cutoff=None))]
    fn thermal(xi: f64, cutoff: Option<usize>) -> PyResult<Self> {
        let s = space(cutoff.unwrap_or_else(|| fock::thermal_cutoff(xi)))?;
        let (rho, rep) = fock::thermal_state(xi, s).map_err(err)?;
        Ok(Self::single(rho, rep.trace_deficit, s))
    }

    #[staticmethod]
    #[pyo3(signature = (x0, r, cutoff=None))]
    fn displaced_squeezed(x0: f64, r: f64, cutoff: Option<usize>) -> PyResult<Self> {
        let s = space(cutoff.unwrap_or_else(|| fock::displaced_squeezed_cutoff(x0, r)))?;
        let (rho, rep) = fock::displaced_squeezed(x0, r, s).map_err(err)?;
        Ok(Self::single(rho, rep.trace_deficit, s))
    }

    /// Classical coherent mixture from the JSON config format.
    #[staticmethod]
    #[pyo3(signature = (text, cutoff=None))]
    fn from_mixture_json(text: &str, cutoff: Option<usize>) -> PyResult<Self> {
        let mix = CoherentMixture::from_json(text).map_err(err)?;
        let s = space(cutoff.unwrap_or_else(|| mix.default_cutoff()))?;
        let (rho, rep) = mix.to_density(s).map_err(err)?;
        let space2 = mix.is_two_mode().then_some(s);
        Ok(Self {
            rho,
            trace_deficit: rep.trace_deficit,
            space: Some(s),
            space2,
        })
    }

    /// Axis-aligned Gaussian state with the given means and deviations.
    #[staticmethod]
    #[pyo3(signature = (mean_x, mean_y, dx, dy, cutoff=None))]
    fn gaussian(mean_x: f64, mean_y: f64, dx: f64, dy: f64, cutoff: Option<usize>) -> PyResult<Self> {
        let g = AxisAlignedGaussian::new(mean_x, mean_y, dx, dy).map_err(err)?;
        let s = space(cutoff.unwrap_or_else(|| g.default_cutoff()))?;
        let (rho, rep) = g.to_fock(s).map_err(err)?;
        Ok(Self::single(rho, rep.trace_deficit, s))
    }

    /// Tensor product of two single-mode states.
    #[staticmethod]
    fn two_mode(a: &PyState, b: &PyState) -> PyResult<Self> {
        let (sa, sb) = match (a.space, b.space) {
            (Some(sa), Some(sb)) => (sa, sb),
            _ => return Err(PyValueError::new_err("two_mode expects single-mode states")),
        };
        let rho = fock::two_mode(&a.rho, &b.rho).map_err(err)?;
        Ok(Self {
            rho,
            trace_deficit: (a.trace_deficit + b.trace_deficit).clamp(0.0, 1.0),
            space: Some(sa),
            space2: Some(sb),
        })
    }

    /// Density matrix from explicit row-major entries.
    #[staticmethod]
    fn from_matrix(rows: Vec<Vec<Complex64>>) -> PyResult<Self> {
        let rho = DensityMatrix::new(matrix_from_rows(rows)?).map_err(err)?;
        Ok(Self {
            rho,
            trace_deficit: 0.0,
            space: None,
            space2: None,
        })
    }

    #[getter]
    fn dim(&self) -> usize {
        self.rho.dim()
    }

    #[getter]
    fn trace_deficit(&self) -> f64 {
        self.trace_deficit
    }

    fn purity(&self) -> f64 {
        self.rho.purity()
    }

    /// Dense matrix as nested lists of Python complex numbers.
    fn matrix(&self) -> Vec<Vec<Complex64>> {
        let n = self.rho.dim();
        let m = self.rho.matrix();
        (0..n)
            .map(|i| (0..n).map(|j| m.get(i, j)).collect())
            .collect()
    }

    fn __repr__(&self) -> String {
        format!(
            "State(dim={}, deficit={:.3e})",
            self.rho.dim(),
            self.trace_deficit
        )
    }
}

/// A Hermitian generator.
#[pyclass(name = "Operator")]
#[derive(Clone)]
struct PyOperator {
    op: Observable,
}

#[pymethods]
impl PyOperator {
    #[staticmethod]
    fn quadrature_x(cutoff: usize) -> PyResult<Self> {
        Ok(Self {
            op: fock::quadratures(space(cutoff)?).0,
        })
    }

    #[staticmethod]
    fn quadrature_y(cutoff: usize) -> PyResult<Self> {
        Ok(Self {
            op: fock::quadratures(space(cutoff)?).1,
        })
    }

    #[staticmethod]
    fn number(cutoff: usize) -> PyResult<Self> {
        Ok(Self {
            op: fock::number(space(cutoff)?),
        })
    }

    /// Photon-number difference on a two-mode space.
    #[staticmethod]
    fn jz(cutoff1: usize, cutoff2: usize) -> PyResult<Self> {
        Ok(Self {
            op: fock::jz(space(cutoff1)?, space(cutoff2)?).map_err(err)?,
        })
    }

    #[staticmethod]
    fn pauli_x() -> Self {
        Self {
            op: Observable::pauli_x(),
        }
    }

    #[staticmethod]
    fn pauli_y() -> Self {
        Self {
            op: Observable::pauli_y(),
        }
    }

    #[staticmethod]
    fn pauli_z() -> Self {
        Self {
            op: Observable::pauli_z(),
        }
    }

    #[staticmethod]
    fn diagonal(values: Vec<f64>) -> Self {
        Self {
            op: Observable::diagonal(&values),
        }
    }

    #[staticmethod]
    fn from_matrix(rows: Vec<Vec<Complex64>>) -> PyResult<Self> {
        Ok(Self {
            op: Observable::new(matrix_from_rows(rows)?).map_err(err)?,
        })
    }

    #[getter]
    fn dim(&self) -> usize {
        self.op.dim()
    }

    fn matrix(&self) -> Vec<Vec<Complex64>> {
        let n = self.op.dim();
        let m = self.op.matrix();
        (0..n)
            .map(|i| (0..n).map(|j| m.get(i, j)).collect())
            .collect()
    }

    fn __repr__(&self) -> String {
        format!("Operator(dim={})", self.op.dim())
    }
}

fn matrix_from_rows(rows: Vec<Vec<Complex64>>) -> PyResult<ComplexMatrix> {
    let dim = rows.len();
    let mut flat = Vec::with_capacity(dim * dim);
    for row in &rows {
        if row.len() != dim {
            return Err(PyValueError::new_err("matrix rows must form a square"));
        }
        flat.extend_from_slice(row);
    }
    ComplexMatrix::from_row_major(dim, &flat).map_err(err)
}

#[pyfunction]
fn lambda_sq(state: &PyState, op: &PyOperator) -> f64 {
    measures::lambda_sq(&state.rho, &op.op)
}

#[pyfunction]
fn variance(state: &PyState, op: &PyOperator) -> f64 {
    measures::variance(&state.rho, &op.op)
}

#[pyfunction]
fn lambda_sq_commutator(state: &PyState, op: &PyOperator) -> f64 {
    measures::lambda_sq_commutator(&state.rho, &op.op)
}

#[pyfunction]
fn lambda_sq_spectral_g(state: &PyState, op: &PyOperator) -> PyResult<f64> {
    measures::lambda_sq_spectral_g(&state.rho, &op.op).map_err(err)
}

#[pyfunction]
fn lambda_sq_spectral_rho(state: &PyState, op: &PyOperator) -> PyResult<f64> {
    measures::lambda_sq_spectral_rho(&state.rho, &op.op).map_err(err)
}

#[pyfunction]
fn fisher_info(state: &PyState, op: &PyOperator) -> PyResult<f64> {
    measures::fisher_info(&state.rho, &op.op).map_err(err)
}

#[pyfunction]
fn skew_info(state: &PyState, op: &PyOperator) -> PyResult<f64> {
    measures::skew_info(&state.rho, &op.op).map_err(err)
}

#[pyfunction]
fn tilde_lambda_sq(state: &PyState, op: &PyOperator) -> PyResult<f64> {
    measures::tilde_lambda_sq(&state.rho, &op.op).map_err(err)
}

#[pyfunction]
fn hs_distance_sq(a: &PyState, b: &PyState) -> PyResult<f64> {
    measures::hs_distance_sq(&a.rho, &b.rho).map_err(err)
}

#[pyfunction]
fn bures_distance_sq(a: &PyState, b: &PyState) -> PyResult<f64> {
    measures::bures_distance_sq(&a.rho, &b.rho).map_err(err)
}

#[pyfunction]
fn hellinger_distance(a: &PyState, b: &PyState) -> PyResult<f64> {
    measures::hellinger_distance(&a.rho, &b.rho).map_err(err)
}

#[pyfunction]
fn evolve(state: &PyState, op: &PyOperator, chi: f64) -> PyState {
    PyState {
        rho: measures::evolve(&state.rho, &op.op, chi),
        trace_deficit: state.trace_deficit,
        space: state.space,
        space2: state.space2,
    }
}

#[pyfunction]
fn small_signal_ratio(state: &PyState, op: &PyOperator, chi: f64) -> PyResult<f64> {
    measures::small_signal_ratio(&state.rho, &op.op, chi).map_err(err)
}

/// Weak-value resolution of a classical mixture given as JSON; kind is "X" or "N".
#[pyfunction]
fn mixture_lambda_sq_weak(text: &str, kind: &str) -> PyResult<f64> {
    let mix = CoherentMixture::from_json(text).map_err(err)?;
    let kind = match kind {
        "X" | "x" => WeakGenerator::Quadrature,
        "N" | "n" => WeakGenerator::Number,
        other => return Err(PyValueError::new_err(format!("unknown kind '{other}'"))),
    };
    mix.lambda_sq_weak(kind).map_err(err)
}

fn witness_dict(py: Python<'_>, report: pmix::WitnessReport) -> PyResult<Py<PyDict>> {
    let dict = PyDict::new(py);
    dict.set_item(
        "verdict",
        match report.verdict {
            Verdict::Nonclassical => "nonclassical",
            Verdict::ClassicalConsistent => "classical-consistent",
        },
    )?;
    dict.set_item("lambda_sq", report.lambda_sq)?;
    dict.set_item("threshold", report.threshold)?;
    dict.set_item("margin", report.margin)?;
    Ok(dict.into())
}

/// Quadrature-displacement witness; nonclassical above the coherent ceiling 1/2.
#[pyfunction]
fn witness_displacement(py: Python<'_>, state: &PyState) -> PyResult<Py<PyDict>> {
    let s = state
        .space
        .ok_or_else(|| PyValueError::new_err("witness needs a Fock-space state"))?;
    let (x, _) = fock::quadratures(s);
    witness_dict(py, pmix::witness_displacement(&state.rho, &x))
}

/// Phase-shift witness; nonclassical above the mean photon number.
#[pyfunction]
fn witness_number(py: Python<'_>, state: &PyState) -> PyResult<Py<PyDict>> {
    let s = state
        .space
        .ok_or_else(|| PyValueError::new_err("witness needs a Fock-space state"))?;
    witness_dict(py, pmix::witness_number(&state.rho, &fock::number(s)))
}

/// Phase-difference witness for two-mode states.
#[pyfunction]
fn witness_jz(py: Python<'_>, state: &PyState) -> PyResult<Py<PyDict>> {
    let (s1, s2) = match (state.space, state.space2) {
        (Some(s1), Some(s2)) => (s1, s2),
        _ => return Err(PyValueError::new_err("witness_jz needs a two-mode state")),
    };
    let report = pmix::witness_jz(&state.rho, s1, s2).map_err(err)?;
    witness_dict(py, report)
}

fn optimum_dict(py: Python<'_>, opt: gaussian::GaussianOptimum) -> PyResult<Py<PyDict>> {
    let dict = PyDict::new(py);
    dict.set_item("mean_x", opt.state.mean_x())?;
    dict.set_item("mean_y", opt.state.mean_y())?;
    dict.set_item("dx", opt.state.dx())?;
    dict.set_item("dy", opt.state.dy())?;
    dict.set_item("purity_parameter", opt.state.purity())?;
    dict.set_item("lambda_sq", opt.lambda_sq)?;
    dict.set_item("asymptotic_lambda_sq", opt.asymptotic_lambda_sq)?;
    Ok(dict.into())
}

/// Optimal Gaussian probe for displacement signals at mean photon number n.
#[pyfunction]
fn optimize_displacement(py: Python<'_>, n: f64) -> PyResult<Py<PyDict>> {
    optimum_dict(py, gaussian::optimize_displacement(n).map_err(err)?)
}

/// Optimal Gaussian probe for phase-shift signals at mean photon number n.
#[pyfunction]
fn optimize_phase(py: Python<'_>, n: f64) -> PyResult<Py<PyDict>> {
    optimum_dict(py, gaussian::optimize_phase(n).map_err(err)?)
}

/// Closed-form Gaussian resolutions: returns a dict with lambda_sq_x,
/// lambda_sq_y, and (for on-axis states) lambda_sq_n and mean_photon.
#[pyfunction]
fn gaussian_closed_forms(
    py: Python<'_>,
    mean_x: f64,
    mean_y: f64,
    dx: f64,
    dy: f64,
) -> PyResult<Py<PyDict>> {
    let g = AxisAlignedGaussian::new(mean_x, mean_y, dx, dy).map_err(err)?;
    let dict = PyDict::new(py);
    dict.set_item("mean_photon", g.mean_photon())?;
    dict.set_item("purity_parameter", g.purity())?;
    dict.set_item("lambda_sq_x", g.lambda_sq_x())?;
    dict.set_item("lambda_sq_y", g.lambda_sq_y())?;
    if mean_y == 0.0 {
        dict.set_item("lambda_sq_n", g.lambda_sq_n().map_err(err)?)?;
    }
    Ok(dict.into())
}

/// Optimal pure generator for a fixed probe: dict with lambda_sq, spread,
/// degenerate flag, and the projector matrix.
#[pyfunction]
fn optimum_pure_generator(py: Python<'_>, state: &PyState) -> PyResult<Py<PyDict>> {
    let opt = probe_design::optimum_pure_generator(&state.rho).map_err(err)?;
    let dict = PyDict::new(py);
    dict.set_item("lambda_sq", opt.lambda_sq)?;
    dict.set_item("spread", opt.spread)?;
    dict.set_item("degenerate", opt.degenerate)?;
    let n = opt.generator.dim();
    let m = opt.generator.matrix();
    let rows: Vec<Vec<Complex64>> = (0..n)
        .map(|i| (0..n).map(|j| m.get(i, j)).collect())
        .collect();
    dict.set_item("generator", rows)?;
    Ok(dict.into())
}

/// Two-level closed form q(1-q)(g1-g2)^2 |mu|^2.
#[pyfunction]
#[pyo3(signature = (q, mu_re, mu_im, g1, g2))]
fn two_level_lambda(q: f64, mu_re: f64, mu_im: f64, g1: f64, g2: f64) -> PyResult<f64> {
    probe_design::two_level_lambda(q, Complex64::new(mu_re, mu_im), g1, g2).map_err(err)
}

/// Runs the reproduction suite; returns a list of check dicts.
#[pyfunction]
#[pyo3(signature = (seed=7))]
fn run_suite(py: Python<'_>, seed: u64) -> PyResult<Vec<Py<PyDict>>> {
    suite::run(seed, false)
        .into_iter()
        .map(|check| {
            let dict = PyDict::new(py);
            dict.set_item("check_id", check.check_id)?;
            dict.set_item("criterion", check.criterion)?;
            dict.set_item("description", check.description)?;
            dict.set_item("anchor", check.anchor)?;
            dict.set_item("computed", check.computed)?;
            dict.set_item("expected", check.expected)?;
            dict.set_item("tolerance", check.tolerance)?;
            dict.set_item("pass", check.pass)?;
            Ok(dict.into())
        })
        .collect()
}

#[pymodule]
fn qmetro_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyState>()?;
    m.add_class::<PyOperator>()?;
    m.add_function(wrap_pyfunction!(lambda_sq, m)?)?;
    m.add_function(wrap_pyfunction!(variance, m)?)?;
    m.add_function(wrap_pyfunction!(lambda_sq_commutator, m)?)?;
    m.add_function(wrap_pyfunction!(lambda_sq_spectral_g, m)?)?;
    m.add_function(wrap_pyfunction!(lambda_sq_spectral_rho, m)?)?;
    m.add_function(wrap_pyfunction!(fisher_info, m)?)?;
    m.add_function(wrap_pyfunction!(skew_info, m)?)?;
    m.add_function(wrap_pyfunction!(tilde_lambda_sq, m)?)?;
    m.add_function(wrap_pyfunction!(hs_distance_sq, m)?)?;
    m.add_function(wrap_pyfunction!(bures_distance_sq, m)?)?;
    m.add_function(wrap_pyfunction!(hellinger_distance, m)?)?;
    m.add_function(wrap_pyfunction!(evolve, m)?)?;
    m.add_function(wrap_pyfunction!(small_signal_ratio, m)?)?;
    m.add_function(wrap_pyfunction!(mixture_lambda_sq_weak, m)?)?;
    m.add_function(wrap_pyfunction!(witness_displacement, m)?)?;
    m.add_function(wrap_pyfunction!(witness_number, m)?)?;
    m.add_function(wrap_pyfunction!(witness_jz, m)?)?;
    m.add_function(wrap_pyfunction!(optimize_displacement, m)?)?;
    m.add_function(wrap_pyfunction!(optimize_phase, m)?)?;
    m.add_function(wrap_pyfunction!(gaussian_closed_forms, m)?)?;
    m.add_function(wrap_pyfunction!(optimum_pure_generator, m)?)?;
    m.add_function(wrap_pyfunction!(two_level_lambda, m)?)?;
    m.add_function(wrap_pyfunction!(run_suite, m)?)?;
    m.add("__version__", env!("CARGO_PKG_VERSION"))?;
    Ok(())
}
