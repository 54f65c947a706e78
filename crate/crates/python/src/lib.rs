//! Python bindings for the `dqaa` simulator.
//!
//! Structured results (run summaries, probability accounts, experiment
//! reports) cross the boundary as plain dicts built from their JSON form.

use std::collections::BTreeMap;

use num_complex::Complex64;
use pyo3::exceptions::{PyIndexError, PyRuntimeError, PyValueError};
use pyo3::prelude::*;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

use dqaa::{distributed, Error};

fn to_py(err: Error) -> PyErr {
    match err {
        Error::Resource(_) => PyRuntimeError::new_err(err.to_string()),
        _ => PyValueError::new_err(err.to_string()),
    }
}

fn json_to_py<'py, T: serde::Serialize>(py: Python<'py>, value: &T) -> PyResult<Bound<'py, PyAny>> {
    let text = serde_json::to_string(value).map_err(|e| PyRuntimeError::new_err(e.to_string()))?;
    py.import("json")?.call_method1("loads", (text,))
}

#[pyclass(name = "Statevector", module = "dqaa_py", frozen)]
struct PyStatevector(dqaa::Statevector);

#[pymethods]
impl PyStatevector {
    /// `|0...0>` on `n` qubits.
    #[staticmethod]
    fn zero(n: usize) -> PyResult<Self> {
        dqaa::zero_state(n).map(Self).map_err(to_py)
    }

    #[new]
    fn new(amplitudes: Vec<Complex64>) -> PyResult<Self> {
        dqaa::Statevector::from_amplitudes(amplitudes).map(Self).map_err(to_py)
    }

    #[getter]
    fn n_qubits(&self) -> usize {
        self.0.n_qubits()
    }

    fn amplitudes(&self) -> Vec<Complex64> {
        self.0.amplitudes().to_vec()
    }

    fn probabilities(&self) -> Vec<f64> {
        self.0.probabilities()
    }

    fn norm_sqr(&self) -> f64 {
        self.0.norm_sqr()
    }

    fn apply(&self, op: &PyUnitary) -> PyResult<Self> {
        self.0.apply(&op.0).map(Self).map_err(to_py)
    }

    fn kron(&self, other: &PyStatevector) -> PyResult<Self> {
        self.0.kron(&other.0).map(Self).map_err(to_py)
    }

    /// Probability mass on inputs marked by `oracle`.
    fn probability_of(&self, oracle: &PyOracle) -> PyResult<f64> {
        if oracle.0.n_bits() != self.0.n_qubits() {
            return Err(PyValueError::new_err("oracle width does not match the state"));
        }
        Ok(self.0.probability_of(|x| oracle.0.is_marked(x)))
    }

    /// Sample `shots` measurements; returns `{bitstring: count}`.
    #[pyo3(signature = (shots, seed = 0))]
    fn measure(&self, shots: u64, seed: u64) -> PyResult<BTreeMap<String, u64>> {
        self.0.measure_all(shots, seed).map(|h| h.counts).map_err(to_py)
    }

    fn __len__(&self) -> usize {
        self.0.dim()
    }

    fn __repr__(&self) -> String {
        format!("Statevector(n_qubits={})", self.0.n_qubits())
    }
}

#[pyclass(name = "UnitaryOperator", module = "dqaa_py", frozen)]
struct PyUnitary(dqaa::UnitaryOperator);

#[pymethods]
impl PyUnitary {
    /// Row-major `dim x dim` entries; rejected unless unitary.
    #[new]
    fn new(dim: usize, entries: Vec<Complex64>) -> PyResult<Self> {
        dqaa::UnitaryOperator::from_entries(dim, entries).map(Self).map_err(to_py)
    }

    #[staticmethod]
    fn identity(n: usize) -> PyResult<Self> {
        dqaa::UnitaryOperator::identity(n).map(Self).map_err(to_py)
    }

    #[staticmethod]
    fn hadamard(n: usize) -> PyResult<Self> {
        dqaa::UnitaryOperator::hadamard(n).map(Self).map_err(to_py)
    }

    /// Haar-random unitary drawn from a ChaCha8 stream seeded with `seed`.
    #[staticmethod]
    #[pyo3(signature = (n, seed = 0))]
    fn random(n: usize, seed: u64) -> PyResult<Self> {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        dqaa::UnitaryOperator::random(n, &mut rng).map(Self).map_err(to_py)
    }

    #[getter]
    fn n_qubits(&self) -> usize {
        self.0.n_qubits()
    }

    #[getter]
    fn dim(&self) -> usize {
        self.0.dim()
    }

    fn entries(&self) -> Vec<Complex64> {
        self.0.entries().to_vec()
    }

    fn get(&self, row: usize, col: usize) -> PyResult<Complex64> {
        let dim = self.0.dim();
        if row >= dim || col >= dim {
            return Err(PyIndexError::new_err(format!("({row}, {col}) outside a {dim}x{dim} matrix")));
        }
        Ok(self.0.get(row, col))
    }

    fn adjoint(&self) -> Self {
        Self(self.0.adjoint())
    }

    /// Matrix product `self @ rhs`.
    fn compose(&self, rhs: &PyUnitary) -> PyResult<Self> {
        self.0.compose(&rhs.0).map(Self).map_err(to_py)
    }

    fn __matmul__(&self, rhs: &PyUnitary) -> PyResult<Self> {
        self.compose(rhs)
    }

    fn kron(&self, rhs: &PyUnitary) -> PyResult<Self> {
        self.0.kron(&rhs.0).map(Self).map_err(to_py)
    }

    fn unitarity_deviation(&self) -> f64 {
        self.0.unitarity_deviation()
    }

    fn max_abs_diff(&self, other: &PyUnitary) -> f64 {
        self.0.max_abs_diff(&other.0)
    }

    fn __repr__(&self) -> String {
        format!("UnitaryOperator(n_qubits={})", self.0.n_qubits())
    }
}

#[pyclass(name = "BooleanOracle", module = "dqaa_py", frozen)]
struct PyOracle(dqaa::BooleanOracle);

#[pymethods]
impl PyOracle {
    /// Oracle on `n` bits marking exactly the given bitstrings.
    #[new]
    fn new(n: usize, targets: Vec<String>) -> PyResult<Self> {
        dqaa::BooleanOracle::from_targets(n, targets).map(Self).map_err(to_py)
    }

    #[staticmethod]
    fn from_table(table: Vec<bool>) -> PyResult<Self> {
        dqaa::BooleanOracle::from_table(table).map(Self).map_err(to_py)
    }

    #[staticmethod]
    fn from_hex(n: usize, hex: &str) -> PyResult<Self> {
        dqaa::BooleanOracle::from_hex(n, hex).map(Self).map_err(to_py)
    }

    #[getter]
    fn n_bits(&self) -> usize {
        self.0.n_bits()
    }

    fn evaluate(&self, x: &str) -> PyResult<bool> {
        self.0.evaluate(x).map_err(to_py)
    }

    fn __call__(&self, x: &str) -> PyResult<bool> {
        self.evaluate(x)
    }

    fn count_targets(&self) -> usize {
        self.0.count_targets()
    }

    fn targets(&self) -> Vec<String> {
        self.0.targets()
    }

    fn to_hex(&self) -> String {
        self.0.to_hex()
    }

    /// Sub-oracles `f_k`, one per `j`-bit prefix `k`.
    fn split(&self, j: usize) -> PyResult<Vec<PyOracle>> {
        let split = self.0.split(j).map_err(to_py)?;
        Ok(split.subs().iter().cloned().map(PyOracle).collect())
    }

    fn __eq__(&self, other: &PyOracle) -> bool {
        self.0 == other.0
    }

    fn __repr__(&self) -> String {
        format!("BooleanOracle(n_bits={}, targets={})", self.0.n_bits(), self.0.count_targets())
    }
}

#[pyfunction]
fn chebyshev_t(m: f64, x: f64) -> PyResult<f64> {
    dqaa::chebyshev_t(m, x).map_err(to_py)
}

#[pyfunction]
fn gamma_from(big_l: u64, epsilon: f64) -> PyResult<f64> {
    dqaa::gamma_from(big_l, epsilon).map_err(to_py)
}

/// Fixed-point schedule as a list of `(phi, varphi)` pairs.
#[pyfunction]
fn phase_angles(l: u64, epsilon: f64) -> PyResult<Vec<(f64, f64)>> {
    let schedule = dqaa::phase_angles(l, epsilon).map_err(to_py)?;
    Ok(schedule.pairs.iter().map(|p| (p.phi, p.varphi)).collect())
}

#[pyfunction]
fn iterations_known(a: f64) -> PyResult<u64> {
    dqaa::iterations_known(a).map_err(to_py)
}

#[pyfunction]
fn iterations_fixed_point(delta: f64, epsilon: f64) -> PyResult<u64> {
    dqaa::iterations_fixed_point(delta, epsilon).map_err(to_py)
}

#[pyfunction]
fn node_iterations(a: f64, epsilon: f64) -> PyResult<u64> {
    dqaa::node_iterations(a, epsilon).map_err(to_py)
}

#[pyfunction]
fn combined_success(probabilities: Vec<f64>) -> f64 {
    dqaa::combined_success(&probabilities)
}

#[pyfunction]
fn initial_success_probability(algorithm: &PyUnitary, oracle: &PyOracle) -> PyResult<f64> {
    let setup = dqaa::AmplificationSetup::new(algorithm.0.clone(), oracle.0.clone()).map_err(to_py)?;
    Ok(dqaa::initial_success_probability(&setup))
}

/// Returns `(final_state, {"iterations", "exact_success", "sampled_hits"})`.
fn run_output<'py>(py: Python<'py>, run: dqaa::RunResult) -> PyResult<(PyStatevector, Bound<'py, PyAny>)> {
    let summary = json_to_py(py, &run.summary())?;
    Ok((PyStatevector(run.final_state), summary))
}

/// Known-`a` amplification with `Q(pi, pi)`; `a` must match the setup.
#[pyfunction]
#[pyo3(signature = (algorithm, oracle, a, shots = 0, seed = 0))]
fn qaa_known<'py>(
    py: Python<'py>,
    algorithm: &PyUnitary,
    oracle: &PyOracle,
    a: f64,
    shots: u64,
    seed: u64,
) -> PyResult<(PyStatevector, Bound<'py, PyAny>)> {
    let setup = dqaa::AmplificationSetup::new(algorithm.0.clone(), oracle.0.clone()).map_err(to_py)?;
    run_output(py, dqaa::qaa_known(&setup, a, shots, seed).map_err(to_py)?)
}

#[pyfunction]
#[pyo3(signature = (algorithm, oracle, delta, epsilon, shots = 0, seed = 0))]
fn fixed_point_run<'py>(
    py: Python<'py>,
    algorithm: &PyUnitary,
    oracle: &PyOracle,
    delta: f64,
    epsilon: f64,
    shots: u64,
    seed: u64,
) -> PyResult<(PyStatevector, Bound<'py, PyAny>)> {
    let setup = dqaa::AmplificationSetup::new(algorithm.0.clone(), oracle.0.clone()).map_err(to_py)?;
    run_output(py, dqaa::fixed_point_run(&setup, delta, epsilon, shots, seed).map_err(to_py)?)
}

fn distributed_setup(
    prefix: &PyUnitary,
    suffix: &PyUnitary,
    oracle: &PyOracle,
    epsilon: f64,
    shots: u64,
    seed: u64,
) -> PyResult<dqaa::DistributedSetup> {
    dqaa::DistributedSetup::new(prefix.0.clone(), suffix.0.clone(), oracle.0.clone(), epsilon, shots, seed)
        .map_err(to_py)
}

/// Per-node masses `a[k]`, `abar[k]` and conditionals `a_k` for `A1 ⊗ A2`.
#[pyfunction]
fn probability_account<'py>(
    py: Python<'py>,
    prefix: &PyUnitary,
    suffix: &PyUnitary,
    oracle: &PyOracle,
) -> PyResult<Bound<'py, PyAny>> {
    let setup = distributed_setup(prefix, suffix, oracle, 0.5, 1, 0)?; // epsilon and shots are unused here
    json_to_py(py, &distributed::probability_account(&setup).map_err(to_py)?)
}

/// Full distributed run; returns the report as a dict.
#[pyfunction]
#[pyo3(signature = (prefix, suffix, oracle, epsilon, shots = 1000, seed = 0))]
fn dqaa_run<'py>(
    py: Python<'py>,
    prefix: &PyUnitary,
    suffix: &PyUnitary,
    oracle: &PyOracle,
    epsilon: f64,
    shots: u64,
    seed: u64,
) -> PyResult<Bound<'py, PyAny>> {
    let setup = distributed_setup(prefix, suffix, oracle, epsilon, shots, seed)?;
    json_to_py(py, &dqaa::dqaa_run(&setup).map_err(to_py)?)
}

/// Distributed run with Hadamard on both sides of the split at `j`.
#[pyfunction]
#[pyo3(signature = (oracle, j, epsilon, shots = 1000, seed = 0))]
fn dqaa_grover<'py>(
    py: Python<'py>,
    oracle: &PyOracle,
    j: usize,
    epsilon: f64,
    shots: u64,
    seed: u64,
) -> PyResult<Bound<'py, PyAny>> {
    let setup = dqaa::DistributedSetup::grover(oracle.0.clone(), j, epsilon, shots, seed).map_err(to_py)?;
    json_to_py(py, &dqaa::dqaa_run(&setup).map_err(to_py)?)
}

#[pymodule]
fn dqaa_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyStatevector>()?;
    m.add_class::<PyUnitary>()?;
    m.add_class::<PyOracle>()?;
    m.add_function(wrap_pyfunction!(chebyshev_t, m)?)?;
    m.add_function(wrap_pyfunction!(gamma_from, m)?)?;
    m.add_function(wrap_pyfunction!(phase_angles, m)?)?;
    m.add_function(wrap_pyfunction!(iterations_known, m)?)?;
    m.add_function(wrap_pyfunction!(iterations_fixed_point, m)?)?;
    m.add_function(wrap_pyfunction!(node_iterations, m)?)?;
    m.add_function(wrap_pyfunction!(combined_success, m)?)?;
    m.add_function(wrap_pyfunction!(initial_success_probability, m)?)?;
    m.add_function(wrap_pyfunction!(qaa_known, m)?)?;
    m.add_function(wrap_pyfunction!(fixed_point_run, m)?)?;
    m.add_function(wrap_pyfunction!(probability_account, m)?)?;
    m.add_function(wrap_pyfunction!(dqaa_run, m)?)?;
    m.add_function(wrap_pyfunction!(dqaa_grover, m)?)?;
    Ok(())
}
