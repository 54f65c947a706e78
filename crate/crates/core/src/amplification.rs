//! Amplitude amplification with a known success probability, and the
//! fixed-point variant driven by a [`PhaseSchedule`].
//!
//! Phase conventions: `S_f(varphi)` multiplies marked states by
//! `e^{+i varphi}`, `S_0(phi)` multiplies `|0...0>` by `e^{-i phi}`, and the
//! iterate is `Q(phi, varphi) = -A S_0(phi) A^dagger S_f(varphi)`, leading
//! sign included.
//!
//! Runs never build `Q` densely. With `s = A|0>`, `A S_0(phi) A^dagger` is the
//! rank-one update `I + (e^{-i phi} - 1)|s><s|`, so an iteration costs
//! `O(2^n)`. The dense constructors below exist for operator-level checks.

use num_complex::Complex64;
use serde::Serialize;

use crate::error::{invalid, Error, Result};
use crate::oracle::BooleanOracle;
use crate::schedule::{check_epsilon, phase_angles, PhaseSchedule};
use crate::statevector::{zero_state, Histogram, Statevector, UnitaryOperator};

/// Upper bound on the iteration count of a single run.
pub const DEFAULT_ITERATION_CAP: u64 = 100_000;

/// Tolerance when checking a caller-supplied success probability.
pub const PROBABILITY_CHECK_TOLERANCE: f64 = 1e-9;

/// A state-preparation unitary together with the oracle it is searched against.
#[derive(Clone, Debug)]
pub struct AmplificationSetup {
    algorithm: UnitaryOperator,
    oracle: BooleanOracle,
    prepared: Statevector,
}

impl AmplificationSetup {
    pub fn new(algorithm: UnitaryOperator, oracle: BooleanOracle) -> Result<Self> {
        if algorithm.n_qubits() != oracle.n_bits() {
            return Err(invalid(format!(
                "algorithm acts on {} qubits but the oracle takes {} bits",
                algorithm.n_qubits(),
                oracle.n_bits()
            )));
        }
        let prepared = zero_state(algorithm.n_qubits())?.apply(&algorithm)?;
        Ok(Self {
            algorithm,
            oracle,
            prepared,
        })
    }

    pub fn algorithm(&self) -> &UnitaryOperator {
        &self.algorithm
    }

    pub fn oracle(&self) -> &BooleanOracle {
        &self.oracle
    }

    pub fn n_qubits(&self) -> usize {
        self.oracle.n_bits()
    }

    /// `A|0...0>`.
    pub fn prepared_state(&self) -> &Statevector {
        &self.prepared
    }

    /// Apply `Q(phi, varphi)` in place.
    fn iterate(&self, state: &mut Statevector, phi: f64, varphi: f64) {
        let oracle = &self.oracle;
        state.phase_in_place(|x| oracle.is_marked(x), varphi);
        let s = self.prepared.amplitudes();
        let overlap: Complex64 = s
            .iter()
            .zip(state.amplitudes())
            .map(|(a, b)| a.conj() * b)
            .sum();
        let coeff = (Complex64::from_polar(1.0, -phi) - 1.0) * overlap;
        for (amp, basis) in state.amplitudes_mut().iter_mut().zip(s) {
            *amp = -(*amp + coeff * basis);
        }
    }
}

/// Outcome of one amplification run.
#[derive(Clone, Debug)]
pub struct RunResult {
    pub final_state: Statevector,
    pub iterations: u64,
    /// Exact probability that measuring `final_state` yields a marked input.
    pub exact_success: f64,
    /// Present when shots were requested.
    pub histogram: Option<Histogram>,
    /// Number of sampled shots that landed on a marked input.
    pub sampled_hits: u64,
}

/// Summary view of a [`RunResult`] without the state.
#[derive(Clone, Debug, Serialize)]
pub struct RunSummary {
    pub iterations: u64,
    pub exact_success: f64,
    pub sampled_hits: u64,
}

impl RunResult {
    pub fn summary(&self) -> RunSummary {
        RunSummary {
            iterations: self.iterations,
            exact_success: self.exact_success,
            sampled_hits: self.sampled_hits,
        }
    }
}

/// Oracle phase `S_f(varphi)` as a dense diagonal operator.
pub fn s_f(f: &BooleanOracle, varphi: f64) -> UnitaryOperator {
    let marked = Complex64::from_polar(1.0, varphi);
    UnitaryOperator::diagonal_raw(
        f.table()
            .iter()
            .map(|&b| if b { marked } else { Complex64::new(1.0, 0.0) })
            .collect(),
    )
}

/// Zero-state phase `S_0(phi)`: `e^{-i phi}` on `|0...0>`.
pub fn s_0(n: usize, phi: f64) -> Result<UnitaryOperator> {
    let mut diag = vec![Complex64::new(1.0, 0.0); zero_state(n)?.dim()];
    diag[0] = Complex64::from_polar(1.0, -phi);
    Ok(UnitaryOperator::diagonal_raw(diag))
}

/// `S_d(phi) = -A S_0(phi) A^dagger`.
pub fn diffusion(setup: &AmplificationSetup, phi: f64) -> Result<UnitaryOperator> {
    let a = setup.algorithm();
    Ok(a
        .compose(&s_0(setup.n_qubits(), phi)?)?
        .compose(&a.adjoint())?
        .scaled(Complex64::new(-1.0, 0.0)))
}

/// Dense `Q(phi, varphi) = -A S_0(phi) A^dagger S_f(varphi)`.
pub fn generalized_q(setup: &AmplificationSetup, phi: f64, varphi: f64) -> Result<UnitaryOperator> {
    let a = setup.algorithm();
    let product = a
        .compose(&s_0(setup.n_qubits(), phi)?)?
        .compose(&a.adjoint())?
        .compose(&s_f(setup.oracle(), varphi))?;
    Ok(product.scaled(Complex64::new(-1.0, 0.0)))
}

/// Probability that measuring `A|0...0>` yields a marked input.
pub fn initial_success_probability(setup: &AmplificationSetup) -> f64 {
    let oracle = setup.oracle();
    setup.prepared_state().probability_of(|x| oracle.is_marked(x))
}

/// `floor(pi / (4 arcsin(sqrt(a))))` for `a` in `(0, 1]`; `a = 1` gives 0.
pub fn iterations_known(a: f64) -> Result<u64> {
    if !(a > 0.0 && a <= 1.0) {
        return Err(invalid(format!("success probability a = {a} must lie in (0, 1]")));
    }
    let theta = a.sqrt().asin();
    // Exact integer ratios (a = 1/2) land a few ulps below the integer.
    Ok((std::f64::consts::PI / (4.0 * theta) + 1e-12).floor() as u64)
}

/// `ceil(ln(2/epsilon) / (2 delta))` with the default cap.
pub fn iterations_fixed_point(delta: f64, epsilon: f64) -> Result<u64> {
    iterations_fixed_point_capped(delta, epsilon, DEFAULT_ITERATION_CAP)
}

/// As [`iterations_fixed_point`] with an explicit cap. `delta = 1` is
/// accepted (the lower bound on `a` may be tight at certainty).
pub fn iterations_fixed_point_capped(delta: f64, epsilon: f64, cap: u64) -> Result<u64> {
    if !(delta > 0.0 && delta <= 1.0) {
        return Err(invalid(format!("delta = {delta} must lie in (0, 1]")));
    }
    check_epsilon(epsilon)?;
    let l = ((2.0 / epsilon).ln() / (2.0 * delta) - 1e-12).ceil().max(1.0);
    if !l.is_finite() || l > cap as f64 {
        return Err(Error::Resource(format!(
            "fixed-point search needs {l} iterations, cap is {cap}"
        )));
    }
    Ok(l as u64)
}

fn finish(
    setup: &AmplificationSetup,
    final_state: Statevector,
    iterations: u64,
    shots: u64,
    seed: u64,
) -> Result<RunResult> {
    let oracle = setup.oracle();
    let exact_success = final_state.probability_of(|x| oracle.is_marked(x));
    let (histogram, sampled_hits) = if shots > 0 {
        let samples = final_state.sample_indices(shots, seed)?;
        let hits = samples.iter().filter(|&&x| oracle.is_marked(x)).count() as u64;
        (Some(Histogram::from_indices(final_state.n_qubits(), &samples)), hits)
    } else {
        (None, 0)
    };
    Ok(RunResult {
        final_state,
        iterations,
        exact_success,
        histogram,
        sampled_hits,
    })
}

/// Known-probability amplification: `Q(pi, pi)^m A|0>` with
/// `m = iterations_known(a)`. The supplied `a` must match the true initial
/// success probability; see [`qaa_known_unchecked`] to skip that check.
pub fn qaa_known(setup: &AmplificationSetup, a: f64, shots: u64, seed: u64) -> Result<RunResult> {
    let computed = initial_success_probability(setup);
    if !(a > 0.0) {
        return Err(invalid(format!("success probability a = {a} must be positive")));
    }
    if (computed - a).abs() > PROBABILITY_CHECK_TOLERANCE {
        return Err(Error::Consistency {
            supplied: a,
            computed,
        });
    }
    qaa_known_unchecked(setup, a, shots, seed)
}

/// [`qaa_known`] trusting the caller's `a`, for studying mis-specified inputs.
pub fn qaa_known_unchecked(
    setup: &AmplificationSetup,
    a: f64,
    shots: u64,
    seed: u64,
) -> Result<RunResult> {
    let m = iterations_known(a)?;
    if m > DEFAULT_ITERATION_CAP {
        return Err(Error::Resource(format!(
            "{m} iterations exceeds the cap of {DEFAULT_ITERATION_CAP}"
        )));
    }
    let pi = std::f64::consts::PI;
    let mut state = setup.prepared_state().clone();
    for _ in 0..m {
        setup.iterate(&mut state, pi, pi);
    }
    finish(setup, state, m, shots, seed)
}

/// Fixed-point amplification with `l = iterations_fixed_point(delta, epsilon)`.
pub fn fixed_point_run(
    setup: &AmplificationSetup,
    delta: f64,
    epsilon: f64,
    shots: u64,
    seed: u64,
) -> Result<RunResult> {
    let l = iterations_fixed_point(delta, epsilon)?;
    run_schedule(setup, &phase_angles(l, epsilon)?, shots, seed)
}

/// Apply `Q(phi_1, varphi_1)` first, then `Q(phi_2, varphi_2)`, and so on.
pub fn run_schedule(
    setup: &AmplificationSetup,
    schedule: &PhaseSchedule,
    shots: u64,
    seed: u64,
) -> Result<RunResult> {
    let mut state = setup.prepared_state().clone();
    for pair in &schedule.pairs {
        setup.iterate(&mut state, pair.phi, pair.varphi);
    }
    finish(setup, state, schedule.l, shots, seed)
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;
    use std::f64::consts::PI;

    fn grover_setup(n: usize, targets: &[usize]) -> AmplificationSetup {
        AmplificationSetup::new(
            UnitaryOperator::hadamard(n).unwrap(),
            BooleanOracle::from_indices(n, targets.iter().copied()).unwrap(),
        )
        .unwrap()
    }

    fn example_setup() -> AmplificationSetup {
        grover_setup(6, &[0b110110, 0b111111, 0b011001])
    }

    #[test]
    fn s_f_examples() {
        let f = BooleanOracle::from_indices(3, [1, 6]).unwrap();
        let flip = s_f(&f, PI);
        for i in 0..8 {
            let expected = if f.is_marked(i) { -1.0 } else { 1.0 };
            assert!((flip.get(i, i) - expected).norm() < 1e-15);
        }
        assert!(s_f(&f, 0.0).max_abs_diff(&UnitaryOperator::identity(3).unwrap()) == 0.0);
        let product = s_f(&f, 0.7).compose(&s_f(&f, -0.7)).unwrap();
        assert!(product.max_abs_diff(&UnitaryOperator::identity(3).unwrap()) < 1e-15);
    }

    #[test]
    fn s_0_examples() {
        let op = s_0(1, PI).unwrap();
        assert!((op.get(0, 0) + 1.0).norm() < 1e-15);
        assert_eq!(op.get(1, 1), Complex64::new(1.0, 0.0));
        assert_eq!(s_0(2, 0.0).unwrap(), UnitaryOperator::identity(2).unwrap());
        // e^{-i phi} sign convention
        let q = s_0(1, 0.3).unwrap().get(0, 0);
        assert!((q - Complex64::from_polar(1.0, -0.3)).norm() < 1e-15);

        let f = BooleanOracle::from_indices(2, [0, 3]).unwrap();
        let (a, b) = (s_0(2, 1.1).unwrap(), s_f(&f, -0.4));
        assert!(a.compose(&b).unwrap().max_abs_diff(&b.compose(&a).unwrap()) < 1e-15);
    }

    #[test]
    fn generalized_q_special_cases() {
        let setup = example_setup();
        let q = generalized_q(&setup, 0.0, 0.0).unwrap();
        let minus_id = UnitaryOperator::identity(6).unwrap().scaled(Complex64::new(-1.0, 0.0));
        assert!(q.max_abs_diff(&minus_id) < 1e-12);

        let q = generalized_q(&setup, 0.4, -1.3).unwrap();
        let factored = diffusion(&setup, 0.4)
            .unwrap()
            .compose(&s_f(setup.oracle(), -1.3))
            .unwrap();
        assert!(q.max_abs_diff(&factored) < 1e-12);
        assert!(q.unitarity_deviation() < 1e-9);
    }

    #[test]
    fn iterate_matches_dense_operator() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let setup = AmplificationSetup::new(
            UnitaryOperator::random(4, &mut rng).unwrap(),
            BooleanOracle::from_indices(4, [2, 9, 13]).unwrap(),
        )
        .unwrap();
        let (phi, varphi) = (-2.1, 0.8);
        let dense = generalized_q(&setup, phi, varphi).unwrap();
        let mut fast = setup.prepared_state().clone();
        let mut slow = setup.prepared_state().clone();
        for _ in 0..3 {
            setup.iterate(&mut fast, phi, varphi);
            slow = slow.apply(&dense).unwrap();
        }
        for (a, b) in fast.amplitudes().iter().zip(slow.amplitudes()) {
            assert!((a - b).norm() < 1e-12);
        }
    }

    #[test]
    fn iterations_known_examples() {
        assert_eq!(iterations_known(3.0 / 64.0).unwrap(), 3);
        assert_eq!(iterations_known(0.25).unwrap(), 1);
        assert_eq!(iterations_known(0.5).unwrap(), 1);
        assert_eq!(iterations_known(1.0).unwrap(), 0);
        assert!(iterations_known(0.0).is_err());
        assert!(iterations_known(1.5).is_err());
    }

    #[test]
    fn qaa_known_grover_case() {
        // sin^2(7 theta), theta = arcsin(sqrt(3/64)), at 50 digits.
        let closed_form = 0.998_138_825_409_114_4;
        let run = qaa_known(&example_setup(), 3.0 / 64.0, 200, 1).unwrap();
        assert_eq!(run.iterations, 3);
        assert!((run.exact_success - closed_form).abs() < 1e-12);
        assert!(run.exact_success >= 0.953125);
        let hist = run.histogram.unwrap();
        assert_eq!(hist.shots, 200);
        assert_eq!(hist.counts.values().sum::<u64>(), 200);
    }

    #[test]
    fn qaa_known_half() {
        let run = qaa_known(&grover_setup(1, &[1]), 0.5, 0, 0).unwrap();
        assert_eq!(run.iterations, 1);
        assert!(run.exact_success >= 0.5 - 1e-12);
        assert!(run.histogram.is_none());
    }

    #[test]
    fn qaa_known_errors() {
        let empty = grover_setup(3, &[]);
        assert!(qaa_known(&empty, 0.0, 0, 0).is_err());
        assert!(matches!(qaa_known(&empty, 0.125, 0, 0), Err(Error::Consistency { .. })));
        assert!(matches!(
            qaa_known(&example_setup(), 0.1, 0, 0),
            Err(Error::Consistency { .. })
        ));
        // deliberate mis-specification
        let run = qaa_known_unchecked(&example_setup(), 0.25, 0, 0).unwrap();
        assert_eq!(run.iterations, 1);
    }

    #[test]
    fn iterations_fixed_point_examples() {
        assert_eq!(iterations_fixed_point((3.0f64 / 64.0).sqrt(), 0.3).unwrap(), 5);
        assert_eq!(iterations_fixed_point(1.0, 2.0 / std::f64::consts::E).unwrap(), 1);
        assert!(matches!(iterations_fixed_point(1e-9, 0.3), Err(Error::Resource(_))));
        assert!(iterations_fixed_point(0.0, 0.3).is_err());
        assert!(iterations_fixed_point(0.5, 1.0).is_err());
        assert!(iterations_fixed_point(0.5, 0.0).is_err());
    }

    #[test]
    fn fixed_point_grover_case() {
        let run = fixed_point_run(&example_setup(), (3.0f64 / 64.0).sqrt(), 0.3, 0, 0).unwrap();
        assert_eq!(run.iterations, 5);
        assert!(run.exact_success >= 0.91);
    }

    #[test]
    fn fixed_point_weak_bound_and_no_targets() {
        let run = fixed_point_run(&example_setup(), (3.0f64 / 64.0).sqrt(), 0.999, 0, 0).unwrap();
        assert!(run.exact_success >= 1.0 - 0.999f64.powi(2));
        let run = fixed_point_run(&grover_setup(4, &[]), 0.25, 0.3, 50, 3).unwrap();
        assert_eq!(run.exact_success, 0.0);
        assert_eq!(run.sampled_hits, 0);
    }

    #[test]
    fn initial_probability_examples() {
        assert!((initial_success_probability(&example_setup()) - 3.0 / 64.0).abs() < 1e-15);
        assert_eq!(initial_success_probability(&grover_setup(6, &[])), 0.0);
        let all: Vec<usize> = (0..64).collect();
        assert!((initial_success_probability(&grover_setup(6, &all)) - 1.0).abs() < 1e-12);
    }

    #[test]
    fn setup_dimension_mismatch() {
        let err = AmplificationSetup::new(
            UnitaryOperator::hadamard(3).unwrap(),
            BooleanOracle::from_indices(4, [1]).unwrap(),
        );
        assert!(err.is_err());
    }
}
