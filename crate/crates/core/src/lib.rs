//! Statevector simulation of quantum amplitude amplification, fixed-point
//! amplitude amplification with Chebyshev phase schedules, and its
//! distributed variant in which a Boolean oracle is split on a qubit prefix
//! and searched by independent simulated nodes.

pub mod amplification;
pub mod bits;
pub mod cli;
pub mod distributed;
pub mod error;
pub mod oracle;
pub mod schedule;
pub mod statevector;

pub use amplification::{
    diffusion, fixed_point_run, generalized_q, initial_success_probability, iterations_fixed_point,
    iterations_known, qaa_known, qaa_known_unchecked, run_schedule, s_0, s_f, AmplificationSetup,
    RunResult,
};
pub use distributed::{
    combined_success, dqaa_run, dqaa_run_with_states, node_iterations, probability_account, verify_node_bound,
    DistributedSetup, ExperimentReport, IterationRule, ProbabilityAccount,
};
pub use error::{Error, Result};
pub use oracle::{BooleanOracle, OracleSplit};
pub use schedule::{chebyshev_t, gamma_from, phase_angles, PhaseSchedule};
pub use statevector::{kron, zero_state, Histogram, Statevector, UnitaryOperator, MAX_QUBITS};
