//! Distributed amplitude amplification.
//!
//! The state preparation factors as `A = A1 ⊗ A2`, with `A1` on the leading
//! `j` qubits. The oracle is split on its `j`-bit prefix and each of the
//! `2^j` nodes runs fixed-point amplification of `f_k` under `A2` alone,
//! sharing one schedule whose length comes from the global success
//! probability `a`. Since some node has conditional success probability
//! `a_k >= a`, that node reaches the fixed-point bound, and so does the
//! combined probability `1 - prod(1 - P_k)`.
//!
//! Node `k` samples with seed `seed + k` (wrapping).

use serde::Serialize;

use crate::amplification::{iterations_fixed_point, run_schedule, AmplificationSetup};
use crate::bits::{format_bits, parse_bits};
use crate::error::{invalid, Error, Result};
use crate::oracle::BooleanOracle;
use crate::schedule::{check_epsilon, phase_angles, PhaseSchedule};
use crate::statevector::{zero_state, Histogram, Statevector, UnitaryOperator};

/// Version tag written into every serialized [`ExperimentReport`].
pub const REPORT_SCHEMA: &str = "dqaa-distributed-report/1";

/// Node masses below this are treated as an empty node.
const EMPTY_NODE_MASS: f64 = 1e-15;

/// Global success probability at or below this counts as "no target".
const ZERO_PROBABILITY: f64 = 1e-15;

/// How the shared iteration count is chosen.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
#[serde(tag = "rule", rename_all = "kebab-case")]
pub enum IterationRule {
    /// `l = ceil(ln(2/eps) / (2 sqrt(a)))` with `a` computed exactly.
    ExactA,
    /// Same formula with a caller-supplied `a`, which may be wrong.
    SuppliedA { a: f64 },
    /// `l = ceil(ln(2/eps) / (2 delta))` for a lower bound `delta` on `sqrt(a_k)`.
    Delta { delta: f64 },
}

#[derive(Clone, Debug)]
pub struct DistributedSetup {
    prefix_algorithm: UnitaryOperator,
    suffix_algorithm: UnitaryOperator,
    oracle: BooleanOracle,
    epsilon: f64,
    shots: u64,
    seed: u64,
    rule: IterationRule,
}

impl DistributedSetup {
    pub fn new(
        prefix_algorithm: UnitaryOperator,
        suffix_algorithm: UnitaryOperator,
        oracle: BooleanOracle,
        epsilon: f64,
        shots: u64,
        seed: u64,
    ) -> Result<Self> {
        if prefix_algorithm.n_qubits() + suffix_algorithm.n_qubits() != oracle.n_bits() {
            return Err(invalid(format!(
                "A1 ({} qubits) ⊗ A2 ({} qubits) does not match a {}-bit oracle",
                prefix_algorithm.n_qubits(),
                suffix_algorithm.n_qubits(),
                oracle.n_bits()
            )));
        }
        check_epsilon(epsilon)?;
        if shots == 0 {
            return Err(invalid("shots must be positive"));
        }
        Ok(Self {
            prefix_algorithm,
            suffix_algorithm,
            oracle,
            epsilon,
            shots,
            seed,
            rule: IterationRule::ExactA,
        })
    }

    /// Uniform `H^{⊗j} ⊗ H^{⊗(n-j)}` preparation (distributed Grover search).
    pub fn grover(oracle: BooleanOracle, j: usize, epsilon: f64, shots: u64, seed: u64) -> Result<Self> {
        let n = oracle.n_bits();
        if j == 0 || j >= n {
            return Err(invalid(format!("prefix width {j} must satisfy 1 <= j < {n}")));
        }
        Self::new(
            UnitaryOperator::hadamard(j)?,
            UnitaryOperator::hadamard(n - j)?,
            oracle,
            epsilon,
            shots,
            seed,
        )
    }

    pub fn with_rule(mut self, rule: IterationRule) -> Self {
        self.rule = rule;
        self
    }

    pub fn prefix_width(&self) -> usize {
        self.prefix_algorithm.n_qubits()
    }

    pub fn n_qubits(&self) -> usize {
        self.oracle.n_bits()
    }

    pub fn oracle(&self) -> &BooleanOracle {
        &self.oracle
    }

    pub fn prefix_algorithm(&self) -> &UnitaryOperator {
        &self.prefix_algorithm
    }

    pub fn suffix_algorithm(&self) -> &UnitaryOperator {
        &self.suffix_algorithm
    }

    pub fn epsilon(&self) -> f64 {
        self.epsilon
    }

    pub fn shots(&self) -> u64 {
        self.shots
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }

    pub fn rule(&self) -> IterationRule {
        self.rule
    }
}

/// Probability mass under one prefix.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct NodeMass {
    pub k: usize,
    pub prefix: String,
    /// Joint mass of targets with this prefix, `a[k]`.
    pub target_mass: f64,
    /// Joint mass of non-targets with this prefix, `ā[k]`.
    pub non_target_mass: f64,
    /// `a_k = a[k] / (a[k] + ā[k])`, or 0 for an empty node.
    pub conditional: f64,
}

/// Exact split of the global success probability across nodes.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ProbabilityAccount {
    pub a: f64,
    pub nodes: Vec<NodeMass>,
}

impl ProbabilityAccount {
    pub fn total_mass(&self) -> f64 {
        self.nodes.iter().map(|m| m.target_mass + m.non_target_mass).sum()
    }

    pub fn target_mass_sum(&self) -> f64 {
        self.nodes.iter().map(|m| m.target_mass).sum()
    }

    /// Node with the largest `a_k` (lowest index on ties).
    pub fn best_node(&self) -> &NodeMass {
        self.nodes
            .iter()
            .reduce(|best, m| if m.conditional > best.conditional { m } else { best })
            .expect("at least two nodes")
    }
}

pub fn probability_account(setup: &DistributedSetup) -> Result<ProbabilityAccount> {
    let j = setup.prefix_width();
    let n = setup.n_qubits();
    let prefix_state = zero_state(j)?.apply(&setup.prefix_algorithm)?;
    let suffix_state = zero_state(n - j)?.apply(&setup.suffix_algorithm)?;
    let joint = prefix_state.kron(&suffix_state)?;
    let width = 1usize << (n - j);
    let nodes: Vec<NodeMass> = joint
        .amplitudes()
        .chunks_exact(width)
        .enumerate()
        .map(|(k, block)| {
            let (mut target_mass, mut non_target_mass) = (0.0, 0.0);
            for (x, amp) in block.iter().enumerate() {
                if setup.oracle.is_marked(k * width + x) {
                    target_mass += amp.norm_sqr();
                } else {
                    non_target_mass += amp.norm_sqr();
                }
            }
            let denom = target_mass + non_target_mass;
            NodeMass {
                k,
                prefix: format_bits(k, j),
                target_mass,
                non_target_mass,
                conditional: if denom > EMPTY_NODE_MASS { target_mass / denom } else { 0.0 },
            }
        })
        .collect();
    let a = nodes.iter().map(|m| m.target_mass).sum();
    Ok(ProbabilityAccount { a, nodes })
}

/// Shared node iteration count `ceil(ln(2/eps) / (2 sqrt(a)))` for `a` in `(0, 1)`.
pub fn node_iterations(a: f64, epsilon: f64) -> Result<u64> {
    if !(a > 0.0 && a < 1.0) {
        return Err(invalid(format!("global success probability a = {a} must lie in (0, 1)")));
    }
    iterations_fixed_point(a.sqrt(), epsilon)
}

/// `1 - prod(1 - P_k)`, accumulated in log space when every `P_k < 0.5`.
pub fn combined_success(probabilities: &[f64]) -> f64 {
    let combined = if probabilities.iter().all(|&p| p < 0.5) {
        let log_fail: f64 = probabilities.iter().map(|&p| (-p).ln_1p()).sum();
        -log_fail.exp_m1()
    } else {
        1.0 - probabilities.iter().map(|&p| 1.0 - p).product::<f64>()
    };
    combined.clamp(0.0, 1.0)
}

/// Outcome of checking that some node has `a_k >= a`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct NodeBoundCheck {
    pub holds: bool,
    pub witness: usize,
    pub best_conditional: f64,
    pub a: f64,
}

/// Check that `max_k a_k >= a - 1e-9`, returning the arg-max node.
pub fn verify_node_bound(setup: &DistributedSetup) -> Result<NodeBoundCheck> {
    let account = probability_account(setup)?;
    if account.a <= ZERO_PROBABILITY {
        return Err(Error::NoTargets);
    }
    let best = account.best_node();
    Ok(NodeBoundCheck {
        holds: best.conditional >= account.a - 1e-9,
        witness: best.k,
        best_conditional: best.conditional,
        a: account.a,
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct NodeReport {
    pub k: usize,
    pub prefix: String,
    /// Exact probability that node `k` measures a marked suffix.
    pub exact_success: f64,
    pub histogram: Histogram,
    /// Distinct full bitstrings `prefix ∥ x_k` sampled by this node that
    /// the parent oracle accepts, sorted.
    pub verified_hits: Vec<String>,
    /// Number of shots whose outcome passed verification.
    pub verified_shots: u64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Winner {
    pub node: usize,
    pub bitstring: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct SetupEcho {
    pub n: usize,
    pub j: usize,
    pub epsilon: f64,
    pub shots: u64,
    pub seed: u64,
    pub iteration_rule: IterationRule,
    pub target_count: usize,
    pub oracle_truth_table_hex: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct ExperimentReport {
    pub schema: &'static str,
    pub setup: SetupEcho,
    pub l: u64,
    pub schedule: PhaseSchedule,
    pub account: ProbabilityAccount,
    pub nodes: Vec<NodeReport>,
    pub combined_success_exact: f64,
    pub target_found: bool,
    /// Lowest node index with a verified hit, then its smallest bitstring.
    pub winner: Option<Winner>,
}

impl ExperimentReport {
    pub fn to_json(&self) -> String {
        let mut text = serde_json::to_string_pretty(self).expect("report serializes");
        text.push('\n');
        text
    }

    pub fn node_success(&self) -> Vec<f64> {
        self.nodes.iter().map(|n| n.exact_success).collect()
    }
}

fn shared_iterations(setup: &DistributedSetup, a: f64) -> Result<u64> {
    match setup.rule {
        IterationRule::ExactA => {
            if a <= ZERO_PROBABILITY {
                return Err(Error::NoTargets);
            }
            // a = 1 sits outside node_iterations' domain but the bound is
            // still meaningful with delta = 1.
            if a < 1.0 {
                node_iterations(a, setup.epsilon)
            } else {
                iterations_fixed_point(1.0, setup.epsilon)
            }
        }
        IterationRule::SuppliedA { a: supplied } => {
            if !(supplied > 0.0 && supplied <= 1.0) {
                return Err(invalid(format!("supplied a = {supplied} must lie in (0, 1]")));
            }
            iterations_fixed_point(supplied.sqrt(), setup.epsilon)
        }
        IterationRule::Delta { delta } => iterations_fixed_point(delta, setup.epsilon),
    }
}

/// Run every node, verify samples against the full oracle and aggregate.
pub fn dqaa_run(setup: &DistributedSetup) -> Result<ExperimentReport> {
    dqaa_run_with_states(setup).map(|(report, _)| report)
}

/// [`dqaa_run`], also returning each node's final state in node order.
pub fn dqaa_run_with_states(setup: &DistributedSetup) -> Result<(ExperimentReport, Vec<Statevector>)> {
    let account = probability_account(setup)?;
    if setup.rule == IterationRule::ExactA && account.a <= ZERO_PROBABILITY {
        return Err(Error::NoTargets);
    }
    let l = shared_iterations(setup, account.a)?;
    let schedule = phase_angles(l, setup.epsilon)?;
    let j = setup.prefix_width();
    let split = setup.oracle.split(j)?;
    let width = 1usize << (setup.n_qubits() - j);

    let mut nodes = Vec::with_capacity(split.subs().len());
    let mut states = Vec::with_capacity(split.subs().len());
    for (k, sub) in split.subs().iter().enumerate() {
        let node_setup = AmplificationSetup::new(setup.suffix_algorithm.clone(), sub.clone())?;
        let run = run_schedule(&node_setup, &schedule, setup.shots, setup.seed.wrapping_add(k as u64))?;
        let histogram = run.histogram.expect("shots are positive");
        let mut verified_hits = Vec::new();
        let mut verified_shots = 0;
        for (suffix, &count) in &histogram.counts {
            let full = k * width + parse_bits(suffix, histogram.n_qubits)?;
            if setup.oracle.is_marked(full) {
                verified_hits.push(format_bits(full, setup.n_qubits()));
                verified_shots += count;
            }
        }
        nodes.push(NodeReport {
            k,
            prefix: format_bits(k, j),
            exact_success: run.exact_success,
            histogram,
            verified_hits,
            verified_shots,
        });
        states.push(run.final_state);
    }

    let combined_success_exact =
        combined_success(&nodes.iter().map(|n| n.exact_success).collect::<Vec<_>>());
    let winner = nodes.iter().find_map(|node| {
        node.verified_hits.first().map(|hit| Winner {
            node: node.k,
            bitstring: hit.clone(),
        })
    });
    let report = ExperimentReport {
        schema: REPORT_SCHEMA,
        setup: SetupEcho {
            n: setup.n_qubits(),
            j,
            epsilon: setup.epsilon,
            shots: setup.shots,
            seed: setup.seed,
            iteration_rule: setup.rule,
            target_count: setup.oracle.count_targets(),
            oracle_truth_table_hex: setup.oracle.to_hex(),
        },
        l,
        schedule,
        account,
        nodes,
        combined_success_exact,
        target_found: winner.is_some(),
        winner,
    };
    Ok((report, states))
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_complex::Complex64;

    fn example_oracle() -> BooleanOracle {
        BooleanOracle::from_targets(6, ["110110", "111111", "011001"]).unwrap()
    }

    fn example_setup() -> DistributedSetup {
        DistributedSetup::grover(example_oracle(), 2, 0.3, 1000, 7).unwrap()
    }

    /// Independent enumeration: a[k] as the explicit sum of |alpha_k beta_q|^2.
    fn enumerate_account(setup: &DistributedSetup) -> (f64, Vec<f64>) {
        let alpha = setup.prefix_algorithm().column(0);
        let beta = setup.suffix_algorithm().column(0);
        let mut a = 0.0;
        let mut conditional = Vec::new();
        for (k, ak) in alpha.iter().enumerate() {
            let mut mass = 0.0;
            for (q, bq) in beta.iter().enumerate() {
                let idx = (k << setup.suffix_algorithm().n_qubits()) | q;
                if setup.oracle().is_marked(idx) {
                    mass += (ak * bq).norm_sqr();
                }
            }
            a += mass;
            let node = ak.norm_sqr();
            conditional.push(if node > 1e-15 { mass / node } else { 0.0 });
        }
        (a, conditional)
    }

    #[test]
    fn example_account() {
        let setup = example_setup();
        let account = probability_account(&setup).unwrap();
        let (a, conditional) = enumerate_account(&setup);
        assert!((account.a - 3.0 / 64.0).abs() < 1e-12);
        assert!((account.a - a).abs() < 1e-12);
        let expected = [0.0, 1.0 / 16.0, 0.0, 2.0 / 16.0];
        for (m, (e, c)) in account.nodes.iter().zip(expected.iter().zip(&conditional)) {
            assert!((m.conditional - e).abs() < 1e-12);
            assert!((m.conditional - c).abs() < 1e-12);
        }
        assert!((account.total_mass() - 1.0).abs() < 1e-9);
        assert!((account.target_mass_sum() - account.a).abs() < 1e-9);
    }

    #[test]
    fn account_without_targets() {
        let setup = DistributedSetup::grover(BooleanOracle::from_indices(4, []).unwrap(), 2, 0.3, 10, 0).unwrap();
        let account = probability_account(&setup).unwrap();
        assert_eq!(account.a, 0.0);
        assert!(account.nodes.iter().all(|m| m.conditional == 0.0));
        assert!(matches!(dqaa_run(&setup), Err(Error::NoTargets)));
        assert!(matches!(verify_node_bound(&setup), Err(Error::NoTargets)));
    }

    #[test]
    fn account_concentrated_prefix() {
        // A1 = X ⊗ I puts all prefix amplitude on k* = 2 ("10").
        let x = UnitaryOperator::from_entries(
            2,
            vec![
                Complex64::new(0.0, 0.0),
                Complex64::new(1.0, 0.0),
                Complex64::new(1.0, 0.0),
                Complex64::new(0.0, 0.0),
            ],
        )
        .unwrap();
        let a1 = x.kron(&UnitaryOperator::identity(1).unwrap()).unwrap();
        let oracle = BooleanOracle::from_targets(4, ["1001", "1011", "0000"]).unwrap();
        let setup = DistributedSetup::new(a1, UnitaryOperator::hadamard(2).unwrap(), oracle, 0.3, 10, 0).unwrap();
        let account = probability_account(&setup).unwrap();
        for m in &account.nodes {
            if m.k == 2 {
                assert!((m.conditional - 0.5).abs() < 1e-12);
            } else {
                assert_eq!(m.target_mass + m.non_target_mass, 0.0);
                assert_eq!(m.conditional, 0.0);
            }
        }
        assert!((account.a - 0.5).abs() < 1e-12);
    }

    #[test]
    fn node_iterations_examples() {
        assert_eq!(node_iterations(3.0 / 64.0, 0.3).unwrap(), 5);
        assert_eq!(node_iterations(0.25, 0.3).unwrap(), 2);
        assert!(node_iterations(0.0, 0.3).is_err());
        assert!(node_iterations(1.0, 2.0 / std::f64::consts::E).is_err());
    }

    #[test]
    fn combined_success_examples() {
        assert!((combined_success(&[0.0, 0.0, 0.95, 0.0]) - 0.95).abs() < 1e-15);
        assert_eq!(combined_success(&[0.0, 0.0, 0.0]), 0.0);
        assert!((combined_success(&[0.5, 0.5]) - 0.75).abs() < 1e-15);
        assert!((combined_success(&[0.1, 0.2]) - 0.28).abs() < 1e-15);
        assert!((combined_success(&[1e-20, 1e-20]) - 2e-20).abs() < 1e-34);
    }

    #[test]
    fn node_bound_witness() {
        let check = verify_node_bound(&example_setup()).unwrap();
        assert!(check.holds);
        assert_eq!(check.witness, 3);
        assert!((check.best_conditional - 0.125).abs() < 1e-12);
    }

    #[test]
    fn grover_experiment() {
        let report = dqaa_run(&example_setup()).unwrap();
        assert_eq!(report.l, 5);
        let p = report.node_success();
        assert!(p[1] >= 0.91 && p[3] >= 0.91, "{p:?}");
        assert_eq!(p[0], 0.0);
        assert_eq!(p[2], 0.0);
        let winner = report.winner.clone().unwrap();
        assert!(example_oracle().evaluate(&winner.bitstring).unwrap());
        assert_eq!(winner.node, 1);
        for node in &report.nodes {
            assert_eq!(node.histogram.counts.values().sum::<u64>(), 1000);
            for hit in &node.verified_hits {
                assert!(example_oracle().evaluate(hit).unwrap());
                assert!(hit.starts_with(&node.prefix));
            }
        }
        let expected = combined_success(&p);
        assert!((report.combined_success_exact - expected).abs() < 1e-12);
    }

    #[test]
    fn single_target_collapses_to_one_node() {
        let oracle = BooleanOracle::from_targets(5, ["10110"]).unwrap();
        let report = dqaa_run(&DistributedSetup::grover(oracle, 2, 0.3, 100, 1).unwrap()).unwrap();
        let p = report.node_success();
        assert!(p[2] >= 0.91);
        for (k, pk) in p.iter().enumerate() {
            if k != 2 {
                assert_eq!(*pk, 0.0);
            }
        }
        assert!((report.combined_success_exact - p[2]).abs() < 1e-12);
    }

    #[test]
    fn always_true_oracle() {
        let oracle = BooleanOracle::from_predicate(4, |_| true).unwrap();
        let report = dqaa_run(&DistributedSetup::grover(oracle, 1, 0.3, 20, 1).unwrap()).unwrap();
        assert!(report.combined_success_exact > 1.0 - 1e-9);
        assert!(report.target_found);
    }

    #[test]
    fn iteration_rules() {
        let setup = example_setup().with_rule(IterationRule::Delta { delta: 0.25 });
        assert_eq!(dqaa_run(&setup).unwrap().l, 4);
        let setup = example_setup().with_rule(IterationRule::SuppliedA { a: 0.25 });
        assert_eq!(dqaa_run(&setup).unwrap().l, 2);
        let setup = example_setup().with_rule(IterationRule::SuppliedA { a: 0.0 });
        assert!(dqaa_run(&setup).is_err());
    }

    #[test]
    fn deterministic_reports() {
        let a = dqaa_run(&example_setup()).unwrap().to_json();
        let b = dqaa_run(&example_setup()).unwrap().to_json();
        assert_eq!(a, b);
        let other = DistributedSetup::grover(example_oracle(), 2, 0.3, 1000, 8).unwrap();
        assert_ne!(a, dqaa_run(&other).unwrap().to_json());
    }

    #[test]
    fn setup_validation() {
        let h2 = UnitaryOperator::hadamard(2).unwrap();
        assert!(DistributedSetup::new(h2.clone(), h2.clone(), example_oracle(), 0.3, 10, 0).is_err());
        assert!(DistributedSetup::grover(example_oracle(), 6, 0.3, 10, 0).is_err());
        assert!(DistributedSetup::grover(example_oracle(), 2, 1.3, 10, 0).is_err());
        assert!(DistributedSetup::grover(example_oracle(), 2, 0.3, 0, 0).is_err());
    }
}
