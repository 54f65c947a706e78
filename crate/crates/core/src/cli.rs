//! Experiment runner behind the `dqaa` binary.
//!
//! A [`RunConfig`] is read from a TOML file or a built-in preset, then
//! overridden field by field from command-line flags. [`run`] executes the
//! selected mode and writes its artifacts in one pass at the end:
//!
//! * `report.json` (format `json`): versioned report document;
//! * `histogram.csv` or `node_<k>_histogram.csv` (format `csv`): header
//!   `bitstring,count,exact_probability`, one row per basis state sorted by
//!   bitstring, probabilities at 12 significant digits;
//! * `summary.csv` (format `csv`, distributed mode): per-node outcome counts;
//! * `summary.txt` (format `text`): human-readable summary.
//!
//! Algorithm specs are `uniform-hadamard`, `identity`, or `file:<path>` for a
//! JSON matrix `{"dim": d, "entries": [[re, im], ...]}` in row-major order.

use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::amplification::{
    initial_success_probability, iterations_fixed_point, qaa_known,
    qaa_known_unchecked, run_schedule, AmplificationSetup, RunResult,
};
use crate::bits::format_bits;
use crate::distributed::{dqaa_run_with_states, DistributedSetup, ExperimentReport, IterationRule};
use crate::error::{Error, Result};
use crate::oracle::BooleanOracle;
use crate::schedule::{phase_angles, PhaseSchedule};
use crate::statevector::{Histogram, Statevector, UnitaryOperator};

/// Version tag of the single-register (qaa / fixed-point) report.
pub const SINGLE_REPORT_SCHEMA: &str = "dqaa-single-report/1";

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "kebab-case")]
pub enum Mode {
    Qaa,
    FixedPoint,
    Distributed,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Format {
    Json,
    Csv,
    Text,
}

impl std::str::FromStr for Format {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "json" => Ok(Format::Json),
            "csv" => Ok(Format::Csv),
            "text" => Ok(Format::Text),
            other => Err(Error::InvalidArgument(format!("unknown output format {other:?}"))),
        }
    }
}

/// A run description. Every field is optional so that configs, presets and
/// flags can be layered; [`RunConfig::validate`] checks what each mode needs.
#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RunConfig {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub mode: Option<Mode>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub n: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub j: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub targets: Option<Vec<String>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub oracle_file: Option<PathBuf>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub predicate: Option<String>,
    /// Whole-register algorithm; in distributed mode a built-in name here
    /// also supplies both factors.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub algorithm: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub prefix_algorithm: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub suffix_algorithm: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub epsilon: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub delta: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub a: Option<f64>,
    /// Skip the consistency check on a supplied `a` (qaa mode).
    #[serde(skip_serializing_if = "Option::is_none")]
    pub trust_a: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub shots: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub out: Option<PathBuf>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub formats: Option<Vec<Format>>,
}

impl RunConfig {
    pub fn from_toml(text: &str) -> Result<Self> {
        toml::from_str(text).map_err(|e| Error::Parse(format!("run config: {e}")))
    }

    pub fn load(path: &Path) -> Result<Self> {
        Self::from_toml(&std::fs::read_to_string(path)?)
    }

    pub fn to_toml(&self) -> String {
        toml::to_string(self).expect("run config serializes")
    }

    /// Overlay every field that `other` sets. Oracle sources are exclusive:
    /// setting any one of them clears the others.
    pub fn merge(&mut self, other: RunConfig) {
        if other.targets.is_some() || other.oracle_file.is_some() || other.predicate.is_some() {
            self.targets = None;
            self.oracle_file = None;
            self.predicate = None;
        }
        macro_rules! take {
            ($($field:ident),*) => {$(
                if other.$field.is_some() {
                    self.$field = other.$field;
                }
            )*};
        }
        take!(
            mode, n, j, targets, oracle_file, predicate, algorithm, prefix_algorithm,
            suffix_algorithm, epsilon, delta, a, trust_a, shots, seed, out, formats
        );
    }

    /// Check mode-specific requirements and build the oracle.
    pub fn validate(&self) -> Result<ValidatedRun> {
        let mode = self.mode.ok_or_else(|| usage("`mode` is required"))?;
        let n = self.n.ok_or_else(|| usage("`n` is required"))?;
        let shots = self.shots.unwrap_or(1000);
        if shots == 0 {
            return Err(usage("`shots` must be positive"));
        }
        let oracle = self.build_oracle(n)?;
        if let Some(eps) = self.epsilon {
            if !(eps > 0.0 && eps < 1.0) {
                return Err(usage(format!("epsilon = {eps} must lie in (0, 1)")));
            }
        }
        match mode {
            Mode::Qaa => {}
            Mode::FixedPoint => {
                self.epsilon.ok_or_else(|| usage("fixed-point mode needs `epsilon`"))?;
            }
            Mode::Distributed => {
                self.epsilon.ok_or_else(|| usage("distributed mode needs `epsilon`"))?;
                let j = self.j.ok_or_else(|| usage("distributed mode needs `j`"))?;
                if j == 0 || j >= n {
                    return Err(usage(format!("j = {j} must satisfy 1 <= j < n = {n}")));
                }
            }
        }
        Ok(ValidatedRun {
            mode,
            n,
            shots,
            seed: self.seed.unwrap_or(0),
            oracle,
            formats: self
                .formats
                .clone()
                .unwrap_or_else(|| vec![Format::Json, Format::Csv, Format::Text]),
            out: self.out.clone().unwrap_or_else(|| PathBuf::from("dqaa-out")),
        })
    }

    fn build_oracle(&self, n: usize) -> Result<BooleanOracle> {
        let sources = [
            self.targets.is_some(),
            self.oracle_file.is_some(),
            self.predicate.is_some(),
        ];
        match sources.iter().filter(|&&s| s).count() {
            0 => return Err(usage("an oracle source (targets, oracle_file or predicate) is required")),
            1 => {}
            _ => return Err(usage("give only one of targets, oracle_file or predicate")),
        }
        let oracle = if let Some(targets) = &self.targets {
            BooleanOracle::from_targets(n, targets)?
        } else if let Some(path) = &self.oracle_file {
            BooleanOracle::load(path)?
        } else {
            builtin_predicate(self.predicate.as_deref().unwrap_or_default(), n)?
        };
        if oracle.n_bits() != n {
            return Err(usage(format!(
                "oracle has {} input bits but n = {n}",
                oracle.n_bits()
            )));
        }
        Ok(oracle)
    }

    fn algorithm_spec(&self) -> &str {
        self.algorithm.as_deref().unwrap_or("uniform-hadamard")
    }
}

fn usage(msg: impl Into<String>) -> Error {
    Error::InvalidArgument(msg.into())
}

/// Names accepted by the `predicate` oracle source.
pub const PREDICATES: [&str; 5] = ["empty", "all", "parity", "palindrome", "zero"];

fn builtin_predicate(name: &str, n: usize) -> Result<BooleanOracle> {
    match name {
        "empty" => BooleanOracle::from_predicate(n, |_| false),
        "all" => BooleanOracle::from_predicate(n, |_| true),
        "parity" => BooleanOracle::from_predicate(n, |x| x.count_ones() % 2 == 1),
        "palindrome" => BooleanOracle::from_predicate(n, |x| {
            let s = format_bits(x, n);
            s.chars().eq(s.chars().rev())
        }),
        "zero" => BooleanOracle::from_predicate(n, |x| x == 0),
        other => Err(usage(format!(
            "unknown predicate {other:?}; known: {}",
            PREDICATES.join(", ")
        ))),
    }
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct MatrixFile {
    dim: usize,
    entries: Vec<Complex64>,
}

/// Resolve an algorithm spec to a unitary on `n` qubits.
pub fn resolve_algorithm(spec: &str, n: usize) -> Result<UnitaryOperator> {
    let op = match spec {
        "uniform-hadamard" => UnitaryOperator::hadamard(n)?,
        "identity" => UnitaryOperator::identity(n)?,
        other => {
            let path = other.strip_prefix("file:").ok_or_else(|| {
                usage(format!(
                    "unknown algorithm {other:?}; use uniform-hadamard, identity or file:<path>"
                ))
            })?;
            let text = std::fs::read_to_string(path)?;
            let file: MatrixFile = serde_json::from_str(&text)
                .map_err(|e| Error::Parse(format!("matrix file {path}: {e}")))?;
            UnitaryOperator::from_entries(file.dim, file.entries).map_err(|e| match e {
                Error::InvalidArgument(msg) => Error::Parse(format!("matrix file {path}: {msg}")),
                other => other,
            })?
        }
    };
    if op.n_qubits() != n {
        return Err(usage(format!(
            "algorithm {spec:?} acts on {} qubits, expected {n}",
            op.n_qubits()
        )));
    }
    Ok(op)
}

/// A config that passed validation.
#[derive(Clone, Debug)]
pub struct ValidatedRun {
    pub mode: Mode,
    pub n: usize,
    pub shots: u64,
    pub seed: u64,
    pub oracle: BooleanOracle,
    pub formats: Vec<Format>,
    pub out: PathBuf,
}

/// Built-in run configurations.
pub fn preset(name: &str) -> Option<RunConfig> {
    let example_targets = || Some(vec!["110110".into(), "111111".into(), "011001".into()]);
    let base = RunConfig {
        shots: Some(1000),
        seed: Some(2024),
        algorithm: Some("uniform-hadamard".into()),
        out: Some(PathBuf::from(format!("dqaa-out/{name}"))),
        ..RunConfig::default()
    };
    match name {
        "paper-fig4" => Some(RunConfig {
            mode: Some(Mode::Distributed),
            n: Some(6),
            j: Some(2),
            targets: example_targets(),
            epsilon: Some(0.3),
            ..base
        }),
        "qaa-quarter" => Some(RunConfig {
            mode: Some(Mode::Qaa),
            n: Some(2),
            targets: Some(vec!["11".into()]),
            a: Some(0.25),
            ..base
        }),
        "fixed-point-grover" => Some(RunConfig {
            mode: Some(Mode::FixedPoint),
            n: Some(6),
            targets: example_targets(),
            epsilon: Some(0.3),
            ..base
        }),
        _ => None,
    }
}

pub const PRESETS: [(&str, &str); 3] = [
    (
        "paper-fig4",
        "distributed Grover search, n=6, j=2, eps=0.3, targets {110110,111111,011001}, 1000 shots",
    ),
    ("qaa-quarter", "known-probability amplification, n=2, one target, a=1/4 (one iteration)"),
    (
        "fixed-point-grover",
        "fixed-point search, n=6, eps=0.3, targets {110110,111111,011001}, delta=sqrt(a)",
    ),
];

/// Report for the single-register modes.
#[derive(Clone, Debug, Serialize)]
pub struct SingleReport {
    pub schema: &'static str,
    pub mode: Mode,
    pub n: usize,
    pub algorithm: String,
    pub shots: u64,
    pub seed: u64,
    pub target_count: usize,
    pub oracle_truth_table_hex: String,
    pub initial_success_probability: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub supplied_a: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub epsilon: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub delta: Option<f64>,
    pub iterations: u64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub schedule: Option<PhaseSchedule>,
    /// Guaranteed lower bound on `exact_success`: `max(1-a, a)` for qaa,
    /// `1 - eps^2` for fixed-point when `delta^2 <= a`.
    pub guaranteed_bound: f64,
    pub exact_success: f64,
    pub histogram: Histogram,
    pub verified_hits: Vec<String>,
    pub verified_shots: u64,
    pub target_found: bool,
    pub winner: Option<String>,
}

impl SingleReport {
    pub fn to_json(&self) -> String {
        let mut text = serde_json::to_string_pretty(self).expect("report serializes");
        text.push('\n');
        text
    }
}

/// What a run produced.
#[derive(Clone, Debug)]
pub enum RunReport {
    Single(SingleReport),
    Distributed(ExperimentReport),
}

impl RunReport {
    pub fn to_json(&self) -> String {
        match self {
            RunReport::Single(r) => r.to_json(),
            RunReport::Distributed(r) => r.to_json(),
        }
    }

    pub fn target_found(&self) -> bool {
        match self {
            RunReport::Single(r) => r.target_found,
            RunReport::Distributed(r) => r.target_found,
        }
    }
}

#[derive(Clone, Debug)]
pub struct EmittedArtifacts {
    pub report: RunReport,
    /// File name and contents, in write order.
    pub files: Vec<(PathBuf, String)>,
    pub summary: String,
}

impl EmittedArtifacts {
    pub fn target_found(&self) -> bool {
        self.report.target_found()
    }
}

/// Execute a run and write its artifacts into the configured directory.
pub fn run(config: &RunConfig) -> Result<EmittedArtifacts> {
    let artifacts = execute(config)?;
    let out = config.validate()?.out;
    std::fs::create_dir_all(&out)?;
    for (name, contents) in &artifacts.files {
        std::fs::write(out.join(name), contents)?;
    }
    Ok(artifacts)
}

/// Execute a run without touching the filesystem (other than reading inputs).
pub fn execute(config: &RunConfig) -> Result<EmittedArtifacts> {
    let plan = config.validate()?;
    match plan.mode {
        Mode::Qaa | Mode::FixedPoint => execute_single(config, &plan),
        Mode::Distributed => execute_distributed(config, &plan),
    }
}

fn verify_samples(histogram: &Histogram, oracle: &BooleanOracle) -> Result<(Vec<String>, u64)> {
    let mut hits = Vec::new();
    let mut shots = 0;
    for (bits, &count) in &histogram.counts {
        if oracle.evaluate(bits)? {
            hits.push(bits.clone());
            shots += count;
        }
    }
    Ok((hits, shots))
}

fn execute_single(config: &RunConfig, plan: &ValidatedRun) -> Result<EmittedArtifacts> {
    let algorithm = resolve_algorithm(config.algorithm_spec(), plan.n)?;
    let setup = AmplificationSetup::new(algorithm, plan.oracle.clone())?;
    let computed = initial_success_probability(&setup);

    let (run, schedule, bound, delta): (RunResult, Option<PhaseSchedule>, f64, Option<f64>) = match plan.mode {
        Mode::Qaa => {
            let a = config.a.unwrap_or(computed);
            if a <= 0.0 {
                return Err(Error::NoTargets);
            }
            let run = if config.trust_a.unwrap_or(false) {
                qaa_known_unchecked(&setup, a, plan.shots, plan.seed)?
            } else {
                qaa_known(&setup, a, plan.shots, plan.seed)?
            };
            (run, None, (1.0 - a).max(a), None)
        }
        Mode::FixedPoint => {
            let epsilon = config.epsilon.expect("validated");
            let delta = match (config.delta, config.a) {
                (Some(d), _) => d,
                (None, Some(a)) => a.sqrt(),
                (None, None) if computed > 0.0 => computed.sqrt().min(1.0),
                (None, None) => return Err(Error::NoTargets),
            };
            let l = iterations_fixed_point(delta, epsilon)?;
            let schedule = phase_angles(l, epsilon)?;
            let run = run_schedule(&setup, &schedule, plan.shots, plan.seed)?;
            (run, Some(schedule), 1.0 - epsilon * epsilon, Some(delta))
        }
        Mode::Distributed => unreachable!("handled by execute_distributed"),
    };

    let histogram = run.histogram.clone().expect("shots are positive");
    let (verified_hits, verified_shots) = verify_samples(&histogram, &plan.oracle)?;
    let report = SingleReport {
        schema: SINGLE_REPORT_SCHEMA,
        mode: plan.mode,
        n: plan.n,
        algorithm: config.algorithm_spec().to_string(),
        shots: plan.shots,
        seed: plan.seed,
        target_count: plan.oracle.count_targets(),
        oracle_truth_table_hex: plan.oracle.to_hex(),
        initial_success_probability: computed,
        supplied_a: config.a,
        epsilon: config.epsilon.filter(|_| plan.mode == Mode::FixedPoint),
        delta,
        iterations: run.iterations,
        schedule,
        guaranteed_bound: bound,
        exact_success: run.exact_success,
        histogram: histogram.clone(),
        target_found: !verified_hits.is_empty(),
        winner: verified_hits.first().cloned(),
        verified_hits,
        verified_shots,
    };

    let mut files = Vec::new();
    if plan.formats.contains(&Format::Json) {
        files.push((PathBuf::from("report.json"), report.to_json()));
    }
    if plan.formats.contains(&Format::Csv) {
        files.push((PathBuf::from("histogram.csv"), histogram_csv(&histogram, &run.final_state)));
    }
    let summary = single_summary(&report);
    if plan.formats.contains(&Format::Text) {
        files.push((PathBuf::from("summary.txt"), summary.clone()));
    }
    Ok(EmittedArtifacts {
        report: RunReport::Single(report),
        files,
        summary,
    })
}

fn execute_distributed(config: &RunConfig, plan: &ValidatedRun) -> Result<EmittedArtifacts> {
    let j = config.j.expect("validated");
    let epsilon = config.epsilon.expect("validated");
    let whole = config.algorithm_spec();
    let factor = |explicit: &Option<String>, qubits: usize| -> Result<UnitaryOperator> {
        match explicit.as_deref() {
            Some(spec) => resolve_algorithm(spec, qubits),
            None if whole == "uniform-hadamard" || whole == "identity" => resolve_algorithm(whole, qubits),
            None => Err(usage(
                "distributed mode with a matrix-file algorithm needs prefix_algorithm and suffix_algorithm",
            )),
        }
    };
    let a1 = factor(&config.prefix_algorithm, j)?;
    let a2 = factor(&config.suffix_algorithm, plan.n - j)?;
    let rule = match (config.delta, config.a) {
        (Some(delta), _) => IterationRule::Delta { delta },
        (None, Some(a)) => IterationRule::SuppliedA { a },
        (None, None) => IterationRule::ExactA,
    };
    let setup = DistributedSetup::new(a1, a2, plan.oracle.clone(), epsilon, plan.shots, plan.seed)?.with_rule(rule);
    let (report, states) = dqaa_run_with_states(&setup)?;

    let mut files = Vec::new();
    if plan.formats.contains(&Format::Json) {
        files.push((PathBuf::from("report.json"), report.to_json()));
    }
    if plan.formats.contains(&Format::Csv) {
        for (node, state) in report.nodes.iter().zip(&states) {
            files.push((
                PathBuf::from(format!("node_{}_histogram.csv", node.k)),
                histogram_csv(&node.histogram, state),
            ));
        }
        files.push((PathBuf::from("summary.csv"), distributed_summary_csv(&report)));
    }
    let summary = distributed_summary(&report);
    if plan.formats.contains(&Format::Text) {
        files.push((PathBuf::from("summary.txt"), summary.clone()));
    }
    Ok(EmittedArtifacts {
        report: RunReport::Distributed(report),
        files,
        summary,
    })
}

/// `bitstring,count,exact_probability` for every basis state of `state`.
pub fn histogram_csv(histogram: &Histogram, state: &Statevector) -> String {
    let mut out = String::from("bitstring,count,exact_probability\n");
    for (index, p) in state.probabilities().into_iter().enumerate() {
        let bits = format_bits(index, state.n_qubits());
        let _ = writeln!(out, "{},{},{:.11e}", bits, histogram.count(&bits), p);
    }
    out
}

fn distributed_summary_csv(report: &ExperimentReport) -> String {
    let mut out = String::from(
        "node,prefix,shots,verified_shots,hit_frequency,exact_success,conditional_a_k,target_bearing\n",
    );
    for (node, mass) in report.nodes.iter().zip(&report.account.nodes) {
        let _ = writeln!(
            out,
            "{},{},{},{},{:.6},{:.11e},{:.11e},{}",
            node.k,
            node.prefix,
            node.histogram.shots,
            node.verified_shots,
            node.verified_shots as f64 / node.histogram.shots as f64,
            node.exact_success,
            mass.conditional,
            mass.target_mass > 0.0,
        );
    }
    out
}

fn distributed_summary(report: &ExperimentReport) -> String {
    let mut out = String::new();
    let s = &report.setup;
    let _ = writeln!(out, "distributed amplitude amplification");
    let _ = writeln!(
        out,
        "n = {}, j = {}, epsilon = {}, shots = {}, seed = {}, targets = {}",
        s.n, s.j, s.epsilon, s.shots, s.seed, s.target_count
    );
    let _ = writeln!(out, "a = {:.12}, l = {}", report.account.a, report.l);
    let _ = writeln!(out, "node  prefix  a_k           P_k           verified/shots");
    for (node, mass) in report.nodes.iter().zip(&report.account.nodes) {
        let _ = writeln!(
            out,
            "{:<5} {:<7} {:<13.10} {:<13.10} {}/{}",
            node.k, node.prefix, mass.conditional, node.exact_success, node.verified_shots, node.histogram.shots
        );
    }
    let _ = writeln!(
        out,
        "combined success (exact) = {:.12}, bound 1 - eps^2 = {:.12}",
        report.combined_success_exact,
        1.0 - s.epsilon * s.epsilon
    );
    match &report.winner {
        Some(w) => {
            let _ = writeln!(out, "winner: {} (node {})", w.bitstring, w.node);
        }
        None => {
            let _ = writeln!(out, "winner: none (no verified target sampled)");
        }
    }
    out
}

fn single_summary(report: &SingleReport) -> String {
    let mut out = String::new();
    let title = match report.mode {
        Mode::Qaa => "amplitude amplification (known a)",
        _ => "fixed-point amplitude amplification",
    };
    let _ = writeln!(out, "{title}");
    let _ = writeln!(
        out,
        "n = {}, algorithm = {}, shots = {}, seed = {}, targets = {}",
        report.n, report.algorithm, report.shots, report.seed, report.target_count
    );
    let _ = writeln!(
        out,
        "initial success probability = {:.12}, iterations = {}",
        report.initial_success_probability, report.iterations
    );
    let _ = writeln!(
        out,
        "exact success = {:.12}, guaranteed bound = {:.12}",
        report.exact_success, report.guaranteed_bound
    );
    let _ = writeln!(out, "verified shots = {}/{}", report.verified_shots, report.shots);
    match &report.winner {
        Some(w) => {
            let _ = writeln!(out, "winner: {w}");
        }
        None => {
            let _ = writeln!(out, "winner: none (no verified target sampled)");
        }
    }
    out
}

/// Write the schedule dump for `l` iterations; `path = None` returns it only.
pub fn emit_schedule(l: u64, epsilon: f64, path: Option<&Path>) -> Result<String> {
    let dump = phase_angles(l, epsilon)?.dump();
    if let Some(path) = path {
        if let Some(parent) = path.parent().filter(|p| !p.as_os_str().is_empty()) {
            std::fs::create_dir_all(parent)?;
        }
        std::fs::write(path, &dump)?;
    }
    Ok(dump)
}

/// Process exit codes of the `dqaa` binary.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ExitStatus {
    TargetFound = 0,
    NoTarget = 1,
    Usage = 2,
    ResourceCap = 3,
}

impl ExitStatus {
    pub fn from_error(err: &Error) -> Self {
        match err {
            Error::Resource(_) => ExitStatus::ResourceCap,
            Error::NoTargets => ExitStatus::NoTarget,
            _ => ExitStatus::Usage,
        }
    }

    pub fn code(self) -> i32 {
        self as i32
    }
}
