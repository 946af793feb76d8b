//! The operations shared by the CLI and the HTTP service. Both front ends
//! serialize the same values, so their JSON agrees for the same input.

use ndagg::mcgdm::{self, DecisionProblem, Edit, RankReport, SensitivityReport};
use ndagg::ndim_agg::{check_idempotent_iff_average, classify as classify_fn, Classification, IdempotentAverageReport, NDimAggregation, NDimAggregationSpec};
use ndagg::orders::{admissibility_reports, compatibility_probes};
use ndagg::semivector::{check_order_compatibility, check_semi_vector_axioms, check_unit_semifield};
use ndagg::{AdmissibleOrder, AdmissibleOrderSpec, CompatibilityReport, Error, NDimInterval, Permutation, Sampler};
use serde::Serialize;
use serde_json::{json, Value};

pub const MAX_DIMENSION: usize = 64;
pub const MAX_SAMPLES: usize = 100_000;

/// Why a request could not be answered.
#[derive(Debug)]
pub enum Failure {
    Core(Error),
    NotFound(String),
    Io(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Core(e)
    }
}

impl std::fmt::Display for Failure {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Failure::Core(e) => write!(f, "{e}"),
            Failure::NotFound(m) | Failure::Io(m) => f.write_str(m),
        }
    }
}

pub type Outcome<T> = Result<T, Failure>;

fn invalid(path: &str, message: impl Into<String>) -> Failure {
    Failure::Core(Error::validation(path, message))
}

/// Rejects problems with more than [`MAX_DIMENSION`] alternatives, criteria
/// or experts.
pub fn guard_size(problem: &DecisionProblem) -> Outcome<()> {
    for (path, len) in [
        ("alternatives", problem.num_alternatives()),
        ("criteria", problem.num_criteria()),
        ("experts", problem.num_experts()),
    ] {
        if len > MAX_DIMENSION {
            return Err(invalid(path, format!("{len} exceeds the limit of {MAX_DIMENSION}")));
        }
    }
    Ok(())
}

pub fn guard_samples(samples: usize) -> Outcome<()> {
    if samples > MAX_SAMPLES {
        return Err(invalid("samples", format!("{samples} exceeds the limit of {MAX_SAMPLES}")));
    }
    Ok(())
}

fn guard_dim(n: usize) -> Outcome<()> {
    if n == 0 || n > MAX_DIMENSION {
        return Err(invalid("dim", format!("dimension must be in 1..={MAX_DIMENSION}, found {n}")));
    }
    Ok(())
}

pub fn parse_problem(value: Value) -> Outcome<DecisionProblem> {
    let problem = DecisionProblem::from_value(value)?;
    guard_size(&problem)?;
    Ok(problem)
}

pub fn parse_order(value: Value) -> Outcome<AdmissibleOrder> {
    let spec: AdmissibleOrderSpec = serde_json::from_value(value).map_err(|e| invalid("order", e.to_string()))?;
    guard_dim(spec.dim())?;
    AdmissibleOrder::new(spec).map_err(|e| invalid("order", e.to_string()))
}

pub fn to_value<T: Serialize>(v: &T) -> Value {
    serde_json::to_value(v).expect("report types serialize")
}

pub fn collective(problem: &DecisionProblem) -> Outcome<Vec<Vec<NDimInterval>>> {
    guard_size(problem)?;
    Ok(mcgdm::build_collective(problem)?.entries)
}

pub fn rank(problem: &DecisionProblem) -> Outcome<RankReport> {
    guard_size(problem)?;
    Ok(mcgdm::rank_problem(problem)?)
}

/// Scores without the ranking.
pub fn score(problem: &DecisionProblem) -> Outcome<Value> {
    let report = rank(problem)?;
    Ok(json!({
        "order": report.order,
        "aggregator": report.aggregator,
        "scores": report.scores,
        "annotations": report.annotations,
    }))
}

/// Edits given either as JSON objects or as `key=value` strings.
pub fn parse_edits(values: &[Value]) -> Outcome<Vec<Edit>> {
    values
        .iter()
        .enumerate()
        .map(|(i, v)| {
            let parsed = match v {
                Value::String(s) => Edit::parse(s),
                other => serde_json::from_value(other.clone()).map_err(|e| Error::validation("edit", e.to_string())),
            };
            parsed.map_err(|e| match e {
                Error::Validation { message, .. } => invalid(&format!("edits[{i}]"), message),
                other => Failure::Core(other),
            })
        })
        .collect()
}

pub fn sensitivity(problem: &DecisionProblem, edits: &[Edit]) -> Outcome<SensitivityReport> {
    guard_size(problem)?;
    Ok(mcgdm::sensitivity(problem, edits)?)
}

/// A named group of checks; `holds` is true when every report holds.
#[derive(Clone, Debug, Serialize)]
pub struct CheckSuite {
    pub subject: Value,
    pub seed: u64,
    pub samples: usize,
    pub holds: bool,
    pub reports: Vec<CompatibilityReport>,
}

impl CheckSuite {
    fn new(subject: Value, seed: u64, samples: usize, reports: Vec<CompatibilityReport>) -> Self {
        CheckSuite {
            holds: reports.iter().all(|r| r.holds),
            subject,
            seed,
            samples,
            reports,
        }
    }
}

/// Order laws, then SV8 and SV9 with the known probes for this order.
pub fn check_order(order: &AdmissibleOrder, seed: u64, samples: usize) -> Outcome<CheckSuite> {
    guard_samples(samples)?;
    let n = order.dim();
    let root = Sampler::new(seed);
    let mut reports = admissibility_reports(order, n, &mut root.fork(1), samples)?;
    let (sv8, sv9) = check_order_compatibility(order, n, &compatibility_probes(order.spec()), &mut root.fork(2), samples)?;
    reports.push(sv8);
    reports.push(sv9);
    Ok(CheckSuite::new(to_value(order.spec()), seed, samples, reports))
}

/// The scalar semifield laws, the semi-vector laws on `L_n`, and SV8/SV9
/// for `order` (the identity lexicographic order on `L_n` by default).
pub fn check_axioms(n: usize, order: Option<AdmissibleOrder>, seed: u64, samples: usize) -> Outcome<CheckSuite> {
    guard_samples(samples)?;
    let order = match order {
        Some(o) => o,
        None => {
            guard_dim(n)?;
            AdmissibleOrder::lex(Permutation::identity(n))?
        }
    };
    let n = order.dim();
    let root = Sampler::new(seed);
    let mut reports = check_unit_semifield(&mut root.fork(1), samples);
    reports.extend(check_semi_vector_axioms(n, &mut root.fork(2), samples));
    let (sv8, sv9) = check_order_compatibility(&order, n, &compatibility_probes(order.spec()), &mut root.fork(3), samples)?;
    reports.push(sv8);
    reports.push(sv9);
    Ok(CheckSuite::new(json!({"dim": n, "order": order.spec()}), seed, samples, reports))
}

#[derive(Clone, Debug, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct ClassifyReport {
    pub aggregator: NDimAggregationSpec,
    pub seed: u64,
    pub samples: usize,
    pub classification: Classification,
    pub idempotent_iff_average: IdempotentAverageReport,
    pub warnings: Vec<CompatibilityReport>,
}

pub fn classify(spec: &NDimAggregationSpec, order: &AdmissibleOrder, arity: Option<usize>, seed: u64, samples: usize) -> Outcome<ClassifyReport> {
    guard_samples(samples)?;
    if let Some(m) = arity {
        guard_dim(m)?;
    }
    let f = NDimAggregation::from_spec(spec, order, None, arity)?;
    let sampler = Sampler::new(seed);
    Ok(ClassifyReport {
        aggregator: f.spec(),
        seed,
        samples,
        classification: classify_fn(&f, &sampler, samples)?,
        idempotent_iff_average: check_idempotent_iff_average(&f, &sampler.fork(99), samples)?,
        warnings: f.warnings().to_vec(),
    })
}

/// Full validation of a problem file.
pub fn validate(problem: &DecisionProblem) -> Outcome<Value> {
    guard_size(problem)?;
    let model = problem.model()?;
    Ok(json!({
        "valid": true,
        "alternatives": problem.num_alternatives(),
        "criteria": problem.num_criteria(),
        "experts": problem.num_experts(),
        "order": model.order.spec(),
        "aggregator": model.aggregator.spec(),
        "fingerprint": problem.fingerprint(),
        "annotations": model.annotations(),
    }))
}

/// Registered order kinds and aggregation families with their parameters.
pub fn catalog() -> Value {
    let perm = json!({"type": "array", "items": {"type": "integer", "minimum": 1}, "description": "1-based permutation of 1..n"});
    let weights = json!({"type": "array", "items": {"type": "number", "minimum": 0}, "description": "nonnegative, sums to 1"});
    json!({
        "orders": [
            {"kind": "LexTau", "parameters": {"tau": perm}, "required": ["tau"]},
            {"kind": "WeightedLex", "parameters": {"tau": perm, "omega": weights}, "required": ["tau", "omega"]},
            {"kind": "AggLex", "parameters": {"tau": perm, "agg": {"type": "object", "description": "scalar aggregation, see scalarAggregations"}},
             "required": ["tau", "agg"]},
        ],
        "aggregators": [
            {"name": "ndimWeightedAverage", "parameters": {"omega": weights}, "required": [],
             "defaults": {"omega": "the criterion weights"}},
            {"name": "ndimOWA", "parameters": {"omega": weights, "order": {"type": "object", "description": "admissible order"}}, "required": [],
             "defaults": {"omega": "the criterion weights", "order": "the problem order"}},
            {"name": "lift", "parameters": {"components": {"type": "array", "items": {"type": "object"}, "description": "n scalar aggregations, dominance-ordered"}},
             "required": ["components"]},
        ],
        "scalarAggregations": [
            {"name": "min"}, {"name": "max"}, {"name": "arithmeticMean"},
            {"name": "pR", "parameters": {"r": {"type": "number", "exclusiveMinimum": 0}}},
            {"name": "weightedMin", "parameters": {"omega": weights}},
            {"name": "weightedMax", "parameters": {"omega": weights}},
            {"name": "weightedAverage", "parameters": {"omega": weights}},
            {"name": "geometricMean", "parameters": {"omega": weights}},
            {"name": "maxExp", "parameters": {"e": {"type": "array", "items": {"type": "number", "exclusiveMinimum": 0}}}},
            {"name": "owa", "parameters": {"omega": weights}},
        ],
    })
}
