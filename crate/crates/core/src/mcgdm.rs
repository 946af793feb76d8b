//! Multi-expert, multi-criteria ranking over `L_n([0,1])`.
//!
//! Each of `n` experts scores `p` alternatives against `m` criteria in
//! `[0,1]`. For every (alternative, criterion) cell the `n` expert values are
//! sorted into one element of `L_n`, giving the collective matrix; each row
//! is then aggregated into an `L_n`-score and alternatives are ranked by an
//! admissible order on the scores.
//!
//! The module also samples the method's three principles (increasingness,
//! domination, insensitivity to indexation) and computes what-if diffs.

use std::cmp::Ordering;
use std::collections::BTreeSet;
use std::io::Read;
use std::sync::OnceLock;

use serde::{Deserialize, Serialize};
use serde_json::{json, Value};
use sha2::{Digest, Sha256};

use crate::error::{Error, Result};
use crate::ndim::{NDimInterval, Permutation, WeightingVector};
use crate::ndim_agg::{NDimAggregation, NDimAggregationSpec, NDimFunction};
use crate::orders::{AdmissibleOrder, AdmissibleOrderSpec, TotalOrder};
use crate::report::{Axiom, CompatibilityReport};
use crate::sampling::Sampler;

/// The bundled worked example: five experts, five alternatives, four criteria.
pub const WORKED_EXAMPLE_JSON: &str = include_str!("../fixtures/worked_example.json");

/// A decision problem as read from JSON. `evaluations` is expert-major:
/// `evaluations[k][i][j]` is expert `k`'s score of alternative `i` on
/// criterion `j`. Only the cube and labels are needed to build the collective
/// matrix; ranking also needs `weights` and `order`. A missing `aggregator`
/// means `{"name": "ndimWeightedAverage"}` with the criterion weights.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DecisionProblem {
    pub alternatives: Vec<String>,
    pub criteria: Vec<String>,
    pub experts: Vec<String>,
    pub evaluations: Vec<Vec<Vec<f64>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub weights: Option<Vec<f64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub order: Option<Value>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub aggregator: Option<Value>,
}

impl DecisionProblem {
    pub fn from_json_str(s: &str) -> Result<Self> {
        serde_json::from_str(s).map_err(|e| Error::validation("$", e.to_string()))
    }

    pub fn from_value(v: Value) -> Result<Self> {
        serde_json::from_value(v).map_err(|e| Error::validation("$", e.to_string()))
    }

    pub fn worked_example() -> Self {
        Self::from_json_str(WORKED_EXAMPLE_JSON).expect("bundled example parses")
    }

    pub fn num_alternatives(&self) -> usize {
        self.alternatives.len()
    }

    pub fn num_criteria(&self) -> usize {
        self.criteria.len()
    }

    pub fn num_experts(&self) -> usize {
        self.experts.len()
    }

    /// SHA-256 of the canonical JSON serialization.
    pub fn fingerprint(&self) -> String {
        let canonical = serde_json::to_vec(self).expect("serializable");
        hex::encode(Sha256::digest(&canonical))
    }

    pub fn is_worked_example(&self) -> bool {
        static BUNDLED: OnceLock<String> = OnceLock::new();
        *BUNDLED.get_or_init(|| Self::worked_example().fingerprint()) == self.fingerprint()
    }

    /// Checks labels and the cube shape and range, with `min_size` as the
    /// smallest accepted count of alternatives, criteria and experts.
    pub fn validate_cube(&self, min_size: usize) -> Result<()> {
        for (path, labels) in [
            ("alternatives", &self.alternatives),
            ("criteria", &self.criteria),
            ("experts", &self.experts),
        ] {
            if labels.len() < min_size {
                return Err(Error::validation(path, format!("at least {min_size} labels required, found {}", labels.len())));
            }
            if let Some(i) = labels.iter().position(|l| l.trim().is_empty()) {
                return Err(Error::validation(format!("{path}[{i}]"), "label must not be empty"));
            }
        }
        let (p, m, n) = (self.num_alternatives(), self.num_criteria(), self.num_experts());
        if self.evaluations.len() != n {
            return Err(Error::validation(
                "evaluations",
                format!("expected one matrix per expert ({n}), found {}", self.evaluations.len()),
            ));
        }
        for (k, matrix) in self.evaluations.iter().enumerate() {
            if matrix.len() != p {
                return Err(Error::validation(
                    format!("evaluations[{k}]"),
                    format!("expected {p} alternative rows, found {}", matrix.len()),
                ));
            }
            for (i, row) in matrix.iter().enumerate() {
                if row.len() != m {
                    return Err(Error::validation(
                        format!("evaluations[{k}][{i}]"),
                        format!("expected {m} criterion values, found {}", row.len()),
                    ));
                }
                for (j, &v) in row.iter().enumerate() {
                    if !(v.is_finite() && (0.0..=1.0).contains(&v)) {
                        return Err(Error::validation(
                            format!("evaluations[{k}][{i}][{j}]"),
                            format!("{v} is outside [0,1]"),
                        ));
                    }
                }
            }
        }
        Ok(())
    }

    /// Full validation: cube, strictly positive weights of length `m`, an
    /// order of dimension `n`, and a buildable aggregator of arity `m`.
    pub fn model(&self) -> Result<Model> {
        self.validate_cube(2)?;
        let (m, n) = (self.num_criteria(), self.num_experts());
        let raw = self.weights.clone().ok_or_else(|| Error::validation("weights", "criterion weights are required"))?;
        if raw.len() != m {
            return Err(Error::validation("weights", format!("expected {m} weights, found {}", raw.len())));
        }
        let weights = WeightingVector::new(raw).map_err(|e| Error::validation("weights", e.to_string()))?;
        if !weights.is_strictly_positive() {
            return Err(Error::validation("weights", "criterion weights must be strictly positive"));
        }
        let order_value = self.order.clone().ok_or_else(|| Error::validation("order", "an admissible order is required"))?;
        let order_spec: AdmissibleOrderSpec =
            serde_json::from_value(order_value).map_err(|e| Error::validation("order", e.to_string()))?;
        if order_spec.dim() != n {
            return Err(Error::validation(
                "order.tau",
                format!("order acts on dimension {}, but there are {n} experts", order_spec.dim()),
            ));
        }
        let order = AdmissibleOrder::new(order_spec).map_err(|e| Error::validation("order", e.to_string()))?;
        let agg_spec: NDimAggregationSpec = match &self.aggregator {
            Some(v) => serde_json::from_value(v.clone()).map_err(|e| Error::validation("aggregator", e.to_string()))?,
            None => NDimAggregationSpec::WeightedAverage { omega: None },
        };
        let aggregator = match NDimAggregation::from_spec(&agg_spec, &order, Some(&weights), Some(m)) {
            Ok(a) => a,
            // a failed compatibility gate is its own kind of error
            Err(e @ Error::IncompatibleOrder(_)) => return Err(e),
            Err(e) => return Err(Error::validation("aggregator", e.to_string())),
        };
        Ok(Model {
            problem: self.clone(),
            weights,
            order,
            aggregator,
        })
    }
}

/// The `p×m` grid of collective values.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct CollectiveMatrix {
    pub entries: Vec<Vec<NDimInterval>>,
}

impl CollectiveMatrix {
    pub fn row(&self, i: usize) -> &[NDimInterval] {
        &self.entries[i]
    }
}

/// `R*_ij = σ(R^1_ij, …, R^n_ij)`.
pub fn build_collective(problem: &DecisionProblem) -> Result<CollectiveMatrix> {
    problem.validate_cube(1)?;
    let entries = (0..problem.num_alternatives())
        .map(|i| {
            (0..problem.num_criteria())
                .map(|j| {
                    let column: Vec<f64> = problem.evaluations.iter().map(|matrix| matrix[i][j]).collect();
                    NDimInterval::sigma(&column)
                })
                .collect::<Result<Vec<_>>>()
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(CollectiveMatrix { entries })
}

/// `s_i = A(R*_i1, …, R*_im)` for every alternative.
pub fn score_alternatives(collective: &CollectiveMatrix, aggregator: &dyn NDimFunction) -> Result<Vec<NDimInterval>> {
    collective.entries.iter().map(|row| aggregator.evaluate(row)).collect()
}

/// Alternatives grouped by equal score, worst group first; each group lists
/// 0-based alternative indices in increasing order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Ranking {
    pub groups: Vec<Vec<usize>>,
}

impl Ranking {
    pub fn worst_to_best(&self) -> Vec<usize> {
        self.groups.iter().flatten().copied().collect()
    }

    pub fn best_to_worst(&self) -> Vec<usize> {
        self.groups.iter().rev().flatten().copied().collect()
    }

    pub fn ties(&self) -> Vec<Vec<usize>> {
        self.groups.iter().filter(|g| g.len() > 1).cloned().collect()
    }

    /// Position of each alternative's group, 0 = worst.
    pub fn levels(&self, p: usize) -> Vec<usize> {
        let mut level = vec![0; p];
        for (g, members) in self.groups.iter().enumerate() {
            for &i in members {
                level[i] = g;
            }
        }
        level
    }

    /// `"a2 < a1 = a3 < …"`.
    pub fn notation(&self, labels: &[String]) -> String {
        self.groups
            .iter()
            .map(|g| g.iter().map(|&i| labels[i].as_str()).collect::<Vec<_>>().join(" = "))
            .collect::<Vec<_>>()
            .join(" < ")
    }
}

/// Orders alternatives by score, worst first. Ties are exact: only identical
/// score tuples share a group.
pub fn rank(scores: &[NDimInterval], order: &dyn TotalOrder) -> Result<Ranking> {
    let mut idx: Vec<usize> = (0..scores.len()).collect();
    // insertion sort so a comparator error surfaces instead of panicking
    for a in 1..idx.len() {
        let mut b = a;
        while b > 0 && order.compare(&scores[idx[b - 1]], &scores[idx[b]])? == Ordering::Greater {
            idx.swap(b - 1, b);
            b -= 1;
        }
    }
    let mut groups: Vec<Vec<usize>> = Vec::new();
    for i in idx {
        match groups.last_mut() {
            Some(g) if order.compare(&scores[g[0]], &scores[i])? == Ordering::Equal => g.push(i),
            _ => groups.push(vec![i]),
        }
    }
    for g in &mut groups {
        g.sort_unstable();
    }
    Ok(Ranking { groups })
}

/// A validated problem with its order and aggregator built.
#[derive(Clone, Debug)]
pub struct Model {
    pub problem: DecisionProblem,
    pub weights: WeightingVector,
    pub order: AdmissibleOrder,
    pub aggregator: NDimAggregation,
}

/// Everything the pipeline computes for one problem.
#[derive(Clone, Debug, PartialEq)]
pub struct Outcome {
    pub collective: CollectiveMatrix,
    pub scores: Vec<NDimInterval>,
    pub ranking: Ranking,
}

impl Model {
    /// Assembles a model from parts, bypassing the aggregator's construction
    /// gate; used by the property suites.
    pub fn from_parts(problem: DecisionProblem, weights: WeightingVector, order: AdmissibleOrder, aggregator: NDimAggregation) -> Self {
        Model {
            problem,
            weights,
            order,
            aggregator,
        }
    }

    pub fn run(&self) -> Result<Outcome> {
        self.run_on(&self.problem)
    }

    /// The pipeline on another cube of the same shape, with this model's
    /// order and aggregator.
    pub fn run_on(&self, problem: &DecisionProblem) -> Result<Outcome> {
        let collective = build_collective(problem)?;
        let scores = score_alternatives(&collective, &self.aggregator)?;
        let ranking = rank(&scores, &self.order)?;
        Ok(Outcome {
            collective,
            scores,
            ranking,
        })
    }

    /// Notes attached to every result for this problem: the worked-example
    /// erratum, construction warnings, and non-symmetric aggregators.
    pub fn annotations(&self) -> Vec<Annotation> {
        let mut notes = Vec::new();
        if self.problem.is_worked_example() {
            notes.push(Annotation {
                code: "erratum".into(),
                message: "The bundled worked example prints s2 = (0.21164, 0.3059, 0.50736, 0.62137, 0.73447) and \
                          ranks a1 < a2 < a3 < a5 < a4. Its third component comes from the slip \
                          0.2474 * 0.6 = 0.19792 (the correct product is 0.14844); recomputed, s2 = \
                          (0.21164, 0.3059, 0.45788, 0.62137, 0.73447) and the ranking is a2 < a1 < a3 < a5 < a4. \
                          The printed s4 = (0.2859, 0.30931, …) likewise rests on a misprinted environment term \
                          (0.2474 times its collective entry); recomputed, s4 = (0.27176, 0.34465, 0.67763, 0.77526, 0.7953), which does \
                          not change the ranking. Computed values are reported unchanged."
                    .into(),
                detail: Some(json!({
                    "printed": {
                        "s2": [0.21164, 0.3059, 0.50736, 0.62137, 0.73447],
                        "s4": [0.2859, 0.30931, 0.67763, 0.77526, 0.7953],
                        "ranking": ["a1", "a2", "a3", "a5", "a4"],
                    },
                    "recomputed": {
                        "s2": [0.21164, 0.3059, 0.45788, 0.62137, 0.73447],
                        "s4": [0.27176, 0.34465, 0.67763, 0.77526, 0.7953],
                        "ranking": ["a2", "a1", "a3", "a5", "a4"],
                    }
                })),
            });
        }
        for w in self.aggregator.warnings() {
            notes.push(Annotation {
                code: "order-compatibility".into(),
                message: format!(
                    "{} fails {} on saturating sums; the weighted average with weights summing to 1 never \
                     saturates, so scores and ranking are unaffected",
                    self.order.describe(),
                    w.axiom
                ),
                detail: serde_json::to_value(w).ok(),
            });
        }
        if let Some(omega) = self.aggregator.omega() {
            if self.aggregator.name() == "ndimWeightedAverage" && !omega.is_uniform() {
                notes.push(Annotation {
                    code: "non-symmetric-aggregator".into(),
                    message: "the weighted average with non-uniform weights is not symmetric in the criteria; \
                              criterion relabelings must carry their weights along"
                        .into(),
                    detail: None,
                });
            }
        }
        notes
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Annotation {
    pub code: String,
    pub message: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub detail: Option<Value>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ScoreEntry {
    pub alternative: String,
    pub score: NDimInterval,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct RankingView {
    pub worst_to_best: Vec<String>,
    pub best_to_worst: Vec<String>,
    pub ties: Vec<Vec<String>>,
    pub notation: String,
}

impl RankingView {
    pub fn new(ranking: &Ranking, labels: &[String]) -> Self {
        let names = |v: Vec<usize>| v.into_iter().map(|i| labels[i].clone()).collect::<Vec<_>>();
        RankingView {
            worst_to_best: names(ranking.worst_to_best()),
            best_to_worst: names(ranking.best_to_worst()),
            ties: ranking.ties().into_iter().map(names).collect(),
            notation: ranking.notation(labels),
        }
    }
}

/// The JSON document returned by `rank`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RankReport {
    pub order: AdmissibleOrderSpec,
    pub aggregator: NDimAggregationSpec,
    pub scores: Vec<ScoreEntry>,
    pub ranking: RankingView,
    pub annotations: Vec<Annotation>,
}

impl RankReport {
    pub fn new(model: &Model, outcome: &Outcome) -> Self {
        let labels = &model.problem.alternatives;
        RankReport {
            order: model.order.spec().clone(),
            aggregator: model.aggregator.spec(),
            scores: labels
                .iter()
                .zip(&outcome.scores)
                .map(|(a, s)| ScoreEntry {
                    alternative: a.clone(),
                    score: s.clone(),
                })
                .collect(),
            ranking: RankingView::new(&outcome.ranking, labels),
            annotations: model.annotations(),
        }
    }
}

/// Validates, runs and reports in one call.
pub fn rank_problem(problem: &DecisionProblem) -> Result<RankReport> {
    let model = problem.model()?;
    let outcome = model.run()?;
    Ok(RankReport::new(&model, &outcome))
}

// ---------------------------------------------------------------- ingestion

/// Reads one expert matrix from CSV: a header row of criterion labels, then
/// one row per alternative. A leading non-numeric column is taken as the
/// alternative labels. Returns `(criteria, alternatives, rows)`; the
/// alternative labels are empty when the file has none.
pub fn read_expert_csv<R: Read>(reader: R) -> Result<(Vec<String>, Vec<String>, Vec<Vec<f64>>)> {
    let mut rdr = csv::ReaderBuilder::new().has_headers(true).trim(csv::Trim::All).from_reader(reader);
    let header: Vec<String> = rdr
        .headers()
        .map_err(|e| Error::validation("csv header", e.to_string()))?
        .iter()
        .map(str::to_string)
        .collect();
    let mut labels = Vec::new();
    let mut rows = Vec::new();
    let mut labelled = None;
    for (i, record) in rdr.records().enumerate() {
        let record = record.map_err(|e| Error::validation(format!("csv row {}", i + 1), e.to_string()))?;
        let fields: Vec<&str> = record.iter().collect();
        let has_label = *labelled.get_or_insert_with(|| fields.first().is_some_and(|f| f.parse::<f64>().is_err()));
        let values = if has_label {
            labels.push(fields.first().copied().unwrap_or_default().to_string());
            &fields[1..]
        } else {
            &fields[..]
        };
        let parsed = values
            .iter()
            .enumerate()
            .map(|(j, f)| {
                f.parse::<f64>()
                    .map_err(|_| Error::validation(format!("csv row {} column {}", i + 1, j + 1), format!("{f:?} is not a number")))
            })
            .collect::<Result<Vec<_>>>()?;
        rows.push(parsed);
    }
    let criteria = if labelled == Some(true) { header[1..].to_vec() } else { header };
    Ok((criteria, labels, rows))
}

/// Assembles a problem from per-expert CSV files, one `(expert label, file
/// contents)` pair per expert. All files must agree on the criterion header.
pub fn problem_from_csv(experts: &[(String, String)]) -> Result<DecisionProblem> {
    let mut criteria: Option<Vec<String>> = None;
    let mut alternatives: Vec<String> = Vec::new();
    let mut evaluations = Vec::with_capacity(experts.len());
    for (k, (label, text)) in experts.iter().enumerate() {
        let (crit, alts, rows) = read_expert_csv(text.as_bytes())?;
        match &criteria {
            None => criteria = Some(crit),
            Some(c) if *c != crit => {
                return Err(Error::validation(format!("experts[{k}]"), format!("criterion header {crit:?} differs from {c:?}")));
            }
            Some(_) => {}
        }
        if alternatives.is_empty() {
            alternatives = if alts.is_empty() { (1..=rows.len()).map(|i| format!("a{i}")).collect() } else { alts };
        }
        let _ = label;
        evaluations.push(rows);
    }
    Ok(DecisionProblem {
        alternatives,
        criteria: criteria.unwrap_or_default(),
        experts: experts.iter().map(|(l, _)| l.clone()).collect(),
        evaluations,
        weights: None,
        order: None,
        aggregator: None,
    })
}

// ---------------------------------------------------------------- sensitivity

/// A what-if modification. Indices are 1-based.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "camelCase")]
pub enum Edit {
    Cube {
        expert: usize,
        alternative: usize,
        criterion: usize,
        value: f64,
    },
    Weights {
        weights: Vec<f64>,
        #[serde(default)]
        normalize: bool,
    },
    Order {
        order: Value,
    },
    Aggregator {
        aggregator: Value,
    },
}

impl Edit {
    /// Parses `expert=2,alt=4,crit=3,value=0.1`, `weights=1,1,1,1` (normalized),
    /// or a JSON edit object.
    pub fn parse(s: &str) -> Result<Self> {
        let s = s.trim();
        if s.starts_with('{') {
            return serde_json::from_str(s).map_err(|e| Error::validation("edit", e.to_string()));
        }
        if let Some(rest) = s.strip_prefix("weights=") {
            let weights = rest
                .split(',')
                .map(|v| v.trim().parse::<f64>().map_err(|_| Error::validation("edit.weights", format!("{v:?} is not a number"))))
                .collect::<Result<Vec<_>>>()?;
            return Ok(Edit::Weights { weights, normalize: true });
        }
        let (mut expert, mut alternative, mut criterion, mut value) = (None, None, None, None);
        for part in s.split(',') {
            let (k, v) = part
                .split_once('=')
                .ok_or_else(|| Error::validation("edit", format!("expected key=value, found {part:?}")))?;
            let bad = || Error::validation(format!("edit.{}", k.trim()), format!("cannot parse {v:?}"));
            match k.trim() {
                "expert" => expert = Some(v.trim().parse::<usize>().map_err(|_| bad())?),
                "alt" | "alternative" => alternative = Some(v.trim().parse::<usize>().map_err(|_| bad())?),
                "crit" | "criterion" => criterion = Some(v.trim().parse::<usize>().map_err(|_| bad())?),
                "value" => value = Some(v.trim().parse::<f64>().map_err(|_| bad())?),
                other => return Err(Error::validation("edit", format!("unknown key {other:?}"))),
            }
        }
        match (expert, alternative, criterion, value) {
            (Some(expert), Some(alternative), Some(criterion), Some(value)) => Ok(Edit::Cube {
                expert,
                alternative,
                criterion,
                value,
            }),
            _ => Err(Error::validation("edit", "a cube edit needs expert, alt, crit and value")),
        }
    }

    fn apply(&self, problem: &mut DecisionProblem, index: usize) -> Result<()> {
        let path = format!("edits[{index}]");
        match self {
            Edit::Cube {
                expert,
                alternative,
                criterion,
                value,
            } => {
                let (n, p, m) = (problem.num_experts(), problem.num_alternatives(), problem.num_criteria());
                for (name, v, hi) in [("expert", *expert, n), ("alternative", *alternative, p), ("criterion", *criterion, m)] {
                    if v < 1 || v > hi {
                        return Err(Error::validation(format!("{path}.{name}"), format!("{v} is outside 1..={hi}")));
                    }
                }
                if !(value.is_finite() && (0.0..=1.0).contains(value)) {
                    return Err(Error::validation(format!("{path}.value"), format!("{value} is outside [0,1]")));
                }
                problem.evaluations[expert - 1][alternative - 1][criterion - 1] = *value;
            }
            Edit::Weights { weights, normalize } => {
                let w = if *normalize {
                    WeightingVector::normalized(weights.clone())
                } else {
                    WeightingVector::new(weights.clone())
                }
                .map_err(|e| Error::validation(format!("{path}.weights"), e.to_string()))?;
                // an explicit omega on the aggregator would shadow the new weights
                if let Some(Value::Object(agg)) = &mut problem.aggregator {
                    if agg.get("name").and_then(Value::as_str) == Some("ndimWeightedAverage") {
                        agg.remove("omega");
                    }
                }
                problem.weights = Some(w.weights().to_vec());
            }
            Edit::Order { order } => problem.order = Some(order.clone()),
            Edit::Aggregator { aggregator } => problem.aggregator = Some(aggregator.clone()),
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CellChange {
    pub alternative: String,
    pub criterion: String,
    pub before: NDimInterval,
    pub after: NDimInterval,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ScoreDelta {
    pub alternative: String,
    pub before: NDimInterval,
    pub after: NDimInterval,
    /// `after − before`, componentwise.
    pub delta: Vec<f64>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Flip {
    pub first: String,
    pub second: String,
    pub before: String,
    pub after: String,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct SensitivityReport {
    pub edits: Vec<Edit>,
    pub baseline: RankReport,
    pub edited: RankReport,
    pub collective_changes: Vec<CellChange>,
    pub score_deltas: Vec<ScoreDelta>,
    pub flipped: Vec<Flip>,
    pub ranking_changed: bool,
}

fn relation(o: Ordering) -> &'static str {
    match o {
        Ordering::Less => "<",
        Ordering::Equal => "=",
        Ordering::Greater => ">",
    }
}

/// Applies `edits` in order and diffs the edited outcome against the
/// baseline. Pairwise relations are compared under each side's own order.
pub fn sensitivity(problem: &DecisionProblem, edits: &[Edit]) -> Result<SensitivityReport> {
    let base_model = problem.model()?;
    let base = base_model.run()?;
    let mut edited_problem = problem.clone();
    for (i, e) in edits.iter().enumerate() {
        e.apply(&mut edited_problem, i)?;
    }
    let edited_model = edited_problem.model()?;
    let edited = edited_model.run()?;

    let alts = &problem.alternatives;
    let mut collective_changes = Vec::new();
    for (i, (r0, r1)) in base.collective.entries.iter().zip(&edited.collective.entries).enumerate() {
        for (j, (a, b)) in r0.iter().zip(r1).enumerate() {
            if a != b {
                collective_changes.push(CellChange {
                    alternative: alts[i].clone(),
                    criterion: problem.criteria[j].clone(),
                    before: a.clone(),
                    after: b.clone(),
                });
            }
        }
    }
    let score_deltas = base
        .scores
        .iter()
        .zip(&edited.scores)
        .enumerate()
        .filter(|(_, (a, b))| a != b)
        .map(|(i, (a, b))| ScoreDelta {
            alternative: alts[i].clone(),
            before: a.clone(),
            after: b.clone(),
            delta: a.components().iter().zip(b.components()).map(|(x, y)| y - x).collect(),
        })
        .collect();
    let mut flipped = Vec::new();
    for i in 0..alts.len() {
        for j in i + 1..alts.len() {
            let before = base_model.order.compare(&base.scores[i], &base.scores[j])?;
            let after = edited_model.order.compare(&edited.scores[i], &edited.scores[j])?;
            if before != after {
                flipped.push(Flip {
                    first: alts[i].clone(),
                    second: alts[j].clone(),
                    before: relation(before).into(),
                    after: relation(after).into(),
                });
            }
        }
    }
    Ok(SensitivityReport {
        edits: edits.to_vec(),
        ranking_changed: base.ranking != edited.ranking,
        baseline: RankReport::new(&base_model, &base),
        edited: RankReport::new(&edited_model, &edited),
        collective_changes,
        score_deltas,
        flipped,
    })
}

// ---------------------------------------------------------------- principles

/// Which aggregator family a random problem uses.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum AggregatorFamily {
    WeightedAverage,
    Owa,
}

/// Bounds for randomly generated problems.
#[derive(Clone, Copy, Debug)]
pub struct ProblemShape {
    pub max_alternatives: usize,
    pub max_criteria: usize,
    pub max_experts: usize,
}

impl Default for ProblemShape {
    fn default() -> Self {
        ProblemShape {
            max_alternatives: 6,
            max_criteria: 6,
            max_experts: 6,
        }
    }
}

fn labels(prefix: &str, count: usize) -> Vec<String> {
    (1..=count).map(|i| format!("{prefix}{i}")).collect()
}

/// A random problem under `⪯_τ` for a random `τ`, with strictly positive
/// criterion weights. The OWA is built without its construction gate: the
/// folds never saturate because weights sum to 1.
pub fn random_model(sampler: &mut Sampler, shape: ProblemShape, family: AggregatorFamily) -> Result<Model> {
    let p = 2 + sampler.index(shape.max_alternatives - 1);
    let m = 2 + sampler.index(shape.max_criteria - 1);
    let n = 2 + sampler.index(shape.max_experts - 1);
    let evaluations = (0..n)
        .map(|_| (0..p).map(|_| (0..m).map(|_| sampler.unit_mixed()).collect()).collect())
        .collect();
    let weights = sampler.strictly_positive_weights(m);
    let tau = sampler.permutation(n);
    let order_spec = AdmissibleOrderSpec::LexTau { tau };
    let order = AdmissibleOrder::new(order_spec.clone())?;
    let (aggregator, agg_json) = match family {
        AggregatorFamily::WeightedAverage => (
            NDimAggregation::weighted_average(weights.clone(), order.clone())?,
            json!({"name": "ndimWeightedAverage"}),
        ),
        AggregatorFamily::Owa => {
            let omega = sampler.weighting_vector(m);
            let agg_json = json!({"name": "ndimOWA", "omega": omega});
            (NDimAggregation::owa_unchecked(omega, order.clone()), agg_json)
        }
    };
    let problem = DecisionProblem {
        alternatives: labels("a", p),
        criteria: labels("c", m),
        experts: labels("e", n),
        evaluations,
        weights: Some(weights.weights().to_vec()),
        order: Some(serde_json::to_value(&order_spec).expect("serializable")),
        aggregator: Some(agg_json),
    };
    Ok(Model::from_parts(problem, weights, order, aggregator))
}

fn strictly_below(outcome: &Outcome, order: &dyn TotalOrder, i: usize) -> Result<BTreeSet<usize>> {
    let mut below = BTreeSet::new();
    for (j, s) in outcome.scores.iter().enumerate() {
        if order.compare(s, &outcome.scores[i])? == Ordering::Less {
            below.insert(j);
        }
    }
    Ok(below)
}

/// Raising one evaluation `R^k_ij` never shrinks the set of alternatives
/// ranked strictly below `a_i`. `bumps` random raises per call.
pub fn check_increasingness(model: &Model, sampler: &mut Sampler, bumps: usize) -> Result<CompatibilityReport> {
    let base = model.run()?;
    let pr = &model.problem;
    let mut cases = Vec::with_capacity(bumps);
    for _ in 0..bumps {
        let (k, i, j) = (sampler.index(pr.num_experts()), sampler.index(pr.num_alternatives()), sampler.index(pr.num_criteria()));
        let old = pr.evaluations[k][i][j];
        let new = if sampler.coin(0.5) { sampler.range(old, 1.0) } else { (old + 0.1 * (1 + sampler.index(3)) as f64).min(1.0) };
        let mut bumped = pr.clone();
        bumped.evaluations[k][i][j] = new;
        let after = model.run_on(&bumped)?;
        let before_set = strictly_below(&base, &model.order, i)?;
        let after_set = strictly_below(&after, &model.order, i)?;
        let lost: Vec<usize> = before_set.difference(&after_set).map(|x| x + 1).collect();
        cases.push((!lost.is_empty()).then(|| {
            json!({"expert": k + 1, "alternative": i + 1, "criterion": j + 1, "from": old, "to": new,
                   "noLongerBelow": lost, "fingerprint": pr.fingerprint()})
        }));
    }
    Ok(CompatibilityReport::from_cases(Axiom::Increasingness, Some(sampler.seed()), cases))
}

/// Makes alternative `i` dominate alternative `j` (every expert scores `i`
/// at least as high on every criterion) and checks `s_j ⪯ s_i`.
pub fn check_domination(model: &Model, sampler: &mut Sampler, pairs: usize) -> Result<CompatibilityReport> {
    let pr = &model.problem;
    let p = pr.num_alternatives();
    let mut cases = Vec::with_capacity(pairs);
    for _ in 0..pairs {
        let j = sampler.index(p);
        let i = (j + 1 + sampler.index(p - 1)) % p;
        let mut dominated = pr.clone();
        let mode = sampler.index(3);
        for k in 0..pr.num_experts() {
            for l in 0..pr.num_criteria() {
                let base = dominated.evaluations[k][j][l];
                dominated.evaluations[k][i][l] = match mode {
                    0 => (base + 0.1).min(1.0),
                    1 => base,
                    _ => sampler.range(base, 1.0),
                };
            }
        }
        let out = model.run_on(&dominated)?;
        let holds = model.order.compare(&out.scores[j], &out.scores[i])? != Ordering::Greater;
        let tie_ok = mode != 1 || out.scores[i] == out.scores[j];
        cases.push((!holds || !tie_ok).then(|| {
            json!({"dominating": i + 1, "dominated": j + 1, "mode": mode,
                   "s_dominating": out.scores[i].components(), "s_dominated": out.scores[j].components()})
        }));
    }
    Ok(CompatibilityReport::from_cases(Axiom::Domination, Some(sampler.seed()), cases))
}

/// Relabels experts (always), alternatives, and criteria (carrying the
/// criterion weights along), reruns, and checks that the ranking is the
/// original one up to the relabeling.
pub fn check_indexation_insensitivity(model: &Model, sampler: &mut Sampler, trials: usize) -> Result<CompatibilityReport> {
    let pr = &model.problem;
    let (p, m, n) = (pr.num_alternatives(), pr.num_criteria(), pr.num_experts());
    let base = model.run()?;
    let base_levels = base.ranking.levels(p);
    let mut cases = Vec::with_capacity(trials);
    for t in 0..trials {
        let rho_n = sampler.permutation(n);
        let rho_p = if t % 3 == 0 { Permutation::identity(p) } else { sampler.permutation(p) };
        let rho_m = if t % 3 == 1 { Permutation::identity(m) } else { sampler.permutation(m) };

        let mut relabeled = pr.clone();
        relabeled.experts = rho_n.apply(&pr.experts)?;
        relabeled.alternatives = rho_p.apply(&pr.alternatives)?;
        relabeled.criteria = rho_m.apply(&pr.criteria)?;
        relabeled.evaluations = rho_n
            .apply(&pr.evaluations)?
            .into_iter()
            .map(|matrix| {
                rho_p
                    .apply(&matrix)?
                    .into_iter()
                    .map(|row| rho_m.apply(&row))
                    .collect::<Result<Vec<_>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        let weights = WeightingVector::new(rho_m.apply(model.weights.weights())?)?;
        relabeled.weights = Some(weights.weights().to_vec());
        let aggregator = match model.aggregator.spec() {
            NDimAggregationSpec::WeightedAverage { .. } => model.aggregator.with_weights(weights.clone())?,
            _ => model.aggregator.clone(),
        };
        let relabeled_model = Model::from_parts(relabeled, weights, model.order.clone(), aggregator);
        let out = relabeled_model.run()?;
        let levels = out.ranking.levels(p);
        // alternative rho_p(i) sits at position i after relabeling
        let mapped_back: Vec<usize> = {
            let mut v = vec![0; p];
            for (pos, &orig) in rho_p.zero_based().iter().enumerate() {
                v[orig] = levels[pos];
            }
            v
        };
        cases.push((mapped_back != base_levels).then(|| {
            json!({"rho_experts": rho_n.one_based(), "rho_alternatives": rho_p.one_based(),
                   "rho_criteria": rho_m.one_based(), "baseline": base.ranking.notation(&pr.alternatives),
                   "relabeled": out.ranking.notation(&relabeled_model.problem.alternatives)})
        }));
    }
    Ok(CompatibilityReport::from_cases(Axiom::IndexationInsensitivity, Some(sampler.seed()), cases))
}

/// The three principles over `problems` random problems per aggregator
/// family, `per_problem` perturbations each. One report per principle; a
/// failing report's witness names the problem that broke it.
pub fn check_principles(seed: u64, problems: usize, per_problem: usize, families: &[AggregatorFamily]) -> Result<Vec<CompatibilityReport>> {
    let root = Sampler::new(seed);
    let mut out = Vec::new();
    for (axiom, label) in [(Axiom::Increasingness, 1u64), (Axiom::Domination, 2), (Axiom::IndexationInsensitivity, 3)] {
        let mut samples = 0;
        let mut failure = None;
        'problems: for (f, &family) in families.iter().enumerate() {
            for t in 0..problems {
                let mut s = root.fork(label * 1_000_003 + (f * problems + t) as u64);
                let model = random_model(&mut s, ProblemShape::default(), family)?;
                let r = match axiom {
                    Axiom::Increasingness => check_increasingness(&model, &mut s, per_problem)?,
                    Axiom::Domination => check_domination(&model, &mut s, per_problem)?,
                    _ => check_indexation_insensitivity(&model, &mut s, per_problem)?,
                };
                samples += r.samples;
                if !r.holds {
                    failure = Some(json!({"family": family, "problem": model.problem, "witness": r.witness}));
                    break 'problems;
                }
            }
        }
        out.push(match failure {
            Some(w) => CompatibilityReport::fail(axiom, w, Some(seed), samples),
            None => CompatibilityReport::pass(axiom, Some(seed), samples),
        });
    }
    Ok(out)
}
