//! m-ary aggregation functions `[0,1]^m → [0,1]` and samplers for their
//! classification (dominance, homogeneity, strictness, internality).
//!
//! Every instance is checked at construction: the boundary conditions
//! `A(0,…,0) = 0`, `A(1,…,1) = 1` must hold, and monotonicity is spot-checked
//! on all corner points (for `m ≤ 10`) and 256 seeded pseudo-random chains.
//! The weighted min/max families are tagged classification-exempt: under the
//! "value at the extremizing index of `w_i·x_i`" reading they are not monotone
//! for every weighting vector, so their monotonicity finding is recorded on
//! the instance instead of rejecting it.

use std::cmp::Ordering;

use serde::{Deserialize, Serialize};
use serde_json::json;

use crate::error::{Error, Result};
use crate::ndim::WeightingVector;
use crate::report::{Axiom, CompatibilityReport};
use crate::sampling::Sampler;
use crate::semivector::IDENTITY_TOLERANCE;

const REGISTRATION_SAMPLES: usize = 256;
const REGISTRATION_SEED: u64 = 0x5EED_A66;
const CORNER_LIMIT: usize = 10;
const BOUNDARY_TOLERANCE: f64 = 1e-9;

/// Parameterized description of an aggregation family; the registry key is
/// the `name` tag.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "name")]
pub enum ScalarAggregationSpec {
    /// `P^r(x) = (∏(x_i^r + 1) − 1) / (2^m − 1)`.
    #[serde(rename = "pR")]
    PowerProduct { r: f64 },
    #[serde(rename = "min")]
    Min,
    #[serde(rename = "max")]
    Max,
    #[serde(rename = "arithmeticMean")]
    ArithmeticMean,
    #[serde(rename = "weightedMin")]
    WeightedMin { omega: WeightingVector },
    #[serde(rename = "weightedMax")]
    WeightedMax { omega: WeightingVector },
    #[serde(rename = "weightedAverage")]
    WeightedAverage { omega: WeightingVector },
    #[serde(rename = "geometricMean")]
    GeometricMean { omega: WeightingVector },
    #[serde(rename = "maxExp")]
    MaxExp { e: Vec<f64> },
    #[serde(rename = "owa")]
    Owa { omega: WeightingVector },
}

impl ScalarAggregationSpec {
    pub fn name(&self) -> &'static str {
        match self {
            Self::PowerProduct { .. } => "pR",
            Self::Min => "min",
            Self::Max => "max",
            Self::ArithmeticMean => "arithmeticMean",
            Self::WeightedMin { .. } => "weightedMin",
            Self::WeightedMax { .. } => "weightedMax",
            Self::WeightedAverage { .. } => "weightedAverage",
            Self::GeometricMean { .. } => "geometricMean",
            Self::MaxExp { .. } => "maxExp",
            Self::Owa { .. } => "owa",
        }
    }

    /// The arity fixed by the parameters, if any.
    pub fn intrinsic_arity(&self) -> Option<usize> {
        match self {
            Self::WeightedMin { omega }
            | Self::WeightedMax { omega }
            | Self::WeightedAverage { omega }
            | Self::GeometricMean { omega }
            | Self::Owa { omega } => Some(omega.len()),
            Self::MaxExp { e } => Some(e.len()),
            Self::PowerProduct { .. } | Self::Min | Self::Max | Self::ArithmeticMean => None,
        }
    }

    fn is_classification_exempt(&self) -> bool {
        matches!(self, Self::WeightedMin { .. } | Self::WeightedMax { .. })
    }
}

/// A validated aggregation function of fixed arity.
#[derive(Clone, Debug, PartialEq)]
pub struct ScalarAggregation {
    spec: ScalarAggregationSpec,
    arity: usize,
    monotonicity: CompatibilityReport,
}

impl Serialize for ScalarAggregation {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        self.spec.serialize(serializer)
    }
}

impl ScalarAggregation {
    /// Builds an instance. `arity` is required for the families without
    /// intrinsic arity and must agree with the parameters otherwise.
    pub fn new(spec: ScalarAggregationSpec, arity: Option<usize>) -> Result<Self> {
        let arity = match (spec.intrinsic_arity(), arity) {
            (Some(a), Some(b)) if a != b => {
                return Err(Error::ArityMismatch { expected: b, found: a });
            }
            (Some(a), _) | (None, Some(a)) => a,
            (None, None) => {
                return Err(Error::InvalidParameter(format!(
                    "{} needs an explicit arity",
                    spec.name()
                )))
            }
        };
        if arity < 1 {
            return Err(Error::InvalidParameter("arity must be at least 1".into()));
        }
        match &spec {
            ScalarAggregationSpec::PowerProduct { r } if !(r.is_finite() && *r > 0.0) => {
                return Err(Error::InvalidParameter(format!("pR needs r > 0, got {r}")));
            }
            ScalarAggregationSpec::MaxExp { e } => {
                if let Some(bad) = e.iter().find(|v| !(v.is_finite() && **v > 0.0)) {
                    return Err(Error::InvalidParameter(format!(
                        "maxExp exponents must be positive, got {bad}"
                    )));
                }
            }
            _ => {}
        }

        let mut agg = ScalarAggregation {
            spec,
            arity,
            monotonicity: CompatibilityReport::pass(Axiom::Monotonicity, None, 0),
        };
        for (corner, expected) in [(0.0, 0.0), (1.0, 1.0)] {
            let got = agg.evaluate(&vec![corner; arity])?;
            if (got - expected).abs() > BOUNDARY_TOLERANCE {
                return Err(Error::Contract(format!(
                    "{} violates the boundary condition: A({corner},…) = {got}",
                    agg.name()
                )));
            }
        }
        let report = agg.registration_monotonicity()?;
        if !report.holds && !agg.spec.is_classification_exempt() {
            return Err(Error::Contract(format!("{} is not monotone: {report}", agg.name())));
        }
        agg.monotonicity = report;
        Ok(agg)
    }

    pub fn min(arity: usize) -> Result<Self> {
        Self::new(ScalarAggregationSpec::Min, Some(arity))
    }

    pub fn max(arity: usize) -> Result<Self> {
        Self::new(ScalarAggregationSpec::Max, Some(arity))
    }

    pub fn arithmetic_mean(arity: usize) -> Result<Self> {
        Self::new(ScalarAggregationSpec::ArithmeticMean, Some(arity))
    }

    pub fn power_product(r: f64, arity: usize) -> Result<Self> {
        Self::new(ScalarAggregationSpec::PowerProduct { r }, Some(arity))
    }

    pub fn weighted_min(omega: WeightingVector) -> Result<Self> {
        Self::new(ScalarAggregationSpec::WeightedMin { omega }, None)
    }

    pub fn weighted_max(omega: WeightingVector) -> Result<Self> {
        Self::new(ScalarAggregationSpec::WeightedMax { omega }, None)
    }

    pub fn weighted_average(omega: WeightingVector) -> Result<Self> {
        Self::new(ScalarAggregationSpec::WeightedAverage { omega }, None)
    }

    pub fn geometric_mean(omega: WeightingVector) -> Result<Self> {
        Self::new(ScalarAggregationSpec::GeometricMean { omega }, None)
    }

    pub fn max_exp(e: Vec<f64>) -> Result<Self> {
        Self::new(ScalarAggregationSpec::MaxExp { e }, None)
    }

    pub fn owa(omega: WeightingVector) -> Result<Self> {
        Self::new(ScalarAggregationSpec::Owa { omega }, None)
    }

    pub fn spec(&self) -> &ScalarAggregationSpec {
        &self.spec
    }

    pub fn name(&self) -> &'static str {
        self.spec.name()
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    /// Whether monotonicity findings are reported rather than enforced.
    pub fn is_classification_exempt(&self) -> bool {
        self.spec.is_classification_exempt()
    }

    /// The monotonicity spot-check performed at construction.
    pub fn monotonicity_report(&self) -> &CompatibilityReport {
        &self.monotonicity
    }

    pub fn evaluate(&self, xs: &[f64]) -> Result<f64> {
        if xs.len() != self.arity {
            return Err(Error::ArityMismatch {
                expected: self.arity,
                found: xs.len(),
            });
        }
        if let Some(&bad) = xs.iter().find(|v| !(0.0..=1.0).contains(*v)) {
            return Err(if bad.is_finite() {
                Error::OutOfUnitInterval(bad)
            } else {
                Error::NotFinite
            });
        }
        let value = match &self.spec {
            ScalarAggregationSpec::PowerProduct { r } => {
                let prod: f64 = xs.iter().map(|x| x.powf(*r) + 1.0).product();
                (prod - 1.0) / (2f64.powi(xs.len() as i32) - 1.0)
            }
            ScalarAggregationSpec::Min => xs.iter().copied().fold(f64::INFINITY, f64::min),
            ScalarAggregationSpec::Max => xs.iter().copied().fold(f64::NEG_INFINITY, f64::max),
            ScalarAggregationSpec::ArithmeticMean => xs.iter().sum::<f64>() / xs.len() as f64,
            ScalarAggregationSpec::WeightedMin { omega } => xs[arg_extremum(omega, xs, Ordering::Less)],
            ScalarAggregationSpec::WeightedMax { omega } => {
                xs[arg_extremum(omega, xs, Ordering::Greater)]
            }
            ScalarAggregationSpec::WeightedAverage { omega } => {
                omega.weights().iter().zip(xs).map(|(w, x)| w * x).sum()
            }
            ScalarAggregationSpec::GeometricMean { omega } => {
                // powf(0, 0) = 1, so zero-weight zero inputs are neutral
                omega.weights().iter().zip(xs).map(|(w, x)| x.powf(*w)).product()
            }
            ScalarAggregationSpec::MaxExp { e } => xs
                .iter()
                .zip(e)
                .map(|(x, e)| x.powf(*e))
                .fold(f64::NEG_INFINITY, f64::max),
            ScalarAggregationSpec::Owa { omega } => {
                let mut sorted = xs.to_vec();
                sorted.sort_by(|a, b| b.total_cmp(a));
                omega.weights().iter().zip(&sorted).map(|(w, x)| w * x).sum()
            }
        };
        Ok(value.clamp(0.0, 1.0))
    }

    fn registration_monotonicity(&self) -> Result<CompatibilityReport> {
        let mut sampler = Sampler::new(REGISTRATION_SEED);
        let mut pairs = Vec::new();
        if self.arity <= CORNER_LIMIT {
            let corners: Vec<Vec<f64>> = (0..1u32 << self.arity)
                .map(|mask| (0..self.arity).map(|i| f64::from((mask >> i) & 1)).collect())
                .collect();
            for lo in &corners {
                for hi in &corners {
                    if lo.iter().zip(hi).all(|(a, b)| a <= b) && lo != hi {
                        pairs.push((lo.clone(), hi.clone()));
                    }
                }
                // keep the corner set linear in size for large arities
                if pairs.len() > 4096 {
                    break;
                }
            }
        }
        for _ in 0..REGISTRATION_SAMPLES {
            let lo = sampler.scalars(self.arity);
            let hi = lo
                .iter()
                .map(|&v| if sampler.coin(0.5) { v } else { sampler.range(v, 1.0) })
                .collect();
            pairs.push((lo, hi));
        }
        let mut cases = Vec::with_capacity(pairs.len());
        for (lo, hi) in &pairs {
            let (a, b) = (self.evaluate(lo)?, self.evaluate(hi)?);
            cases.push((a > b + IDENTITY_TOLERANCE).then(|| json!({"x": lo, "y": hi, "A(x)": a, "A(y)": b})));
        }
        Ok(CompatibilityReport::from_cases(
            Axiom::Monotonicity,
            Some(REGISTRATION_SEED),
            cases,
        ))
    }
}

/// Index of the first position extremizing `w_i·x_i` in the direction `want`.
fn arg_extremum(omega: &WeightingVector, xs: &[f64], want: Ordering) -> usize {
    let mut best = 0;
    let mut best_val = omega.weights()[0] * xs[0];
    for (i, (w, x)) in omega.weights().iter().zip(xs).enumerate().skip(1) {
        let v = w * x;
        if v.total_cmp(&best_val) == want {
            best = i;
            best_val = v;
        }
    }
    best
}

fn check_arity(a: &ScalarAggregation, b: &ScalarAggregation) -> Result<()> {
    if a.arity() != b.arity() {
        return Err(Error::ArityMismatch {
            expected: a.arity(),
            found: b.arity(),
        });
    }
    Ok(())
}

/// `A ≤ B` on samples: does `B` dominate `A`?
pub fn dominates(a: &ScalarAggregation, b: &ScalarAggregation, sampler: &mut Sampler, trials: usize) -> Result<CompatibilityReport> {
    check_arity(a, b)?;
    let mut cases = Vec::with_capacity(trials);
    for _ in 0..trials {
        let xs = sampler.scalars(a.arity());
        let (va, vb) = (a.evaluate(&xs)?, b.evaluate(&xs)?);
        cases.push((va > vb + IDENTITY_TOLERANCE).then(|| json!({"xs": xs, "A": va, "B": vb})));
    }
    Ok(CompatibilityReport::from_cases(Axiom::Dominance, Some(sampler.seed()), cases))
}

/// `A(λx_1,…,λx_m) = λ^k A(x_1,…,x_m)` on samples.
pub fn check_homogeneity(a: &ScalarAggregation, k: f64, sampler: &mut Sampler, trials: usize) -> Result<CompatibilityReport> {
    let mut cases = Vec::with_capacity(trials);
    for _ in 0..trials {
        let xs = sampler.scalars(a.arity());
        let lambda = sampler.unit_mixed();
        let scaled: Vec<f64> = xs.iter().map(|x| lambda * x).collect();
        let lhs = a.evaluate(&scaled)?;
        let rhs = lambda.powf(k) * a.evaluate(&xs)?;
        cases.push(((lhs - rhs).abs() > IDENTITY_TOLERANCE).then(|| {
            json!({"lambda": lambda, "k": k, "xs": xs, "A(lambda*xs)": lhs, "lambda^k*A(xs)": rhs})
        }));
    }
    Ok(CompatibilityReport::from_cases(Axiom::Homogeneity, Some(sampler.seed()), cases))
}

/// Strictness: raising any single argument strictly raises the value.
/// With `on_ln` the inputs are sorted and the raised argument stays below its
/// right neighbour, i.e. strictness of the restriction to `L_m([0,1])`.
pub fn check_strict(a: &ScalarAggregation, on_ln: bool, sampler: &mut Sampler, trials: usize) -> Result<CompatibilityReport> {
    let m = a.arity();
    let mut cases = Vec::with_capacity(trials);
    while cases.len() < trials {
        let mut xs: Vec<f64> = (0..m).map(|_| sampler.unit()).collect();
        if on_ln {
            xs.sort_by(f64::total_cmp);
        }
        let i = sampler.index(m);
        let ceiling = if on_ln && i + 1 < m { xs[i + 1] } else { 1.0 };
        if ceiling <= xs[i] {
            continue;
        }
        let y = sampler.range(xs[i], ceiling);
        if y <= xs[i] {
            continue;
        }
        let mut raised = xs.clone();
        raised[i] = y;
        let (before, after) = (a.evaluate(&xs)?, a.evaluate(&raised)?);
        cases.push((before >= after).then(|| json!({"xs": xs, "index": i + 1, "y": y, "before": before, "after": after})));
    }
    Ok(CompatibilityReport::from_cases(Axiom::Strictness, Some(sampler.seed()), cases))
}

/// `A(x_1,…,x_m) ∈ {x_1,…,x_m}` on samples.
pub fn check_internal(a: &ScalarAggregation, sampler: &mut Sampler, trials: usize) -> Result<CompatibilityReport> {
    let mut cases = Vec::with_capacity(trials);
    for _ in 0..trials {
        let xs = sampler.scalars(a.arity());
        let v = a.evaluate(&xs)?;
        cases.push((!xs.contains(&v)).then(|| json!({"xs": xs, "A": v})));
    }
    Ok(CompatibilityReport::from_cases(Axiom::Internality, Some(sampler.seed()), cases))
}
