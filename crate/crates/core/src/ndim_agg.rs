//! m-ary n-dimensional aggregation functions `L_n([0,1])^m → L_n([0,1])`
//! with respect to an admissible order, and the sampled classification
//! battery (conjunctive, disjunctive, average, mixed, idempotent, strict,
//! internal, symmetric).
//!
//! Three constructions are available:
//!
//! * the weighted average `Σ_j w_j ⊙ x_j`, folded with `⊕` left to right;
//! * the OWA `Σ_j w_j ⊙ x_(j)` after sorting the arguments descending
//!   under the order;
//! * the componentwise lift `(A_1(π_1(x_1),…), …, A_n(π_n(x_1),…))` of scalar
//!   aggregations ordered by dominance.
//!
//! The OWA is only an aggregation function when the order makes
//! `⟨L_n, ⊕, ⊙⟩` an ordered semi-vector space, so construction runs the
//! compatibility checks and refuses orders that fail them. The weighted
//! average is built anyway and carries the failed reports as warnings.
//!
//! Sampled checks compare floating-point outputs against order bounds after
//! snapping components that agree within [`IDENTITY_TOLERANCE`], so that a
//! weighted sum like `0.2341·0.3 + … + 0.2004·0.3` still counts as `0.3`.

use std::cmp::Ordering;

use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::ndim::{NDimInterval, UnitValue, WeightingVector};
use crate::orders::{
    compatibility_probes, max_under, min_under, verify_admissibility, AdmissibleOrder, AdmissibleOrderSpec,
    TotalOrder,
};
use crate::report::{Axiom, CompatibilityReport};
use crate::sampling::Sampler;
use crate::scalar_agg::{dominates, ScalarAggregation, ScalarAggregationSpec};
use crate::semivector::{check_order_compatibility, scalar_mul, vec_add, IDENTITY_TOLERANCE};

const GATE_SEED: u64 = 0x0A7E;
const GATE_SAMPLES: usize = 500;
const DOMINANCE_SEED: u64 = 0xD0_1417;
const DOMINANCE_SAMPLES: usize = 512;

/// Serializable description. `omega` falls back to the caller's default
/// weights (the criterion weights in a decision problem) and the OWA `order`
/// to the caller's order.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "name")]
pub enum NDimAggregationSpec {
    #[serde(rename = "ndimWeightedAverage")]
    WeightedAverage {
        #[serde(default, skip_serializing_if = "Option::is_none")]
        omega: Option<WeightingVector>,
    },
    #[serde(rename = "ndimOWA")]
    Owa {
        #[serde(default, skip_serializing_if = "Option::is_none")]
        omega: Option<WeightingVector>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        order: Option<AdmissibleOrderSpec>,
    },
    #[serde(rename = "lift")]
    Lift { components: Vec<ScalarAggregationSpec> },
}

impl NDimAggregationSpec {
    pub fn name(&self) -> &'static str {
        match self {
            Self::WeightedAverage { .. } => "ndimWeightedAverage",
            Self::Owa { .. } => "ndimOWA",
            Self::Lift { .. } => "lift",
        }
    }
}

/// Anything that maps `m` elements of `L_n` to one, with an attached order.
/// The classification checks work on this trait so tests can feed them
/// hand-made functions.
pub trait NDimFunction {
    fn name(&self) -> String;
    fn arity(&self) -> usize;
    fn order(&self) -> &AdmissibleOrder;
    fn evaluate(&self, args: &[NDimInterval]) -> Result<NDimInterval>;

    fn dim(&self) -> usize {
        self.order().dim()
    }
}

#[derive(Clone, Debug, PartialEq)]
enum Kind {
    WeightedAverage(WeightingVector),
    Owa(WeightingVector),
    Lift(Vec<ScalarAggregation>),
}

/// A validated n-dimensional aggregation.
#[derive(Clone, Debug, PartialEq)]
pub struct NDimAggregation {
    kind: Kind,
    arity: usize,
    order: AdmissibleOrder,
    warnings: Vec<CompatibilityReport>,
}

/// Admissibility, SV8 and SV9 for `order`, with the fixed gate seed.
pub fn order_gate(order: &AdmissibleOrder) -> Result<Vec<CompatibilityReport>> {
    let n = order.dim();
    let sampler = Sampler::new(GATE_SEED);
    let admissible = verify_admissibility(order, n, &mut sampler.fork(1), GATE_SAMPLES)?;
    let probes = compatibility_probes(order.spec());
    let (sv8, sv9) = check_order_compatibility(order, n, &probes, &mut sampler.fork(2), GATE_SAMPLES)?;
    Ok(vec![admissible, sv8, sv9])
}

impl NDimAggregation {
    /// Resolves a spec against a context order, default weights and arity.
    pub fn from_spec(
        spec: &NDimAggregationSpec,
        order: &AdmissibleOrder,
        default_omega: Option<&WeightingVector>,
        arity: Option<usize>,
    ) -> Result<Self> {
        let pick_omega = |omega: &Option<WeightingVector>| {
            omega
                .clone()
                .or_else(|| default_omega.cloned())
                .ok_or_else(|| Error::InvalidParameter(format!("{} needs omega", spec.name())))
        };
        let agg = match spec {
            NDimAggregationSpec::WeightedAverage { omega } => Self::weighted_average(pick_omega(omega)?, order.clone())?,
            NDimAggregationSpec::Owa { omega, order: own } => {
                let order = match own {
                    Some(s) => AdmissibleOrder::new(s.clone())?,
                    None => order.clone(),
                };
                Self::owa(pick_omega(omega)?, order)?
            }
            NDimAggregationSpec::Lift { components } => {
                let m = match arity.or_else(|| components.iter().find_map(|c| c.intrinsic_arity())) {
                    Some(m) => m,
                    None => return Err(Error::InvalidParameter("lift needs an explicit arity".into())),
                };
                let built = components
                    .iter()
                    .map(|c| ScalarAggregation::new(c.clone(), Some(m)))
                    .collect::<Result<Vec<_>>>()?;
                Self::lift(built, order.clone())?
            }
        };
        if let Some(m) = arity {
            if agg.arity != m {
                return Err(Error::ArityMismatch {
                    expected: m,
                    found: agg.arity,
                });
            }
        }
        Ok(agg)
    }

    /// `M_ω`: built for any order; failed gate checks become warnings.
    pub fn weighted_average(omega: WeightingVector, order: AdmissibleOrder) -> Result<Self> {
        let warnings = order_gate(&order)?.into_iter().filter(|r| !r.holds).collect();
        Ok(NDimAggregation {
            arity: omega.len(),
            kind: Kind::WeightedAverage(omega),
            order,
            warnings,
        })
    }

    /// The same aggregation with other weights of the same length. The gate
    /// outcome depends only on the order, so it is carried over.
    pub fn with_weights(&self, omega: WeightingVector) -> Result<Self> {
        if omega.len() != self.arity {
            return Err(Error::ArityMismatch {
                expected: self.arity,
                found: omega.len(),
            });
        }
        let kind = match &self.kind {
            Kind::WeightedAverage(_) => Kind::WeightedAverage(omega),
            Kind::Owa(_) => Kind::Owa(omega),
            _ => return Err(Error::InvalidParameter("only weighted aggregations can be reweighted".into())),
        };
        Ok(NDimAggregation {
            kind,
            ..self.clone()
        })
    }

    /// `OWA_ω`: refuses orders that fail admissibility, SV8 or SV9.
    pub fn owa(omega: WeightingVector, order: AdmissibleOrder) -> Result<Self> {
        if let Some(failed) = order_gate(&order)?.into_iter().find(|r| !r.holds) {
            return Err(Error::IncompatibleOrder(Box::new(failed)));
        }
        Ok(Self::owa_unchecked(omega, order))
    }

    /// `OWA_ω` without the construction gate, for exploring orders
    /// where SV8 or SV9 fail.
    pub fn owa_unchecked(omega: WeightingVector, order: AdmissibleOrder) -> Self {
        NDimAggregation {
            arity: omega.len(),
            kind: Kind::Owa(omega),
            order,
            warnings: Vec::new(),
        }
    }

    /// Componentwise lift. Requires one component per dimension, a common
    /// arity, and `A_1 ≤ … ≤ A_n` on samples.
    pub fn lift(components: Vec<ScalarAggregation>, order: AdmissibleOrder) -> Result<Self> {
        let n = order.dim();
        if components.len() != n {
            return Err(Error::DimensionMismatch {
                expected: n,
                found: components.len(),
            });
        }
        let m = components[0].arity();
        if let Some(c) = components.iter().find(|c| c.arity() != m) {
            return Err(Error::ArityMismatch {
                expected: m,
                found: c.arity(),
            });
        }
        let mut sampler = Sampler::new(DOMINANCE_SEED);
        for pair in components.windows(2) {
            let report = dominates(&pair[0], &pair[1], &mut sampler, DOMINANCE_SAMPLES)?;
            if !report.holds {
                return Err(Error::DominanceViolation(Box::new(report)));
            }
        }
        Ok(NDimAggregation {
            kind: Kind::Lift(components),
            arity: m,
            order,
            warnings: Vec::new(),
        })
    }

    pub fn spec(&self) -> NDimAggregationSpec {
        match &self.kind {
            Kind::WeightedAverage(omega) => NDimAggregationSpec::WeightedAverage { omega: Some(omega.clone()) },
            Kind::Owa(omega) => NDimAggregationSpec::Owa {
                omega: Some(omega.clone()),
                order: Some(self.order.spec().clone()),
            },
            Kind::Lift(cs) => NDimAggregationSpec::Lift {
                components: cs.iter().map(|c| c.spec().clone()).collect(),
            },
        }
    }

    /// Gate checks that failed at construction (weighted average only).
    pub fn warnings(&self) -> &[CompatibilityReport] {
        &self.warnings
    }

    pub fn omega(&self) -> Option<&WeightingVector> {
        match &self.kind {
            Kind::WeightedAverage(w) | Kind::Owa(w) => Some(w),
            Kind::Lift(_) => None,
        }
    }

    fn check_args(&self, args: &[NDimInterval]) -> Result<()> {
        check_args(self.arity, self.dim(), args)
    }
}

impl Serialize for NDimAggregation {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        self.spec().serialize(serializer)
    }
}

fn check_args(arity: usize, n: usize, args: &[NDimInterval]) -> Result<()> {
    if args.len() != arity {
        return Err(Error::ArityMismatch {
            expected: arity,
            found: args.len(),
        });
    }
    if let Some(bad) = args.iter().find(|x| x.dim() != n) {
        return Err(Error::DimensionMismatch {
            expected: n,
            found: bad.dim(),
        });
    }
    Ok(())
}

/// `Σ_j w_j ⊙ x_j`, left to right, starting from `/0/`.
fn weighted_fold<'a>(omega: &WeightingVector, args: impl Iterator<Item = &'a NDimInterval>, n: usize) -> NDimInterval {
    let mut acc = NDimInterval::zero(n).expect("n >= 1");
    for (&w, x) in omega.weights().iter().zip(args) {
        let term = scalar_mul(UnitValue::new(w).expect("weights lie in [0,1]"), x);
        acc = vec_add(&acc, &term).expect("uniform dimension");
    }
    acc
}

/// Stable insertion sort, descending under `order`.
fn sort_descending<'a>(order: &dyn TotalOrder, args: &'a [NDimInterval]) -> Result<Vec<&'a NDimInterval>> {
    let mut sorted: Vec<&NDimInterval> = Vec::with_capacity(args.len());
    for x in args {
        let mut at = sorted.len();
        while at > 0 && order.compare(sorted[at - 1], x)? == Ordering::Less {
            at -= 1;
        }
        sorted.insert(at, x);
    }
    Ok(sorted)
}

impl NDimFunction for NDimAggregation {
    fn name(&self) -> String {
        match &self.kind {
            Kind::WeightedAverage(_) => "ndimWeightedAverage".into(),
            Kind::Owa(_) => "ndimOWA".into(),
            Kind::Lift(cs) => format!("lift({})", cs.iter().map(|c| c.name()).collect::<Vec<_>>().join(",")),
        }
    }

    fn arity(&self) -> usize {
        self.arity
    }

    fn order(&self) -> &AdmissibleOrder {
        &self.order
    }

    fn evaluate(&self, args: &[NDimInterval]) -> Result<NDimInterval> {
        self.check_args(args)?;
        let n = self.dim();
        match &self.kind {
            Kind::WeightedAverage(omega) => Ok(weighted_fold(omega, args.iter(), n)),
            Kind::Owa(omega) => {
                let sorted = sort_descending(&self.order, args)?;
                Ok(weighted_fold(omega, sorted.into_iter(), n))
            }
            Kind::Lift(components) => {
                let mut out = Vec::with_capacity(n);
                for (i, a) in components.iter().enumerate() {
                    let column: Vec<f64> = args.iter().map(|x| x.components()[i]).collect();
                    let v = a.evaluate(&column)?;
                    // a rounding dip below the previous component is not a dominance failure
                    let v = match out.last() {
                        Some(&prev) if v < prev && prev - v <= IDENTITY_TOLERANCE => prev,
                        _ => v,
                    };
                    out.push(v);
                }
                NDimInterval::new(out.clone()).map_err(|_| {
                    Error::Contract(format!("lift produced an unsorted tuple {out:?}; the component dominance chain does not hold here"))
                })
            }
        }
    }
}

/// `⋏` or `⋎` of the arguments as an m-ary function.
#[derive(Clone, Debug)]
pub struct OrderExtremum {
    order: AdmissibleOrder,
    arity: usize,
    maximum: bool,
}

impl OrderExtremum {
    pub fn min(order: AdmissibleOrder, arity: usize) -> Self {
        OrderExtremum { order, arity, maximum: false }
    }

    pub fn max(order: AdmissibleOrder, arity: usize) -> Self {
        OrderExtremum { order, arity, maximum: true }
    }
}

impl NDimFunction for OrderExtremum {
    fn name(&self) -> String {
        if self.maximum { "maxUnder" } else { "minUnder" }.into()
    }

    fn arity(&self) -> usize {
        self.arity
    }

    fn order(&self) -> &AdmissibleOrder {
        &self.order
    }

    fn evaluate(&self, args: &[NDimInterval]) -> Result<NDimInterval> {
        check_args(self.arity, self.dim(), args)?;
        if self.maximum {
            max_under(&self.order, args)
        } else {
            min_under(&self.order, args)
        }
    }
}

fn nd(x: &NDimInterval) -> Value {
    json!(x.components())
}

fn nds(xs: &[NDimInterval]) -> Value {
    Value::Array(xs.iter().map(nd).collect())
}

/// `a` with every component that lies within [`IDENTITY_TOLERANCE`] of the
/// matching component of `reference` replaced by it.
fn snap(a: &NDimInterval, reference: &NDimInterval) -> NDimInterval {
    let v: Vec<f64> = a
        .components()
        .iter()
        .zip(reference.components())
        .map(|(&p, &q)| if (p - q).abs() <= IDENTITY_TOLERANCE { q } else { p })
        .collect();
    NDimInterval::sigma(&v).expect("nonempty")
}

/// `a ⪯ b` once rounding-level differences from `b` are ignored.
pub fn precedes_within(order: &dyn TotalOrder, a: &NDimInterval, b: &NDimInterval) -> Result<bool> {
    Ok(order.compare(&snap(a, b), b)? != Ordering::Greater)
}

/// Componentwise equality within [`IDENTITY_TOLERANCE`].
pub fn approx_equal(a: &NDimInterval, b: &NDimInterval) -> bool {
    a.dim() == b.dim()
        && a.components()
            .iter()
            .zip(b.components())
            .all(|(p, q)| (p - q).abs() <= IDENTITY_TOLERANCE)
}

fn random_args(sampler: &mut Sampler, m: usize, n: usize) -> Vec<NDimInterval> {
    (0..m).map(|_| sampler.ndim_mixed(n)).collect()
}

/// Outcome of [`classify`]. `mixed` is derived: none of conjunctive,
/// disjunctive, average held on the samples.
#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct Classification {
    pub function: String,
    pub order: AdmissibleOrderSpec,
    pub boundary: CompatibilityReport,
    pub monotone: CompatibilityReport,
    pub conjunctive: CompatibilityReport,
    pub disjunctive: CompatibilityReport,
    pub average: CompatibilityReport,
    pub mixed: bool,
    pub idempotent: CompatibilityReport,
    pub strict: CompatibilityReport,
    pub internal: CompatibilityReport,
    pub symmetric: CompatibilityReport,
}

/// `F(/0/,…) = /0/` and `F(/1/,…) = /1/`.
pub fn check_boundary(f: &dyn NDimFunction) -> Result<CompatibilityReport> {
    let n = f.dim();
    let mut cases = Vec::new();
    for target in [NDimInterval::zero(n)?, NDimInterval::one(n)?] {
        let got = f.evaluate(&vec![target.clone(); f.arity()])?;
        cases.push((!approx_equal(&got, &target)).then(|| json!({"args": nd(&target), "F": nd(&got)})));
    }
    Ok(CompatibilityReport::from_cases(Axiom::Boundary, None, cases))
}

/// Replacing one argument by an order-larger one never order-decreases `F`.
pub fn check_monotone(f: &dyn NDimFunction, sampler: &mut Sampler, trials: usize) -> Result<CompatibilityReport> {
    let (m, n, order) = (f.arity(), f.dim(), f.order());
    let mut cases = Vec::with_capacity(trials);
    for _ in 0..trials {
        let args = random_args(sampler, m, n);
        let j = sampler.index(m);
        let y = if sampler.coin(0.5) { sampler.ndim_mixed(n) } else { sampler.chain_above(&args[j]) };
        let (lo, hi) = match order.compare(&args[j], &y)? {
            Ordering::Greater => (y, args[j].clone()),
            _ => (args[j].clone(), y),
        };
        let mut a = args.clone();
        a[j] = lo;
        let mut b = args;
        b[j] = hi;
        let (fa, fb) = (f.evaluate(&a)?, f.evaluate(&b)?);
        cases.push((!precedes_within(order, &fa, &fb)?).then(|| {
            json!({"args": nds(&a), "index": j + 1, "replacement": nd(&b[j]), "F(args)": nd(&fa), "F(replaced)": nd(&fb)})
        }));
    }
    Ok(CompatibilityReport::from_cases(Axiom::Monotonicity, Some(sampler.seed()), cases))
}

/// `F(x,…,x) = x`.
pub fn check_idempotent(f: &dyn NDimFunction, sampler: &mut Sampler, trials: usize) -> Result<CompatibilityReport> {
    let mut cases = Vec::with_capacity(trials);
    for _ in 0..trials {
        let x = sampler.ndim_mixed(f.dim());
        let got = f.evaluate(&vec![x.clone(); f.arity()])?;
        cases.push((!approx_equal(&got, &x)).then(|| json!({"x": nd(&x), "F(x,…,x)": nd(&got)})));
    }
    Ok(CompatibilityReport::from_cases(Axiom::Idempotence, Some(sampler.seed()), cases))
}

enum Bound {
    Below,
    Above,
    Between,
}

fn check_bound(f: &dyn NDimFunction, bound: Bound, axiom: Axiom, sampler: &mut Sampler, trials: usize) -> Result<CompatibilityReport> {
    let order = f.order();
    let mut cases = Vec::with_capacity(trials);
    for i in 0..trials {
        let args = if i % 4 == 0 {
            let x = sampler.ndim_mixed(f.dim());
            vec![x; f.arity()]
        } else {
            random_args(sampler, f.arity(), f.dim())
        };
        let got = f.evaluate(&args)?;
        let lo = min_under(order, &args)?;
        let hi = max_under(order, &args)?;
        let ok = match bound {
            Bound::Below => precedes_within(order, &got, &lo)?,
            Bound::Above => precedes_within(order, &hi, &got)?,
            Bound::Between => precedes_within(order, &lo, &got)? && precedes_within(order, &got, &hi)?,
        };
        cases.push((!ok).then(|| json!({"args": nds(&args), "F": nd(&got), "minUnder": nd(&lo), "maxUnder": nd(&hi)})));
    }
    Ok(CompatibilityReport::from_cases(axiom, Some(sampler.seed()), cases))
}

/// `F(x⃗) ⪯ ⋏x⃗`.
pub fn check_conjunctive(f: &dyn NDimFunction, sampler: &mut Sampler, trials: usize) -> Result<CompatibilityReport> {
    check_bound(f, Bound::Below, Axiom::Conjunctive, sampler, trials)
}

/// `⋎x⃗ ⪯ F(x⃗)`.
pub fn check_disjunctive(f: &dyn NDimFunction, sampler: &mut Sampler, trials: usize) -> Result<CompatibilityReport> {
    check_bound(f, Bound::Above, Axiom::Disjunctive, sampler, trials)
}

/// `⋏x⃗ ⪯ F(x⃗) ⪯ ⋎x⃗`.
pub fn check_average(f: &dyn NDimFunction, sampler: &mut Sampler, trials: usize) -> Result<CompatibilityReport> {
    check_bound(f, Bound::Between, Axiom::Average, sampler, trials)
}

/// Raising one argument strictly (under the order) raises `F` strictly.
/// Cases whose other terms could saturate `⊕` are skipped when `guard` is
/// set: the partial sum `z` must satisfy `π_n(z) ≤ 1 − w_t`.
fn check_strict_impl(
    f: &dyn NDimFunction,
    guard: Option<&WeightingVector>,
    sampler: &mut Sampler,
    trials: usize,
) -> Result<CompatibilityReport> {
    let (m, n, order) = (f.arity(), f.dim(), f.order());
    let mut cases = Vec::with_capacity(trials);
    let mut attempts = 0;
    while cases.len() < trials && attempts < trials * 20 {
        attempts += 1;
        let args = random_args(sampler, m, n);
        let t = sampler.index(m);
        let y = sampler.ndim_mixed(n);
        let (lo, hi) = match order.compare(&args[t], &y)? {
            Ordering::Less => (args[t].clone(), y),
            Ordering::Greater => (y, args[t].clone()),
            Ordering::Equal => continue,
        };
        if let Some(omega) = guard {
            let rest: f64 = (0..m)
                .filter(|&j| j != t)
                .map(|j| omega.weights()[j] * args[j].components()[n - 1])
                .sum();
            if rest > 1.0 - omega.weights()[t] {
                continue;
            }
        }
        let mut a = args.clone();
        a[t] = lo;
        let mut b = args;
        b[t] = hi;
        let (fa, fb) = (f.evaluate(&a)?, f.evaluate(&b)?);
        cases.push((order.compare(&fa, &fb)? != Ordering::Less).then(|| {
            json!({"args": nds(&a), "index": t + 1, "replacement": nd(&b[t]), "F(args)": nd(&fa), "F(replaced)": nd(&fb)})
        }));
    }
    Ok(CompatibilityReport::from_cases(Axiom::Strictness, Some(sampler.seed()), cases))
}

pub fn check_strict(f: &dyn NDimFunction, sampler: &mut Sampler, trials: usize) -> Result<CompatibilityReport> {
    check_strict_impl(f, None, sampler, trials)
}

/// `F(x⃗) ∈ {x_1,…,x_m}`, exactly.
pub fn check_internal(f: &dyn NDimFunction, sampler: &mut Sampler, trials: usize) -> Result<CompatibilityReport> {
    let mut cases = Vec::with_capacity(trials);
    for _ in 0..trials {
        let args = random_args(sampler, f.arity(), f.dim());
        let got = f.evaluate(&args)?;
        cases.push((!args.contains(&got)).then(|| json!({"args": nds(&args), "F": nd(&got)})));
    }
    Ok(CompatibilityReport::from_cases(Axiom::Internality, Some(sampler.seed()), cases))
}

/// `F(x⃗) = F(x⃗∘ρ)` for random permutations `ρ` of the arguments.
pub fn check_symmetric(f: &dyn NDimFunction, sampler: &mut Sampler, trials: usize) -> Result<CompatibilityReport> {
    let mut cases = Vec::with_capacity(trials);
    for _ in 0..trials {
        let args = random_args(sampler, f.arity(), f.dim());
        let rho = sampler.permutation(f.arity());
        let permuted = rho.apply(&args)?;
        let (a, b) = (f.evaluate(&args)?, f.evaluate(&permuted)?);
        cases.push((!approx_equal(&a, &b)).then(|| {
            json!({"args": nds(&args), "rho": rho.one_based(), "F(args)": nd(&a), "F(permuted)": nd(&b)})
        }));
    }
    Ok(CompatibilityReport::from_cases(Axiom::Symmetry, Some(sampler.seed()), cases))
}

/// Runs the whole battery with independent sample streams.
pub fn classify(f: &dyn NDimFunction, sampler: &Sampler, trials: usize) -> Result<Classification> {
    let conjunctive = check_conjunctive(f, &mut sampler.fork(11), trials)?;
    let disjunctive = check_disjunctive(f, &mut sampler.fork(12), trials)?;
    let average = check_average(f, &mut sampler.fork(13), trials)?;
    let mixed = !conjunctive.holds && !disjunctive.holds && !average.holds;
    Ok(Classification {
        function: f.name(),
        order: f.order().spec().clone(),
        boundary: check_boundary(f)?,
        monotone: check_monotone(f, &mut sampler.fork(10), trials)?,
        conjunctive,
        disjunctive,
        average,
        mixed,
        idempotent: check_idempotent(f, &mut sampler.fork(14), trials)?,
        strict: check_strict(f, &mut sampler.fork(15), trials)?,
        internal: check_internal(f, &mut sampler.fork(16), trials)?,
        symmetric: check_symmetric(f, &mut sampler.fork(17), trials)?,
    })
}

/// Idempotence and the average sandwich, sampled separately, and whether
/// their verdicts agree.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct IdempotentAverageReport {
    pub idempotent: CompatibilityReport,
    pub average: CompatibilityReport,
    pub biconditional: CompatibilityReport,
}

pub fn check_idempotent_iff_average(f: &dyn NDimFunction, sampler: &Sampler, trials: usize) -> Result<IdempotentAverageReport> {
    let idempotent = check_idempotent(f, &mut sampler.fork(21), trials)?;
    let average = check_average(f, &mut sampler.fork(22), trials)?;
    let samples = idempotent.samples + average.samples;
    let biconditional = if idempotent.holds == average.holds {
        CompatibilityReport::pass(Axiom::IdempotentIffAverage, Some(sampler.seed()), samples)
    } else {
        CompatibilityReport::fail(
            Axiom::IdempotentIffAverage,
            json!({"idempotent": idempotent.holds, "average": average.holds,
                   "witness": idempotent.witness.clone().or_else(|| average.witness.clone())}),
            Some(sampler.seed()),
            samples,
        )
    };
    Ok(IdempotentAverageReport { idempotent, average, biconditional })
}

/// The four sampled properties of `M_ω` under `⪯_τ`.
///
/// `additive` samples arbitrary arguments and fails once `⊕` saturates;
/// `additiveUnsaturated` keeps every sum below 1.
#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct MwProperties {
    pub strict: CompatibilityReport,
    pub symmetric: CompatibilityReport,
    pub additive: CompatibilityReport,
    pub additive_unsaturated: CompatibilityReport,
    pub homogeneous: CompatibilityReport,
}

/// The argument list `/0/,…,/1/,…,/0/` with `/1/` at position `j`.
fn basis_args(m: usize, n: usize, j: usize) -> Vec<NDimInterval> {
    (0..m)
        .map(|k| if k == j { NDimInterval::one(n) } else { NDimInterval::zero(n) }.expect("n >= 1"))
        .collect()
}

pub fn check_mw_properties(
    omega: &WeightingVector,
    tau: &crate::ndim::Permutation,
    sampler: &Sampler,
    trials: usize,
) -> Result<MwProperties> {
    let order = AdmissibleOrder::lex(tau.clone())?;
    let (m, n) = (omega.len(), tau.len());
    let f = NDimAggregation::weighted_average(omega.clone(), order.clone())?;
    let seed = Some(sampler.seed());

    // strictness: every basis argument must lift F above /0/ first
    let zero = NDimInterval::zero(n)?;
    let mut strict = None;
    for j in 0..m {
        let got = f.evaluate(&basis_args(m, n, j))?;
        if order.compare(&zero, &got)? != Ordering::Less {
            strict = Some(CompatibilityReport::fail(
                Axiom::Strictness,
                json!({"index": j + 1, "args": nds(&basis_args(m, n, j)), "F(args)": nd(&got), "F(/0/,…)": nd(&zero)}),
                seed,
                j + 1,
            ));
            break;
        }
    }
    let strict = match strict {
        Some(r) => r,
        None => check_strict_impl(&f, Some(omega), &mut sampler.fork(31), trials)?,
    };

    let mut symmetric = None;
    'pairs: for j in 0..m {
        for k in j + 1..m {
            if omega.weights()[j] != omega.weights()[k] {
                let (a, b) = (basis_args(m, n, j), basis_args(m, n, k));
                symmetric = Some(CompatibilityReport::fail(
                    Axiom::Symmetry,
                    json!({"args": nds(&a), "permuted": nds(&b), "rho": [j + 1, k + 1],
                           "F(args)": nd(&f.evaluate(&a)?), "F(permuted)": nd(&f.evaluate(&b)?)}),
                    seed,
                    1,
                ));
                break 'pairs;
            }
        }
    }
    let symmetric = match symmetric {
        Some(r) => r,
        None => check_symmetric(&f, &mut sampler.fork(32), trials)?,
    };

    let additivity = |s: &mut Sampler, bound: Option<f64>| -> Result<CompatibilityReport> {
        let mut cases = Vec::with_capacity(trials);
        for _ in 0..trials {
            let draw = |s: &mut Sampler| match bound {
                Some(b) => s.ndim_bounded(n, b),
                None => s.ndim_mixed(n),
            };
            let xs: Vec<_> = (0..m).map(|_| draw(s)).collect();
            let ys: Vec<_> = (0..m).map(|_| draw(s)).collect();
            let sums = xs.iter().zip(&ys).map(|(x, y)| vec_add(x, y)).collect::<Result<Vec<_>>>()?;
            let lhs = f.evaluate(&sums)?;
            let rhs = vec_add(&f.evaluate(&xs)?, &f.evaluate(&ys)?)?;
            cases.push((!approx_equal(&lhs, &rhs)).then(|| {
                json!({"x": nds(&xs), "y": nds(&ys), "F(x+y)": nd(&lhs), "F(x)+F(y)": nd(&rhs)})
            }));
        }
        Ok(CompatibilityReport::from_cases(Axiom::Additivity, Some(s.seed()), cases))
    };
    let additive = additivity(&mut sampler.fork(33), None)?;
    let additive_unsaturated = additivity(&mut sampler.fork(34), Some(0.5))?;

    let mut s = sampler.fork(35);
    let mut cases = Vec::with_capacity(trials);
    for _ in 0..trials {
        let xs = random_args(&mut s, m, n);
        let lambda = s.unit_value();
        let scaled: Vec<_> = xs.iter().map(|x| scalar_mul(lambda, x)).collect();
        let lhs = f.evaluate(&scaled)?;
        let rhs = scalar_mul(lambda, &f.evaluate(&xs)?);
        cases.push((!approx_equal(&lhs, &rhs)).then(|| {
            json!({"lambda": lambda.get(), "args": nds(&xs), "F(lambda*x)": nd(&lhs), "lambda*F(x)": nd(&rhs)})
        }));
    }
    let homogeneous = CompatibilityReport::from_cases(Axiom::Homogeneity, Some(s.seed()), cases);

    Ok(MwProperties {
        strict,
        symmetric,
        additive,
        additive_unsaturated,
        homogeneous,
    })
}
