//! Admissible total orders on `L_n([0,1])`: total orders that refine the
//! product order.
//!
//! Three families are provided, all tie-broken by a position-scanning
//! lexicographic order `⪯_τ`:
//!
//! * `LexTau`: compare `π_{τ(1)}`, then `π_{τ(2)}`, …
//! * `WeightedLex`: compare `F_ω(x,y)` with `F_ω(y,x)`, where
//!   `F_ω(x,y) = Σ w_i·max(0, x_i − y_i)`.
//! * `AggLex`: compare `A(x)` with `A(y)` for a scalar aggregation `A`.
//!
//! Every comparison is exact. Two tuples compare `Equal` only when they are
//! componentwise identical.

use std::cmp::Ordering;
use std::fmt;

use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::ndim::{common_dim, NDimInterval, Permutation, WeightingVector};
use crate::report::{Axiom, CompatibilityReport};
use crate::sampling::Sampler;
use crate::scalar_agg::{ScalarAggregation, ScalarAggregationSpec};
use crate::semivector::{AdditionProbe, Probes, ScalarProbe};

/// A comparator on `L_n([0,1])` that is meant to be total.
///
/// Nothing here guarantees the laws; [`verify_admissibility`] samples them.
pub trait TotalOrder {
    fn compare(&self, x: &NDimInterval, y: &NDimInterval) -> Result<Ordering>;

    fn describe(&self) -> String;
}

type CompareFn = dyn Fn(&[f64], &[f64]) -> Ordering + Send + Sync;

/// An ad-hoc comparator, mostly for exhibiting broken orders in tests.
pub struct FnOrder {
    name: String,
    f: Box<CompareFn>,
}

impl FnOrder {
    pub fn new(name: impl Into<String>, f: impl Fn(&[f64], &[f64]) -> Ordering + Send + Sync + 'static) -> Self {
        FnOrder {
            name: name.into(),
            f: Box::new(f),
        }
    }
}

impl TotalOrder for FnOrder {
    fn compare(&self, x: &NDimInterval, y: &NDimInterval) -> Result<Ordering> {
        x.check_same_dim(y)?;
        Ok((self.f)(x.components(), y.components()))
    }

    fn describe(&self) -> String {
        self.name.clone()
    }
}

impl fmt::Debug for FnOrder {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("FnOrder").field("name", &self.name).finish()
    }
}

/// Serializable description of an admissible order.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind")]
pub enum AdmissibleOrderSpec {
    LexTau {
        tau: Permutation,
    },
    WeightedLex {
        tau: Permutation,
        omega: WeightingVector,
    },
    AggLex {
        tau: Permutation,
        agg: ScalarAggregationSpec,
    },
}

impl AdmissibleOrderSpec {
    pub fn lex_tau(tau: Permutation) -> Self {
        AdmissibleOrderSpec::LexTau { tau }
    }

    pub fn kind(&self) -> &'static str {
        match self {
            Self::LexTau { .. } => "LexTau",
            Self::WeightedLex { .. } => "WeightedLex",
            Self::AggLex { .. } => "AggLex",
        }
    }

    pub fn tau(&self) -> &Permutation {
        match self {
            Self::LexTau { tau } | Self::WeightedLex { tau, .. } | Self::AggLex { tau, .. } => tau,
        }
    }

    /// The dimension `n` the order acts on.
    pub fn dim(&self) -> usize {
        self.tau().len()
    }
}

/// A validated admissible order, ready to compare.
#[derive(Clone, Debug, PartialEq)]
pub struct AdmissibleOrder {
    spec: AdmissibleOrderSpec,
    agg: Option<ScalarAggregation>,
}

impl AdmissibleOrder {
    pub fn new(spec: AdmissibleOrderSpec) -> Result<Self> {
        let n = spec.dim();
        if n == 0 {
            return Err(Error::InvalidPermutation {
                len: 0,
                detail: "an order needs dimension at least 1".into(),
            });
        }
        let agg = match &spec {
            AdmissibleOrderSpec::LexTau { .. } => None,
            AdmissibleOrderSpec::WeightedLex { omega, .. } => {
                if omega.len() != n {
                    return Err(Error::DimensionMismatch {
                        expected: n,
                        found: omega.len(),
                    });
                }
                None
            }
            AdmissibleOrderSpec::AggLex { agg, .. } => Some(ScalarAggregation::new(agg.clone(), Some(n))?),
        };
        Ok(AdmissibleOrder { spec, agg })
    }

    pub fn lex(tau: Permutation) -> Result<Self> {
        Self::new(AdmissibleOrderSpec::LexTau { tau })
    }

    pub fn spec(&self) -> &AdmissibleOrderSpec {
        &self.spec
    }

    pub fn dim(&self) -> usize {
        self.spec.dim()
    }

    fn check_dim(&self, x: &NDimInterval) -> Result<()> {
        if x.dim() != self.dim() {
            return Err(Error::DimensionMismatch {
                expected: self.dim(),
                found: x.dim(),
            });
        }
        Ok(())
    }
}

impl TryFrom<AdmissibleOrderSpec> for AdmissibleOrder {
    type Error = Error;

    fn try_from(spec: AdmissibleOrderSpec) -> Result<Self> {
        AdmissibleOrder::new(spec)
    }
}

impl Serialize for AdmissibleOrder {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        self.spec.serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for AdmissibleOrder {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let spec = AdmissibleOrderSpec::deserialize(deserializer)?;
        AdmissibleOrder::new(spec).map_err(serde::de::Error::custom)
    }
}

impl TotalOrder for AdmissibleOrder {
    fn compare(&self, x: &NDimInterval, y: &NDimInterval) -> Result<Ordering> {
        self.check_dim(x)?;
        self.check_dim(y)?;
        match (&self.spec, &self.agg) {
            (AdmissibleOrderSpec::LexTau { tau }, _) => compare_lex_tau(tau, x, y),
            (AdmissibleOrderSpec::WeightedLex { tau, omega }, _) => compare_weighted_lex(omega, tau, x, y),
            (AdmissibleOrderSpec::AggLex { tau, .. }, Some(agg)) => compare_agg_lex(agg, tau, x, y),
            (AdmissibleOrderSpec::AggLex { .. }, None) => unreachable!("built in AdmissibleOrder::new"),
        }
    }

    fn describe(&self) -> String {
        let tau = self.spec.tau().one_based();
        match &self.spec {
            AdmissibleOrderSpec::LexTau { .. } => format!("LexTau τ={tau:?}"),
            AdmissibleOrderSpec::WeightedLex { omega, .. } => {
                format!("WeightedLex τ={tau:?} ω={:?}", omega.weights())
            }
            AdmissibleOrderSpec::AggLex { agg, .. } => format!("AggLex τ={tau:?} A={}", agg.name()),
        }
    }
}

fn check_tau(tau: &Permutation, x: &NDimInterval, y: &NDimInterval) -> Result<()> {
    x.check_same_dim(y)?;
    if tau.len() != x.dim() {
        return Err(Error::DimensionMismatch {
            expected: tau.len(),
            found: x.dim(),
        });
    }
    Ok(())
}

/// `⪯_τ`: the first position in the scan `τ(1), τ(2), …` where `x` and `y`
/// differ decides.
pub fn compare_lex_tau(tau: &Permutation, x: &NDimInterval, y: &NDimInterval) -> Result<Ordering> {
    check_tau(tau, x, y)?;
    let (xs, ys) = (x.components(), y.components());
    for &k in tau.zero_based() {
        match xs[k].total_cmp(&ys[k]) {
            Ordering::Equal => continue,
            other => return Ok(other),
        }
    }
    Ok(Ordering::Equal)
}

/// `F_ω(x,y) = Σ w_i·max(0, x_i − y_i)`.
pub fn f_omega(omega: &WeightingVector, x: &NDimInterval, y: &NDimInterval) -> Result<f64> {
    x.check_same_dim(y)?;
    omega.check_len(x.dim())?;
    Ok(omega
        .weights()
        .iter()
        .zip(x.components().iter().zip(y.components()))
        .map(|(w, (a, b))| w * (a - b).max(0.0))
        .sum())
}

/// `⪯_τ^ω`: `F_ω(x,y)` against `F_ω(y,x)`, ties broken by `⪯_τ`.
pub fn compare_weighted_lex(
    omega: &WeightingVector,
    tau: &Permutation,
    x: &NDimInterval,
    y: &NDimInterval,
) -> Result<Ordering> {
    check_tau(tau, x, y)?;
    let (fxy, fyx) = (f_omega(omega, x, y)?, f_omega(omega, y, x)?);
    match fxy.total_cmp(&fyx) {
        Ordering::Equal => compare_lex_tau(tau, x, y),
        // a smaller excess of x over y means x is the smaller element
        other => Ok(other),
    }
}

/// `⪯_A^τ`: `A(x)` against `A(y)`, ties broken by `⪯_τ`.
pub fn compare_agg_lex(
    agg: &ScalarAggregation,
    tau: &Permutation,
    x: &NDimInterval,
    y: &NDimInterval,
) -> Result<Ordering> {
    check_tau(tau, x, y)?;
    if agg.arity() != x.dim() {
        return Err(Error::ArityMismatch {
            expected: x.dim(),
            found: agg.arity(),
        });
    }
    let (ax, ay) = (agg.evaluate(x.components())?, agg.evaluate(y.components())?);
    match ax.total_cmp(&ay) {
        Ordering::Equal => compare_lex_tau(tau, x, y),
        other => Ok(other),
    }
}

fn extreme_under(order: &dyn TotalOrder, set: &[NDimInterval], keep: Ordering) -> Result<NDimInterval> {
    common_dim(set)?;
    let mut best = &set[0];
    for x in &set[1..] {
        if order.compare(x, best)? == keep {
            best = x;
        }
    }
    Ok(best.clone())
}

/// `⋏S`: the order-minimum of a finite set.
pub fn min_under(order: &dyn TotalOrder, set: &[NDimInterval]) -> Result<NDimInterval> {
    extreme_under(order, set, Ordering::Less)
}

/// `⋎S`: the order-maximum of a finite set.
pub fn max_under(order: &dyn TotalOrder, set: &[NDimInterval]) -> Result<NDimInterval> {
    extreme_under(order, set, Ordering::Greater)
}

fn nd(x: &NDimInterval) -> Value {
    json!(x.components())
}

fn ord_name(o: Ordering) -> &'static str {
    match o {
        Ordering::Less => "Less",
        Ordering::Equal => "Equal",
        Ordering::Greater => "Greater",
    }
}

/// `y` equal to `x` except at one position, moved within its sorted bounds.
fn neighbour(sampler: &mut Sampler, x: &NDimInterval) -> NDimInterval {
    let c = x.components();
    let k = sampler.index(c.len());
    let lo = if k == 0 { 0.0 } else { c[k - 1] };
    let hi = if k + 1 == c.len() { 1.0 } else { c[k + 1] };
    let mut v = c.to_vec();
    v[k] = if sampler.coin(0.5) { sampler.range(lo, hi) } else { lo.max(hi.min(sampler.grid(10))) };
    NDimInterval::new(v).expect("value kept between its neighbours")
}

/// Samples the laws of an admissible order on `L_n`: totality with
/// consistency of the two comparison directions, antisymmetry, transitivity
/// and refinement of `≤_n^p`. One report per law, in that order.
pub fn admissibility_reports(
    order: &dyn TotalOrder,
    n: usize,
    sampler: &mut Sampler,
    trials: usize,
) -> Result<Vec<CompatibilityReport>> {
    let seed = Some(sampler.seed());
    let pairs: Vec<(NDimInterval, NDimInterval)> = (0..trials)
        .map(|i| {
            let x = sampler.ndim_mixed(n);
            let y = match i % 3 {
                0 => sampler.ndim_mixed(n),
                1 => neighbour(sampler, &x),
                _ => x.clone(),
            };
            (x, y)
        })
        .collect();

    let mut totality = Vec::with_capacity(trials);
    let mut antisymmetry = Vec::with_capacity(trials);
    for (x, y) in &pairs {
        let (xy, yx) = (order.compare(x, y)?, order.compare(y, x)?);
        totality.push((xy != yx.reverse()).then(|| {
            json!({"x": nd(x), "y": nd(y), "compare(x,y)": ord_name(xy), "compare(y,x)": ord_name(yx)})
        }));
        antisymmetry.push(((xy == Ordering::Equal) != (x == y)).then(|| {
            json!({"x": nd(x), "y": nd(y), "compare(x,y)": ord_name(xy)})
        }));
    }

    let mut transitivity = Vec::with_capacity(trials);
    for i in 0..trials {
        let a = sampler.ndim_mixed(n);
        let b = if i % 2 == 0 { neighbour(sampler, &a) } else { sampler.ndim_mixed(n) };
        let c = if i % 3 == 0 { neighbour(sampler, &b) } else { sampler.ndim_mixed(n) };
        let triple = [&a, &b, &c];
        let mut witness = None;
        'perm: for (p, q, r) in [(0, 1, 2), (0, 2, 1), (1, 0, 2), (1, 2, 0), (2, 0, 1), (2, 1, 0)] {
            let (u, v, w) = (triple[p], triple[q], triple[r]);
            if order.compare(u, v)? != Ordering::Greater
                && order.compare(v, w)? != Ordering::Greater
                && order.compare(u, w)? == Ordering::Greater
            {
                witness = Some(json!({"x": nd(u), "y": nd(v), "z": nd(w)}));
                break 'perm;
            }
        }
        transitivity.push(witness);
    }

    let mut refinement = Vec::with_capacity(trials);
    for _ in 0..trials {
        let (x, y) = sampler.chain_pair(n);
        let xy = order.compare(&x, &y)?;
        refinement.push((xy == Ordering::Greater).then(|| json!({"x": nd(&x), "y": nd(&y), "compare(x,y)": "Greater"})));
    }

    Ok(vec![
        CompatibilityReport::from_cases(Axiom::Totality, seed, totality),
        CompatibilityReport::from_cases(Axiom::Antisymmetry, seed, antisymmetry),
        CompatibilityReport::from_cases(Axiom::Transitivity, seed, transitivity),
        CompatibilityReport::from_cases(Axiom::Admissibility, seed, refinement),
    ])
}

/// Folds [`admissibility_reports`] into one verdict. A failure names the law
/// that broke under `"law"` next to the witness.
pub fn verify_admissibility(
    order: &dyn TotalOrder,
    n: usize,
    sampler: &mut Sampler,
    trials: usize,
) -> Result<CompatibilityReport> {
    let seed = Some(sampler.seed());
    let reports = admissibility_reports(order, n, sampler, trials)?;
    let total = reports.iter().map(|r| r.samples).sum();
    for r in reports {
        if !r.holds {
            let law = match r.axiom {
                Axiom::Admissibility => "refinement".to_string(),
                other => other.to_string(),
            };
            let witness = json!({"law": law, "witness": r.witness});
            return Ok(CompatibilityReport::fail(Axiom::Admissibility, witness, seed, total));
        }
    }
    Ok(CompatibilityReport::pass(Axiom::Admissibility, seed, total))
}

fn padded(prefix: &[f64], n: usize, fill: f64) -> Option<NDimInterval> {
    let mut v: Vec<f64> = prefix.iter().take(n).copied().collect();
    v.resize(n, fill);
    NDimInterval::new(v).ok()
}

/// Known falsifier candidates for SV8/SV9 on dimension `n`, run before random
/// sampling by [`crate::semivector::check_order_compatibility`].
///
/// * `n = 4`: `r = 0.5`, `x = (0.4,0.6,0.7,0.8)`, `y = (0.2,0.2,0.2,0.9)`,
///   which separates `⪯_A^τ` for `A = max_ē`, `ē = (1,2,3,4)`.
/// * `n ≥ 2`: `x = (0.5,0.6,1,…)`, `y = (0.3,0.9,1,…)`, `z = (0.1,0.3,1,…)`,
///   which separates `⪯_τ^ω` for `ω = (0.4,0.6,0,…)`.
/// * `τ` not the identity: a pair that `τ` decides at a higher position
///   while a lower position, scanned later, disagrees; a degenerate `z`
///   saturates the deciding position so the lower one takes over.
pub fn compatibility_probes(spec: &AdmissibleOrderSpec) -> Probes {
    let n = spec.dim();
    let mut probes = Probes::default();
    if n == 4 {
        probes.scalar.push(ScalarProbe {
            r: crate::ndim::UnitValue::new(0.5).expect("in range"),
            x: NDimInterval::new(vec![0.4, 0.6, 0.7, 0.8]).expect("sorted"),
            y: NDimInterval::new(vec![0.2, 0.2, 0.2, 0.9]).expect("sorted"),
        });
    }
    if n >= 2 {
        if let (Some(x), Some(y), Some(z)) = (
            padded(&[0.5, 0.6], n, 1.0),
            padded(&[0.3, 0.9], n, 1.0),
            padded(&[0.1, 0.3], n, 1.0),
        ) {
            probes.addition.push(AdditionProbe { x, y, z });
        }
    }
    if let Some((high, low)) = scan_descent(spec.tau()) {
        let mut x = Vec::with_capacity(n);
        let mut y = Vec::with_capacity(n);
        for k in 0..n {
            let (a, b) = match k {
                _ if k < low => (0.05, 0.05),
                _ if k == low => (0.2, 0.1),
                _ if k < high => (0.4, 0.4),
                _ if k == high => (0.6, 0.7),
                _ => (0.8, 0.8),
            };
            x.push(a);
            y.push(b);
        }
        let z = NDimInterval::degenerate(crate::ndim::UnitValue::new(0.45).expect("in range"), n).expect("n >= 1");
        probes.addition.push(AdditionProbe {
            x: NDimInterval::new(x).expect("sorted by construction"),
            y: NDimInterval::new(y).expect("sorted by construction"),
            z,
        });
    }
    probes
}

/// Positions `(high, low)`, 0-based, with `high > low` and `high` scanned
/// before `low`; `None` for the identity.
fn scan_descent(tau: &Permutation) -> Option<(usize, usize)> {
    let scan = tau.zero_based();
    for i in 0..scan.len() {
        for j in i + 1..scan.len() {
            if scan[i] > scan[j] {
                return Some((scan[i], scan[j]));
            }
        }
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ndim::{lattice_inf, lattice_sup, UnitValue};
    use crate::semivector::{check_order_compatibility, scalar_mul, vec_add};
    use proptest::prelude::*;

    fn nd(v: &[f64]) -> NDimInterval {
        NDimInterval::new(v.to_vec()).unwrap()
    }

    fn tau(v: &[usize]) -> Permutation {
        Permutation::from_one_based(v.to_vec()).unwrap()
    }

    fn w(v: &[f64]) -> WeightingVector {
        WeightingVector::new(v.to_vec()).unwrap()
    }

    fn order(json: Value) -> AdmissibleOrder {
        serde_json::from_value(json).unwrap()
    }

    fn sample_omega(n: usize) -> WeightingVector {
        let mut v = vec![0.4, 0.6];
        v.resize(n, 0.0);
        w(&v)
    }

    #[test]
    fn lex_tau_examples() {
        let id = Permutation::identity(2);
        assert_eq!(compare_lex_tau(&id, &nd(&[0.2, 0.9]), &nd(&[0.3, 0.4])).unwrap(), Ordering::Less);
        let t = tau(&[3, 2, 4, 1, 5]);
        let s1 = nd(&[0.21871, 0.39056, 0.49426, 0.59426, 0.67912]);
        let s3 = nd(&[0.46449, 0.46449, 0.5916, 0.5916, 0.72944]);
        assert_eq!(compare_lex_tau(&t, &s1, &s3).unwrap(), Ordering::Less);
        assert_eq!(compare_lex_tau(&t, &s3, &s1).unwrap(), Ordering::Greater);
        assert_eq!(compare_lex_tau(&t, &s1, &s1).unwrap(), Ordering::Equal);
        assert!(matches!(
            compare_lex_tau(&t, &nd(&[0.1, 0.2]), &nd(&[0.1, 0.2])),
            Err(Error::DimensionMismatch { .. })
        ));
    }

    #[test]
    fn f_omega_published_values() {
        let om = sample_omega(4);
        let x = nd(&[0.5, 0.6, 1.0, 1.0]);
        let y = nd(&[0.3, 0.9, 1.0, 1.0]);
        let z = nd(&[0.1, 0.3, 1.0, 1.0]);
        assert!((f_omega(&om, &x, &y).unwrap() - 0.08).abs() < 1e-15);
        assert!((f_omega(&om, &y, &x).unwrap() - 0.18).abs() < 1e-15);
        assert_eq!(f_omega(&om, &x, &x).unwrap(), 0.0);
        let (xz, yz) = (vec_add(&x, &z).unwrap(), vec_add(&y, &z).unwrap());
        assert!((f_omega(&om, &yz, &xz).unwrap() - 0.06).abs() < 1e-15);
        assert!((f_omega(&om, &xz, &yz).unwrap() - 0.08).abs() < 1e-15);

        let id = Permutation::identity(4);
        assert_eq!(compare_weighted_lex(&om, &id, &x, &y).unwrap(), Ordering::Less);
        assert_eq!(compare_weighted_lex(&om, &id, &yz, &xz).unwrap(), Ordering::Less);
        assert_eq!(compare_weighted_lex(&om, &id, &x, &x).unwrap(), Ordering::Equal);
        assert_eq!(
            compare_weighted_lex(&om, &id, &nd(&[0.1, 0.2, 0.3, 0.4]), &nd(&[0.1, 0.2, 0.35, 0.4])).unwrap(),
            Ordering::Less
        );
    }

    #[test]
    fn agg_lex_max_exp_values() {
        let o = order(json!({"kind": "AggLex", "tau": [1, 2, 3, 4], "agg": {"name": "maxExp", "e": [1, 2, 3, 4]}}));
        let x = nd(&[0.4, 0.6, 0.7, 0.8]);
        let y = nd(&[0.2, 0.2, 0.2, 0.9]);
        assert_eq!(o.compare(&x, &y).unwrap(), Ordering::Less);
        let half = UnitValue::new(0.5).unwrap();
        assert_eq!(o.compare(&scalar_mul(half, &x), &scalar_mul(half, &y)).unwrap(), Ordering::Greater);
        assert_eq!(o.compare(&x, &x).unwrap(), Ordering::Equal);
        let bad = AdmissibleOrder::new(AdmissibleOrderSpec::AggLex {
            tau: Permutation::identity(3),
            agg: ScalarAggregationSpec::MaxExp { e: vec![1.0, 2.0, 3.0, 4.0] },
        });
        assert!(matches!(bad, Err(Error::ArityMismatch { .. })));
    }

    #[test]
    fn spec_json_round_trip() {
        for v in [
            json!({"kind": "LexTau", "tau": [3, 2, 4, 1, 5]}),
            json!({"kind": "WeightedLex", "tau": [1, 2], "omega": [0.4, 0.6]}),
            json!({"kind": "AggLex", "tau": [1, 2, 3, 4], "agg": {"name": "maxExp", "e": [1.0, 2.0, 3.0, 4.0]}}),
        ] {
            let o = order(v.clone());
            assert_eq!(serde_json::to_value(&o).unwrap(), v);
        }
        assert!(serde_json::from_value::<AdmissibleOrder>(json!({"kind": "Nope", "tau": [1]})).is_err());
        assert!(serde_json::from_value::<AdmissibleOrder>(json!({"kind": "WeightedLex", "tau": [1, 2], "omega": [1.0]})).is_err());
    }

    #[test]
    fn min_max_under() {
        let t = tau(&[3, 2, 4, 1, 5]);
        let o = AdmissibleOrder::lex(t).unwrap();
        let printed = [
            nd(&[0.21871, 0.39056, 0.49426, 0.59426, 0.67912]),
            // the printed s_2 is not sorted; its tail is enough to compare here
            nd(&[0.21164, 0.3059, 0.50736, 0.62137, 0.73447]),
            nd(&[0.46449, 0.46449, 0.5916, 0.5916, 0.72944]),
            nd(&[0.2859, 0.30931, 0.67763, 0.77526, 0.7953]),
            nd(&[0.40516, 0.56158, 0.66362, 0.73181, 0.87526]),
        ];
        assert_eq!(min_under(&o, &printed).unwrap(), printed[0]);
        assert_eq!(max_under(&o, &printed).unwrap(), printed[3]);
        assert_eq!(min_under(&o, &printed[2..3]).unwrap(), printed[2]);
        assert_eq!(min_under(&o, &[]), Err(Error::Empty));
    }

    #[test]
    fn chains_agree_with_lattice_bounds() {
        let o = AdmissibleOrder::lex(tau(&[2, 1, 3])).unwrap();
        let chain = [nd(&[0.1, 0.2, 0.3]), nd(&[0.1, 0.4, 0.4]), nd(&[0.3, 0.4, 0.9])];
        assert_eq!(min_under(&o, &chain).unwrap(), lattice_inf(&chain).unwrap());
        assert_eq!(max_under(&o, &chain).unwrap(), lattice_sup(&chain).unwrap());
    }

    #[test]
    fn three_families_are_admissible() {
        let mut sampler = Sampler::new(99);
        for n in 2..=5 {
            let specs = [
                AdmissibleOrderSpec::LexTau { tau: sampler.permutation(n) },
                AdmissibleOrderSpec::WeightedLex {
                    tau: sampler.permutation(n),
                    omega: sampler.weighting_vector(n),
                },
                AdmissibleOrderSpec::AggLex {
                    tau: sampler.permutation(n),
                    agg: ScalarAggregationSpec::WeightedAverage { omega: sampler.strictly_positive_weights(n) },
                },
            ];
            for spec in specs {
                let o = AdmissibleOrder::new(spec).unwrap();
                let report = verify_admissibility(&o, n, &mut sampler.fork(n as u64), 1000).unwrap();
                assert!(report.holds, "{}: {report}", o.describe());
            }
        }
    }

    #[test]
    fn first_projection_only_is_not_antisymmetric() {
        let o = FnOrder::new("π_1 only", |x, y| x[0].total_cmp(&y[0]));
        let report = verify_admissibility(&o, 3, &mut Sampler::new(5), 300).unwrap();
        assert!(!report.holds);
        assert_eq!(report.witness.as_ref().unwrap()["law"], "antisymmetry");
        let wit = &report.witness.as_ref().unwrap()["witness"];
        assert_eq!(wit["x"][0], wit["y"][0]);
        assert_ne!(wit["x"], wit["y"]);
    }

    #[test]
    fn reversed_product_order_fails_refinement() {
        let o = FnOrder::new("anti", |x, y| {
            for k in 0..x.len() {
                match y[k].total_cmp(&x[k]) {
                    Ordering::Equal => continue,
                    other => return other,
                }
            }
            Ordering::Equal
        });
        let reports = admissibility_reports(&o, 3, &mut Sampler::new(8), 300).unwrap();
        assert!(reports[..3].iter().all(|r| r.holds));
        assert!(!reports[3].holds);
    }

    #[test]
    fn identity_and_reversal_are_lex_and_antilex() {
        let mut s = Sampler::new(3);
        for _ in 0..500 {
            let (x, y) = (s.ndim_grid(4, 5), s.ndim_grid(4, 5));
            let lex = x.components().iter().zip(y.components()).map(|(a, b)| a.total_cmp(b)).find(|o| o.is_ne());
            let anti = x.components().iter().zip(y.components()).rev().map(|(a, b)| a.total_cmp(b)).find(|o| o.is_ne());
            assert_eq!(compare_lex_tau(&Permutation::identity(4), &x, &y).unwrap(), lex.unwrap_or(Ordering::Equal));
            assert_eq!(compare_lex_tau(&Permutation::reversal(4), &x, &y).unwrap(), anti.unwrap_or(Ordering::Equal));
        }
    }

    fn compat(spec: AdmissibleOrderSpec, seed: u64) -> (CompatibilityReport, CompatibilityReport) {
        let n = spec.dim();
        let probes = compatibility_probes(&spec);
        let o = AdmissibleOrder::new(spec).unwrap();
        check_order_compatibility(&o, n, &probes, &mut Sampler::new(seed), 1000).unwrap()
    }

    #[test]
    fn lex_identity_is_an_ordered_semi_vector_space() {
        for n in 1..=5 {
            let (sv8, sv9) = compat(AdmissibleOrderSpec::lex_tau(Permutation::identity(n)), n as u64);
            assert!(sv8.holds && sv9.holds, "n={n}: {sv8} / {sv9}");
        }
    }

    #[test]
    fn lex_non_identity_loses_sv9_under_saturation() {
        // τ scans position 2 before position 1. x ≺ y is decided at position 2;
        // adding /0.45/ saturates that position for both and position 1 flips.
        let (sv8, sv9) = compat(AdmissibleOrderSpec::lex_tau(tau(&[2, 1])), 4);
        assert!(sv8.holds);
        assert!(!sv9.holds);
        let wit = sv9.witness.unwrap();
        assert_eq!(wit["x"], json!([0.2, 0.6]));
        assert_eq!(wit["y"], json!([0.1, 0.7]));
        let t = tau(&[2, 1]);
        let (x, y, z) = (nd(&[0.2, 0.6]), nd(&[0.1, 0.7]), nd(&[0.45, 0.45]));
        assert_eq!(compare_lex_tau(&t, &x, &y).unwrap(), Ordering::Less);
        assert_eq!(
            compare_lex_tau(&t, &vec_add(&x, &z).unwrap(), &vec_add(&y, &z).unwrap()).unwrap(),
            Ordering::Greater
        );
        // SV8 holds for every τ
        let (sv8, _) = compat(AdmissibleOrderSpec::lex_tau(tau(&[3, 2, 4, 1, 5])), 6);
        assert!(sv8.holds);
    }

    #[test]
    fn weighted_lex_fails_sv9_on_the_published_witness() {
        let (sv8, sv9) = compat(
            AdmissibleOrderSpec::WeightedLex { tau: Permutation::identity(4), omega: sample_omega(4) },
            7,
        );
        assert!(sv8.holds, "{sv8}");
        assert!(!sv9.holds);
        let wit = sv9.witness.unwrap();
        assert_eq!(wit["x"], json!([0.5, 0.6, 1.0, 1.0]));
        assert_eq!(wit["y"], json!([0.3, 0.9, 1.0, 1.0]));
        assert_eq!(wit["z"], json!([0.1, 0.3, 1.0, 1.0]));
        assert_eq!(sv9.samples, 1);
    }

    #[test]
    fn max_exp_agg_lex_fails_sv8_on_the_published_witness() {
        let (sv8, _) = compat(
            AdmissibleOrderSpec::AggLex {
                tau: Permutation::identity(4),
                agg: ScalarAggregationSpec::MaxExp { e: vec![1.0, 2.0, 3.0, 4.0] },
            },
            9,
        );
        assert!(!sv8.holds);
        let wit = sv8.witness.unwrap();
        assert_eq!(wit["r"], json!(0.5));
        assert_eq!(wit["x"], json!([0.4, 0.6, 0.7, 0.8]));
        assert_eq!(wit["y"], json!([0.2, 0.2, 0.2, 0.9]));
    }

    #[test]
    fn weighted_average_agg_lex_keeps_sv8_but_not_sv9() {
        // homogeneous A gives SV8; saturation breaks SV9 even for the identity
        let (sv8, sv9) = compat(
            AdmissibleOrderSpec::AggLex {
                tau: Permutation::identity(2),
                agg: ScalarAggregationSpec::WeightedAverage { omega: w(&[0.5, 0.5]) },
            },
            10,
        );
        assert!(sv8.holds, "{sv8}");
        assert!(!sv9.holds);
        let (x, y, z) = (nd(&[0.5, 0.5]), nd(&[0.1, 0.95]), nd(&[0.5, 0.5]));
        let o = order(json!({"kind": "AggLex", "tau": [1, 2], "agg": {"name": "weightedAverage", "omega": [0.5, 0.5]}}));
        assert_eq!(o.compare(&x, &y).unwrap(), Ordering::Less);
        assert_eq!(o.compare(&vec_add(&x, &z).unwrap(), &vec_add(&y, &z).unwrap()).unwrap(), Ordering::Greater);
    }

    proptest! {
        #[test]
        fn comparisons_are_consistent(
            raw_x in prop::collection::vec(0.0f64..=1.0, 4),
            raw_y in prop::collection::vec(0.0f64..=1.0, 4),
            seed in 0u64..1000,
        ) {
            let (x, y) = (NDimInterval::sigma(&raw_x).unwrap(), NDimInterval::sigma(&raw_y).unwrap());
            let mut s = Sampler::new(seed);
            let specs = [
                AdmissibleOrderSpec::LexTau { tau: s.permutation(4) },
                AdmissibleOrderSpec::WeightedLex { tau: s.permutation(4), omega: s.weighting_vector(4) },
                AdmissibleOrderSpec::AggLex { tau: s.permutation(4), agg: ScalarAggregationSpec::Owa { omega: s.weighting_vector(4) } },
            ];
            for spec in specs {
                let o = AdmissibleOrder::new(spec).unwrap();
                let xy = o.compare(&x, &y).unwrap();
                prop_assert_eq!(xy, o.compare(&y, &x).unwrap().reverse());
                prop_assert_eq!(xy == Ordering::Equal, x == y);
                if x.product_leq(&y).unwrap() {
                    prop_assert_ne!(xy, Ordering::Greater);
                }
            }
        }
    }
}
