//! The scalar algebra `U = ([0,1], ∔, ·)` and the structure
//! `⟨L_n([0,1]), ⊕, ⊙⟩` built on it, with executable checks for the
//! weak-semifield laws WF1–WF5, the semi-vector laws SV1–SV7 and the order
//! compatibility laws SV8/SV9.
//!
//! `∔` saturates at 1, and saturation breaks distributivity:
//! `0.5·(0.7 ∔ 0.6) = 0.5` while `0.5·0.7 ∔ 0.5·0.6 = 0.65`. The checkers
//! report WF3, SV5 and SV6 failures with such witnesses; on inputs whose sums
//! stay below 1 every law holds.

use std::cmp::Ordering;

use serde_json::{json, Value};

use crate::error::Result;
use crate::ndim::{NDimInterval, UnitValue};
use crate::orders::TotalOrder;
use crate::report::{Axiom, CompatibilityReport};
use crate::sampling::Sampler;

/// Tolerance for comparing both sides of an algebraic identity computed in
/// floating point. Order predicates never use it.
pub const IDENTITY_TOLERANCE: f64 = 1e-12;

/// Slack used when deciding whether a forced witness of the natural preorder
/// is nondecreasing.
pub const WITNESS_TOLERANCE: f64 = 1e-12;

/// `r ∔ s = min(1, r + s)`.
pub fn bounded_add(r: UnitValue, s: UnitValue) -> UnitValue {
    UnitValue::new(bounded_add_raw(r.get(), s.get())).expect("min(1, r+s) stays in [0,1]")
}

#[inline]
pub(crate) fn bounded_add_raw(r: f64, s: f64) -> f64 {
    (r + s).min(1.0)
}

/// `r ⊙ x = (r·x_1, …, r·x_n)`.
pub fn scalar_mul(r: UnitValue, x: &NDimInterval) -> NDimInterval {
    NDimInterval::from_sorted_unchecked(x.components().iter().map(|&c| r.get() * c).collect())
}

/// `x ⊕ y = (x_1 ∔ y_1, …, x_n ∔ y_n)`.
pub fn vec_add(x: &NDimInterval, y: &NDimInterval) -> Result<NDimInterval> {
    x.check_same_dim(y)?;
    Ok(NDimInterval::from_sorted_unchecked(
        x.components()
            .iter()
            .zip(y.components())
            .map(|(&a, &b)| bounded_add_raw(a, b))
            .collect(),
    ))
}

/// Returns some `z ∈ L_n([0,1])` with `x ⊕ z = y`, if one exists.
///
/// Where `y_i < 1` the witness is forced (`z_i = y_i − x_i`); where `y_i = 1`
/// (a suffix, since `y` is sorted) any `z_i ≥ 1 − x_i` works, so the suffix
/// can always be completed with `max(z_{i−1}, 1 − x_i)`. A witness therefore
/// exists iff `x ≤_n^p y` and the forced prefix is nondecreasing.
pub fn natural_preorder_witness(x: &NDimInterval, y: &NDimInterval) -> Result<Option<NDimInterval>> {
    if !x.product_leq(y)? {
        return Ok(None);
    }
    let mut z = Vec::with_capacity(x.dim());
    let mut prev = 0.0f64;
    for (&xi, &yi) in x.components().iter().zip(y.components()) {
        let zi = if yi < 1.0 {
            let forced = yi - xi;
            if forced < prev - WITNESS_TOLERANCE {
                return Ok(None);
            }
            forced.max(prev)
        } else {
            prev.max(1.0 - xi)
        };
        z.push(zi.clamp(0.0, 1.0));
        prev = zi;
    }
    Ok(Some(NDimInterval::from_sorted_unchecked(z)))
}

/// The natural preorder `x ≤_L y ⇔ ∃z. x ⊕ z = y`, decided in closed form.
pub fn natural_preorder_leq(x: &NDimInterval, y: &NDimInterval) -> Result<bool> {
    Ok(natural_preorder_witness(x, y)?.is_some())
}

fn approx_eq(a: f64, b: f64) -> bool {
    (a - b).abs() <= IDENTITY_TOLERANCE
}

fn approx_eq_vec(a: &NDimInterval, b: &NDimInterval) -> bool {
    a.dim() == b.dim()
        && a.components()
            .iter()
            .zip(b.components())
            .all(|(&p, &q)| approx_eq(p, q))
}

/// Evaluates WF1–WF5 (plus closure in `[0,1]`) for a scalar algebra given by
/// its two operations, on `samples` random triples.
///
/// Passing anything other than [`bounded_add_raw`]-style operations lets a
/// test exhibit a broken algebra.
pub fn check_semifield_axioms(
    add: impl Fn(f64, f64) -> f64,
    mul: impl Fn(f64, f64) -> f64,
    sampler: &mut Sampler,
    samples: usize,
) -> Vec<CompatibilityReport> {
    let seed = Some(sampler.seed());
    let triples: Vec<(f64, f64, f64)> = (0..samples)
        .map(|_| (sampler.unit_mixed(), sampler.unit_mixed(), sampler.unit_mixed()))
        .collect();
    let in_unit = |v: f64| (0.0..=1.0).contains(&v);

    let closure = CompatibilityReport::from_cases(
        Axiom::Closure,
        seed,
        triples.iter().map(|&(r, s, _)| {
            let (sum, prod) = (add(r, s), mul(r, s));
            (!in_unit(sum) || !in_unit(prod))
                .then(|| json!({"r": r, "s": s, "r+s": sum, "r*s": prod}))
        }),
    );
    let wf1 = CompatibilityReport::from_cases(
        Axiom::WF1,
        seed,
        triples.iter().map(|&(r, s, t)| {
            let (a1, a2) = (add(r, add(s, t)), add(add(r, s), t));
            let (m1, m2) = (mul(r, mul(s, t)), mul(mul(r, s), t));
            (!approx_eq(a1, a2) || !approx_eq(m1, m2)).then(|| {
                json!({"r": r, "s": s, "t": t,
                       "r+(s+t)": a1, "(r+s)+t": a2, "r*(s*t)": m1, "(r*s)*t": m2})
            })
        }),
    );
    let wf2 = CompatibilityReport::from_cases(
        Axiom::WF2,
        seed,
        triples.iter().map(|&(r, s, _)| {
            (!approx_eq(add(r, s), add(s, r)) || !approx_eq(mul(r, s), mul(s, r)))
                .then(|| json!({"r": r, "s": s}))
        }),
    );
    let wf3 = CompatibilityReport::from_cases(
        Axiom::WF3,
        seed,
        triples.iter().map(|&(r, s, t)| {
            let lhs = mul(r, add(s, t));
            let rhs = add(mul(r, s), mul(r, t));
            (!approx_eq(lhs, rhs))
                .then(|| json!({"r": r, "s": s, "t": t, "r*(s+t)": lhs, "r*s+r*t": rhs}))
        }),
    );
    let wf4 = CompatibilityReport::from_cases(
        Axiom::WF4,
        seed,
        triples
            .iter()
            .map(|&(r, _, _)| (!approx_eq(add(r, 0.0), r)).then(|| json!({"r": r, "r+0": add(r, 0.0)}))),
    );
    let wf5 = CompatibilityReport::from_cases(
        Axiom::WF5,
        seed,
        triples
            .iter()
            .map(|&(r, _, _)| (!approx_eq(mul(1.0, r), r)).then(|| json!({"r": r, "1*r": mul(1.0, r)}))),
    );
    vec![closure, wf1, wf2, wf3, wf4, wf5]
}

/// WF1–WF5 for `U` itself.
pub fn check_unit_semifield(sampler: &mut Sampler, samples: usize) -> Vec<CompatibilityReport> {
    check_semifield_axioms(bounded_add_raw, |r, s| r * s, sampler, samples)
}

fn nd_json(x: &NDimInterval) -> Value {
    json!(x.components())
}

/// Evaluates SV1–SV7 for `⟨L_n([0,1]), ⊕, ⊙⟩` over `U`, plus closure of both
/// operations in `L_n`.
pub fn check_semi_vector_axioms(n: usize, sampler: &mut Sampler, samples: usize) -> Vec<CompatibilityReport> {
    let seed = Some(sampler.seed());
    let cases: Vec<_> = (0..samples)
        .map(|_| {
            (
                sampler.ndim_mixed(n),
                sampler.ndim_mixed(n),
                sampler.ndim_mixed(n),
                sampler.unit_value(),
                sampler.unit_value(),
            )
        })
        .collect();
    let add = |a: &NDimInterval, b: &NDimInterval| vec_add(a, b).expect("uniform dimension");
    let zero = NDimInterval::zero(n).expect("n >= 1");

    let closure = CompatibilityReport::from_cases(
        Axiom::Closure,
        seed,
        cases.iter().map(|(x, y, _, r, _)| {
            let sum = add(x, y);
            let prod = scalar_mul(*r, x);
            let ok = NDimInterval::new(sum.components().to_vec()).is_ok()
                && NDimInterval::new(prod.components().to_vec()).is_ok();
            (!ok).then(|| json!({"x": nd_json(x), "y": nd_json(y), "r": r.get()}))
        }),
    );
    let sv1 = CompatibilityReport::from_cases(
        Axiom::SV1,
        seed,
        cases.iter().map(|(x, y, z, _, _)| {
            let lhs = add(x, &add(y, z));
            let rhs = add(&add(x, y), z);
            (!approx_eq_vec(&lhs, &rhs)).then(|| {
                json!({"x": nd_json(x), "y": nd_json(y), "z": nd_json(z),
                       "x+(y+z)": nd_json(&lhs), "(x+y)+z": nd_json(&rhs)})
            })
        }),
    );
    let sv2 = CompatibilityReport::from_cases(
        Axiom::SV2,
        seed,
        cases.iter().map(|(x, y, _, _, _)| {
            (!approx_eq_vec(&add(x, y), &add(y, x))).then(|| json!({"x": nd_json(x), "y": nd_json(y)}))
        }),
    );
    let sv3 = CompatibilityReport::from_cases(
        Axiom::SV3,
        seed,
        cases.iter().map(|(x, _, _, r, s)| {
            let lhs = scalar_mul(*r, &scalar_mul(*s, x));
            let rs = UnitValue::new(r.get() * s.get()).expect("product in [0,1]");
            let rhs = scalar_mul(rs, x);
            (!approx_eq_vec(&lhs, &rhs)).then(|| json!({"x": nd_json(x), "r": r.get(), "s": s.get()}))
        }),
    );
    let sv4 = CompatibilityReport::from_cases(
        Axiom::SV4,
        seed,
        cases.iter().map(|(x, _, _, _, _)| {
            (scalar_mul(UnitValue::ONE, x) != *x).then(|| json!({"x": nd_json(x)}))
        }),
    );
    let sv5 = CompatibilityReport::from_cases(
        Axiom::SV5,
        seed,
        cases.iter().map(|(x, y, _, r, _)| {
            let lhs = scalar_mul(*r, &add(x, y));
            let rhs = add(&scalar_mul(*r, x), &scalar_mul(*r, y));
            (!approx_eq_vec(&lhs, &rhs)).then(|| {
                json!({"r": r.get(), "x": nd_json(x), "y": nd_json(y),
                       "r*(x+y)": nd_json(&lhs), "r*x+r*y": nd_json(&rhs)})
            })
        }),
    );
    let sv6 = CompatibilityReport::from_cases(
        Axiom::SV6,
        seed,
        cases.iter().map(|(x, _, _, r, s)| {
            let lhs = scalar_mul(bounded_add(*r, *s), x);
            let rhs = add(&scalar_mul(*r, x), &scalar_mul(*s, x));
            (!approx_eq_vec(&lhs, &rhs)).then(|| {
                json!({"r": r.get(), "s": s.get(), "x": nd_json(x),
                       "(r+s)*x": nd_json(&lhs), "r*x+s*x": nd_json(&rhs)})
            })
        }),
    );
    let sv7 = CompatibilityReport::from_cases(
        Axiom::SV7,
        seed,
        cases
            .iter()
            .map(|(x, _, _, _, _)| (add(&zero, x) != *x).then(|| json!({"x": nd_json(x)}))),
    );
    vec![closure, sv1, sv2, sv3, sv4, sv5, sv6, sv7]
}

/// A candidate falsifier of SV8: `x ⪯ y` and scalar `r`.
#[derive(Clone, Debug, PartialEq)]
pub struct ScalarProbe {
    pub r: UnitValue,
    pub x: NDimInterval,
    pub y: NDimInterval,
}

/// A candidate falsifier of SV9: `x ⪯ y` and translation `z`.
#[derive(Clone, Debug, PartialEq)]
pub struct AdditionProbe {
    pub x: NDimInterval,
    pub y: NDimInterval,
    pub z: NDimInterval,
}

/// Fixed candidate cases evaluated before random sampling.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct Probes {
    pub scalar: Vec<ScalarProbe>,
    pub addition: Vec<AdditionProbe>,
}

fn ordered_pair(
    order: &dyn TotalOrder,
    a: NDimInterval,
    b: NDimInterval,
) -> Result<(NDimInterval, NDimInterval)> {
    Ok(match order.compare(&a, &b)? {
        Ordering::Greater => (b, a),
        _ => (a, b),
    })
}

/// SV8 (`x ⪯ y ⇒ r⊙x ⪯ r⊙y`) and SV9 (`x ⪯ y ⇒ x⊕z ⪯ y⊕z`) for `order` on
/// `L_n`. Probes run first; then `samples` random cases each, a share of which
/// pick `z` to saturate one coordinate of `x` exactly.
pub fn check_order_compatibility(
    order: &dyn TotalOrder,
    n: usize,
    probes: &Probes,
    sampler: &mut Sampler,
    samples: usize,
) -> Result<(CompatibilityReport, CompatibilityReport)> {
    let seed = Some(sampler.seed());

    let mut scalar_cases = Vec::with_capacity(probes.scalar.len() + samples);
    for p in &probes.scalar {
        let (x, y) = ordered_pair(order, p.x.clone(), p.y.clone())?;
        scalar_cases.push((p.r, x, y));
    }
    for _ in 0..samples {
        let (x, y) = ordered_pair(order, sampler.ndim_mixed(n), sampler.ndim_mixed(n))?;
        let r = if sampler.coin(0.2) {
            UnitValue::new(sampler.grid(10)).expect("grid value")
        } else {
            sampler.unit_value()
        };
        scalar_cases.push((r, x, y));
    }
    let mut sv8 = None;
    for (i, (r, x, y)) in scalar_cases.iter().enumerate() {
        let rx = scalar_mul(*r, x);
        let ry = scalar_mul(*r, y);
        if order.compare(&rx, &ry)? == Ordering::Greater {
            sv8 = Some(CompatibilityReport::fail(
                Axiom::SV8,
                json!({"r": r.get(), "x": nd_json(x), "y": nd_json(y),
                       "r*x": nd_json(&rx), "r*y": nd_json(&ry)}),
                seed,
                i + 1,
            ));
            break;
        }
    }
    let sv8 = sv8.unwrap_or_else(|| CompatibilityReport::pass(Axiom::SV8, seed, scalar_cases.len()));

    let mut addition_cases = Vec::with_capacity(probes.addition.len() + samples);
    for p in &probes.addition {
        let (x, y) = ordered_pair(order, p.x.clone(), p.y.clone())?;
        addition_cases.push((x, y, p.z.clone()));
    }
    for _ in 0..samples {
        let (x, y) = ordered_pair(order, sampler.ndim_mixed(n), sampler.ndim_mixed(n))?;
        let z = if sampler.coin(0.5) {
            sampler.ndim_mixed(n)
        } else {
            let pick = if sampler.coin(0.5) { &x } else { &y };
            let k = sampler.index(n);
            let c = 1.0 - pick.components()[k];
            NDimInterval::degenerate(UnitValue::new(c).expect("complement in range"), n)
                .expect("n >= 1")
        };
        addition_cases.push((x, y, z));
    }
    let mut sv9 = None;
    for (i, (x, y, z)) in addition_cases.iter().enumerate() {
        let xz = vec_add(x, z)?;
        let yz = vec_add(y, z)?;
        if order.compare(&xz, &yz)? == Ordering::Greater {
            sv9 = Some(CompatibilityReport::fail(
                Axiom::SV9,
                json!({"x": nd_json(x), "y": nd_json(y), "z": nd_json(z),
                       "x+z": nd_json(&xz), "y+z": nd_json(&yz)}),
                seed,
                i + 1,
            ));
            break;
        }
    }
    let sv9 = sv9.unwrap_or_else(|| CompatibilityReport::pass(Axiom::SV9, seed, addition_cases.len()));
    Ok((sv8, sv9))
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn nd(v: &[f64]) -> NDimInterval {
        NDimInterval::new(v.to_vec()).unwrap()
    }

    fn u(v: f64) -> UnitValue {
        UnitValue::new(v).unwrap()
    }

    #[test]
    fn bounded_add_examples() {
        assert_eq!(bounded_add(u(0.9), u(0.3)).get(), 1.0);
        assert!((bounded_add(u(0.07023), u(0.02474)).get() - 0.09497).abs() < 1e-15);
        assert_eq!(bounded_add(u(0.37), UnitValue::ZERO).get(), 0.37);
    }

    #[test]
    fn scalar_mul_examples() {
        let h = scalar_mul(u(0.5), &nd(&[0.4, 0.6, 0.7, 0.8]));
        assert_eq!(h.components(), &[0.2, 0.3, 0.35, 0.4]);
        let s = scalar_mul(u(0.2474), &nd(&[0.2, 0.5, 0.6, 0.7, 0.9]));
        let expected = [0.04948, 0.1237, 0.14844, 0.17318, 0.22266];
        for (a, b) in s.components().iter().zip(expected) {
            assert!((a - b).abs() < 1e-15, "{a} vs {b}");
        }
        let x = nd(&[0.1, 0.5, 0.9]);
        assert_eq!(scalar_mul(UnitValue::ZERO, &x), NDimInterval::zero(3).unwrap());
    }

    #[test]
    fn vec_add_examples() {
        let x = nd(&[0.5, 0.6, 1.0, 1.0]);
        let y = nd(&[0.3, 0.9, 1.0, 1.0]);
        let z = nd(&[0.1, 0.3, 1.0, 1.0]);
        let xz = vec_add(&x, &z).unwrap();
        assert!((xz.components()[0] - 0.6).abs() < 1e-15);
        assert!((xz.components()[1] - 0.9).abs() < 1e-15);
        assert_eq!(&xz.components()[2..], &[1.0, 1.0]);
        let yz = vec_add(&y, &z).unwrap();
        assert!((yz.components()[0] - 0.4).abs() < 1e-15);
        assert_eq!(&yz.components()[1..], &[1.0, 1.0, 1.0]);
        assert_eq!(vec_add(&x, &NDimInterval::zero(4).unwrap()).unwrap(), x);
        assert!(vec_add(&x, &nd(&[0.1])).is_err());
    }

    #[test]
    fn natural_preorder_examples() {
        let w = natural_preorder_witness(&nd(&[0.2, 0.5]), &nd(&[0.4, 0.7])).unwrap().unwrap();
        assert!((w.components()[0] - 0.2).abs() < 1e-12 && (w.components()[1] - 0.2).abs() < 1e-12);
        // forced z = (0.3, 0.1) decreases; also the standing counterexample to
        // "product order implies natural preorder"
        let (x, y) = (nd(&[0.2, 0.5]), nd(&[0.5, 0.6]));
        assert!(x.product_leq(&y).unwrap());
        assert!(!natural_preorder_leq(&x, &y).unwrap());
        let w = natural_preorder_witness(&nd(&[0.3, 0.9]), &nd(&[0.4, 1.0])).unwrap().unwrap();
        assert_eq!(vec_add(&nd(&[0.3, 0.9]), &w).unwrap().components()[1], 1.0);
        assert!(natural_preorder_leq(&x, &nd(&[0.1, 0.9])).is_ok_and(|b| !b));
    }

    /// Witness search over the 0.01 grid in integer hundredths: independent of
    /// the closed form above.
    fn grid_witness_exists(x: &[i64], y: &[i64]) -> bool {
        let candidates: Vec<Vec<i64>> = x
            .iter()
            .zip(y)
            .map(|(&a, &b)| (0..=100).filter(|&z| (a + z).min(100) == b).collect())
            .collect();
        fn search(cands: &[Vec<i64>], floor: i64) -> bool {
            match cands.split_first() {
                None => true,
                Some((head, rest)) => head.iter().any(|&z| z >= floor && search(rest, z)),
            }
        }
        search(&candidates, 0)
    }

    fn sorted_hundredths(raw: Vec<i64>) -> Vec<i64> {
        let mut v = raw;
        v.sort();
        v
    }

    fn to_nd(h: &[i64]) -> NDimInterval {
        NDimInterval::new(h.iter().map(|&v| v as f64 / 100.0).collect()).unwrap()
    }

    #[test]
    fn grid_oracle_agrees_on_examples() {
        assert!(grid_witness_exists(&[20, 50], &[40, 70]));
        assert!(!grid_witness_exists(&[20, 50], &[50, 60]));
        assert!(grid_witness_exists(&[30, 90], &[40, 100]));
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(400))]

        #[test]
        fn natural_preorder_matches_grid_search(
            n in 2usize..=3,
            a in prop::collection::vec(0i64..=100, 3),
            b in prop::collection::vec(0i64..=100, 3),
            bump in prop::collection::vec(0i64..=60, 3),
        ) {
            let x = sorted_hundredths(a[..n].to_vec());
            // half of the y's are built above x so that true cases are common
            let y = if b[0] % 2 == 0 {
                sorted_hundredths(b[..n].to_vec())
            } else {
                let mut y: Vec<i64> = x.iter().zip(&bump).map(|(&v, &d)| (v + d).min(100)).collect();
                for i in 1..n { y[i] = y[i].max(y[i - 1]); }
                y
            };
            let expected = grid_witness_exists(&x, &y);
            prop_assert_eq!(natural_preorder_leq(&to_nd(&x), &to_nd(&y)).unwrap(), expected);
        }

        #[test]
        fn natural_preorder_is_a_partial_order_refined_by_product(
            a in prop::collection::vec(0i64..=20, 3),
            b in prop::collection::vec(0i64..=20, 3),
            c in prop::collection::vec(0i64..=20, 3),
        ) {
            // coarse 0.05 grid so that related pairs are frequent
            let f = |v: Vec<i64>| to_nd(&sorted_hundredths(v.into_iter().map(|k| k * 5).collect()));
            let (x, y, z) = (f(a), f(b), f(c));
            prop_assert!(natural_preorder_leq(&x, &x).unwrap());
            let xy = natural_preorder_leq(&x, &y).unwrap();
            let yx = natural_preorder_leq(&y, &x).unwrap();
            if xy { prop_assert!(x.product_leq(&y).unwrap()); }
            if xy && yx { prop_assert_eq!(&x, &y); }
            if xy && natural_preorder_leq(&y, &z).unwrap() {
                prop_assert!(natural_preorder_leq(&x, &z).unwrap());
            }
        }

        #[test]
        fn operations_stay_in_ln(r in 0.0f64..=1.0, a in prop::collection::vec(0.0f64..=1.0, 4), b in prop::collection::vec(0.0f64..=1.0, 4)) {
            let x = NDimInterval::sigma(&a).unwrap();
            let y = NDimInterval::sigma(&b).unwrap();
            let sum = vec_add(&x, &y).unwrap();
            let prod = scalar_mul(u(r), &x);
            prop_assert!(NDimInterval::new(sum.into_components()).is_ok());
            prop_assert!(NDimInterval::new(prod.into_components()).is_ok());
        }
    }

    fn find(reports: &[CompatibilityReport], axiom: Axiom) -> &CompatibilityReport {
        reports.iter().find(|r| r.axiom == axiom).unwrap()
    }

    #[test]
    fn unit_semifield_laws() {
        let reports = check_unit_semifield(&mut Sampler::new(3), 1000);
        for axiom in [Axiom::Closure, Axiom::WF1, Axiom::WF2, Axiom::WF4, Axiom::WF5] {
            assert!(find(&reports, axiom).holds, "{axiom}");
        }
        // saturation breaks distributivity
        let wf3 = find(&reports, Axiom::WF3);
        assert!(!wf3.holds);
        let w = wf3.witness.as_ref().unwrap();
        let (r, s, t) = (w["r"].as_f64().unwrap(), w["s"].as_f64().unwrap(), w["t"].as_f64().unwrap());
        assert!(s + t > 1.0);
        assert!((r * bounded_add_raw(s, t) - bounded_add_raw(r * s, r * t)).abs() > IDENTITY_TOLERANCE);
    }

    #[test]
    fn distributivity_holds_without_saturation() {
        let mut sampler = Sampler::new(4);
        for _ in 0..1000 {
            let r = sampler.unit();
            let s = sampler.range(0.0, 0.5);
            let t = sampler.range(0.0, 0.5);
            assert!(approx_eq(r * bounded_add_raw(s, t), bounded_add_raw(r * s, r * t)));
        }
    }

    #[test]
    fn broken_addition_fails_closure() {
        let reports = check_semifield_axioms(|r, s| r + s, |r, s| r * s, &mut Sampler::new(5), 1000);
        let closure = find(&reports, Axiom::Closure);
        assert!(!closure.holds);
        let w = closure.witness.as_ref().unwrap();
        assert!(w["r+s"].as_f64().unwrap() > 1.0);
    }

    #[test]
    fn semi_vector_laws() {
        for n in 1..=5 {
            let reports = check_semi_vector_axioms(n, &mut Sampler::new(6), 1000);
            for axiom in [Axiom::Closure, Axiom::SV1, Axiom::SV2, Axiom::SV3, Axiom::SV4, Axiom::SV7] {
                assert!(find(&reports, axiom).holds, "n={n} {axiom}");
            }
            assert!(!find(&reports, Axiom::SV5).holds);
            assert!(!find(&reports, Axiom::SV6).holds);
        }
    }
}
