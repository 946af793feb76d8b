//! Elements of `L_n([0,1])`: nondecreasing n-tuples of unit-interval values,
//! together with the product order, lattice meet/join, degenerate elements
//! and the sorting immersion `σ : [0,1]^n → L_n([0,1])`.
//!
//! Indices in the public vocabulary are 1-based, matching the projections
//! `π_1, …, π_n`.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Absolute tolerance accepted on the sum of a weighting vector.
pub const WEIGHT_SUM_TOLERANCE: f64 = 1e-9;

/// A real number in `[0,1]`.
///
/// Construction rejects out-of-range and non-finite input; nothing is clamped.
#[derive(Clone, Copy, Debug, PartialEq, PartialOrd, Serialize, Deserialize)]
#[serde(try_from = "f64", into = "f64")]
pub struct UnitValue(f64);

impl UnitValue {
    pub const ZERO: UnitValue = UnitValue(0.0);
    pub const ONE: UnitValue = UnitValue(1.0);

    pub fn new(value: f64) -> Result<Self> {
        check_unit(value).map(UnitValue)
    }

    pub fn get(self) -> f64 {
        self.0
    }
}

impl Eq for UnitValue {}

impl TryFrom<f64> for UnitValue {
    type Error = Error;

    fn try_from(value: f64) -> Result<Self> {
        UnitValue::new(value)
    }
}

impl From<UnitValue> for f64 {
    fn from(value: UnitValue) -> f64 {
        value.0
    }
}

impl fmt::Display for UnitValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

fn check_unit(value: f64) -> Result<f64> {
    if !value.is_finite() {
        return Err(Error::NotFinite);
    }
    if !(0.0..=1.0).contains(&value) {
        return Err(Error::OutOfUnitInterval(value));
    }
    // -0.0 compares equal to 0.0 but would print as "-0"
    Ok(if value == 0.0 { 0.0 } else { value })
}

/// An n-dimensional interval: `x_1 ≤ x_2 ≤ … ≤ x_n`, each `x_i ∈ [0,1]`.
///
/// Equality is exact numeric equality of all components.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "Vec<f64>", into = "Vec<f64>")]
pub struct NDimInterval(Vec<f64>);

impl Eq for NDimInterval {}

impl NDimInterval {
    /// Validates range and monotonicity. Unsorted input is an error; use
    /// [`NDimInterval::sigma`] to sort.
    pub fn new(components: Vec<f64>) -> Result<Self> {
        if components.is_empty() {
            return Err(Error::Empty);
        }
        let mut components = components;
        for c in components.iter_mut() {
            *c = check_unit(*c)?;
        }
        for (i, pair) in components.windows(2).enumerate() {
            if pair[1] < pair[0] {
                return Err(Error::NotSorted {
                    position: i + 2,
                    previous: pair[0],
                    value: pair[1],
                });
            }
        }
        Ok(NDimInterval(components))
    }

    /// The degenerate element `/c/` of dimension `n`.
    pub fn degenerate(c: UnitValue, n: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::Empty);
        }
        Ok(NDimInterval(vec![c.get(); n]))
    }

    pub fn zero(n: usize) -> Result<Self> {
        Self::degenerate(UnitValue::ZERO, n)
    }

    pub fn one(n: usize) -> Result<Self> {
        Self::degenerate(UnitValue::ONE, n)
    }

    /// `σ(v)`: the nondecreasing rearrangement of `values`.
    pub fn sigma(values: &[f64]) -> Result<Self> {
        if values.is_empty() {
            return Err(Error::Empty);
        }
        let mut sorted = values
            .iter()
            .map(|&v| check_unit(v))
            .collect::<Result<Vec<_>>>()?;
        sorted.sort_by(f64::total_cmp);
        Ok(NDimInterval(sorted))
    }

    /// Internal constructor for results of operations that preserve the
    /// invariant by construction (products, bounded sums, folds of those).
    pub(crate) fn from_sorted_unchecked(components: Vec<f64>) -> Self {
        debug_assert!(!components.is_empty());
        debug_assert!(components.windows(2).all(|w| w[0] <= w[1]));
        debug_assert!(components.iter().all(|c| (0.0..=1.0).contains(c)));
        NDimInterval(components)
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn components(&self) -> &[f64] {
        &self.0
    }

    pub fn into_components(self) -> Vec<f64> {
        self.0
    }

    /// The projection `π_i`, 1-based.
    pub fn proj(&self, i: usize) -> Result<UnitValue> {
        if i == 0 || i > self.dim() {
            return Err(Error::IndexOutOfRange {
                index: i,
                len: self.dim(),
            });
        }
        Ok(UnitValue(self.0[i - 1]))
    }

    pub fn is_degenerate(&self) -> bool {
        self.0.iter().all(|&c| c == self.0[0])
    }

    pub(crate) fn check_same_dim(&self, other: &NDimInterval) -> Result<()> {
        if self.dim() != other.dim() {
            return Err(Error::DimensionMismatch {
                expected: self.dim(),
                found: other.dim(),
            });
        }
        Ok(())
    }

    /// The product order `≤_n^p`.
    pub fn product_leq(&self, other: &NDimInterval) -> Result<bool> {
        self.check_same_dim(other)?;
        Ok(self.0.iter().zip(&other.0).all(|(a, b)| a <= b))
    }
}

impl TryFrom<Vec<f64>> for NDimInterval {
    type Error = Error;

    fn try_from(components: Vec<f64>) -> Result<Self> {
        NDimInterval::new(components)
    }
}

impl From<NDimInterval> for Vec<f64> {
    fn from(x: NDimInterval) -> Vec<f64> {
        x.0
    }
}

impl fmt::Display for NDimInterval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, c) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, ")")
    }
}

/// Checks that every element of `set` has the same dimension and returns it.
pub(crate) fn common_dim(set: &[NDimInterval]) -> Result<usize> {
    let first = set.first().ok_or(Error::Empty)?;
    for x in &set[1..] {
        first.check_same_dim(x)?;
    }
    Ok(first.dim())
}

/// Lattice infimum `⋀S` under `≤_n^p`: the componentwise minimum.
pub fn lattice_inf(set: &[NDimInterval]) -> Result<NDimInterval> {
    lattice_fold(set, f64::min)
}

/// Lattice supremum `⋁S` under `≤_n^p`: the componentwise maximum.
pub fn lattice_sup(set: &[NDimInterval]) -> Result<NDimInterval> {
    lattice_fold(set, f64::max)
}

fn lattice_fold(set: &[NDimInterval], pick: fn(f64, f64) -> f64) -> Result<NDimInterval> {
    common_dim(set)?;
    let mut acc = set[0].0.clone();
    for x in &set[1..] {
        for (a, &b) in acc.iter_mut().zip(&x.0) {
            *a = pick(*a, b);
        }
    }
    Ok(NDimInterval::from_sorted_unchecked(acc))
}

/// A bijection on `{1,…,n}`, stored 0-based and serialized 1-based.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "Vec<usize>", into = "Vec<usize>")]
pub struct Permutation(Vec<usize>);

impl Permutation {
    /// Builds `τ` from its 1-based images `[τ(1), …, τ(n)]`.
    pub fn from_one_based(images: Vec<usize>) -> Result<Self> {
        let len = images.len();
        if len == 0 {
            return Err(Error::InvalidPermutation {
                len,
                detail: "empty".into(),
            });
        }
        let mut seen = vec![false; len];
        let mut zero_based = Vec::with_capacity(len);
        for &image in &images {
            if image == 0 || image > len {
                return Err(Error::InvalidPermutation {
                    len,
                    detail: format!("image {image} out of range"),
                });
            }
            if std::mem::replace(&mut seen[image - 1], true) {
                return Err(Error::InvalidPermutation {
                    len,
                    detail: format!("image {image} repeated"),
                });
            }
            zero_based.push(image - 1);
        }
        Ok(Permutation(zero_based))
    }

    pub fn from_zero_based(images: Vec<usize>) -> Result<Self> {
        Self::from_one_based(images.into_iter().map(|i| i + 1).collect())
    }

    pub fn identity(n: usize) -> Self {
        Permutation((0..n).collect())
    }

    /// `τ(i) = n − i + 1`.
    pub fn reversal(n: usize) -> Self {
        Permutation((0..n).rev().collect())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn is_identity(&self) -> bool {
        self.0.iter().enumerate().all(|(i, &t)| i == t)
    }

    /// 0-based images, `zero_based()[k] = τ(k+1) − 1`.
    pub fn zero_based(&self) -> &[usize] {
        &self.0
    }

    pub fn one_based(&self) -> Vec<usize> {
        self.0.iter().map(|&i| i + 1).collect()
    }

    pub fn inverse(&self) -> Permutation {
        let mut inv = vec![0; self.len()];
        for (i, &t) in self.0.iter().enumerate() {
            inv[t] = i;
        }
        Permutation(inv)
    }

    /// `out[k] = items[τ(k)]`.
    pub fn apply<T: Clone>(&self, items: &[T]) -> Result<Vec<T>> {
        if items.len() != self.len() {
            return Err(Error::DimensionMismatch {
                expected: self.len(),
                found: items.len(),
            });
        }
        Ok(self.0.iter().map(|&i| items[i].clone()).collect())
    }
}

impl TryFrom<Vec<usize>> for Permutation {
    type Error = Error;

    fn try_from(images: Vec<usize>) -> Result<Self> {
        Permutation::from_one_based(images)
    }
}

impl From<Permutation> for Vec<usize> {
    fn from(p: Permutation) -> Vec<usize> {
        p.one_based()
    }
}

/// Nonnegative weights summing to one.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "Vec<f64>", into = "Vec<f64>")]
pub struct WeightingVector(Vec<f64>);

impl WeightingVector {
    /// Rejects sums outside `1 ± 1e-9`; never renormalizes.
    pub fn new(weights: Vec<f64>) -> Result<Self> {
        let weights = Self::check_entries(weights)?;
        let sum: f64 = weights.iter().sum();
        if (sum - 1.0).abs() > WEIGHT_SUM_TOLERANCE {
            return Err(Error::WeightSum { sum });
        }
        Ok(WeightingVector(weights))
    }

    /// Divides by the sum. Requires a positive sum.
    pub fn normalized(weights: Vec<f64>) -> Result<Self> {
        let weights = weights
            .into_iter()
            .enumerate()
            .map(|(position, value)| {
                if !value.is_finite() {
                    Err(Error::NotFinite)
                } else if value < 0.0 {
                    Err(Error::NegativeWeight { position: position + 1, value })
                } else {
                    Ok(value)
                }
            })
            .collect::<Result<Vec<_>>>()?;
        let sum: f64 = weights.iter().sum();
        if weights.is_empty() {
            return Err(Error::Empty);
        }
        if sum <= 0.0 {
            return Err(Error::WeightSum { sum });
        }
        Self::new(weights.into_iter().map(|w| w / sum).collect())
    }

    pub fn uniform(m: usize) -> Result<Self> {
        if m == 0 {
            return Err(Error::Empty);
        }
        Ok(WeightingVector(vec![1.0 / m as f64; m]))
    }

    /// `(0,…,0,1,0,…,0)` with the one at 1-based position `j`.
    pub fn basis(m: usize, j: usize) -> Result<Self> {
        if j == 0 || j > m {
            return Err(Error::IndexOutOfRange { index: j, len: m });
        }
        let mut w = vec![0.0; m];
        w[j - 1] = 1.0;
        Ok(WeightingVector(w))
    }

    fn check_entries(weights: Vec<f64>) -> Result<Vec<f64>> {
        if weights.is_empty() {
            return Err(Error::Empty);
        }
        if let Some((position, &value)) = weights.iter().enumerate().find(|(_, v)| **v < 0.0) {
            return Err(Error::NegativeWeight { position: position + 1, value });
        }
        weights.into_iter().map(check_unit).collect()
    }

    pub fn weights(&self) -> &[f64] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn is_strictly_positive(&self) -> bool {
        self.0.iter().all(|&w| w > 0.0)
    }

    pub fn is_uniform(&self) -> bool {
        self.0.iter().all(|&w| w == self.0[0])
    }

    pub(crate) fn check_len(&self, found: usize) -> Result<()> {
        if found != self.len() {
            return Err(Error::ArityMismatch {
                expected: self.len(),
                found,
            });
        }
        Ok(())
    }
}

impl TryFrom<Vec<f64>> for WeightingVector {
    type Error = Error;

    fn try_from(weights: Vec<f64>) -> Result<Self> {
        WeightingVector::new(weights)
    }
}

impl From<WeightingVector> for Vec<f64> {
    fn from(w: WeightingVector) -> Vec<f64> {
        w.0
    }
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
    fn unit_value_rejects_out_of_range() {
        assert!(matches!(UnitValue::new(1.2), Err(Error::OutOfUnitInterval(_))));
        assert!(matches!(UnitValue::new(-0.1), Err(Error::OutOfUnitInterval(_))));
        assert_eq!(UnitValue::new(f64::NAN), Err(Error::NotFinite));
        assert_eq!(UnitValue::new(-0.0).unwrap().get().to_bits(), 0.0f64.to_bits());
    }

    #[test]
    fn proj_examples() {
        let x = nd(&[0.3, 0.4, 0.4, 0.5, 0.5]);
        assert_eq!(x.proj(2).unwrap().get(), 0.4);
        let d = NDimInterval::degenerate(u(0.7), 3).unwrap();
        for i in 1..=3 {
            assert_eq!(d.proj(i).unwrap().get(), 0.7);
        }
        let s = NDimInterval::sigma(&[0.9, 0.1]).unwrap();
        assert_eq!(s.proj(1).unwrap().get(), 0.1);
        assert!(matches!(x.proj(0), Err(Error::IndexOutOfRange { .. })));
        assert!(matches!(x.proj(6), Err(Error::IndexOutOfRange { .. })));
    }

    #[test]
    fn degenerate_examples() {
        assert_eq!(NDimInterval::degenerate(u(0.0), 5).unwrap().components(), &[0.0; 5]);
        assert_eq!(NDimInterval::degenerate(u(1.0), 5).unwrap().components(), &[1.0; 5]);
        assert_eq!(
            NDimInterval::degenerate(u(0.2341), 4).unwrap().components(),
            &[0.2341; 4]
        );
        assert_eq!(NDimInterval::degenerate(u(0.5), 0), Err(Error::Empty));
    }

    #[test]
    fn sigma_examples() {
        let s = NDimInterval::sigma(&[0.2, 0.5, 0.2, 0.4, 0.5, 0.7, 0.5]).unwrap();
        assert_eq!(s.components(), &[0.2, 0.2, 0.4, 0.5, 0.5, 0.5, 0.7]);
        let s = NDimInterval::sigma(&[0.4, 0.5, 0.4, 0.3, 0.5]).unwrap();
        assert_eq!(s.components(), &[0.3, 0.4, 0.4, 0.5, 0.5]);
        assert_eq!(NDimInterval::sigma(s.components()).unwrap(), s);
        assert_eq!(NDimInterval::sigma(&[]), Err(Error::Empty));
    }

    #[test]
    fn new_rejects_unsorted() {
        assert!(matches!(
            NDimInterval::new(vec![0.5, 0.4]),
            Err(Error::NotSorted { position: 2, .. })
        ));
    }

    #[test]
    fn product_order_examples() {
        assert!(nd(&[0.2, 0.3]).product_leq(&nd(&[0.2, 0.9])).unwrap());
        assert!(!nd(&[0.2, 0.9]).product_leq(&nd(&[0.3, 0.8])).unwrap());
        let x = nd(&[0.1, 0.6]);
        assert!(x.product_leq(&x).unwrap());
        assert!(matches!(
            x.product_leq(&nd(&[0.1, 0.2, 0.3])),
            Err(Error::DimensionMismatch { .. })
        ));
    }

    #[test]
    fn lattice_examples() {
        let s = [nd(&[0.1, 0.5]), nd(&[0.2, 0.4])];
        assert_eq!(lattice_inf(&s).unwrap(), nd(&[0.1, 0.4]));
        assert_eq!(lattice_sup(&s).unwrap(), nd(&[0.2, 0.5]));
        assert_eq!(lattice_inf(&s[..1]).unwrap(), s[0]);
        assert_eq!(lattice_inf(&[]), Err(Error::Empty));
    }

    #[test]
    fn permutation_validation_and_json() {
        let tau = Permutation::from_one_based(vec![3, 2, 4, 1, 5]).unwrap();
        assert_eq!(tau.zero_based(), &[2, 1, 3, 0, 4]);
        assert_eq!(serde_json::to_string(&tau).unwrap(), "[3,2,4,1,5]");
        let back: Permutation = serde_json::from_str("[3,2,4,1,5]").unwrap();
        assert_eq!(back, tau);
        assert!(Permutation::from_one_based(vec![1, 1]).is_err());
        assert!(Permutation::from_one_based(vec![0, 1]).is_err());
        assert!(serde_json::from_str::<Permutation>("[1,3]").is_err());
        assert_eq!(tau.inverse().apply(&tau.apply(&[1, 2, 3, 4, 5]).unwrap()).unwrap(), vec![1, 2, 3, 4, 5]);
    }

    #[test]
    fn weighting_vector_rules() {
        let w = WeightingVector::new(vec![0.2341, 0.2474, 0.3181, 0.2004]).unwrap();
        assert!(w.is_strictly_positive());
        assert!(matches!(
            WeightingVector::new(vec![0.5, 0.4]),
            Err(Error::WeightSum { .. })
        ));
        assert!(matches!(
            WeightingVector::new(vec![1.5, -0.5]),
            Err(Error::NegativeWeight { position: 2, .. })
        ));
        let n = WeightingVector::normalized(vec![1.0, 3.0]).unwrap();
        assert_eq!(n.weights(), &[0.25, 0.75]);
        let z = WeightingVector::new(vec![0.4, 0.6, 0.0]).unwrap();
        assert!(!z.is_strictly_positive());
        assert_eq!(serde_json::to_string(&z).unwrap(), "[0.4,0.6,0.0]");
    }

    #[test]
    fn json_shape_of_intervals() {
        let x = nd(&[0.3, 0.4, 0.4, 0.5, 0.5]);
        assert_eq!(serde_json::to_string(&x).unwrap(), "[0.3,0.4,0.4,0.5,0.5]");
        assert!(serde_json::from_str::<NDimInterval>("[0.5,0.3]").is_err());
        assert!(serde_json::from_str::<NDimInterval>("[0.5,1.3]").is_err());
    }

    fn unit_vec(max_len: usize) -> impl Strategy<Value = Vec<f64>> {
        prop::collection::vec(0.0f64..=1.0, 1..=max_len)
    }

    proptest! {
        #[test]
        fn sigma_is_sorted_and_permutation_invariant(v in unit_vec(8), seed in any::<u64>()) {
            let s = NDimInterval::sigma(&v).unwrap();
            prop_assert!(s.components().windows(2).all(|w| w[0] <= w[1]));
            let mut shuffled = v.clone();
            // deterministic rotation plus reversal as the permutation
            let k = (seed as usize) % shuffled.len();
            shuffled.rotate_left(k);
            if seed % 2 == 0 { shuffled.reverse(); }
            prop_assert_eq!(NDimInterval::sigma(&shuffled).unwrap(), s.clone());
            let min = v.iter().cloned().fold(f64::INFINITY, f64::min);
            let max = v.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
            prop_assert_eq!(s.proj(1).unwrap().get(), min);
            prop_assert_eq!(s.proj(s.dim()).unwrap().get(), max);
        }

        #[test]
        fn product_order_is_a_partial_order(a in unit_vec(4), b in unit_vec(4), c in unit_vec(4)) {
            let n = a.len().min(b.len()).min(c.len());
            let x = NDimInterval::sigma(&a[..n]).unwrap();
            let y = NDimInterval::sigma(&b[..n]).unwrap();
            let z = NDimInterval::sigma(&c[..n]).unwrap();
            prop_assert!(x.product_leq(&x).unwrap());
            if x.product_leq(&y).unwrap() && y.product_leq(&x).unwrap() {
                prop_assert_eq!(&x, &y);
            }
            if x.product_leq(&y).unwrap() && y.product_leq(&z).unwrap() {
                prop_assert!(x.product_leq(&z).unwrap());
            }
        }

        #[test]
        fn lattice_bounds_every_member(raw in prop::collection::vec(unit_vec(3), 1..6)) {
            let n = raw.iter().map(Vec::len).min().unwrap();
            let set: Vec<_> = raw.iter().map(|v| NDimInterval::sigma(&v[..n]).unwrap()).collect();
            let inf = lattice_inf(&set).unwrap();
            let sup = lattice_sup(&set).unwrap();
            for x in &set {
                prop_assert!(inf.product_leq(x).unwrap());
                prop_assert!(x.product_leq(&sup).unwrap());
            }
        }

        #[test]
        fn degenerate_components_are_constant(c in 0.0f64..=1.0, n in 1usize..9) {
            let d = NDimInterval::degenerate(UnitValue::new(c).unwrap(), n).unwrap();
            prop_assert!(d.components().iter().all(|&v| v == c));
            prop_assert!(d.is_degenerate());
        }
    }
}
