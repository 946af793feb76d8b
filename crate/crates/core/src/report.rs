//! Outcome records for axiom and property checks.

use std::fmt;

use serde::{Deserialize, Serialize};
use serde_json::Value;

/// Identifier of the law a [`CompatibilityReport`] is about.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Axiom {
    WF1,
    WF2,
    WF3,
    WF4,
    WF5,
    /// Closure of the scalar operations in `[0,1]`.
    #[serde(rename = "closure")]
    Closure,
    SV1,
    SV2,
    SV3,
    SV4,
    SV5,
    SV6,
    SV7,
    SV8,
    SV9,
    #[serde(rename = "admissibility")]
    Admissibility,
    #[serde(rename = "antisymmetry")]
    Antisymmetry,
    #[serde(rename = "totality")]
    Totality,
    #[serde(rename = "transitivity")]
    Transitivity,
    #[serde(rename = "dominance")]
    Dominance,
    #[serde(rename = "boundary")]
    Boundary,
    #[serde(rename = "monotonicity")]
    Monotonicity,
    #[serde(rename = "homogeneity")]
    Homogeneity,
    #[serde(rename = "strictness")]
    Strictness,
    #[serde(rename = "internality")]
    Internality,
    #[serde(rename = "idempotence")]
    Idempotence,
    #[serde(rename = "conjunctive")]
    Conjunctive,
    #[serde(rename = "disjunctive")]
    Disjunctive,
    #[serde(rename = "average")]
    Average,
    #[serde(rename = "idempotentIffAverage")]
    IdempotentIffAverage,
    #[serde(rename = "symmetry")]
    Symmetry,
    #[serde(rename = "additivity")]
    Additivity,
    #[serde(rename = "increasingness")]
    Increasingness,
    #[serde(rename = "domination")]
    Domination,
    #[serde(rename = "indexationInsensitivity")]
    IndexationInsensitivity,
}

impl fmt::Display for Axiom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match serde_json::to_value(self) {
            Ok(Value::String(s)) => f.write_str(&s),
            _ => write!(f, "{self:?}"),
        }
    }
}

/// Result of checking one law on a sample set.
///
/// A failing report always carries the first falsifying witness.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CompatibilityReport {
    pub axiom: Axiom,
    pub holds: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub witness: Option<Value>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    /// Number of sample cases evaluated (the failing case included).
    pub samples: usize,
}

impl CompatibilityReport {
    pub fn pass(axiom: Axiom, seed: Option<u64>, samples: usize) -> Self {
        CompatibilityReport {
            axiom,
            holds: true,
            witness: None,
            seed,
            samples,
        }
    }

    pub fn fail(axiom: Axiom, witness: Value, seed: Option<u64>, samples: usize) -> Self {
        CompatibilityReport {
            axiom,
            holds: false,
            witness: Some(witness),
            seed,
            samples,
        }
    }

    /// Folds the outcome of sample `index` (0-based) into a running check:
    /// the first failure wins.
    pub(crate) fn from_cases<I>(axiom: Axiom, seed: Option<u64>, cases: I) -> Self
    where
        I: IntoIterator<Item = Option<Value>>,
    {
        let mut samples = 0;
        for witness in cases {
            samples += 1;
            if let Some(w) = witness {
                return Self::fail(axiom, w, seed, samples);
            }
        }
        Self::pass(axiom, seed, samples)
    }
}

impl fmt::Display for CompatibilityReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.holds {
            write!(f, "{}: holds ({} samples)", self.axiom, self.samples)
        } else {
            write!(f, "{}: FAILS after {} samples", self.axiom, self.samples)?;
            if let Some(w) = &self.witness {
                write!(f, ", witness {w}")?;
            }
            Ok(())
        }
    }
}
