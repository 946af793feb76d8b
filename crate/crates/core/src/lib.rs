//! n-dimensional intervals `L_n([0,1])`, admissible orders, the bounded
//! semi-vector space over `([0,1], min(1,r+s), ·)`, n-dimensional aggregation
//! functions and a multi-expert, multi-criteria ranking pipeline.

pub mod error;
pub mod format;
pub mod mcgdm;
pub mod ndim;
pub mod ndim_agg;
pub mod orders;
pub mod report;
pub mod sampling;
pub mod scalar_agg;
pub mod semivector;

pub use error::{Error, Result};
pub use ndim::{lattice_inf, lattice_sup, NDimInterval, Permutation, UnitValue, WeightingVector};
pub use orders::{AdmissibleOrder, AdmissibleOrderSpec, TotalOrder};
pub use report::{Axiom, CompatibilityReport};
pub use sampling::Sampler;
pub use scalar_agg::{ScalarAggregation, ScalarAggregationSpec};
