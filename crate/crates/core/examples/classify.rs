//! Sampled classification of two aggregations.

use ndagg::ndim_agg::{classify, NDimAggregation};
use ndagg::{AdmissibleOrder, Permutation, Sampler, ScalarAggregation, WeightingVector};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let order = AdmissibleOrder::lex(Permutation::identity(3))?;
    let mw = NDimAggregation::weighted_average(WeightingVector::new(vec![0.2, 0.3, 0.5])?, order.clone())?;
    let lift = NDimAggregation::lift(vec![ScalarAggregation::min(3)?, ScalarAggregation::min(3)?, ScalarAggregation::arithmetic_mean(3)?], order)?;

    for f in [&mw, &lift] {
        let c = classify(f, &Sampler::new(5), 500)?;
        println!("{}", c.function);
        for r in [&c.monotone, &c.idempotent, &c.average, &c.conjunctive, &c.disjunctive, &c.symmetric] {
            println!("  {:<14} {}", r.axiom.to_string(), if r.holds { "yes" } else { "no" });
        }
        if let Some(w) = &c.monotone.witness {
            println!("  monotonicity counterexample: {w}");
        }
    }
    Ok(())
}
