//! Weighted average, OWA and componentwise lifts on L_3, and the
//! construction gate refusing an OWA over an incompatible order.

use ndagg::ndim_agg::{NDimAggregation, NDimFunction};
use ndagg::{AdmissibleOrder, AdmissibleOrderSpec, NDimInterval, Permutation, ScalarAggregation, WeightingVector};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let order = AdmissibleOrder::lex(Permutation::identity(3))?;
    let args = vec![
        NDimInterval::new(vec![0.1, 0.4, 0.9])?,
        NDimInterval::new(vec![0.3, 0.3, 0.6])?,
        NDimInterval::new(vec![0.2, 0.7, 0.8])?,
    ];
    let omega = WeightingVector::new(vec![0.5, 0.3, 0.2])?;

    let mw = NDimAggregation::weighted_average(omega.clone(), order.clone())?;
    let owa = NDimAggregation::owa(omega.clone(), order.clone())?;
    let lift = NDimAggregation::lift(
        vec![ScalarAggregation::min(3)?, ScalarAggregation::arithmetic_mean(3)?, ScalarAggregation::max(3)?],
        order,
    )?;
    for f in [&mw, &owa, &lift] {
        println!("{:<22} {:?}", f.name(), f.evaluate(&args)?.components());
    }

    let weighted_lex = AdmissibleOrder::new(AdmissibleOrderSpec::WeightedLex {
        tau: Permutation::identity(3),
        omega: WeightingVector::new(vec![0.4, 0.6, 0.0])?,
    })?;
    match NDimAggregation::owa(omega, weighted_lex) {
        Ok(_) => println!("OWA over the weighted order was accepted"),
        Err(e) => println!("OWA over the weighted order refused: {e}"),
    }
    Ok(())
}
