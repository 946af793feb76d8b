//! Increasingness, domination and insensitivity to relabeling, sampled on
//! random problems.

use ndagg::mcgdm::{check_principles, AggregatorFamily};

fn main() -> ndagg::Result<()> {
    let reports = check_principles(11, 20, 3, &[AggregatorFamily::WeightedAverage, AggregatorFamily::Owa])?;
    for r in reports {
        println!("{:<24} {} over {} cases", r.axiom.to_string(), if r.holds { "holds" } else { "fails" }, r.samples);
    }
    Ok(())
}
