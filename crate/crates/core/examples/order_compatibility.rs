//! Which orders are compatible with the scalar product and the bounded
//! addition. Failures come with a witness.

use ndagg::orders::{admissibility_reports, compatibility_probes};
use ndagg::semivector::check_order_compatibility;
use ndagg::{AdmissibleOrder, AdmissibleOrderSpec, Sampler, TotalOrder};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let specs = [
        r#"{"kind": "LexTau", "tau": [1, 2, 3, 4]}"#,
        r#"{"kind": "LexTau", "tau": [2, 1, 3, 4]}"#,
        r#"{"kind": "WeightedLex", "tau": [1, 2, 3, 4], "omega": [0.4, 0.6, 0, 0]}"#,
        r#"{"kind": "AggLex", "tau": [1, 2, 3, 4], "agg": {"name": "maxExp", "e": [1, 2, 3, 4]}}"#,
    ];
    for text in specs {
        let spec: AdmissibleOrderSpec = serde_json::from_str(text)?;
        let order = AdmissibleOrder::new(spec.clone())?;
        let laws = admissibility_reports(&order, 4, &mut Sampler::new(1), 500)?;
        let (sv8, sv9) = check_order_compatibility(&order, 4, &compatibility_probes(&spec), &mut Sampler::new(2), 500)?;
        println!("{}", order.describe());
        println!("  order laws hold: {}", laws.iter().all(|r| r.holds));
        for r in [sv8, sv9] {
            match &r.witness {
                None => println!("  {} holds ({} samples)", r.axiom, r.samples),
                Some(w) => println!("  {} fails: {w}", r.axiom),
            }
        }
    }
    Ok(())
}
