//! The three admissible order families, compared on the same pair.

use ndagg::orders::{max_under, min_under};
use ndagg::{AdmissibleOrder, AdmissibleOrderSpec, NDimInterval, TotalOrder};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let specs: Vec<AdmissibleOrderSpec> = serde_json::from_str(
        r#"[
            {"kind": "LexTau", "tau": [1, 2, 3]},
            {"kind": "LexTau", "tau": [3, 2, 1]},
            {"kind": "WeightedLex", "tau": [1, 2, 3], "omega": [0.2, 0.3, 0.5]},
            {"kind": "AggLex", "tau": [1, 2, 3], "agg": {"name": "arithmeticMean"}}
        ]"#,
    )?;
    let x = NDimInterval::new(vec![0.1, 0.8, 0.9])?;
    let y = NDimInterval::new(vec![0.3, 0.4, 0.5])?;
    for spec in specs {
        let order = AdmissibleOrder::new(spec)?;
        let lo = min_under(&order, &[x.clone(), y.clone()])?;
        let hi = max_under(&order, &[x.clone(), y.clone()])?;
        println!("{:<40} x vs y: {:?}  min {:?}  max {:?}", order.describe(), order.compare(&x, &y)?, lo.components(), hi.components());
    }
    Ok(())
}
