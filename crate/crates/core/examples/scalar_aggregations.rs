//! The scalar aggregation registry, built from JSON specs.

use ndagg::{ScalarAggregation, ScalarAggregationSpec};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let specs: Vec<ScalarAggregationSpec> = serde_json::from_str(
        r#"[
            {"name": "min"},
            {"name": "max"},
            {"name": "arithmeticMean"},
            {"name": "pR", "r": 2},
            {"name": "weightedAverage", "omega": [0.5, 0.3, 0.2]},
            {"name": "geometricMean", "omega": [0.5, 0.3, 0.2]},
            {"name": "owa", "omega": [0.5, 0.3, 0.2]},
            {"name": "maxExp", "e": [1, 2, 3]}
        ]"#,
    )?;
    let xs = [0.2, 0.9, 0.5];
    for spec in specs {
        let a = ScalarAggregation::new(spec, Some(xs.len()))?;
        println!("{:<16} A{xs:?} = {:.5}", a.name(), a.evaluate(&xs)?);
    }
    Ok(())
}
