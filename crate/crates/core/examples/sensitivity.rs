//! What-if: one expert lowers one evaluation.

use ndagg::format;
use ndagg::mcgdm::{sensitivity, DecisionProblem, Edit};

fn main() -> ndagg::Result<()> {
    let problem = DecisionProblem::worked_example();
    let edit = Edit::parse("expert=2,alt=4,crit=3,value=0.1")?;
    let report = sensitivity(&problem, &[edit])?;
    for change in &report.collective_changes {
        println!(
            "{} / {}: {} -> {}",
            change.alternative,
            change.criterion,
            format::interval(&change.before),
            format::interval(&change.after)
        );
    }
    print!("{}", format::sensitivity(&report));

    let uniform = Edit::Weights { weights: vec![1.0; 4], normalize: true };
    let report = sensitivity(&problem, &[uniform])?;
    println!("\nwith equal criterion weights: {}", report.edited.ranking.notation);
    Ok(())
}
