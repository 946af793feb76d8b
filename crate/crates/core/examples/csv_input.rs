//! Assembling a problem from one CSV file per expert.

use ndagg::mcgdm::{problem_from_csv, rank_problem, DecisionProblem};

const E1: &str = "alternative,cost,quality\nx,0.2,0.9\ny,0.6,0.4\n";
const E2: &str = "alternative,cost,quality\nx,0.3,0.7\ny,0.5,0.5\n";
const E3: &str = "alternative,cost,quality\nx,0.1,0.8\ny,0.7,0.6\n";

fn main() -> ndagg::Result<()> {
    let files = [("ana", E1), ("ben", E2), ("chris", E3)].map(|(who, text)| (who.to_string(), text.to_string()));
    let mut problem: DecisionProblem = problem_from_csv(&files)?;
    problem.weights = Some(vec![0.4, 0.6]);
    problem.order = Some(serde_json::json!({"kind": "LexTau", "tau": [2, 1, 3]}));
    let report = rank_problem(&problem)?;
    for s in &report.scores {
        println!("{} {:?}", s.alternative, s.score.components());
    }
    println!("{}", report.ranking.notation);
    Ok(())
}
