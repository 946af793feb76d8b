//! The bundled five-expert problem: collective matrix, scores, ranking.

use ndagg::format;
use ndagg::mcgdm::{build_collective, rank_problem, DecisionProblem};

fn main() -> ndagg::Result<()> {
    let problem = DecisionProblem::worked_example();
    let collective = build_collective(&problem)?;
    print!("{}", format::collective_table(&collective, &problem.alternatives, &problem.criteria));
    println!();
    print!("{}", format::rank_report(&rank_problem(&problem)?));
    Ok(())
}
