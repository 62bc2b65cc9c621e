//! Derive criterion weights from a hand-filled pairwise comparison matrix and
//! check its consistency ratio.

use rankbench::ahp::{consistency_ratio, derive_criteria_weights, PairwiseMatrix};

fn main() -> rankbench::Result<()> {
    let ids: Vec<String> = ["cost", "latency", "availability"].map(String::from).to_vec();

    // cost is twice as important as latency and six times availability;
    // latency twice availability. Slightly off from perfectly transitive.
    let judged = PairwiseMatrix::from_upper(ids.clone(), |i, j| match (i, j) {
        (0, 1) => 2.0,
        (0, 2) => 6.0,
        (1, 2) => 2.0,
        _ => unreachable!(),
    })?;
    let report = consistency_ratio(&judged)?;
    println!(
        "lambda_max {:.4}  CI {:.4}  RI {:.2}  CR {:.4}  acceptable: {}",
        report.lambda_max,
        report.consistency_index,
        report.random_index,
        report.consistency_ratio,
        report.acceptable
    );

    let weights = derive_criteria_weights(&judged)?;
    for (id, w) in weights.iter() {
        println!("  {id:<14} {w:.4}");
    }

    // A cyclic judgement (a > b > c > a) is far from consistent; the engine
    // still returns a result and flags it.
    let cyclic = PairwiseMatrix::from_upper(ids, |i, j| match (i, j) {
        (0, 1) | (1, 2) => 5.0,
        _ => 1.0 / 5.0,
    })?;
    let report = consistency_ratio(&cyclic)?;
    println!("\ncyclic CR {:.4}", report.consistency_ratio);
    for w in report.warnings() {
        println!("  warning: {w}");
    }
    Ok(())
}
