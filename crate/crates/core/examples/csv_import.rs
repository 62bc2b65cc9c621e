//! Build a catalog from a CSV decision matrix plus criterion metadata, then
//! rank it with weights derived from pairwise judgements.

use rankbench::ahp::{derive_criteria_weights, PairwiseMatrix};
use rankbench::io::{catalog_from_matrix, read_decision_matrix_csv, save_catalog};
use rankbench::scenario::{run_scenario, Scenario};
use rankbench::{Criterion, Method};

const CSV: &str = "\
id,price,latency_ms,uptime
east,0.12,85,99.95
west,0.09,140,99.90
edge,0.20,30,99.99
";

fn main() -> rankbench::Result<()> {
    let matrix = read_decision_matrix_csv(CSV.as_bytes())?;
    let catalog = catalog_from_matrix(
        vec![
            Criterion::cost("price"),
            Criterion::cost("latency_ms"),
            Criterion::benefit("uptime"),
        ],
        &matrix,
    )?;

    let ids = ["price", "latency_ms", "uptime"].map(String::from).to_vec();
    let judged = PairwiseMatrix::from_upper(ids, |i, j| match (i, j) {
        (0, 1) => 3.0,
        (0, 2) => 5.0,
        _ => 2.0,
    })?;
    let weights = derive_criteria_weights(&judged)?;
    println!("derived weights (CR {:.4}):", weights.consistency_ratio().unwrap_or(0.0));
    for (id, w) in weights.iter() {
        println!("  {id:<11} {w:.4}");
    }

    let scenario = Scenario::new("judged", weights, Method::ALL)?;
    let c = run_scenario(&catalog, &scenario)?;
    for r in &c.rankings {
        println!("{}: {}", r.method, r.order().join(" > "));
    }

    println!("\ncatalog as JSON:");
    save_catalog(&catalog, std::io::stdout().lock())?;
    Ok(())
}
