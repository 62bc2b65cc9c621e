//! Rank the bundled desk catalog under one built-in scenario with both
//! methods and print the side-by-side table.
//!
//! ```sh
//! cargo run --example rank_catalog -- sim3
//! ```

use rankbench::io::bundled;
use rankbench::scenario::{rank_table, run_scenario};

fn main() -> rankbench::Result<()> {
    let name = std::env::args().nth(1).unwrap_or_else(|| "sim1".into());
    let catalog = bundled::desk_catalog()?;
    let scenario = bundled::builtin_scenarios(catalog.criteria())?
        .into_iter()
        .find(|s| s.name == name)
        .ok_or_else(|| rankbench::Error::UnknownScenario(name.clone()))?;

    println!("weights:");
    for (id, w) in scenario.weights.iter() {
        let c = catalog.criterion(id).unwrap();
        println!("  {:<28} {:<8} {w:.5}", c.name, c.direction.to_string());
    }

    let comparison = run_scenario(&catalog, &scenario)?;
    let table = rank_table(&comparison);
    println!("\n{}", table.title);
    for row in &table.rows {
        let cells: Vec<String> = row.cells.iter().map(|c| c.label()).collect();
        println!("  {:<4} {}", row.alternative, cells.join("   "));
    }
    println!(
        "\nkendall tau {:.4}, top choice agrees: {}",
        comparison.kendall_tau.unwrap_or(f64::NAN),
        comparison.top_choice_agrees.unwrap_or(false)
    );
    Ok(())
}
