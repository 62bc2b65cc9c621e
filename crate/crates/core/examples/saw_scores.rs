//! Inspect the SAW normalization: each column is divided by its best value so
//! the best alternative on every criterion gets 1.

use rankbench::io::bundled;
use rankbench::model::build_decision_matrix;
use rankbench::saw::saw_score;

fn main() -> rankbench::Result<()> {
    let catalog = bundled::desk_catalog()?;
    let matrix = build_decision_matrix(&catalog)?;
    let sim2 = bundled::builtin_scenarios(catalog.criteria())?.remove(1);
    let board = saw_score(&matrix, catalog.criteria(), &sim2.weights)?;

    print!("{:<5}", "");
    for c in &board.criteria {
        print!("{c:>8}");
    }
    println!("{:>9}", "S_i");
    for (i, id) in board.ids.iter().enumerate() {
        print!("{id:<5}");
        for r in &board.normalized[i] {
            print!("{r:>8.4}");
        }
        println!("{:>9.4}", board.scores[i]);
    }
    println!("\norder: {}", board.ranking().order().join(" > "));
    Ok(())
}
