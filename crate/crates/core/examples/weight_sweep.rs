//! Sweep the render-node cost weight from sim4 and report where each method's
//! top choice changes.

use rankbench::io::bundled;
use rankbench::scenario::{rank_flips, sweep_weights};
use rankbench::Method;

fn main() -> rankbench::Result<()> {
    let catalog = bundled::desk_catalog()?;
    let sim4 = bundled::builtin_scenarios(catalog.criteria())?.remove(3);
    let values: Vec<f64> = (1..20).map(|k| k as f64 / 20.0).collect();
    let points = sweep_weights(&catalog, &sim4, "rnc", &values)?;

    for p in &points {
        let c = p.outcome.as_ref().expect("interior points are valid");
        let top = |m| c.ranking(m).and_then(|r| r.top()).unwrap_or("-");
        println!(
            "rnc {:.2}  AHP top {}  SAW top {}",
            p.value,
            top(Method::Ahp),
            top(Method::Saw)
        );
    }
    for m in Method::ALL {
        for (a, b) in rank_flips(&points, m) {
            println!("{m} order changes between {a:.2} and {b:.2}");
        }
    }
    Ok(())
}
