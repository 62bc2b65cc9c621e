//! Run all four built-in scenarios and write the report in the format given
//! on the command line (table, csv or json).

use rankbench::ahp::AhpOptions;
use rankbench::io::{agreement_summary, bundled, save_report, ReportFormat};
use rankbench::scenario::run_scenarios;

fn main() -> rankbench::Result<()> {
    let format: ReportFormat = std::env::args()
        .nth(1)
        .map(|f| f.parse())
        .transpose()?
        .unwrap_or_default();
    let catalog = bundled::desk_catalog()?;
    let scenarios = bundled::builtin_scenarios(catalog.criteria())?;
    let comparisons = run_scenarios(&catalog, &scenarios, &AhpOptions::default())?;
    save_report(&comparisons, format, std::io::stdout().lock())?;
    eprintln!("{}", agreement_summary(&comparisons));
    Ok(())
}
