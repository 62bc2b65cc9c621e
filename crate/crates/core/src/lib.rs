//! Ranking of service alternatives under weighted QoS criteria with the
//! analytic hierarchy process (AHP) and simple additive weighting (SAW).
//!
//! The crate is organized bottom-up:
//!
//! * [`model`]: criteria, service catalogs, decision matrices, weight vectors
//!   and the max-normalization primitives.
//! * [`ahp`]: pairwise comparison matrices, power-iteration priorities,
//!   consistency ratios and AHP ranking.
//! * [`saw`]: SAW scoring and ranking.
//! * [`scenario`]: weight scenarios across both methods, Kendall tau
//!   agreement, report tables and weight sweeps.
//! * [`io`]: JSON/CSV documents, report rendering and the bundled desk data.
//! * [`api`]: the local HTTP facade used by the what-if frontend.
//! * [`cli`]: the `rankbench` command-line front end.
//!
//! ```
//! use rankbench::io::bundled;
//! use rankbench::scenario::run_scenario;
//!
//! let catalog = bundled::desk_catalog().unwrap();
//! let scenarios = bundled::builtin_scenarios(catalog.criteria()).unwrap();
//! let sim1 = run_scenario(&catalog, &scenarios[0]).unwrap();
//! assert_eq!(sim1.exact_rank_match, Some(true));
//! assert_eq!(sim1.rankings[0].top(), Some("RF2"));
//! ```

pub mod ahp;
pub mod api;
pub mod cli;
pub mod error;
pub mod io;
pub mod model;
pub mod ranking;
pub mod saw;
pub mod scenario;

pub use error::{Error, Result};
pub use model::{Criterion, DecisionMatrix, Direction, ServiceCatalog, ServiceProfile, WeightVector};
pub use ranking::{Method, Ranking};
pub use scenario::{MethodComparison, Scenario};
