//! Named weight scenarios run across both ranking methods, rank-agreement
//! statistics, weight sweeps, and report tables.

use serde::Serialize;

use crate::ahp::{ahp_rank_with, AhpOptions};
use crate::error::{Error, Result};
use crate::model::{build_decision_matrix, validate_weights, ServiceCatalog, WeightVector};
use crate::ranking::{Method, Ranking};
use crate::saw::saw_rank;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Scenario {
    pub name: String,
    pub weights: WeightVector,
    pub methods: Vec<Method>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub notes: Option<String>,
}

impl Scenario {
    /// Methods are deduplicated and kept in AHP, SAW order.
    pub fn new(
        name: impl Into<String>,
        weights: WeightVector,
        methods: impl IntoIterator<Item = Method>,
    ) -> Result<Self> {
        let name = name.into();
        let mut methods: Vec<Method> = methods.into_iter().collect();
        methods.sort();
        methods.dedup();
        if methods.is_empty() {
            return Err(Error::NoMethods(name));
        }
        Ok(Scenario {
            name,
            weights,
            methods,
            notes: None,
        })
    }

    pub fn with_notes(mut self, notes: impl Into<String>) -> Self {
        self.notes = Some(notes.into());
        self
    }

    /// Recorded consistency ratio of the weights, if any.
    pub fn cr(&self) -> Option<f64> {
        self.weights.consistency_ratio()
    }
}

/// Result of running one scenario. Agreement fields are `None` unless both
/// methods ran.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct MethodComparison {
    pub scenario: Scenario,
    /// Alternative ids in catalog order.
    pub alternatives: Vec<String>,
    pub rankings: Vec<Ranking>,
    pub kendall_tau: Option<f64>,
    pub exact_rank_match: Option<bool>,
    pub top_choice_agrees: Option<bool>,
}

impl MethodComparison {
    pub fn ranking(&self, method: Method) -> Option<&Ranking> {
        self.rankings.iter().find(|r| r.method == method)
    }
}

pub fn run_scenario(catalog: &ServiceCatalog, scenario: &Scenario) -> Result<MethodComparison> {
    run_scenario_with(catalog, scenario, &AhpOptions::default())
}

pub fn run_scenario_with(
    catalog: &ServiceCatalog,
    scenario: &Scenario,
    options: &AhpOptions,
) -> Result<MethodComparison> {
    if scenario.methods.is_empty() {
        return Err(Error::NoMethods(scenario.name.clone()));
    }
    let matrix = build_decision_matrix(catalog)?;
    let criteria = catalog.criteria();
    let rankings = scenario
        .methods
        .iter()
        .map(|m| match m {
            Method::Ahp => ahp_rank_with(&matrix, criteria, &scenario.weights, options),
            Method::Saw => saw_rank(&matrix, criteria, &scenario.weights),
        })
        .collect::<Result<Vec<_>>>()?;

    let (kendall_tau, exact_rank_match, top_choice_agrees) = match rankings.as_slice() {
        [a, b] => (
            Some(kendall_tau(a, b)?),
            Some(a.order() == b.order()),
            Some(a.top() == b.top()),
        ),
        _ => (None, None, None),
    };

    Ok(MethodComparison {
        scenario: scenario.clone(),
        alternatives: catalog.service_ids(),
        rankings,
        kendall_tau,
        exact_rank_match,
        top_choice_agrees,
    })
}

/// Runs every scenario, preserving input order.
pub fn run_scenarios(
    catalog: &ServiceCatalog,
    scenarios: &[Scenario],
    options: &AhpOptions,
) -> Result<Vec<MethodComparison>> {
    scenarios
        .iter()
        .map(|s| run_scenario_with(catalog, s, options))
        .collect()
}

/// Kendall tau-b between the rank assignments of two rankings over the same
/// alternatives.
pub fn kendall_tau(a: &Ranking, b: &Ranking) -> Result<f64> {
    if a.len() != b.len() {
        return Err(Error::IdSetMismatch);
    }
    let pairs = a
        .entries
        .iter()
        .map(|e| {
            b.rank_of(&e.id)
                .map(|rb| (e.rank as i64, rb as i64))
                .ok_or(Error::IdSetMismatch)
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(tau_b(&pairs))
}

fn tau_b(pairs: &[(i64, i64)]) -> f64 {
    let (mut concordant, mut discordant, mut ties_x, mut ties_y) = (0i64, 0i64, 0i64, 0i64);
    for (i, &(xi, yi)) in pairs.iter().enumerate() {
        for &(xj, yj) in &pairs[i + 1..] {
            let dx = (xi - xj).signum();
            let dy = (yi - yj).signum();
            match (dx, dy) {
                (0, 0) => {}
                (0, _) => ties_x += 1,
                (_, 0) => ties_y += 1,
                _ if dx == dy => concordant += 1,
                _ => discordant += 1,
            }
        }
    }
    let denom = (((concordant + discordant + ties_x) * (concordant + discordant + ties_y)) as f64).sqrt();
    if denom == 0.0 {
        return 1.0;
    }
    (concordant - discordant) as f64 / denom
}

/// Rounds half away from zero at `decimals` places.
pub fn round_half_up(value: f64, decimals: u32) -> f64 {
    let scale = 10f64.powi(decimals as i32);
    (value * scale).round() / scale
}

/// Four-decimal score as printed in reports.
pub fn format_score(value: f64) -> String {
    format!("{:.4}", round_half_up(value, 4))
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RankCell {
    pub score: f64,
    pub rank: usize,
}

impl RankCell {
    /// `0.4532 Rank # 2`
    pub fn label(&self) -> String {
        format!("{} Rank # {}", format_score(self.score), self.rank)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RankRow {
    pub alternative: String,
    /// One cell per method, in `RankTable::methods` order.
    pub cells: Vec<RankCell>,
}

/// Alternatives (catalog order) by methods, each cell a score with its rank.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RankTable {
    pub title: String,
    pub methods: Vec<Method>,
    pub rows: Vec<RankRow>,
}

pub fn rank_table(c: &MethodComparison) -> RankTable {
    let methods: Vec<Method> = c.rankings.iter().map(|r| r.method).collect();
    let rows = c
        .alternatives
        .iter()
        .map(|id| RankRow {
            alternative: id.clone(),
            cells: c
                .rankings
                .iter()
                .filter_map(|r| r.entry(id))
                .map(|e| RankCell {
                    score: e.score,
                    rank: e.rank,
                })
                .collect(),
        })
        .collect();
    RankTable {
        title: format!("Ranking based on {} attribute weights", c.scenario.name),
        methods,
        rows,
    }
}

/// Outcome of one sweep point.
#[derive(Debug, Clone, PartialEq)]
pub struct SweepPoint {
    pub value: f64,
    pub outcome: Result<MethodComparison>,
}

/// Moves one criterion weight to each of `values`, rescaling the others
/// proportionally so the vector sums to one, and runs the scenario at each
/// point. Invalid points are reported individually.
pub fn sweep_weights(
    catalog: &ServiceCatalog,
    base: &Scenario,
    criterion: &str,
    values: &[f64],
) -> Result<Vec<SweepPoint>> {
    sweep_weights_with(catalog, base, criterion, values, &AhpOptions::default())
}

pub fn sweep_weights_with(
    catalog: &ServiceCatalog,
    base: &Scenario,
    criterion: &str,
    values: &[f64],
    options: &AhpOptions,
) -> Result<Vec<SweepPoint>> {
    if catalog.criterion(criterion).is_none() {
        return Err(Error::UnknownCriterion {
            criterion: criterion.to_owned(),
            owner: None,
        });
    }
    let base_weights = validate_weights(base.weights.iter(), catalog.criteria())?;
    let base_value = base_weights.get(criterion).unwrap_or_default();

    Ok(values
        .iter()
        .map(|&value| {
            let outcome = if value == base_value {
                run_scenario_with(catalog, base, options)
            } else {
                rescale(&base_weights, criterion, value, catalog)
                    .and_then(|w| {
                        Scenario::new(base.name.clone(), w, base.methods.iter().copied())
                    })
                    .map(|s| s.with_notes(format!("{criterion} swept to {value}")))
                    .and_then(|s| run_scenario_with(catalog, &s, options))
            };
            SweepPoint { value, outcome }
        })
        .collect())
}

/// Sets `criterion` to `value` and scales the remaining weights by
/// `(1 - value) / Σ others`.
pub fn rescale(
    base: &WeightVector,
    criterion: &str,
    value: f64,
    catalog: &ServiceCatalog,
) -> Result<WeightVector> {
    let others: f64 = base
        .iter()
        .filter(|(k, _)| *k != criterion)
        .map(|(_, v)| v)
        .sum();
    let factor = if others > 0.0 { (1.0 - value) / others } else { 0.0 };
    let raw = base.iter().map(|(k, v)| {
        if k == criterion {
            (k, value)
        } else {
            (k, v * factor)
        }
    });
    validate_weights(raw, catalog.criteria())
}

/// Neighboring successful sweep values between which `method`'s rank order
/// changes.
pub fn rank_flips(points: &[SweepPoint], method: Method) -> Vec<(f64, f64)> {
    let orders: Vec<(f64, Vec<String>)> = points
        .iter()
        .filter_map(|p| {
            let c = p.outcome.as_ref().ok()?;
            let r = c.ranking(method)?;
            Some((p.value, r.order().into_iter().map(String::from).collect()))
        })
        .collect();
    orders
        .windows(2)
        .filter(|w| w[0].1 != w[1].1)
        .map(|w| (w[0].0, w[1].0))
        .collect()
}
