//! Shared domain model: criteria, service alternatives, the decision matrix,
//! criterion weights, and the max-normalization primitives used by both
//! ranking methods.

use indexmap::IndexMap;
use serde::{Deserialize, Serialize};
use std::collections::HashSet;
use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

/// Allowed deviation of a weight vector's sum from 1.
pub const WEIGHT_SUM_TOLERANCE: f64 = 1e-5;

/// Optimization direction of a criterion.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Direction {
    /// Higher raw values are better.
    Benefit,
    /// Lower raw values are better.
    Cost,
}

impl fmt::Display for Direction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Direction::Benefit => f.write_str("benefit"),
            Direction::Cost => f.write_str("cost"),
        }
    }
}

impl FromStr for Direction {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "benefit" => Ok(Direction::Benefit),
            "cost" => Ok(Direction::Cost),
            other => Err(Error::Config(format!(
                "unknown direction `{other}` (expected benefit or cost)"
            ))),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Criterion {
    pub id: String,
    pub name: String,
    pub direction: Direction,
    /// Free-text unit; never converted.
    #[serde(default)]
    pub unit: String,
}

impl Criterion {
    pub fn new(
        id: impl Into<String>,
        name: impl Into<String>,
        direction: Direction,
        unit: impl Into<String>,
    ) -> Self {
        Criterion {
            id: id.into(),
            name: name.into(),
            direction,
            unit: unit.into(),
        }
    }

    pub fn benefit(id: impl Into<String>) -> Self {
        let id = id.into();
        Criterion::new(id.clone(), id, Direction::Benefit, "")
    }

    pub fn cost(id: impl Into<String>) -> Self {
        let id = id.into();
        Criterion::new(id.clone(), id, Direction::Cost, "")
    }
}

/// One service alternative and its raw QoS values keyed by criterion id.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ServiceProfile {
    pub id: String,
    pub name: String,
    pub qos: IndexMap<String, f64>,
}

impl ServiceProfile {
    pub fn new<I, K>(id: impl Into<String>, name: impl Into<String>, qos: I) -> Self
    where
        I: IntoIterator<Item = (K, f64)>,
        K: Into<String>,
    {
        ServiceProfile {
            id: id.into(),
            name: name.into(),
            qos: qos.into_iter().map(|(k, v)| (k.into(), v)).collect(),
        }
    }
}

/// Validated set of criteria and alternatives. Immutable once built.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ServiceCatalog {
    criteria: Vec<Criterion>,
    services: Vec<ServiceProfile>,
}

impl ServiceCatalog {
    pub fn new(criteria: Vec<Criterion>, services: Vec<ServiceProfile>) -> Result<Self> {
        if services.len() < 2 || criteria.is_empty() {
            return Err(Error::CatalogTooSmall {
                services: services.len(),
                criteria: criteria.len(),
            });
        }
        check_ids("criterion", criteria.iter().map(|c| c.id.as_str()))?;
        check_ids("service", services.iter().map(|s| s.id.as_str()))?;

        for service in &services {
            for criterion in &criteria {
                match service.qos.get(&criterion.id) {
                    None => {
                        return Err(Error::MissingCriterion {
                            criterion: criterion.id.clone(),
                            owner: Some(service.id.clone()),
                        })
                    }
                    Some(&value) if !is_positive(value) => {
                        return Err(Error::NonPositiveValue {
                            index: 0,
                            value,
                            owner: None,
                        }
                        .in_entity(format!(
                            "service `{}` criterion `{}`",
                            service.id, criterion.id
                        )))
                    }
                    Some(_) => {}
                }
            }
            if let Some(extra) = service
                .qos
                .keys()
                .find(|k| !criteria.iter().any(|c| &c.id == *k))
            {
                return Err(Error::UnknownCriterion {
                    criterion: extra.clone(),
                    owner: Some(service.id.clone()),
                });
            }
        }
        Ok(ServiceCatalog { criteria, services })
    }

    pub fn criteria(&self) -> &[Criterion] {
        &self.criteria
    }

    pub fn services(&self) -> &[ServiceProfile] {
        &self.services
    }

    pub fn criterion(&self, id: &str) -> Option<&Criterion> {
        self.criteria.iter().find(|c| c.id == id)
    }

    pub fn service_ids(&self) -> Vec<String> {
        self.services.iter().map(|s| s.id.clone()).collect()
    }

    /// Restricts the catalog to the named criteria, keeping catalog order.
    pub fn project<S: AsRef<str>>(&self, ids: &[S]) -> Result<ServiceCatalog> {
        for id in ids {
            if self.criterion(id.as_ref()).is_none() {
                return Err(Error::UnknownCriterion {
                    criterion: id.as_ref().to_owned(),
                    owner: None,
                });
            }
        }
        let keep = |c: &str| ids.iter().any(|i| i.as_ref() == c);
        let criteria = self
            .criteria
            .iter()
            .filter(|c| keep(&c.id))
            .cloned()
            .collect();
        let services = self
            .services
            .iter()
            .map(|s| ServiceProfile {
                id: s.id.clone(),
                name: s.name.clone(),
                qos: s
                    .qos
                    .iter()
                    .filter(|(k, _)| keep(k))
                    .map(|(k, v)| (k.clone(), *v))
                    .collect(),
            })
            .collect();
        ServiceCatalog::new(criteria, services)
    }
}

fn check_ids<'a>(kind: &'static str, ids: impl Iterator<Item = &'a str>) -> Result<()> {
    let mut seen = HashSet::new();
    for id in ids {
        if id.trim().is_empty() {
            return Err(Error::EmptyId { kind });
        }
        if !seen.insert(id) {
            return Err(Error::DuplicateId {
                kind,
                id: id.to_owned(),
            });
        }
    }
    Ok(())
}

fn is_positive(v: f64) -> bool {
    v.is_finite() && v > 0.0
}

/// Alternatives × criteria grid of raw values `x_ij`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DecisionMatrix {
    rows: Vec<String>,
    cols: Vec<String>,
    values: Vec<Vec<f64>>,
}

impl DecisionMatrix {
    pub fn new(rows: Vec<String>, cols: Vec<String>, values: Vec<Vec<f64>>) -> Result<Self> {
        if values.len() != rows.len() {
            return Err(Error::Shape(format!(
                "{} row ids but {} value rows",
                rows.len(),
                values.len()
            )));
        }
        check_ids("alternative", rows.iter().map(String::as_str))?;
        check_ids("criterion", cols.iter().map(String::as_str))?;
        for (i, row) in values.iter().enumerate() {
            if row.len() != cols.len() {
                return Err(Error::Shape(format!(
                    "row `{}` has {} values, expected {}",
                    rows[i],
                    row.len(),
                    cols.len()
                )));
            }
            for (j, &v) in row.iter().enumerate() {
                if !is_positive(v) {
                    return Err(Error::NonPositiveValue {
                        index: i,
                        value: v,
                        owner: Some(format!("{}.{}", rows[i], cols[j])),
                    });
                }
            }
        }
        Ok(DecisionMatrix { rows, cols, values })
    }

    pub fn rows(&self) -> &[String] {
        &self.rows
    }

    pub fn cols(&self) -> &[String] {
        &self.cols
    }

    pub fn n_alternatives(&self) -> usize {
        self.rows.len()
    }

    pub fn n_criteria(&self) -> usize {
        self.cols.len()
    }

    pub fn value(&self, i: usize, j: usize) -> f64 {
        self.values[i][j]
    }

    pub fn col_index(&self, criterion: &str) -> Option<usize> {
        self.cols.iter().position(|c| c == criterion)
    }

    pub fn column(&self, j: usize) -> Vec<f64> {
        self.values.iter().map(|row| row[j]).collect()
    }

    pub fn values(&self) -> &[Vec<f64>] {
        &self.values
    }
}

/// Lays the catalog out as a decision matrix in catalog order.
pub fn build_decision_matrix(catalog: &ServiceCatalog) -> Result<DecisionMatrix> {
    let cols: Vec<String> = catalog.criteria.iter().map(|c| c.id.clone()).collect();
    let mut values = Vec::with_capacity(catalog.services.len());
    for service in &catalog.services {
        let row = cols
            .iter()
            .map(|c| {
                service
                    .qos
                    .get(c)
                    .copied()
                    .ok_or_else(|| Error::MissingCriterion {
                        criterion: c.clone(),
                        owner: Some(service.id.clone()),
                    })
            })
            .collect::<Result<Vec<_>>>()?;
        values.push(row);
    }
    DecisionMatrix::new(catalog.service_ids(), cols, values)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum WeightProvenance {
    Direct,
    DerivedFromPairwise,
}

/// Per-criterion weights summing to one, in criterion order.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct WeightVector {
    weights: IndexMap<String, f64>,
    provenance: WeightProvenance,
    consistency_ratio: Option<f64>,
}

impl WeightVector {
    pub(crate) fn from_parts(
        weights: IndexMap<String, f64>,
        provenance: WeightProvenance,
        consistency_ratio: Option<f64>,
    ) -> Self {
        WeightVector {
            weights,
            provenance,
            consistency_ratio,
        }
    }

    pub fn get(&self, criterion: &str) -> Option<f64> {
        self.weights.get(criterion).copied()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&str, f64)> {
        self.weights.iter().map(|(k, v)| (k.as_str(), *v))
    }

    pub fn as_map(&self) -> &IndexMap<String, f64> {
        &self.weights
    }

    pub fn len(&self) -> usize {
        self.weights.len()
    }

    pub fn is_empty(&self) -> bool {
        self.weights.is_empty()
    }

    pub fn sum(&self) -> f64 {
        self.weights.values().sum()
    }

    pub fn provenance(&self) -> WeightProvenance {
        self.provenance
    }

    pub fn consistency_ratio(&self) -> Option<f64> {
        self.consistency_ratio
    }

    /// Attaches a consistency ratio recorded elsewhere (e.g. a published table).
    pub fn with_consistency_ratio(mut self, cr: Option<f64>) -> Self {
        self.consistency_ratio = cr;
        self
    }

    /// Weights aligned to `criteria`, failing on any criterion without a weight.
    pub fn aligned(&self, criteria: &[Criterion]) -> Result<Vec<f64>> {
        criteria
            .iter()
            .map(|c| {
                self.get(&c.id).ok_or_else(|| Error::MissingCriterion {
                    criterion: c.id.clone(),
                    owner: None,
                })
            })
            .collect()
    }
}

/// Checks raw weights against the criteria list and returns them in
/// criterion order with `Direct` provenance.
pub fn validate_weights<I, K>(raw: I, criteria: &[Criterion]) -> Result<WeightVector>
where
    I: IntoIterator<Item = (K, f64)>,
    K: AsRef<str>,
{
    let mut given: IndexMap<String, f64> = IndexMap::new();
    for (k, v) in raw {
        let k = k.as_ref();
        if criteria.iter().all(|c| c.id != k) {
            return Err(Error::UnknownCriterion {
                criterion: k.to_owned(),
                owner: None,
            });
        }
        if given.insert(k.to_owned(), v).is_some() {
            return Err(Error::DuplicateId {
                kind: "weight",
                id: k.to_owned(),
            });
        }
    }

    let mut weights = IndexMap::with_capacity(criteria.len());
    for c in criteria {
        let w = *given.get(&c.id).ok_or_else(|| Error::MissingCriterion {
            criterion: c.id.clone(),
            owner: None,
        })?;
        if !(w.is_finite() && w > 0.0 && w <= 1.0) {
            return Err(Error::NonPositiveWeight {
                criterion: c.id.clone(),
                value: w,
            });
        }
        weights.insert(c.id.clone(), w);
    }

    let sum: f64 = weights.values().sum();
    if (sum - 1.0).abs() > WEIGHT_SUM_TOLERANCE {
        return Err(Error::SumNotOne { sum });
    }
    Ok(WeightVector::from_parts(weights, WeightProvenance::Direct, None))
}

fn check_column(column: &[f64]) -> Result<()> {
    if column.is_empty() {
        return Err(Error::EmptyColumn);
    }
    if let Some((index, &value)) = column.iter().enumerate().find(|(_, &v)| !is_positive(v)) {
        return Err(Error::NonPositiveValue {
            index,
            value,
            owner: None,
        });
    }
    Ok(())
}

/// `r_i = x_i / max(x)`.
pub fn normalize_benefit(column: &[f64]) -> Result<Vec<f64>> {
    check_column(column)?;
    let max = column.iter().copied().fold(f64::MIN, f64::max);
    Ok(column.iter().map(|&x| x / max).collect())
}

/// `r_i = (1/x_i) / max(1/x) = min(x) / x_i`.
pub fn normalize_cost(column: &[f64]) -> Result<Vec<f64>> {
    check_column(column)?;
    let min = column.iter().copied().fold(f64::MAX, f64::min);
    Ok(column.iter().map(|&x| min / x).collect())
}

pub fn normalize(column: &[f64], direction: Direction) -> Result<Vec<f64>> {
    match direction {
        Direction::Benefit => normalize_benefit(column),
        Direction::Cost => normalize_cost(column),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn five_criteria() -> Vec<Criterion> {
        vec![
            Criterion::cost("rnc"),
            Criterion::cost("fut"),
            Criterion::benefit("avail"),
            Criterion::benefit("elast"),
            Criterion::cost("srt"),
        ]
    }

    fn ids(criteria: &[Criterion]) -> Vec<&str> {
        criteria.iter().map(|c| c.id.as_str()).collect()
    }

    #[test]
    fn sim1_row_validates() {
        let criteria = five_criteria();
        let raw = [0.47821, 0.35242, 0.04562, 0.05432, 0.06943];
        let w = validate_weights(ids(&criteria).into_iter().zip(raw), &criteria).unwrap();
        assert!((w.sum() - 1.0).abs() < 1e-12);
        assert_eq!(w.provenance(), WeightProvenance::Direct);
        assert_eq!(w.get("fut"), Some(0.35242));
    }

    #[test]
    fn uniform_weights_validate() {
        let criteria = five_criteria();
        let w = validate_weights(ids(&criteria).into_iter().map(|k| (k, 0.2)), &criteria).unwrap();
        assert_eq!(w.len(), 5);
    }

    #[test]
    fn oversized_weights_report_sum() {
        let criteria = five_criteria();
        let err =
            validate_weights(ids(&criteria).into_iter().map(|k| (k, 0.5)), &criteria).unwrap_err();
        match err {
            Error::SumNotOne { sum, .. } => assert!((sum - 2.5).abs() < 1e-12),
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn weight_errors() {
        let criteria = five_criteria();
        let err = validate_weights([("rnc", 1.0)], &criteria).unwrap_err();
        assert!(matches!(err, Error::MissingCriterion { ref criterion, .. } if criterion == "fut"));

        let err = validate_weights([("bogus", 1.0)], &criteria).unwrap_err();
        assert!(matches!(err, Error::UnknownCriterion { .. }));

        let raw = [("rnc", 0.0), ("fut", 0.5), ("avail", 0.2), ("elast", 0.2), ("srt", 0.1)];
        let err = validate_weights(raw, &criteria).unwrap_err();
        assert!(matches!(err, Error::NonPositiveWeight { ref criterion, .. } if criterion == "rnc"));
    }

    #[test]
    fn weights_follow_criterion_order() {
        let criteria = vec![Criterion::cost("a"), Criterion::benefit("b")];
        let w = validate_weights([("b", 0.25), ("a", 0.75)], &criteria).unwrap();
        let order: Vec<_> = w.iter().map(|(k, _)| k).collect();
        assert_eq!(order, ["a", "b"]);
    }

    #[test]
    fn benefit_examples() {
        assert_eq!(normalize_benefit(&[2.0, 4.0, 8.0]).unwrap(), [0.25, 0.5, 1.0]);
        assert_eq!(normalize_benefit(&[3.3, 3.3, 3.3]).unwrap(), [1.0, 1.0, 1.0]);
        let r = normalize_benefit(&[99.5, 99.9, 98.0]).unwrap();
        let expected = [0.99600, 1.0, 0.98098];
        for (a, b) in r.iter().zip(expected) {
            assert!((a - b).abs() < 5e-6, "{a} vs {b}");
        }
    }

    #[test]
    fn cost_examples() {
        assert_eq!(normalize_cost(&[2.0, 4.0, 8.0]).unwrap(), [1.0, 0.5, 0.25]);
        assert_eq!(normalize_cost(&[7.0, 7.0, 7.0]).unwrap(), [1.0, 1.0, 1.0]);
        assert!(matches!(
            normalize_cost(&[0.0, 4.0, 8.0]),
            Err(Error::NonPositiveValue { index: 0, .. })
        ));
    }

    #[test]
    fn bad_columns() {
        assert_eq!(normalize_benefit(&[]), Err(Error::EmptyColumn));
        assert!(normalize_benefit(&[1.0, -2.0]).is_err());
        assert!(normalize_cost(&[1.0, f64::NAN]).is_err());
        assert!(normalize_cost(&[f64::INFINITY]).is_err());
    }

    fn service(id: &str, vals: &[(&str, f64)]) -> ServiceProfile {
        ServiceProfile::new(id, id, vals.iter().map(|&(k, v)| (k, v)))
    }

    #[test]
    fn matrix_shape_follows_catalog() {
        let criteria = five_criteria();
        let services: Vec<_> = (1..=3)
            .map(|i| {
                service(
                    &format!("RF{i}"),
                    &[("rnc", i as f64), ("fut", 1.0), ("avail", 99.0), ("elast", 3.0), ("srt", 2.0)],
                )
            })
            .collect();
        let catalog = ServiceCatalog::new(criteria, services).unwrap();
        let m = build_decision_matrix(&catalog).unwrap();
        assert_eq!(m.n_alternatives(), 3);
        assert_eq!(m.n_criteria(), 5);
        assert_eq!(m.rows(), ["RF1", "RF2", "RF3"]);
        assert_eq!(m.column(0), [1.0, 2.0, 3.0]);
    }

    #[test]
    fn catalog_rejects_missing_criterion() {
        let criteria = vec![Criterion::cost("rnc"), Criterion::benefit("avail")];
        let services = vec![
            service("RF1", &[("rnc", 1.0), ("avail", 99.0)]),
            service("RF2", &[("rnc", 1.0)]),
        ];
        let err = ServiceCatalog::new(criteria, services).unwrap_err();
        assert_eq!(
            err,
            Error::MissingCriterion {
                criterion: "avail".into(),
                owner: Some("RF2".into())
            }
        );
    }

    #[test]
    fn catalog_rejects_single_service() {
        let err = ServiceCatalog::new(
            vec![Criterion::cost("rnc")],
            vec![service("RF1", &[("rnc", 1.0)])],
        )
        .unwrap_err();
        assert!(matches!(err, Error::CatalogTooSmall { services: 1, .. }));
    }

    #[test]
    fn catalog_rejects_bad_values_and_ids() {
        let criteria = vec![Criterion::cost("rnc")];
        let err = ServiceCatalog::new(
            criteria.clone(),
            vec![service("RF1", &[("rnc", 1.0)]), service("RF2", &[("rnc", -1.0)])],
        )
        .unwrap_err();
        let msg = err.to_string();
        assert!(msg.contains("RF2") && msg.contains("rnc"), "{msg}");

        let err = ServiceCatalog::new(
            criteria.clone(),
            vec![service("RF1", &[("rnc", 1.0)]), service("RF1", &[("rnc", 2.0)])],
        )
        .unwrap_err();
        assert!(matches!(err, Error::DuplicateId { kind: "service", .. }));

        let err = ServiceCatalog::new(
            criteria,
            vec![
                service("RF1", &[("rnc", 1.0)]),
                service("RF2", &[("rnc", 2.0), ("zzz", 1.0)]),
            ],
        )
        .unwrap_err();
        assert!(matches!(err, Error::UnknownCriterion { .. }));
    }

    #[test]
    fn projection_keeps_catalog_order() {
        let criteria = vec![Criterion::cost("a"), Criterion::benefit("b"), Criterion::cost("c")];
        let services = vec![
            service("x", &[("a", 1.0), ("b", 2.0), ("c", 3.0)]),
            service("y", &[("a", 2.0), ("b", 1.0), ("c", 1.0)]),
        ];
        let catalog = ServiceCatalog::new(criteria, services).unwrap();
        let p = catalog.project(&["c", "a"]).unwrap();
        let ids: Vec<_> = p.criteria().iter().map(|c| c.id.as_str()).collect();
        assert_eq!(ids, ["a", "c"]);
        assert_eq!(p.services()[0].qos.len(), 2);
        assert!(catalog.project(&["nope"]).is_err());
    }
}
