//! Analytic hierarchy process over a flat criteria layer.
//!
//! Alternatives are compared per criterion through a positive reciprocal
//! matrix derived from raw value ratios. The principal eigenvector of each
//! matrix (found by power iteration) gives per-criterion priorities, which are
//! aggregated with the criterion weights into the final ranking vector.

use indexmap::IndexMap;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::model::{Criterion, DecisionMatrix, Direction, WeightProvenance, WeightVector};
use crate::ranking::{Method, Ranking};

/// Relative tolerance for `a_ji = 1 / a_ij`.
pub const RECIPROCITY_TOLERANCE: f64 = 1e-9;

/// CR below this is acceptable.
pub const CR_THRESHOLD: f64 = 0.1;

/// Saaty random index for n = 1..=10.
pub const RANDOM_INDEX: [f64; 10] = [0.0, 0.0, 0.58, 0.90, 1.12, 1.24, 1.32, 1.41, 1.45, 1.49];

/// Bounds of the Saaty 1..9 scale.
pub const SAATY_MAX: f64 = 9.0;

/// Random index for a matrix of size `n`; sizes above 10 reuse the n = 10 value.
pub fn random_index(n: usize) -> f64 {
    match n {
        0 => 0.0,
        n if n <= RANDOM_INDEX.len() => RANDOM_INDEX[n - 1],
        _ => RANDOM_INDEX[RANDOM_INDEX.len() - 1],
    }
}

/// Positive reciprocal comparison matrix.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "RawPairwise")]
pub struct PairwiseMatrix {
    ids: Vec<String>,
    entries: Vec<Vec<f64>>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawPairwise {
    ids: Vec<String>,
    entries: Vec<Vec<f64>>,
}

impl TryFrom<RawPairwise> for PairwiseMatrix {
    type Error = Error;

    fn try_from(raw: RawPairwise) -> Result<Self> {
        PairwiseMatrix::new(raw.ids, raw.entries)
    }
}

impl PairwiseMatrix {
    pub fn new(ids: Vec<String>, entries: Vec<Vec<f64>>) -> Result<Self> {
        let n = entries.len();
        if n == 0 {
            return Err(Error::TooFewEntities { min: 1, got: 0 });
        }
        if ids.len() != n {
            return Err(Error::Shape(format!("{} ids for a {n}x{n} matrix", ids.len())));
        }
        for (i, row) in entries.iter().enumerate() {
            if row.len() != n {
                return Err(Error::Shape(format!(
                    "row {i} has {} entries, expected {n}",
                    row.len()
                )));
            }
            for (j, &v) in row.iter().enumerate() {
                if !(v.is_finite() && v > 0.0) {
                    return Err(Error::NonPositiveEntry { i, j, value: v });
                }
            }
        }
        for i in 0..n {
            let d = entries[i][i];
            if (d - 1.0).abs() > RECIPROCITY_TOLERANCE {
                return Err(Error::DiagonalNotOne { i, value: d });
            }
            for j in (i + 1)..n {
                let (a_ij, a_ji) = (entries[i][j], entries[j][i]);
                if (a_ij * a_ji - 1.0).abs() > RECIPROCITY_TOLERANCE {
                    return Err(Error::NotReciprocal { i, j, a_ij, a_ji });
                }
            }
        }
        Ok(PairwiseMatrix { ids, entries })
    }

    /// Builds a matrix from the upper triangle; the diagonal is 1 and the
    /// lower triangle is filled with reciprocals.
    pub fn from_upper(ids: Vec<String>, upper: impl Fn(usize, usize) -> f64) -> Result<Self> {
        let n = ids.len();
        let mut entries = vec![vec![1.0; n]; n];
        for i in 0..n {
            for j in (i + 1)..n {
                let v = upper(i, j);
                entries[i][j] = v;
                entries[j][i] = 1.0 / v;
            }
        }
        PairwiseMatrix::new(ids, entries)
    }

    pub fn size(&self) -> usize {
        self.ids.len()
    }

    pub fn ids(&self) -> &[String] {
        &self.ids
    }

    pub fn entries(&self) -> &[Vec<f64>] {
        &self.entries
    }

    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.entries[i][j]
    }

    /// Clamps every entry to `[1/9, 9]`. Reciprocity is preserved.
    pub fn clamp_to_saaty_scale(&self) -> PairwiseMatrix {
        let entries = self
            .entries
            .iter()
            .map(|row| {
                row.iter()
                    .map(|&v| v.clamp(1.0 / SAATY_MAX, SAATY_MAX))
                    .collect()
            })
            .collect();
        PairwiseMatrix {
            ids: self.ids.clone(),
            entries,
        }
    }

    fn multiply(&self, v: &[f64], out: &mut [f64]) {
        for (o, row) in out.iter_mut().zip(&self.entries) {
            *o = row.iter().zip(v).map(|(a, x)| a * x).sum();
        }
    }
}

/// Ratio-derived comparison matrix over one criterion column:
/// `a_ij = x_i / x_j` for benefit criteria and `x_j / x_i` for cost criteria.
pub fn ratio_pairwise_matrix(
    ids: &[String],
    column: &[f64],
    direction: Direction,
) -> Result<PairwiseMatrix> {
    if column.len() < 2 {
        return Err(Error::TooFewEntities {
            min: 2,
            got: column.len(),
        });
    }
    if ids.len() != column.len() {
        return Err(Error::Shape(format!(
            "{} ids for a column of {} values",
            ids.len(),
            column.len()
        )));
    }
    if let Some((index, &value)) = column
        .iter()
        .enumerate()
        .find(|(_, v)| !(v.is_finite() && **v > 0.0))
    {
        return Err(Error::NonPositiveValue {
            index,
            value,
            owner: None,
        });
    }
    let entries = column
        .iter()
        .map(|&xi| {
            column
                .iter()
                .map(|&xj| match direction {
                    Direction::Benefit => xi / xj,
                    Direction::Cost => xj / xi,
                })
                .collect()
        })
        .collect();
    PairwiseMatrix::new(ids.to_vec(), entries)
}

/// L1-normalized principal eigenvector with its eigenvalue estimate.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PriorityVector {
    pub ids: Vec<String>,
    pub priorities: Vec<f64>,
    pub lambda_max: f64,
    pub iterations: usize,
}

impl PriorityVector {
    pub fn get(&self, id: &str) -> Option<f64> {
        self.ids
            .iter()
            .position(|i| i == id)
            .map(|p| self.priorities[p])
    }
}

/// Power-iteration settings.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PowerIteration {
    /// Stop once no element changes by more than this between steps.
    pub tolerance: f64,
    pub max_iterations: usize,
}

impl Default for PowerIteration {
    fn default() -> Self {
        PowerIteration {
            tolerance: 1e-10,
            max_iterations: 1000,
        }
    }
}

impl PowerIteration {
    pub fn validate(&self) -> Result<()> {
        if !(self.tolerance.is_finite() && self.tolerance > 0.0) {
            return Err(Error::Config(format!(
                "eigen tolerance must be > 0, got {}",
                self.tolerance
            )));
        }
        if self.max_iterations < 1 {
            return Err(Error::Config("iteration cap must be at least 1".into()));
        }
        Ok(())
    }

    pub fn priority_vector(&self, m: &PairwiseMatrix) -> Result<PriorityVector> {
        self.validate()?;
        let n = m.size();
        let mut v = vec![1.0 / n as f64; n];
        let mut mv = vec![0.0; n];
        let mut residual = f64::INFINITY;

        for iteration in 1..=self.max_iterations {
            m.multiply(&v, &mut mv);
            let norm: f64 = mv.iter().sum();
            residual = 0.0;
            for (vi, &mvi) in v.iter_mut().zip(&mv) {
                let next = mvi / norm;
                residual = f64::max(residual, (next - *vi).abs());
                *vi = next;
            }
            if residual < self.tolerance {
                m.multiply(&v, &mut mv);
                let lambda_max =
                    mv.iter().zip(&v).map(|(a, b)| a / b).sum::<f64>() / n as f64;
                return Ok(PriorityVector {
                    ids: m.ids.clone(),
                    priorities: v,
                    lambda_max,
                    iterations: iteration,
                });
            }
        }
        Err(Error::NoConvergence {
            iterations: self.max_iterations,
            residual,
        })
    }

    pub fn consistency(&self, m: &PairwiseMatrix) -> Result<ConsistencyReport> {
        let pv = self.priority_vector(m)?;
        Ok(ConsistencyReport::from_lambda(m.size(), pv.lambda_max))
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ConsistencyReport {
    pub n: usize,
    pub lambda_max: f64,
    pub consistency_index: f64,
    pub random_index: f64,
    pub consistency_ratio: f64,
    pub acceptable: bool,
}

impl ConsistencyReport {
    /// Computes CI and CR for an `n`-sized matrix with principal eigenvalue `lambda_max`.
    pub fn from_lambda(n: usize, lambda_max: f64) -> Self {
        let random_index = random_index(n);
        let (consistency_index, consistency_ratio) = if n <= 2 {
            (0.0, 0.0)
        } else {
            let ci = (lambda_max - n as f64) / (n as f64 - 1.0);
            (ci, ci / random_index)
        };
        ConsistencyReport {
            n,
            lambda_max,
            consistency_index,
            random_index,
            consistency_ratio,
            acceptable: consistency_ratio < CR_THRESHOLD,
        }
    }

    /// Non-fatal conditions worth surfacing to a user.
    pub fn warnings(&self) -> Vec<String> {
        let mut out = Vec::new();
        if self.n > RANDOM_INDEX.len() {
            out.push(format!(
                "random index for n = {} is not tabulated; using RI(10) = {}",
                self.n, self.random_index
            ));
        }
        if !self.acceptable {
            out.push(format!(
                "consistency ratio {:.4} is not below {CR_THRESHOLD}; judgments are inconsistent",
                self.consistency_ratio
            ));
        }
        out
    }
}

pub fn principal_priority_vector(m: &PairwiseMatrix) -> Result<PriorityVector> {
    PowerIteration::default().priority_vector(m)
}

pub fn consistency_ratio(m: &PairwiseMatrix) -> Result<ConsistencyReport> {
    PowerIteration::default().consistency(m)
}

/// Criterion weights from a pairwise matrix over criteria, carrying its CR.
pub fn derive_criteria_weights(m: &PairwiseMatrix) -> Result<WeightVector> {
    derive_criteria_weights_with(m, &PowerIteration::default())
}

pub fn derive_criteria_weights_with(
    m: &PairwiseMatrix,
    power: &PowerIteration,
) -> Result<WeightVector> {
    let pv = power.priority_vector(m)?;
    let report = ConsistencyReport::from_lambda(m.size(), pv.lambda_max);
    let weights: IndexMap<String, f64> = pv.ids.into_iter().zip(pv.priorities).collect();
    Ok(WeightVector::from_parts(
        weights,
        WeightProvenance::DerivedFromPairwise,
        Some(report.consistency_ratio),
    ))
}

#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
pub struct AhpOptions {
    pub power: PowerIteration,
    /// Clamp derived comparison entries to the Saaty `[1/9, 9]` range.
    pub saaty_clamp: bool,
}

/// One priority vector over the alternatives per criterion, in criterion order.
pub fn criterion_priorities(
    matrix: &DecisionMatrix,
    criteria: &[Criterion],
    options: &AhpOptions,
) -> Result<Vec<PriorityVector>> {
    criteria
        .iter()
        .map(|c| {
            let j = matrix.col_index(&c.id).ok_or_else(|| Error::MissingCriterion {
                criterion: c.id.clone(),
                owner: Some("decision matrix".into()),
            })?;
            let mut pm = ratio_pairwise_matrix(matrix.rows(), &matrix.column(j), c.direction)?;
            if options.saaty_clamp {
                pm = pm.clamp_to_saaty_scale();
            }
            options.power.priority_vector(&pm)
        })
        .collect()
}

pub fn ahp_rank(
    matrix: &DecisionMatrix,
    criteria: &[Criterion],
    weights: &WeightVector,
) -> Result<Ranking> {
    ahp_rank_with(matrix, criteria, weights, &AhpOptions::default())
}

/// Final AHP ranking: `score_i = Σ_j w_j · p_ij`, rescaled to sum to one.
pub fn ahp_rank_with(
    matrix: &DecisionMatrix,
    criteria: &[Criterion],
    weights: &WeightVector,
    options: &AhpOptions,
) -> Result<Ranking> {
    let w = weights.aligned(criteria)?;
    let priorities = criterion_priorities(matrix, criteria, options)?;

    let mut scores = vec![0.0; matrix.n_alternatives()];
    for (wj, pv) in w.iter().zip(&priorities) {
        for (s, p) in scores.iter_mut().zip(&pv.priorities) {
            *s += wj * p;
        }
    }
    let total: f64 = scores.iter().sum();
    scores.iter_mut().for_each(|s| *s /= total);
    let best = scores.iter().copied().fold(f64::MIN, f64::max);
    let display: Vec<f64> = scores.iter().map(|s| s / best).collect();

    Ok(Ranking::from_scores(Method::Ahp, matrix.rows(), &scores, &display))
}
