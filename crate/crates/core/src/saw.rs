//! Simple additive weighting: max-normalize each criterion column by its
//! direction, then score each alternative by the weighted sum of its
//! normalized values.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::model::{normalize, Criterion, DecisionMatrix, WeightVector};
use crate::ranking::{Method, Ranking};

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SawScoreBoard {
    pub ids: Vec<String>,
    pub criteria: Vec<String>,
    /// `normalized[i][j]` is `r_ij`.
    pub normalized: Vec<Vec<f64>>,
    pub scores: Vec<f64>,
    pub weights_used: WeightVector,
}

/// Computes `S_i = Σ_j w_j · r_ij` over the given criteria.
pub fn saw_score(
    matrix: &DecisionMatrix,
    criteria: &[Criterion],
    weights: &WeightVector,
) -> Result<SawScoreBoard> {
    let w = weights.aligned(criteria)?;
    let n = matrix.n_alternatives();
    let mut normalized = vec![Vec::with_capacity(criteria.len()); n];
    let mut scores = vec![0.0; n];

    for (c, wj) in criteria.iter().zip(&w) {
        let j = matrix.col_index(&c.id).ok_or_else(|| Error::MissingCriterion {
            criterion: c.id.clone(),
            owner: Some("decision matrix".into()),
        })?;
        let r = normalize(&matrix.column(j), c.direction)?;
        for (i, rij) in r.into_iter().enumerate() {
            normalized[i].push(rij);
            scores[i] += wj * rij;
        }
    }

    Ok(SawScoreBoard {
        ids: matrix.rows().to_vec(),
        criteria: criteria.iter().map(|c| c.id.clone()).collect(),
        normalized,
        scores,
        weights_used: weights.clone(),
    })
}

pub fn saw_rank(
    matrix: &DecisionMatrix,
    criteria: &[Criterion],
    weights: &WeightVector,
) -> Result<Ranking> {
    let board = saw_score(matrix, criteria, weights)?;
    Ok(board.ranking())
}

impl SawScoreBoard {
    /// Scores already sit on the (0, 1] scale, so they double as display scores.
    pub fn ranking(&self) -> Ranking {
        Ranking::from_scores(Method::Saw, &self.ids, &self.scores, &self.scores)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::{validate_weights, Direction};

    fn matrix(cols: &[&str], rows: &[(&str, &[f64])]) -> DecisionMatrix {
        DecisionMatrix::new(
            rows.iter().map(|(id, _)| id.to_string()).collect(),
            cols.iter().map(|c| c.to_string()).collect(),
            rows.iter().map(|(_, v)| v.to_vec()).collect(),
        )
        .unwrap()
    }

    #[test]
    fn single_benefit_criterion() {
        let m = matrix(&["q"], &[("A", &[2.0]), ("B", &[4.0]), ("C", &[8.0])]);
        let c = vec![Criterion::benefit("q")];
        let w = validate_weights([("q", 1.0)], &c).unwrap();
        let b = saw_score(&m, &c, &w).unwrap();
        assert_eq!(b.scores, [0.25, 0.5, 1.0]);
        assert_eq!(saw_rank(&m, &c, &w).unwrap().order(), ["C", "B", "A"]);
    }

    #[test]
    fn identical_alternatives_score_one() {
        let m = matrix(
            &["p", "q", "r"],
            &[("A", &[3.0, 1.5, 7.0]), ("B", &[3.0, 1.5, 7.0])],
        );
        let c = vec![Criterion::benefit("p"), Criterion::cost("q"), Criterion::cost("r")];
        let w = validate_weights([("p", 0.2), ("q", 0.3), ("r", 0.5)], &c).unwrap();
        let b = saw_score(&m, &c, &w).unwrap();
        assert!(b.scores.iter().all(|&s| (s - 1.0).abs() < 1e-15));
        assert!(b.normalized.iter().flatten().all(|&r| r == 1.0));
    }

    #[test]
    fn mixed_directions_tie() {
        // benefit [1, 2] -> [0.5, 1]; cost [1, 2] -> [1, 0.5]
        let m = matrix(&["b", "c"], &[("X", &[1.0, 1.0]), ("Y", &[2.0, 2.0])]);
        let c = vec![
            Criterion::new("b", "b", Direction::Benefit, ""),
            Criterion::new("c", "c", Direction::Cost, ""),
        ];
        let w = validate_weights([("b", 0.5), ("c", 0.5)], &c).unwrap();
        let b = saw_score(&m, &c, &w).unwrap();
        assert_eq!(b.scores, [0.75, 0.75]);
        let r = b.ranking();
        assert_eq!(r.order(), ["X", "Y"]);
        assert_eq!(r.rank_of("X"), Some(1));
    }

    #[test]
    fn cost_column_reversed_is_not_a_tie() {
        // cost [2, 1] normalizes to [0.5, 1], so Y dominates on both criteria.
        let m = matrix(&["b", "c"], &[("X", &[1.0, 2.0]), ("Y", &[2.0, 1.0])]);
        let c = vec![Criterion::benefit("b"), Criterion::cost("c")];
        let w = validate_weights([("b", 0.5), ("c", 0.5)], &c).unwrap();
        let b = saw_score(&m, &c, &w).unwrap();
        assert_eq!(b.scores, [0.5, 1.0]);
        assert_eq!(b.ranking().order(), ["Y", "X"]);
    }

    #[test]
    fn missing_column_is_reported() {
        let m = matrix(&["a"], &[("X", &[1.0]), ("Y", &[2.0])]);
        let c = vec![Criterion::benefit("b")];
        let w = validate_weights([("b", 1.0)], &c).unwrap();
        assert!(matches!(saw_score(&m, &c, &w), Err(Error::MissingCriterion { .. })));
    }
}
