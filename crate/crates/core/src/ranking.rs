use serde::{Deserialize, Serialize};
use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use crate::error::Error;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Method {
    #[serde(rename = "AHP")]
    Ahp,
    #[serde(rename = "SAW")]
    Saw,
}

impl Method {
    pub const ALL: [Method; 2] = [Method::Ahp, Method::Saw];

    pub fn as_str(self) -> &'static str {
        match self {
            Method::Ahp => "AHP",
            Method::Saw => "SAW",
        }
    }
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Method {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Error> {
        match s.to_ascii_uppercase().as_str() {
            "AHP" => Ok(Method::Ahp),
            "SAW" => Ok(Method::Saw),
            _ => Err(Error::UnknownMethod(s.to_owned())),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RankEntry {
    pub id: String,
    /// Canonical score (sum-normalized for AHP, `S_i` for SAW).
    pub score: f64,
    /// Score on a comparable 0..1 bar scale.
    pub display_score: f64,
    /// 1-based rank.
    pub rank: usize,
}

/// Alternatives ordered best first. Ranks are always the permutation `1..=N`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Ranking {
    pub method: Method,
    pub entries: Vec<RankEntry>,
}

impl Ranking {
    /// Sorts alternatives by descending score, breaking ties by ascending id.
    pub fn from_scores(method: Method, ids: &[String], scores: &[f64], display: &[f64]) -> Ranking {
        debug_assert_eq!(ids.len(), scores.len());
        debug_assert_eq!(ids.len(), display.len());
        let mut order: Vec<usize> = (0..ids.len()).collect();
        order.sort_by(|&a, &b| {
            scores[b]
                .partial_cmp(&scores[a])
                .unwrap_or(Ordering::Equal)
                .then_with(|| ids[a].cmp(&ids[b]))
        });
        let entries = order
            .into_iter()
            .enumerate()
            .map(|(pos, i)| RankEntry {
                id: ids[i].clone(),
                score: scores[i],
                display_score: display[i],
                rank: pos + 1,
            })
            .collect();
        Ranking { method, entries }
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// Alternative ids, best first.
    pub fn order(&self) -> Vec<&str> {
        self.entries.iter().map(|e| e.id.as_str()).collect()
    }

    pub fn top(&self) -> Option<&str> {
        self.entries.first().map(|e| e.id.as_str())
    }

    pub fn entry(&self, id: &str) -> Option<&RankEntry> {
        self.entries.iter().find(|e| e.id == id)
    }

    pub fn rank_of(&self, id: &str) -> Option<usize> {
        self.entry(id).map(|e| e.rank)
    }

    /// True when ranks are `1..=N` in entry order and scores never increase.
    pub fn is_well_formed(&self) -> bool {
        self.entries.iter().enumerate().all(|(i, e)| e.rank == i + 1)
            && self.entries.windows(2).all(|w| w[0].score >= w[1].score)
    }
}
