//! Human-judgment aggregation: majority voting and Krippendorff's alpha
//! for nominal labels with missing entries.

use std::collections::HashMap;

use serde::{Deserialize, Serialize};

use super::EvalError;

/// Error categories for annotating implausible generations.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum ErrorCategory {
    #[serde(rename = "inconsistent_with_expression")]
    InconsistentWithExpression,
    #[serde(rename = "inconsistent_with_narrative")]
    InconsistentWithNarrative,
    #[serde(rename = "spelling_or_grammar")]
    SpellingOrGrammar,
}

/// Items x raters grid of nominal labels; `None` marks a missing rating.
#[derive(Debug, Clone)]
pub struct JudgmentMatrix {
    items: Vec<Vec<Option<String>>>,
    raters: usize,
}

impl JudgmentMatrix {
    pub fn new(items: Vec<Vec<Option<String>>>) -> Result<Self, EvalError> {
        let raters = items.first().map(Vec::len).unwrap_or(0);
        if items.is_empty() || raters < 2 {
            return Err(EvalError::TooFewRaters);
        }
        if items.iter().any(|row| row.len() != raters) {
            return Err(EvalError::TooFewRaters);
        }
        Ok(Self { items, raters })
    }

    /// Builds the grid from `(item_id, rater_id, label)` records. Item and
    /// rater order follows first appearance.
    pub fn from_records(records: &[(String, String, String)]) -> Result<Self, EvalError> {
        let mut item_index: HashMap<&str, usize> = HashMap::new();
        let mut rater_index: HashMap<&str, usize> = HashMap::new();
        let mut item_order = Vec::new();
        for (item, rater, _) in records {
            if !item_index.contains_key(item.as_str()) {
                item_index.insert(item, item_order.len());
                item_order.push(item.clone());
            }
            let next = rater_index.len();
            rater_index.entry(rater).or_insert(next);
        }
        let mut grid = vec![vec![None; rater_index.len()]; item_order.len()];
        for (item, rater, label) in records {
            grid[item_index[item.as_str()]][rater_index[rater.as_str()]] = Some(label.clone());
        }
        Self::new(grid)
    }

    pub fn items(&self) -> &[Vec<Option<String>>] {
        &self.items
    }

    pub fn raters(&self) -> usize {
        self.raters
    }

    /// Labels present for one item.
    pub fn item_labels(&self, item: usize) -> Vec<&str> {
        self.items[item].iter().flatten().map(String::as_str).collect()
    }
}

/// Most frequent label; ties go to `tie_label` (by convention the negative
/// label, so plausibility is never inflated by a tie).
pub fn majority_vote<'a>(labels: &[&'a str], tie_label: &'a str) -> &'a str {
    if labels.is_empty() {
        return tie_label;
    }
    let mut counts: Vec<(&str, usize)> = Vec::new();
    for &label in labels {
        match counts.iter_mut().find(|(l, _)| *l == label) {
            Some((_, c)) => *c += 1,
            None => counts.push((label, 1)),
        }
    }
    let top = counts.iter().map(|(_, c)| *c).max().unwrap();
    let winners: Vec<&str> = counts.iter().filter(|(_, c)| *c == top).map(|(l, _)| *l).collect();
    if winners.len() == 1 { winners[0] } else { tie_label }
}

/// Krippendorff's alpha for nominal labels, `1 - D_o / D_e`, computed from
/// the coincidence matrix over items with at least two ratings. When every
/// rating is identical the expected disagreement is zero and alpha is
/// defined as 1.0.
pub fn krippendorff_alpha(matrix: &JudgmentMatrix) -> Result<f64, EvalError> {
    // map labels to category indices
    let mut categories: Vec<&str> = Vec::new();
    for item in matrix.items() {
        for label in item.iter().flatten() {
            if !categories.contains(&label.as_str()) {
                categories.push(label);
            }
        }
    }
    let cat_index = |label: &str| categories.iter().position(|c| *c == label).unwrap();

    let mut pairable_items = 0usize;
    let mut coincidence = vec![vec![0.0f64; categories.len()]; categories.len()];
    for item in matrix.items() {
        let labels: Vec<usize> = item
            .iter()
            .flatten()
            .map(|l| cat_index(l))
            .collect();
        let m = labels.len();
        if m < 2 {
            continue;
        }
        pairable_items += 1;
        let weight = 1.0 / (m as f64 - 1.0);
        for (i, &a) in labels.iter().enumerate() {
            for (j, &b) in labels.iter().enumerate() {
                if i != j {
                    coincidence[a][b] += weight;
                }
            }
        }
    }
    if pairable_items < 2 {
        return Err(EvalError::TooFewPairableItems);
    }

    let n: f64 = coincidence.iter().flatten().sum();
    let marginals: Vec<f64> = (0..categories.len())
        .map(|c| coincidence[c].iter().sum::<f64>())
        .collect();
    let observed_agreement: f64 =
        (0..categories.len()).map(|c| coincidence[c][c]).sum::<f64>() / n;
    let expected_agreement: f64 = marginals
        .iter()
        .map(|&nc| nc * (nc - 1.0))
        .sum::<f64>()
        / (n * (n - 1.0));
    if (1.0 - expected_agreement).abs() < 1e-12 {
        // zero expected disagreement: all labels identical
        return Ok(1.0);
    }
    Ok((observed_agreement - expected_agreement) / (1.0 - expected_agreement))
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{RngExt, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn grid(rows: &[&[Option<&str>]]) -> JudgmentMatrix {
        JudgmentMatrix::new(
            rows.iter()
                .map(|r| r.iter().map(|c| c.map(String::from)).collect())
                .collect(),
        )
        .unwrap()
    }

    #[test]
    fn majority_basics() {
        assert_eq!(
            majority_vote(&["plausible", "plausible", "implausible"], "implausible"),
            "plausible"
        );
        assert_eq!(majority_vote(&["plausible", "implausible"], "implausible"), "implausible");
        assert_eq!(majority_vote(&["plausible"], "implausible"), "plausible");
    }

    #[test]
    fn alpha_perfect_agreement_is_one() {
        let m = grid(&[
            &[Some("a"), Some("a"), Some("a")],
            &[Some("b"), Some("b"), Some("b")],
            &[Some("a"), Some("a"), None],
        ]);
        assert_eq!(krippendorff_alpha(&m).unwrap(), 1.0);
    }

    #[test]
    fn alpha_all_identical_labels_is_one() {
        let m = grid(&[&[Some("a"), Some("a")], &[Some("a"), Some("a")]]);
        assert_eq!(krippendorff_alpha(&m).unwrap(), 1.0);
    }

    #[test]
    fn alpha_systematic_disagreement_hand_computed() {
        // two raters, items (A,B) and (B,A): observed agreement 0,
        // marginals 2/2 over n = 4 -> expected agreement 1/3, alpha = -0.5
        let m = grid(&[&[Some("A"), Some("B")], &[Some("B"), Some("A")]]);
        let alpha = krippendorff_alpha(&m).unwrap();
        assert!((alpha - (-0.5)).abs() < 1e-12, "alpha {alpha}");
    }

    #[test]
    fn alpha_random_raters_near_zero() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let items: Vec<Vec<Option<String>>> = (0..1000)
            .map(|_| {
                (0..3)
                    .map(|_| {
                        Some(if rng.random::<f64>() < 0.5 { "a" } else { "b" }.to_string())
                    })
                    .collect()
            })
            .collect();
        let m = JudgmentMatrix::new(items).unwrap();
        let alpha = krippendorff_alpha(&m).unwrap();
        assert!(alpha.abs() < 0.05, "alpha {alpha}");
    }

    #[test]
    fn alpha_handles_missing_entries() {
        let m = grid(&[
            &[Some("a"), Some("a"), None],
            &[None, Some("b"), Some("b")],
            &[Some("a"), None, Some("a")],
        ]);
        let alpha = krippendorff_alpha(&m).unwrap();
        assert_eq!(alpha, 1.0);
    }

    #[test]
    fn too_few_pairable_items_is_an_error() {
        let m = grid(&[&[Some("a"), None], &[Some("a"), Some("b")]]);
        assert!(matches!(
            krippendorff_alpha(&m),
            Err(EvalError::TooFewPairableItems)
        ));
    }

    #[test]
    fn records_builder_aligns_raters() {
        let records = vec![
            ("i1".to_string(), "r1".to_string(), "a".to_string()),
            ("i1".to_string(), "r2".to_string(), "a".to_string()),
            ("i2".to_string(), "r1".to_string(), "b".to_string()),
            ("i2".to_string(), "r2".to_string(), "b".to_string()),
        ];
        let m = JudgmentMatrix::from_records(&records).unwrap();
        assert_eq!(m.raters(), 2);
        assert_eq!(krippendorff_alpha(&m).unwrap(), 1.0);
    }
}
