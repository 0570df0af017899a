//! Expression-disjoint train/validation/test splits.
//!
//! Instances are grouped by expression and each group is assigned wholly to
//! one split, so no expression ever crosses split boundaries. Groups are
//! taken largest-first (ties broken by lexicographic expression order) and
//! each goes to the split with the largest remaining deficit against its
//! target size, which keeps every split within one group of its target.

use std::collections::BTreeMap;

use super::narrative::{DatasetInstance, Split};
use super::CorpusError;

/// Target fractions per split. The defaults are derived from the reference
/// 3204/355/1542 idiom split.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SplitRatios {
    pub train: f64,
    pub validation: f64,
    pub test: f64,
}

impl Default for SplitRatios {
    fn default() -> Self {
        Self {
            train: 3204.0 / 5101.0,
            validation: 355.0 / 5101.0,
            test: 1542.0 / 5101.0,
        }
    }
}

impl SplitRatios {
    pub fn new(train: f64, validation: f64, test: f64) -> Result<Self, CorpusError> {
        let r = Self { train, validation, test };
        r.validate()?;
        Ok(r)
    }

    pub fn validate(&self) -> Result<(), CorpusError> {
        let sum = self.train + self.validation + self.test;
        let ok = self.train >= 0.0
            && self.validation >= 0.0
            && self.test >= 0.0
            && (sum - 1.0).abs() < 1e-9;
        if ok {
            Ok(())
        } else {
            Err(CorpusError::BadRatios(self.train, self.validation, self.test))
        }
    }
}

const SPLITS: [Split; 3] = [Split::Train, Split::Validation, Split::Test];

/// Assigns one split per instance, given each instance's expression string.
///
/// The assignment is fully deterministic: the greedy order and all
/// tie-breaks are fixed, so `seed` does not alter the result. It is
/// accepted so callers can thread the stage seed through uniformly and log
/// it alongside the output.
pub fn split_assignment(
    expressions: &[String],
    ratios: &SplitRatios,
    _seed: u64,
) -> Result<Vec<Split>, CorpusError> {
    ratios.validate()?;
    let mut groups: BTreeMap<&str, Vec<usize>> = BTreeMap::new();
    for (i, expr) in expressions.iter().enumerate() {
        groups.entry(expr.as_str()).or_default().push(i);
    }
    if groups.len() < 3 {
        return Err(CorpusError::TooFewExpressions { found: groups.len() });
    }

    // largest group first; BTreeMap iteration gives the lexicographic tie-break
    let mut ordered: Vec<(&str, Vec<usize>)> = groups.into_iter().collect();
    ordered.sort_by(|a, b| b.1.len().cmp(&a.1.len()).then(a.0.cmp(b.0)));

    let total = expressions.len() as f64;
    let targets = [
        ratios.train * total,
        ratios.validation * total,
        ratios.test * total,
    ];
    let mut assigned = [0usize; 3];
    let mut result = vec![Split::Train; expressions.len()];
    for (_, members) in ordered {
        let pick = (0..3)
            .max_by(|&a, &b| {
                let da = targets[a] - assigned[a] as f64;
                let db = targets[b] - assigned[b] as f64;
                da.partial_cmp(&db).unwrap().then(b.cmp(&a))
            })
            .unwrap();
        assigned[pick] += members.len();
        for idx in members {
            result[idx] = SPLITS[pick];
        }
    }
    Ok(result)
}

/// Assigns splits in place on a mined dataset.
pub fn split_dataset(
    instances: &mut [DatasetInstance],
    ratios: &SplitRatios,
    seed: u64,
) -> Result<(), CorpusError> {
    let expressions: Vec<String> = instances
        .iter()
        .map(|i| i.expression_key().to_string())
        .collect();
    let assignment = split_assignment(&expressions, ratios, seed)?;
    for (inst, split) in instances.iter_mut().zip(assignment) {
        inst.split = split;
    }
    Ok(())
}
