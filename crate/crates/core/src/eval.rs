//! Evaluation machinery: confusion-matrix metrics, stratified k-fold and
//! session-held-out splits, and the per-flow precision sweep used to judge
//! how a detector trained at one flow rate generalizes to weaker leaks.

use alloc::string::{String, ToString};
use alloc::vec::Vec;

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::invalid_argument;
use crate::trees::{Dataset, TreeEnsembleModel};
use crate::{Error, Result};

/// Binary confusion counts; class 1 (leak) is the positive class.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct ConfusionMatrix {
    pub true_pos: usize,
    pub false_pos: usize,
    pub true_neg: usize,
    pub false_neg: usize,
}

impl ConfusionMatrix {
    /// Tallies (label, predicted) pairs.
    pub fn from_pairs(pairs: impl IntoIterator<Item = (u8, u8)>) -> Self {
        let mut cm = ConfusionMatrix::default();
        for (label, predicted) in pairs {
            match (label, predicted) {
                (1, 1) => cm.true_pos += 1,
                (0, 1) => cm.false_pos += 1,
                (0, 0) => cm.true_neg += 1,
                _ => cm.false_neg += 1,
            }
        }
        cm
    }

    pub fn total(&self) -> usize {
        self.true_pos + self.false_pos + self.true_neg + self.false_neg
    }
}

/// Ratio metrics of a confusion matrix. A ratio whose denominator is zero
/// is reported as `None` rather than a made-up number.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Metrics {
    pub accuracy: f64,
    /// tp / (tp + fp).
    pub precision: Option<f64>,
    /// tp / (tp + fn); sensitivity to leaks.
    pub recall_pos: Option<f64>,
    /// tn / (tn + fp); specificity on background.
    pub recall_neg: Option<f64>,
}

/// Computes the ratio metrics of a non-empty confusion matrix.
pub fn metrics(cm: &ConfusionMatrix) -> Result<Metrics> {
    let total = cm.total();
    if total == 0 {
        return Err(Error::EmptyInput("confusion matrix"));
    }
    let ratio = |num: usize, denom: usize| {
        (denom > 0).then(|| num as f64 / denom as f64)
    };
    Ok(Metrics {
        accuracy: (cm.true_pos + cm.true_neg) as f64 / total as f64,
        precision: ratio(cm.true_pos, cm.true_pos + cm.false_pos),
        recall_pos: ratio(cm.true_pos, cm.true_pos + cm.false_neg),
        recall_neg: ratio(cm.true_neg, cm.true_neg + cm.false_pos),
    })
}

/// How a train/test split was derived.
#[derive(Debug, Clone, PartialEq)]
pub enum SplitStrategy {
    /// Whole sessions held out.
    BySession { test_sessions: Vec<String> },
    /// One fold of a stratified k-fold plan.
    StratifiedKFold { k: usize, fold: usize },
    /// A contiguous stretch of one recording held out; built by callers
    /// that know the row time offsets.
    HoldoutSegment,
}

/// Row indices of one train/test split.
#[derive(Debug, Clone, PartialEq)]
pub struct SplitPlan {
    pub train_ids: Vec<usize>,
    pub test_ids: Vec<usize>,
    pub strategy: SplitStrategy,
}

impl SplitPlan {
    /// Builds a split from explicit row ids, checking they are disjoint,
    /// non-empty and in range.
    pub fn manual(
        data: &Dataset,
        train_ids: Vec<usize>,
        test_ids: Vec<usize>,
        strategy: SplitStrategy,
    ) -> Result<Self> {
        if train_ids.is_empty() {
            return Err(Error::EmptySplit("train"));
        }
        if test_ids.is_empty() {
            return Err(Error::EmptySplit("test"));
        }
        let n = data.n_rows();
        let mut seen = alloc::vec![0u8; n];
        for (side, ids) in [("train", &train_ids), ("test", &test_ids)] {
            for &i in ids.iter() {
                if i >= n {
                    return Err(invalid_argument!(
                        "row_ids",
                        "{side} row {i} out of range for {n} rows"
                    ));
                }
                if seen[i] != 0 {
                    return Err(invalid_argument!(
                        "row_ids",
                        "row {i} appears in both sides of the split"
                    ));
                }
                seen[i] = 1;
            }
        }
        Ok(SplitPlan {
            train_ids,
            test_ids,
            strategy,
        })
    }
}

/// Splits rows into k folds preserving class proportions.
///
/// Each class's row ids are shuffled with an RNG seeded from `seed`, then
/// dealt round-robin across folds, so per-fold class counts differ by at
/// most one row and the plan is reproducible. Fold `f`'s plan holds that
/// fold out as the test side.
pub fn stratified_kfold(data: &Dataset, k: usize, seed: u64) -> Result<Vec<SplitPlan>> {
    if k < 2 {
        return Err(invalid_argument!("k", "need at least 2 folds, got {k}"));
    }
    if data.n_rows() == 0 {
        return Err(Error::EmptyInput("dataset"));
    }
    let mut by_class: [Vec<usize>; 2] = [Vec::new(), Vec::new()];
    for i in 0..data.n_rows() {
        by_class[data.label(i) as usize].push(i);
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut folds: Vec<Vec<usize>> = alloc::vec![Vec::new(); k];
    for (class, ids) in by_class.iter_mut().enumerate() {
        if ids.is_empty() {
            continue;
        }
        if ids.len() < k {
            return Err(Error::ClassSmallerThanFolds {
                class: class as u8,
                rows: ids.len(),
                folds: k,
            });
        }
        ids.shuffle(&mut rng);
        for (pos, &row) in ids.iter().enumerate() {
            folds[pos % k].push(row);
        }
    }
    Ok((0..k)
        .map(|f| {
            let mut test_ids = folds[f].clone();
            test_ids.sort_unstable();
            let mut train_ids: Vec<usize> = folds
                .iter()
                .enumerate()
                .filter(|&(g, _)| g != f)
                .flat_map(|(_, ids)| ids.iter().copied())
                .collect();
            train_ids.sort_unstable();
            SplitPlan {
                train_ids,
                test_ids,
                strategy: SplitStrategy::StratifiedKFold { k, fold: f },
            }
        })
        .collect())
}

/// Holds out every row whose session is listed in `test_sessions`.
///
/// Every requested session must exist in the data, and both sides of the
/// split must end up non-empty.
pub fn split_by_session(data: &Dataset, test_sessions: &[&str]) -> Result<SplitPlan> {
    if test_sessions.is_empty() {
        return Err(invalid_argument!("test_sessions", "must not be empty"));
    }
    for &s in test_sessions {
        if !(0..data.n_rows()).any(|i| data.group(i) == s) {
            return Err(Error::UnknownSession(s.to_string()));
        }
    }
    let (test_ids, train_ids): (Vec<usize>, Vec<usize>) =
        (0..data.n_rows()).partition(|&i| test_sessions.contains(&data.group(i)));
    if train_ids.is_empty() {
        return Err(Error::EmptySplit("train"));
    }
    if test_ids.is_empty() {
        return Err(Error::EmptySplit("test"));
    }
    Ok(SplitPlan {
        train_ids,
        test_ids,
        strategy: SplitStrategy::BySession {
            test_sessions: test_sessions.iter().map(|s| s.to_string()).collect(),
        },
    })
}

/// Precision of one model on the windows of one flow rate.
#[derive(Debug, Clone, PartialEq)]
pub struct FlowPrecision {
    pub flow_lpm: f64,
    pub precision: f64,
    pub confusion: ConfusionMatrix,
}

/// Scores a trained model on window sets recorded at different flow rates
/// and reports the precision at each flow.
///
/// Each corpus pairs a flow rate with a dataset of leak (label 1) and
/// background (label 0) windows from that condition; the caller is
/// expected to have trained the model on a different, typically stronger,
/// flow. A score at or above `threshold` counts as a leak call. A flow
/// where the model never calls a leak has no defined precision and is
/// reported as an error rather than silently skipped.
pub fn flow_generalization_eval(
    model: &TreeEnsembleModel,
    corpora: &[(f64, Dataset)],
    threshold: f64,
) -> Result<Vec<FlowPrecision>> {
    if corpora.is_empty() {
        return Err(Error::EmptyInput("flow corpora"));
    }
    if !(0.0..=1.0).contains(&threshold) {
        return Err(invalid_argument!(
            "threshold",
            "must lie in [0, 1], got {threshold}"
        ));
    }
    let mut out = Vec::with_capacity(corpora.len());
    for (flow, data) in corpora {
        if data.n_rows() == 0 {
            return Err(Error::EmptyInput("flow corpus"));
        }
        let scores = model.predict_dataset(data)?;
        let cm = ConfusionMatrix::from_pairs(
            scores
                .iter()
                .zip(data.labels())
                .map(|(&s, &label)| (label, (s >= threshold) as u8)),
        );
        let m = metrics(&cm)?;
        let precision = m.precision.ok_or(Error::NoPositivePredictions {
            flow_lpm: *flow,
        })?;
        out.push(FlowPrecision {
            flow_lpm: *flow,
            precision,
            confusion: cm,
        });
    }
    Ok(out)
}
