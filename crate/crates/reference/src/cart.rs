//! Exhaustive binary-split search by Gini impurity.
//!
//! Enumerates every candidate split — each feature, each midpoint between
//! consecutive distinct sorted values — computes the Gini gain of the
//! induced partition from scratch, and keeps the best. Ties resolve to the
//! lowest feature index, then the lowest threshold. O(features * rows^2),
//! intended for datasets of a dozen rows.

/// A winning split candidate.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Split {
    pub feature: usize,
    pub threshold: f64,
    pub gain: f64,
}

fn gini(labels: &[u8]) -> f64 {
    if labels.is_empty() {
        return 0.0;
    }
    let n = labels.len() as f64;
    let ones = labels.iter().filter(|&&l| l == 1).count() as f64;
    let p1 = ones / n;
    let p0 = 1.0 - p1;
    1.0 - p0 * p0 - p1 * p1
}

/// Best root split over all (feature, midpoint) candidates, or `None` when
/// no candidate both respects `min_samples_leaf` and strictly reduces the
/// weighted Gini impurity.
///
/// `rows` is row-major: `rows[i][j]` is feature `j` of sample `i`; `labels`
/// holds the matching 0/1 class per row.
pub fn best_root_split(rows: &[Vec<f64>], labels: &[u8], min_samples_leaf: usize) -> Option<Split> {
    assert_eq!(rows.len(), labels.len());
    assert!(!rows.is_empty());
    let n_features = rows[0].len();
    let parent = gini(labels);
    let n = rows.len() as f64;

    let mut best: Option<Split> = None;
    for feature in 0..n_features {
        let mut values: Vec<f64> = rows.iter().map(|r| r[feature]).collect();
        values.sort_by(|a, b| a.partial_cmp(b).expect("finite feature values"));
        values.dedup();
        for pair in values.windows(2) {
            let threshold = (pair[0] + pair[1]) / 2.0;
            let mut left = Vec::new();
            let mut right = Vec::new();
            for (row, &label) in rows.iter().zip(labels.iter()) {
                if row[feature] < threshold {
                    left.push(label);
                } else {
                    right.push(label);
                }
            }
            if left.len() < min_samples_leaf || right.len() < min_samples_leaf {
                continue;
            }
            let weighted =
                (left.len() as f64 * gini(&left) + right.len() as f64 * gini(&right)) / n;
            let gain = parent - weighted;
            if gain <= 0.0 {
                continue;
            }
            // Strict improvement only: with features ascending and
            // thresholds ascending, ties keep the earlier candidate.
            if best.is_none_or(|b| gain > b.gain) {
                best = Some(Split {
                    feature,
                    threshold,
                    gain,
                });
            }
        }
    }
    best
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn gini_of_pure_and_balanced_sets() {
        assert_eq!(gini(&[0, 0, 0]), 0.0);
        assert_eq!(gini(&[1, 1]), 0.0);
        assert!((gini(&[0, 1]) - 0.5).abs() < 1e-15);
        assert!((gini(&[0, 0, 1, 1]) - 0.5).abs() < 1e-15);
    }

    #[test]
    fn separable_single_feature_splits_at_the_gap() {
        let rows = vec![vec![0.1], vec![0.2], vec![0.8], vec![0.9]];
        let labels = [0, 0, 1, 1];
        let split = best_root_split(&rows, &labels, 1).unwrap();
        assert_eq!(split.feature, 0);
        assert!((split.threshold - 0.5).abs() < 1e-15);
        // Perfect split of a balanced set: gain = 0.5.
        assert!((split.gain - 0.5).abs() < 1e-15);
    }

    #[test]
    fn picks_the_informative_feature() {
        // Feature 0 is noise (identical ordering both classes), feature 1
        // separates perfectly.
        let rows = vec![
            vec![1.0, 5.0],
            vec![2.0, 6.0],
            vec![1.5, 15.0],
            vec![2.5, 16.0],
        ];
        let labels = [0, 0, 1, 1];
        let split = best_root_split(&rows, &labels, 1).unwrap();
        assert_eq!(split.feature, 1);
        assert!((split.threshold - 10.5).abs() < 1e-15);
    }

    #[test]
    fn tie_breaks_to_lowest_feature_then_threshold() {
        // Both features separate the data perfectly; feature 0 must win.
        let rows = vec![vec![0.0, 10.0], vec![1.0, 11.0]];
        let labels = [0, 1];
        let split = best_root_split(&rows, &labels, 1).unwrap();
        assert_eq!(split.feature, 0);
        assert!((split.threshold - 0.5).abs() < 1e-15);
    }

    #[test]
    fn constant_features_yield_no_split() {
        let rows = vec![vec![3.0], vec![3.0], vec![3.0]];
        let labels = [0, 1, 0];
        assert!(best_root_split(&rows, &labels, 1).is_none());
    }

    #[test]
    fn pure_labels_yield_no_split() {
        let rows = vec![vec![1.0], vec![2.0], vec![3.0]];
        let labels = [1, 1, 1];
        assert!(best_root_split(&rows, &labels, 1).is_none());
    }

    #[test]
    fn min_samples_leaf_rules_out_edge_splits() {
        // Only the middle midpoint leaves 2 rows on each side.
        let rows = vec![vec![1.0], vec![2.0], vec![3.0], vec![4.0]];
        let labels = [0, 0, 1, 1];
        let split = best_root_split(&rows, &labels, 2).unwrap();
        assert!((split.threshold - 2.5).abs() < 1e-15);
    }
}
