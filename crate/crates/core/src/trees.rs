//! From-scratch decision-tree learners: CART, bagged forests and gradient
//! boosting, all scoring windows with a probability in [0, 1].
//!
//! Splits are axis-aligned thresholds chosen greedily: classification trees
//! minimize Gini impurity, the regression trees inside the boosted learner
//! minimize squared error on the current residuals. Split candidates are the
//! midpoints between consecutive distinct sorted values of a feature; ties
//! in gain resolve to the lowest feature index, then the lowest threshold,
//! so training is exactly reproducible. Forests draw a fresh bootstrap
//! resample and per-node feature subsets for every tree from an RNG stream
//! derived from (seed, tree index); boosting is deterministic given its
//! parameters.

use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::invalid_argument;
use crate::eval;
use crate::{Error, Result};

/// Feature matrix with binary labels and per-row session groups.
#[derive(Debug, Clone, PartialEq)]
pub struct Dataset {
    features: Vec<f64>,
    n_features: usize,
    labels: Vec<u8>,
    groups: Vec<String>,
}

impl Dataset {
    /// Builds a dataset from row vectors. Labels must be 0 (noise) or
    /// 1 (leak); `groups` names the session each row came from.
    pub fn from_rows(rows: &[Vec<f64>], labels: Vec<u8>, groups: Vec<String>) -> Result<Self> {
        let n_features = rows.first().map_or(0, Vec::len);
        let mut features = Vec::with_capacity(rows.len() * n_features);
        for row in rows {
            if row.len() != n_features {
                return Err(invalid_argument!(
                    "rows",
                    "ragged feature matrix: expected {n_features} columns, got {}",
                    row.len()
                ));
            }
            features.extend_from_slice(row);
        }
        Dataset::from_flat(features, n_features, labels, groups)
    }

    /// Builds a dataset from a row-major flat feature buffer.
    pub fn from_flat(
        features: Vec<f64>,
        n_features: usize,
        labels: Vec<u8>,
        groups: Vec<String>,
    ) -> Result<Self> {
        if n_features == 0 && !labels.is_empty() {
            return Err(invalid_argument!("n_features", "must be positive"));
        }
        let n_rows = features.len().checked_div(n_features).unwrap_or(0);
        if n_rows * n_features != features.len() {
            return Err(invalid_argument!(
                "features",
                "length {} is not a multiple of n_features {n_features}",
                features.len()
            ));
        }
        if labels.len() != n_rows || groups.len() != n_rows {
            return Err(invalid_argument!(
                "labels",
                "row/label/group counts differ ({n_rows}/{}/{})",
                labels.len(),
                groups.len()
            ));
        }
        if let Some(bad) = labels.iter().find(|&&l| l > 1) {
            return Err(invalid_argument!("labels", "labels must be 0 or 1, got {bad}"));
        }
        if features.iter().any(|v| !v.is_finite()) {
            return Err(invalid_argument!("features", "all values must be finite"));
        }
        Ok(Dataset {
            features,
            n_features,
            labels,
            groups,
        })
    }

    pub fn n_rows(&self) -> usize {
        self.labels.len()
    }

    pub fn n_features(&self) -> usize {
        self.n_features
    }

    pub fn row(&self, i: usize) -> &[f64] {
        &self.features[i * self.n_features..(i + 1) * self.n_features]
    }

    pub fn label(&self, i: usize) -> u8 {
        self.labels[i]
    }

    pub fn labels(&self) -> &[u8] {
        &self.labels
    }

    pub fn group(&self, i: usize) -> &str {
        &self.groups[i]
    }

    /// Rows of class 0 and class 1.
    pub fn class_counts(&self) -> [usize; 2] {
        let ones = self.labels.iter().filter(|&&l| l == 1).count();
        [self.labels.len() - ones, ones]
    }

    /// New dataset holding the given rows (duplicates allowed).
    pub fn subset(&self, row_ids: &[usize]) -> Dataset {
        let mut features = Vec::with_capacity(row_ids.len() * self.n_features);
        let mut labels = Vec::with_capacity(row_ids.len());
        let mut groups = Vec::with_capacity(row_ids.len());
        for &i in row_ids {
            features.extend_from_slice(self.row(i));
            labels.push(self.labels[i]);
            groups.push(self.groups[i].clone());
        }
        Dataset {
            features,
            n_features: self.n_features,
            labels,
            groups,
        }
    }
}

/// One tree node; children are indices into the owning tree's node vector.
#[derive(Debug, Clone, PartialEq)]
pub enum Node {
    Split {
        feature: usize,
        threshold: f64,
        left: usize,
        right: usize,
    },
    Leaf {
        /// Class-1 probability for classification trees; additive leaf
        /// weight for the boosted learner's regression trees.
        value: f64,
    },
}

/// A single binary decision tree over dense feature vectors.
#[derive(Debug, Clone, PartialEq)]
pub struct Tree {
    /// Nodes in construction order; node 0 is the root.
    pub nodes: Vec<Node>,
    /// Depth limit the tree was grown with.
    pub max_depth: usize,
}

impl Tree {
    /// Walks the tree to the leaf for `x` and returns its value. Samples
    /// with `x[feature] < threshold` descend left.
    pub fn predict_value(&self, x: &[f64]) -> f64 {
        let mut at = 0usize;
        loop {
            match self.nodes[at] {
                Node::Leaf { value } => return value,
                Node::Split {
                    feature,
                    threshold,
                    left,
                    right,
                } => {
                    at = if x[feature] < threshold { left } else { right };
                }
            }
        }
    }

    /// Hard class for a classification tree: 1 when the leaf's class-1
    /// probability exceeds 1/2.
    pub fn predict_class(&self, x: &[f64]) -> u8 {
        (self.predict_value(x) > 0.5) as u8
    }
}

/// Settings for a single CART fit.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CartParams {
    pub max_depth: usize,
    pub min_samples_leaf: usize,
    /// Features drawn uniformly per node as split candidates; `None` uses
    /// every feature.
    pub feature_subset_size: Option<usize>,
}

impl Default for CartParams {
    fn default() -> Self {
        CartParams {
            max_depth: 6,
            min_samples_leaf: 1,
            feature_subset_size: None,
        }
    }
}

/// Settings for a bagged forest.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RandomForestParams {
    pub n_trees: usize,
    pub max_depth: usize,
    pub min_samples_leaf: usize,
    /// `None` uses the random-subspace convention ceil(sqrt(dimension)).
    pub feature_subset_size: Option<usize>,
    /// Disable to train every tree on the full dataset (diagnostics only).
    pub bootstrap: bool,
    pub seed: u64,
}

impl Default for RandomForestParams {
    fn default() -> Self {
        RandomForestParams {
            n_trees: 300,
            max_depth: 6,
            min_samples_leaf: 1,
            feature_subset_size: None,
            bootstrap: true,
            seed: 0,
        }
    }
}

/// Settings for the gradient-boosted learner.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GbtParams {
    pub n_rounds: usize,
    pub learning_rate: f64,
    pub max_depth: usize,
    pub min_samples_leaf: usize,
    /// Recorded for provenance; boosting as configured here is
    /// deterministic and never draws from it.
    pub seed: u64,
}

impl Default for GbtParams {
    fn default() -> Self {
        GbtParams {
            n_rounds: 100,
            learning_rate: 0.3,
            max_depth: 3,
            min_samples_leaf: 1,
            seed: 0,
        }
    }
}

/// Hyperparameter record of a trained model; doubles as a grid-search
/// point.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum ModelParams {
    RandomForest(RandomForestParams),
    GradientBoosted(GbtParams),
}

impl ModelParams {
    pub fn kind(&self) -> ModelKind {
        match self {
            ModelParams::RandomForest(_) => ModelKind::RandomForest,
            ModelParams::GradientBoosted(_) => ModelKind::GradientBoosted,
        }
    }

    pub fn seed(&self) -> u64 {
        match self {
            ModelParams::RandomForest(p) => p.seed,
            ModelParams::GradientBoosted(p) => p.seed,
        }
    }
}

/// Which ensemble a model is.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ModelKind {
    RandomForest,
    GradientBoosted,
}

impl ModelKind {
    pub fn as_str(&self) -> &'static str {
        match self {
            ModelKind::RandomForest => "random_forest",
            ModelKind::GradientBoosted => "gradient_boosted",
        }
    }
}

/// A trained ensemble: a bag of voting classification trees, or a boosted
/// sum of regression trees behind a logistic link.
#[derive(Debug, Clone, PartialEq)]
pub struct TreeEnsembleModel {
    pub kind: ModelKind,
    pub trees: Vec<Tree>,
    /// Boosting shrinkage; 0 for forests.
    pub learning_rate: f64,
    /// Starting log-odds; 0 for forests.
    pub base_score: f64,
    /// Full training settings, kept for provenance and serialization.
    pub hyperparams: ModelParams,
    /// Feature dimension the model was trained on.
    pub n_features: usize,
    pub seed: u64,
}

impl TreeEnsembleModel {
    /// Probability-like score in [0, 1]: the fraction of trees voting
    /// class 1 for a forest, the logistic of the accumulated margin for a
    /// boosted model.
    pub fn predict_proba(&self, x: &[f64]) -> Result<f64> {
        if x.len() != self.n_features {
            return Err(Error::DimensionMismatch {
                expected: self.n_features,
                got: x.len(),
            });
        }
        match self.kind {
            ModelKind::RandomForest => {
                let votes = self
                    .trees
                    .iter()
                    .filter(|t| t.predict_class(x) == 1)
                    .count();
                Ok(votes as f64 / self.trees.len() as f64)
            }
            ModelKind::GradientBoosted => {
                let margin: f64 = self
                    .trees
                    .iter()
                    .map(|t| t.predict_value(x))
                    .sum::<f64>()
                    * self.learning_rate
                    + self.base_score;
                Ok(logistic(margin))
            }
        }
    }

    /// Scores every row of a dataset.
    pub fn predict_dataset(&self, data: &Dataset) -> Result<Vec<f64>> {
        (0..data.n_rows()).map(|i| self.predict_proba(data.row(i))).collect()
    }
}

fn logistic(z: f64) -> f64 {
    1.0 / (1.0 + libm::exp(-z))
}

/// Fits a single classification tree by greedy Gini minimization.
///
/// Recursion stops at label purity, `max_depth`, or when no split leaves
/// `min_samples_leaf` rows on both sides with a strict impurity decrease.
/// When `feature_subset_size` is set, each node draws that many distinct
/// candidate features from `rng`.
pub fn fit_cart<R: Rng>(data: &Dataset, params: &CartParams, rng: &mut R) -> Result<Tree> {
    validate_tree_params(data, params.max_depth, params.min_samples_leaf)?;
    let subset = validate_subset(data, params.feature_subset_size)?;
    let rows: Vec<usize> = (0..data.n_rows()).collect();
    let mut nodes = Vec::new();
    grow_gini(data, rows, params, subset, 0, &mut nodes, rng);
    Ok(Tree {
        nodes,
        max_depth: params.max_depth,
    })
}

fn validate_tree_params(data: &Dataset, max_depth: usize, min_samples_leaf: usize) -> Result<()> {
    if data.n_rows() == 0 {
        return Err(Error::EmptyInput("dataset"));
    }
    if max_depth < 1 {
        return Err(invalid_argument!("max_depth", "must be at least 1"));
    }
    if min_samples_leaf < 1 {
        return Err(invalid_argument!("min_samples_leaf", "must be at least 1"));
    }
    Ok(())
}

fn validate_subset(data: &Dataset, subset: Option<usize>) -> Result<usize> {
    let d = data.n_features();
    match subset {
        None => Ok(d),
        Some(s) if s >= 1 && s <= d => Ok(s),
        Some(s) => Err(invalid_argument!(
            "feature_subset_size",
            "must lie in 1..={d}, got {s}"
        )),
    }
}

/// Grows one node of a Gini tree and returns its index.
fn grow_gini<R: Rng>(
    data: &Dataset,
    rows: Vec<usize>,
    params: &CartParams,
    subset: usize,
    depth: usize,
    nodes: &mut Vec<Node>,
    rng: &mut R,
) -> usize {
    let ones = rows.iter().filter(|&&i| data.label(i) == 1).count();
    let p1 = ones as f64 / rows.len() as f64;
    let pure = ones == 0 || ones == rows.len();
    let can_split = !pure && depth < params.max_depth && rows.len() >= 2 * params.min_samples_leaf;

    let best = if can_split {
        let candidates = draw_features(data.n_features(), subset, rng);
        best_gini_split(data, &rows, &candidates, params.min_samples_leaf)
    } else {
        None
    };

    match best {
        None => {
            nodes.push(Node::Leaf { value: p1 });
            nodes.len() - 1
        }
        Some((feature, threshold)) => {
            let (left_rows, right_rows): (Vec<usize>, Vec<usize>) =
                rows.into_iter().partition(|&i| data.row(i)[feature] < threshold);
            let at = nodes.len();
            nodes.push(Node::Split {
                feature,
                threshold,
                left: 0,
                right: 0,
            });
            let left = grow_gini(data, left_rows, params, subset, depth + 1, nodes, rng);
            let right = grow_gini(data, right_rows, params, subset, depth + 1, nodes, rng);
            if let Node::Split {
                left: l, right: r, ..
            } = &mut nodes[at]
            {
                *l = left;
                *r = right;
            }
            at
        }
    }
}

/// Draws `subset` distinct feature indices, returned in ascending order so
/// the tie-break law (lowest feature first) applies within the subset.
fn draw_features<R: Rng>(d: usize, subset: usize, rng: &mut R) -> Vec<usize> {
    if subset >= d {
        return (0..d).collect();
    }
    let mut pool: Vec<usize> = (0..d).collect();
    for i in 0..subset {
        let j = rng.gen_range(i..d);
        pool.swap(i, j);
    }
    pool.truncate(subset);
    pool.sort_unstable();
    pool
}

/// Best (feature, midpoint) split of `rows` by Gini gain, or `None` when no
/// candidate strictly improves on the parent impurity while keeping
/// `min_samples_leaf` rows per side. Candidates are scanned with features
/// ascending and thresholds ascending; only strictly larger gains replace
/// the incumbent, which implements the tie-break law.
fn best_gini_split(
    data: &Dataset,
    rows: &[usize],
    candidate_features: &[usize],
    min_samples_leaf: usize,
) -> Option<(usize, f64)> {
    let n = rows.len();
    let total_ones = rows.iter().filter(|&&i| data.label(i) == 1).count();
    let parent = gini(total_ones, n);

    let mut best: Option<(usize, f64, f64)> = None;
    let mut order: Vec<usize> = Vec::with_capacity(n);
    for &feature in candidate_features {
        order.clear();
        order.extend_from_slice(rows);
        order.sort_by(|&a, &b| {
            data.row(a)[feature]
                .partial_cmp(&data.row(b)[feature])
                .expect("features are finite")
        });
        let mut left_ones = 0usize;
        for split_at in 1..n {
            let prev = data.row(order[split_at - 1])[feature];
            if data.label(order[split_at - 1]) == 1 {
                left_ones += 1;
            }
            let here = data.row(order[split_at])[feature];
            if prev == here {
                continue;
            }
            let n_left = split_at;
            let n_right = n - split_at;
            if n_left < min_samples_leaf || n_right < min_samples_leaf {
                continue;
            }
            let weighted = (n_left as f64 * gini(left_ones, n_left)
                + n_right as f64 * gini(total_ones - left_ones, n_right))
                / n as f64;
            let gain = parent - weighted;
            if gain <= 0.0 {
                continue;
            }
            if best.is_none_or(|(_, _, g)| gain > g) {
                best = Some((feature, (prev + here) / 2.0, gain));
            }
        }
    }
    best.map(|(feature, threshold, _)| (feature, threshold))
}

fn gini(ones: usize, n: usize) -> f64 {
    let p1 = ones as f64 / n as f64;
    let p0 = 1.0 - p1;
    1.0 - p0 * p0 - p1 * p1
}

/// Fits a bagged forest of Gini trees.
///
/// Tree `t` draws its bootstrap resample and feature subsets from an RNG
/// stream derived from `(seed, t)`, so results do not depend on training
/// order.
pub fn fit_random_forest(data: &Dataset, params: &RandomForestParams) -> Result<TreeEnsembleModel> {
    if params.n_trees < 1 {
        return Err(invalid_argument!("n_trees", "must be at least 1"));
    }
    validate_tree_params(data, params.max_depth, params.min_samples_leaf)?;
    let subset = match params.feature_subset_size {
        Some(s) => {
            validate_subset(data, Some(s))?;
            s
        }
        None => default_subspace(data.n_features()),
    };
    let cart = CartParams {
        max_depth: params.max_depth,
        min_samples_leaf: params.min_samples_leaf,
        feature_subset_size: Some(subset),
    };

    let n = data.n_rows();
    let mut trees = Vec::with_capacity(params.n_trees);
    for t in 0..params.n_trees {
        let mut rng = tree_rng(params.seed, t as u64);
        let sample: Vec<usize> = if params.bootstrap {
            (0..n).map(|_| rng.gen_range(0..n)).collect()
        } else {
            (0..n).collect()
        };
        let resampled = data.subset(&sample);
        trees.push(fit_cart(&resampled, &cart, &mut rng)?);
    }
    Ok(TreeEnsembleModel {
        kind: ModelKind::RandomForest,
        trees,
        learning_rate: 0.0,
        base_score: 0.0,
        hyperparams: ModelParams::RandomForest(*params),
        n_features: data.n_features(),
        seed: params.seed,
    })
}

/// ceil(sqrt(d)), the random-subspace default.
pub fn default_subspace(d: usize) -> usize {
    let mut s = libm::sqrt(d as f64) as usize;
    if s * s < d {
        s += 1;
    }
    s.max(1)
}

fn tree_rng(seed: u64, tree_index: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(tree_index);
    rng
}

/// Fits a stagewise boosted model on logistic loss.
///
/// The margin starts at the log-odds of the class prevalence; each round
/// fits a regression tree to the residuals (label minus predicted
/// probability) by squared-error splits, sets each leaf to the Newton step
/// (residual sum over hessian sum), and adds `learning_rate` times the tree
/// to the margin.
pub fn fit_gbt(data: &Dataset, params: &GbtParams) -> Result<TreeEnsembleModel> {
    validate_tree_params(data, params.max_depth, params.min_samples_leaf)?;
    if params.n_rounds < 1 {
        return Err(invalid_argument!("n_rounds", "must be at least 1"));
    }
    if !(params.learning_rate > 0.0 && params.learning_rate <= 1.0) {
        return Err(invalid_argument!(
            "learning_rate",
            "must lie in (0, 1], got {}",
            params.learning_rate
        ));
    }
    let [zeros, ones] = data.class_counts();
    if zeros == 0 || ones == 0 {
        return Err(Error::SingleClassDataset);
    }

    let n = data.n_rows();
    let prevalence = ones as f64 / n as f64;
    let base_score = libm::log(prevalence / (1.0 - prevalence));
    let mut margins = vec![base_score; n];
    let mut residuals = vec![0.0f64; n];
    let mut hessians = vec![0.0f64; n];
    let rows: Vec<usize> = (0..n).collect();

    let mut trees = Vec::with_capacity(params.n_rounds);
    for _ in 0..params.n_rounds {
        for i in 0..n {
            let p = logistic(margins[i]);
            residuals[i] = data.label(i) as f64 - p;
            hessians[i] = p * (1.0 - p);
        }
        let mut nodes = Vec::new();
        grow_regression(
            data,
            rows.clone(),
            &residuals,
            &hessians,
            params,
            0,
            &mut nodes,
        );
        let tree = Tree {
            nodes,
            max_depth: params.max_depth,
        };
        for (i, margin) in margins.iter_mut().enumerate() {
            *margin += params.learning_rate * tree.predict_value(data.row(i));
        }
        trees.push(tree);
    }
    Ok(TreeEnsembleModel {
        kind: ModelKind::GradientBoosted,
        trees,
        learning_rate: params.learning_rate,
        base_score,
        hyperparams: ModelParams::GradientBoosted(*params),
        n_features: data.n_features(),
        seed: params.seed,
    })
}

/// Grows one node of a residual-fitting regression tree.
fn grow_regression(
    data: &Dataset,
    rows: Vec<usize>,
    residuals: &[f64],
    hessians: &[f64],
    params: &GbtParams,
    depth: usize,
    nodes: &mut Vec<Node>,
) -> usize {
    let can_split = depth < params.max_depth && rows.len() >= 2 * params.min_samples_leaf;
    let best = if can_split {
        best_sse_split(data, &rows, residuals, params.min_samples_leaf)
    } else {
        None
    };
    match best {
        None => {
            // Newton step: gradient sum over hessian sum, with the
            // denominator floored to keep confident leaves finite.
            let g: f64 = rows.iter().map(|&i| residuals[i]).sum();
            let h: f64 = rows.iter().map(|&i| hessians[i]).sum();
            nodes.push(Node::Leaf {
                value: g / h.max(1e-16),
            });
            nodes.len() - 1
        }
        Some((feature, threshold)) => {
            let (left_rows, right_rows): (Vec<usize>, Vec<usize>) =
                rows.into_iter().partition(|&i| data.row(i)[feature] < threshold);
            let at = nodes.len();
            nodes.push(Node::Split {
                feature,
                threshold,
                left: 0,
                right: 0,
            });
            let left =
                grow_regression(data, left_rows, residuals, hessians, params, depth + 1, nodes);
            let right =
                grow_regression(data, right_rows, residuals, hessians, params, depth + 1, nodes);
            if let Node::Split {
                left: l, right: r, ..
            } = &mut nodes[at]
            {
                *l = left;
                *r = right;
            }
            at
        }
    }
}

/// Best squared-error split of `rows` on the residuals, or `None` without a
/// strict improvement. Same candidate enumeration and tie-break law as the
/// Gini search.
fn best_sse_split(
    data: &Dataset,
    rows: &[usize],
    residuals: &[f64],
    min_samples_leaf: usize,
) -> Option<(usize, f64)> {
    let n = rows.len();
    let total: f64 = rows.iter().map(|&i| residuals[i]).sum();
    let mut best: Option<(usize, f64, f64)> = None;
    let mut order: Vec<usize> = Vec::with_capacity(n);
    for feature in 0..data.n_features() {
        order.clear();
        order.extend_from_slice(rows);
        order.sort_by(|&a, &b| {
            data.row(a)[feature]
                .partial_cmp(&data.row(b)[feature])
                .expect("features are finite")
        });
        let mut left_sum = 0.0f64;
        for split_at in 1..n {
            left_sum += residuals[order[split_at - 1]];
            let prev = data.row(order[split_at - 1])[feature];
            let here = data.row(order[split_at])[feature];
            if prev == here {
                continue;
            }
            let n_left = split_at;
            let n_right = n - split_at;
            if n_left < min_samples_leaf || n_right < min_samples_leaf {
                continue;
            }
            // Variance reduction with the squared sums expanded; the
            // per-row squares cancel.
            let right_sum = total - left_sum;
            let reduction = left_sum * left_sum / n_left as f64
                + right_sum * right_sum / n_right as f64
                - total * total / n as f64;
            if reduction <= 0.0 {
                continue;
            }
            if best.is_none_or(|(_, _, r)| reduction > r) {
                best = Some((feature, (prev + here) / 2.0, reduction));
            }
        }
    }
    best.map(|(feature, threshold, _)| (feature, threshold))
}

/// Trains a model from a hyperparameter record.
pub fn fit_model(data: &Dataset, params: &ModelParams) -> Result<TreeEnsembleModel> {
    match params {
        ModelParams::RandomForest(p) => fit_random_forest(data, p),
        ModelParams::GradientBoosted(p) => fit_gbt(data, p),
    }
}

/// Accuracy of one grid point on one stratified fold plan.
fn fold_accuracy(data: &Dataset, params: &ModelParams, plan: &eval::SplitPlan) -> Result<f64> {
    let train = data.subset(&plan.train_ids);
    let test = data.subset(&plan.test_ids);
    for side in [&train, &test] {
        let [zeros, ones] = side.class_counts();
        if zeros == 0 || ones == 0 {
            return Err(Error::FoldMissingClass);
        }
    }
    let model = fit_model(&train, params)?;
    let mut correct = 0usize;
    for i in 0..test.n_rows() {
        let predicted = (model.predict_proba(test.row(i))? >= 0.5) as u8;
        if predicted == test.label(i) {
            correct += 1;
        }
    }
    Ok(correct as f64 / test.n_rows() as f64)
}

/// Cross-validated quality of one grid point.
#[derive(Debug, Clone, PartialEq)]
pub struct GridPoint {
    pub params: ModelParams,
    /// Mean accuracy over the k folds.
    pub mean_accuracy: f64,
    /// Population standard deviation of the fold accuracies.
    pub std_accuracy: f64,
    pub fold_accuracies: Vec<f64>,
}

/// Outcome of [`grid_search_cv`]: every grid point scored, best first by
/// index.
#[derive(Debug, Clone, PartialEq)]
pub struct GridSearchResult {
    pub points: Vec<GridPoint>,
    /// Index into `points` of the winner (ties resolve to the earliest
    /// grid entry).
    pub best_index: usize,
}

impl GridSearchResult {
    pub fn best(&self) -> &GridPoint {
        &self.points[self.best_index]
    }
}

/// Scores every hyperparameter record in `grid` by k-fold stratified
/// cross-validated accuracy (decision threshold 1/2) and returns the
/// arg-max, ties resolving to the earliest grid entry. The same fold plans,
/// derived from `seed`, are reused for every grid point.
pub fn grid_search_cv(
    data: &Dataset,
    grid: &[ModelParams],
    k: usize,
    seed: u64,
) -> Result<GridSearchResult> {
    if grid.is_empty() {
        return Err(Error::EmptyInput("hyperparameter grid"));
    }
    let plans = eval::stratified_kfold(data, k, seed)?;
    let mut points = Vec::with_capacity(grid.len());
    let mut best_index = 0usize;
    for (gi, params) in grid.iter().enumerate() {
        let fold_accuracies: Vec<f64> = plans
            .iter()
            .map(|plan| fold_accuracy(data, params, plan))
            .collect::<Result<_>>()?;
        let mean = fold_accuracies.iter().sum::<f64>() / fold_accuracies.len() as f64;
        let var = fold_accuracies
            .iter()
            .map(|a| (a - mean) * (a - mean))
            .sum::<f64>()
            / fold_accuracies.len() as f64;
        points.push(GridPoint {
            params: *params,
            mean_accuracy: mean,
            std_accuracy: libm::sqrt(var),
            fold_accuracies,
        });
        if points[gi].mean_accuracy > points[best_index].mean_accuracy {
            best_index = gi;
        }
    }
    Ok(GridSearchResult { points, best_index })
}
