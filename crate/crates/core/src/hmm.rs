//! Two-state Markov smoothing of per-window classifier decisions.
//!
//! State 0 means no leak, state 1 means a leak is active. The chain starts
//! in state 0, may switch on with probability `epsilon` per window and off
//! with probability `delta`, and is observed through the thresholded
//! classifier output: `p_detect` is the classifier's positive recall
//! P(Y=1 | X=1) and `p_reject` its negative recall P(Y=0 | X=0). The
//! forward recursion turns the 0/1 decision stream into a posterior
//! probability that a leak is active now, carried in linear probability
//! space with per-step normalization (two states keep underflow out of
//! reach).
//!
//! Emission probabilities are estimated from held-out classifier scores by
//! [`emissions_from_cv`]; estimates of exactly 0 or 1 are clamped slightly
//! inward before use so a single contradicting observation cannot zero out
//! both states.

use alloc::vec::Vec;

use crate::error::invalid_argument;
use crate::{Error, Result};

/// Paper-default probability that a leak starts at any given window.
pub const DEFAULT_EPSILON: f64 = 0.1;
/// Paper-default probability that an active leak stops.
pub const DEFAULT_DELTA: f64 = 0.00001;
/// Recall estimates are pushed this far inside (0, 1) before use.
pub const RECALL_CLAMP: f64 = 1e-6;

/// Transition, emission and initial-state parameters of the smoother.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HmmParams {
    /// P(X_t = 1 | X_{t-1} = 0): a leak starts.
    pub epsilon: f64,
    /// P(X_t = 0 | X_{t-1} = 1): a leak stops.
    pub delta: f64,
    /// P(Y = 1 | X = 1): classifier positive recall.
    pub p_detect: f64,
    /// P(Y = 0 | X = 0): classifier negative recall.
    pub p_reject: f64,
    /// Distribution over the state before the first observation;
    /// index 0 = no leak, index 1 = leak.
    pub initial: [f64; 2],
}

impl HmmParams {
    /// Parameters with the default point-mass initial state (no leak).
    pub fn new(epsilon: f64, delta: f64, p_detect: f64, p_reject: f64) -> Result<Self> {
        let params = HmmParams {
            epsilon,
            delta,
            p_detect,
            p_reject,
            initial: [1.0, 0.0],
        };
        params.validate()?;
        Ok(params)
    }

    /// Parameters from a cross-validated emission estimate, with recalls
    /// clamped into `[RECALL_CLAMP, 1 - RECALL_CLAMP]` so perfect CV
    /// recalls cannot make a contradicting observation impossible.
    pub fn with_emissions(epsilon: f64, delta: f64, emissions: &EmissionEstimate) -> Result<Self> {
        HmmParams::new(
            epsilon,
            delta,
            clamp_recall(emissions.p_detect),
            clamp_recall(emissions.p_reject),
        )
    }

    pub fn validate(&self) -> Result<()> {
        for (name, p) in [
            ("epsilon", self.epsilon),
            ("delta", self.delta),
            ("p_detect", self.p_detect),
            ("p_reject", self.p_reject),
        ] {
            if !(0.0..=1.0).contains(&p) || !p.is_finite() {
                return Err(Error::InvalidArgument {
                    arg: name,
                    reason: alloc::format!("probability must lie in [0, 1], got {p}"),
                });
            }
        }
        validate_distribution(&self.initial, "initial")?;
        Ok(())
    }
}

/// Clamps a recall estimate into `[RECALL_CLAMP, 1 - RECALL_CLAMP]`.
pub fn clamp_recall(recall: f64) -> f64 {
    recall.clamp(RECALL_CLAMP, 1.0 - RECALL_CLAMP)
}

fn validate_distribution(dist: &[f64; 2], name: &'static str) -> Result<()> {
    if dist.iter().any(|p| !p.is_finite() || *p < 0.0) {
        return Err(invalid_argument!(name, "distribution entries must be finite and >= 0"));
    }
    let sum = dist[0] + dist[1];
    if (sum - 1.0).abs() > 1e-9 {
        return Err(invalid_argument!(name, "distribution must sum to 1, got {sum}"));
    }
    Ok(())
}

/// One forward-recursion step: propagate `prior` through the transition
/// kernel, weight by the emission likelihood of `y`, and renormalize.
///
/// Errors with [`Error::DegenerateObservation`] when the observation has
/// zero likelihood under both states, rather than returning NaNs.
pub fn forward_update(prior: [f64; 2], y: bool, params: &HmmParams) -> Result<[f64; 2]> {
    params.validate()?;
    validate_distribution(&prior, "prior")?;
    let propagated = [
        (1.0 - params.epsilon) * prior[0] + params.delta * prior[1],
        params.epsilon * prior[0] + (1.0 - params.delta) * prior[1],
    ];
    let (like0, like1) = if y {
        (1.0 - params.p_reject, params.p_detect)
    } else {
        (params.p_reject, 1.0 - params.p_detect)
    };
    let mass = [like0 * propagated[0], like1 * propagated[1]];
    let total = mass[0] + mass[1];
    if total == 0.0 {
        return Err(Error::DegenerateObservation);
    }
    Ok([mass[0] / total, mass[1] / total])
}

/// Runs the forward recursion over a whole decision sequence, returning
/// P(X_t = 1 | y_1..y_t) per step. The first step already includes one
/// transition from the initial state.
pub fn smooth_sequence(observations: &[bool], params: &HmmParams) -> Result<Vec<f64>> {
    if observations.is_empty() {
        return Err(Error::EmptyInput("observation sequence"));
    }
    let mut dist = params.initial;
    let mut posterior = Vec::with_capacity(observations.len());
    for &y in observations {
        dist = forward_update(dist, y, params)?;
        posterior.push(dist[1]);
    }
    Ok(posterior)
}

/// Classifier recalls estimated from held-out (score, label) pairs.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EmissionEstimate {
    pub p_detect: f64,
    pub p_reject: f64,
}

/// Thresholds scores into decisions: `score >= threshold` flags a leak.
pub fn apply_threshold(scores: &[f64], threshold: f64) -> Vec<bool> {
    scores.iter().map(|&s| s >= threshold).collect()
}

/// Estimates the emission probabilities at a decision threshold from
/// held-out scores: `p_detect` is the fraction of true positives flagged,
/// `p_reject` the fraction of true negatives passed.
///
/// Returns the raw ratios; clamping happens when the estimate is turned
/// into [`HmmParams`].
pub fn emissions_from_cv(cv_scores: &[(f64, u8)], threshold: f64) -> Result<EmissionEstimate> {
    if !(0.0..=1.0).contains(&threshold) {
        return Err(invalid_argument!(
            "threshold",
            "must lie in [0, 1], got {threshold}"
        ));
    }
    let mut detected = 0usize;
    let mut positives = 0usize;
    let mut rejected = 0usize;
    let mut negatives = 0usize;
    for &(score, label) in cv_scores {
        match label {
            1 => {
                positives += 1;
                if score >= threshold {
                    detected += 1;
                }
            }
            0 => {
                negatives += 1;
                if score < threshold {
                    rejected += 1;
                }
            }
            other => {
                return Err(invalid_argument!(
                    "cv_scores",
                    "labels must be 0 or 1, got {other}"
                ))
            }
        }
    }
    if positives == 0 {
        return Err(Error::MissingClass(1));
    }
    if negatives == 0 {
        return Err(Error::MissingClass(0));
    }
    Ok(EmissionEstimate {
        p_detect: detected as f64 / positives as f64,
        p_reject: rejected as f64 / negatives as f64,
    })
}

/// One row of a detection run: the classifier score, the thresholded
/// decision and the smoothed leak posterior for a window.
#[derive(Debug, Clone, PartialEq)]
pub struct TraceEntry {
    /// Window start, seconds from recording start.
    pub start_offset: f64,
    /// Classifier probability score in [0, 1].
    pub score: f64,
    /// Thresholded decision.
    pub y: bool,
    /// P(leak active | decisions so far).
    pub pi_leak: f64,
}

/// The full per-window record of one detection run.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct DetectionTrace {
    pub entries: Vec<TraceEntry>,
}

impl DetectionTrace {
    /// Thresholds the scores and smooths the resulting decisions.
    /// `starts` and `scores` must be parallel arrays over the windows.
    pub fn from_scores(
        starts: &[f64],
        scores: &[f64],
        threshold: f64,
        params: &HmmParams,
    ) -> Result<Self> {
        if starts.len() != scores.len() {
            return Err(invalid_argument!(
                "scores",
                "expected one score per window ({} windows, {} scores)",
                starts.len(),
                scores.len()
            ));
        }
        if let Some(bad) = scores.iter().find(|s| !(0.0..=1.0).contains(*s)) {
            return Err(invalid_argument!(
                "scores",
                "scores must lie in [0, 1], got {bad}"
            ));
        }
        let decisions = apply_threshold(scores, threshold);
        let posterior = smooth_sequence(&decisions, params)?;
        Ok(DetectionTrace {
            entries: starts
                .iter()
                .zip(scores.iter())
                .zip(decisions.iter().zip(posterior.iter()))
                .map(|((&start_offset, &score), (&y, &pi_leak))| TraceEntry {
                    start_offset,
                    score,
                    y,
                    pi_leak,
                })
                .collect(),
        })
    }
}
