//! Recordings, labels and overlapped windowing.
//!
//! A [`Recording`] is a normalized mono sample sequence with session
//! metadata and a ground-truth label. [`frame`] cuts it into fixed-length
//! windows with a configurable overlap; the windows are the sample units
//! every later stage (features, classification, smoothing) operates on.

use alloc::string::String;
use alloc::vec::Vec;

use crate::error::invalid_argument;
use crate::{Error, Result};

/// Ground truth attached to a recording and inherited by its windows.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Label {
    /// Gas leak active for the whole recording, at the given flow rate.
    Leak { flow_lpm: f64 },
    /// Background only.
    Noise,
    /// No ground truth (field data to be scored).
    Unlabeled,
}

impl Label {
    /// Binary class for training: 1 for leak, 0 for noise, `None` when
    /// unlabeled.
    pub fn class(&self) -> Option<u8> {
        match self {
            Label::Leak { .. } => Some(1),
            Label::Noise => Some(0),
            Label::Unlabeled => None,
        }
    }

    pub fn is_leak(&self) -> bool {
        matches!(self, Label::Leak { .. })
    }
}

/// A mono audio recording with normalized amplitude.
#[derive(Debug, Clone, PartialEq)]
pub struct Recording {
    /// Normalized samples, dimensionless, nominally in [-1, 1].
    pub samples: Vec<f64>,
    /// Sampling rate in Hz.
    pub sample_rate: u32,
    /// Opaque identifier of the deployment session this was recorded in.
    pub session_id: String,
    /// Seconds since epoch at the first sample.
    pub start_time: f64,
    /// Ground truth for the whole recording.
    pub label: Label,
}

impl Recording {
    /// Builds a recording, validating the type invariants.
    pub fn new(
        samples: Vec<f64>,
        sample_rate: u32,
        session_id: String,
        start_time: f64,
        label: Label,
    ) -> Result<Self> {
        if samples.is_empty() {
            return Err(Error::EmptyInput("zero-length audio"));
        }
        if sample_rate == 0 {
            return Err(invalid_argument!("sample_rate", "must be positive"));
        }
        if let Label::Leak { flow_lpm } = label {
            if !flow_lpm.is_finite() || flow_lpm <= 0.0 {
                return Err(invalid_argument!(
                    "flow_lpm",
                    "must be positive and finite, got {flow_lpm}"
                ));
            }
        }
        Ok(Recording {
            samples,
            sample_rate,
            session_id,
            start_time,
            label,
        })
    }

    /// Recording length in seconds.
    pub fn duration_seconds(&self) -> f64 {
        self.samples.len() as f64 / self.sample_rate as f64
    }
}

/// One fixed-length analysis window cut from a recording.
#[derive(Debug, Clone, PartialEq)]
pub struct Window {
    /// Exactly `round(duration * sample_rate)` samples.
    pub samples: Vec<f64>,
    /// Seconds from the start of the source recording.
    pub start_offset: f64,
    /// Session the source recording belongs to.
    pub source: String,
    /// Label inherited from the source recording.
    pub label: Label,
}

/// Cuts `recording` into overlapped windows of `duration` seconds.
///
/// Windows advance by `duration - overlap` seconds; window `k` starts at
/// `k` hops from the recording start. Trailing samples that do not fill a
/// complete window are discarded. Lengths are fixed in sample space
/// (`round(duration * sample_rate)` samples per window, consecutive windows
/// sharing `round(overlap * sample_rate)` samples) so every window is
/// exactly the same size.
pub fn frame(recording: &Recording, duration: f64, overlap: f64) -> Result<Vec<Window>> {
    if !duration.is_finite() || duration <= 0.0 {
        return Err(invalid_argument!("duration", "must be positive and finite"));
    }
    if !overlap.is_finite() || overlap < 0.0 {
        return Err(invalid_argument!("overlap", "must be non-negative and finite"));
    }
    if overlap >= duration {
        return Err(invalid_argument!(
            "overlap",
            "must be smaller than duration ({overlap} >= {duration})"
        ));
    }
    let rate = recording.sample_rate as f64;
    let win_len = libm::round(duration * rate) as usize;
    if win_len < 1 {
        return Err(invalid_argument!(
            "duration",
            "spans no samples at {} Hz",
            recording.sample_rate
        ));
    }
    let overlap_len = libm::round(overlap * rate) as usize;
    if overlap_len >= win_len {
        return Err(invalid_argument!(
            "overlap",
            "rounds to the full window at {} Hz",
            recording.sample_rate
        ));
    }
    let hop = win_len - overlap_len;
    if recording.samples.len() < win_len {
        return Err(invalid_argument!(
            "duration",
            "recording shorter than one window ({} < {win_len} samples)",
            recording.samples.len()
        ));
    }

    let count = (recording.samples.len() - win_len) / hop + 1;
    let mut windows = Vec::with_capacity(count);
    for k in 0..count {
        let start = k * hop;
        windows.push(Window {
            samples: recording.samples[start..start + win_len].to_vec(),
            start_offset: start as f64 / rate,
            source: recording.session_id.clone(),
            label: recording.label,
        });
    }
    Ok(windows)
}
