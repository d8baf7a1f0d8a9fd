//! Crate-wide error type.
//!
//! Every fallible operation returns [`Error`]; numerical degeneracies are
//! reported as errors rather than silently propagating NaNs.

use alloc::string::String;
use core::fmt;

/// Failure cases across the pipeline.
#[derive(Debug, Clone, PartialEq)]
pub enum Error {
    /// An input that must be non-empty was empty; the payload names it.
    EmptyInput(&'static str),
    /// A parameter violated its documented precondition.
    InvalidArgument {
        arg: &'static str,
        reason: String,
    },
    /// A feature vector's length does not match what the model was trained on.
    DimensionMismatch {
        expected: usize,
        got: usize,
    },
    /// Training data contains only one class where both are required.
    SingleClassDataset,
    /// A class has fewer rows than the requested fold count.
    ClassSmallerThanFolds {
        class: u8,
        rows: usize,
        folds: usize,
    },
    /// A cross-validation fold ended up without both classes.
    FoldMissingClass,
    /// A requested session id does not occur in the data.
    UnknownSession(String),
    /// A split left one side with no rows.
    EmptySplit(&'static str),
    /// The band filter selected no spectral bins.
    EmptyBand,
    /// A frequency parameter reached or exceeded the Nyquist limit.
    NyquistViolation {
        frequency_hz: f64,
        nyquist_hz: f64,
    },
    /// Both filter states were assigned zero mass by an observation, so the
    /// posterior is undefined under the model.
    DegenerateObservation,
    /// Score/label pairs for emission estimation lack one of the classes.
    MissingClass(u8),
    /// Precision is undefined: the model predicted no positive windows.
    NoPositivePredictions {
        flow_lpm: f64,
    },
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::EmptyInput(what) => write!(f, "empty input: {what}"),
            Error::InvalidArgument { arg, reason } => {
                write!(f, "invalid argument `{arg}`: {reason}")
            }
            Error::DimensionMismatch { expected, got } => {
                write!(f, "feature dimension mismatch: model expects {expected}, got {got}")
            }
            Error::SingleClassDataset => write!(f, "single-class dataset"),
            Error::ClassSmallerThanFolds { class, rows, folds } => write!(
                f,
                "class {class} has {rows} rows, fewer than the {folds} requested folds"
            ),
            Error::FoldMissingClass => {
                write!(f, "a cross-validation fold does not contain both classes")
            }
            Error::UnknownSession(id) => write!(f, "unknown session id `{id}`"),
            Error::EmptySplit(side) => write!(f, "split leaves no rows on the {side} side"),
            Error::EmptyBand => write!(f, "band filter selected no spectral bins"),
            Error::NyquistViolation {
                frequency_hz,
                nyquist_hz,
            } => write!(
                f,
                "frequency {frequency_hz} Hz at or above the Nyquist limit {nyquist_hz} Hz"
            ),
            Error::DegenerateObservation => write!(
                f,
                "observation is impossible under the model: both states have zero mass"
            ),
            Error::MissingClass(class) => {
                write!(f, "score set contains no rows of class {class}")
            }
            Error::NoPositivePredictions { flow_lpm } => write!(
                f,
                "precision undefined at flow {flow_lpm} l/min: no windows predicted positive"
            ),
        }
    }
}

impl core::error::Error for Error {}

/// Shorthand for [`Error::InvalidArgument`] with a formatted reason.
macro_rules! invalid_argument {
    ($arg:expr, $($fmt:tt)*) => {
        $crate::Error::InvalidArgument {
            arg: $arg,
            reason: alloc::format!($($fmt)*),
        }
    };
}
pub(crate) use invalid_argument;
