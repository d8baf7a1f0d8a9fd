#![cfg_attr(not(feature = "std"), no_std)]

//! Core pipeline for passive acoustic leak detection from hydrophone audio.
//!
//! The processing chain: overlapped windows are cut from a recording
//! ([`signal`]), each window is reduced to a band-limited power-spectral-
//! density feature vector ([`spectral`]), a tree-ensemble classifier scores
//! each window ([`trees`]), and a two-state Markov filter smooths the
//! per-window decisions into a posterior probability that a leak is active
//! ([`hmm`]). [`synth`] generates labelled synthetic corpora (bubble pulse
//! trains over colored background noise) for end-to-end exercise of the
//! chain, and [`eval`] carries the split/metric machinery used for model
//! selection.
//!
//! The crate is `no_std`-compatible (with `alloc`); everything here operates
//! on in-memory slices. File formats, WAV decoding and the command-line
//! front end live in the companion `leakdet-cli` crate.

extern crate alloc;

pub mod error;
pub mod eval;
mod fft;
pub mod hmm;
pub mod signal;
pub mod spectral;
pub mod synth;
pub mod trees;

pub use error::Error;

/// Crate-wide result alias.
pub type Result<T> = core::result::Result<T, Error>;
