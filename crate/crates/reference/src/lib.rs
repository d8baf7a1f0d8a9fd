//! Slow, obviously-correct reference implementations.
//!
//! Everything in this crate is written straight from the defining formula,
//! with no algorithmic shortcuts, so the optimized implementations in
//! `leakdet-core` can be checked against an independent path in tests:
//!
//! * [`dft`] — the O(N^2) discrete Fourier transform sum.
//! * [`hmm`] — two-state posterior by brute-force enumeration of all
//!   hidden-state paths (exponential in sequence length).
//! * [`cart`] — exhaustive search over every (feature, midpoint) split
//!   candidate by Gini gain.
//!
//! This crate is test support: it is a workspace member only so the other
//! crates can use it as a dev-dependency. It has no dependencies of its own
//! and shares no code with the crates it checks.

pub mod cart;
pub mod dft;
pub mod hmm;
