//! Penalized greedy pursuit over ridge-function dictionaries.
//!
//! The crate is split along the pipeline:
//!
//! - [`dictionary`]: activations, ridge units, sparse ℓ1-ball covers.
//! - [`targets`]: spectral targets, ramp-sampling approximations, synthetic data.
//! - [`model`]: nonnegative combinations of ridge units plus an affine part.
//! - [`approx`]: Maurey sampling, stratified sampling, quantization onto nets.
//! - [`greedy`]: the ℓ1-penalized greedy pursuit and its bound.
//! - [`penalty`]: penalty schedules, truncation, tail quantities.
//! - [`risk`]: losses, penalized model selection, concentration checks.
//! - [`cli`]: the batch front end used by the `ridge` binary.

// `!(x >= 0.0)` style checks are deliberate: they also reject NaN.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod approx;
pub mod cli;
pub mod design;
pub mod dictionary;
pub mod error;
pub mod greedy;
pub mod model;
pub mod penalty;
pub mod risk;
pub mod seed;
pub mod stats;
pub mod targets;

pub use design::Design;
pub use dictionary::{Activation, RidgeUnit, Sign, SparseCover};
pub use error::{Error, Result};
pub use model::RidgeModel;
pub use targets::{Dataset, NoiseRegime, SpectralTarget, Target};
